// Copyright 2026 The LDP Baseline Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldp/cv.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "ldp/error.hpp"
#include "ldp/parallel.hpp"

namespace ldp {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  return mix(mix(mix(base) ^ a) ^ b);
}

std::string shortest(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

void validate(const CvConfig& config) {
  if (config.folds < 2) throw ConfigError("folds must be >= 2");
  if (config.inner_folds < 2) throw ConfigError("inner folds must be >= 2");
  if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (config.c_grid.empty()) throw ConfigError("empty c grid");
  if (config.kernel_kinds.empty()) throw ConfigError("no kernel kinds");
  for (double c : config.c_grid) {
    if (!(c > 0.0)) throw ConfigError("c grid values must be positive");
  }
  const bool gaussian = std::find(config.kernel_kinds.begin(), config.kernel_kinds.end(),
                                  KernelKind::Gaussian) != config.kernel_kinds.end();
  if (gaussian && config.gamma_grid.empty()) throw ConfigError("empty gamma grid");
  for (double g : config.gamma_grid) {
    if (!(g > 0.0)) throw ConfigError("gamma grid values must be positive");
  }
}

std::vector<HyperParams> hyperparameter_candidates(const CvConfig& config) {
  std::vector<HyperParams> out;
  for (KernelKind kind : config.kernel_kinds) {
    if (kind == KernelKind::Linear) {
      for (double c : config.c_grid) out.push_back({KernelSpec::linear(), c});
    } else {
      for (double g : config.gamma_grid) {
        for (double c : config.c_grid) out.push_back({KernelSpec::gaussian(g), c});
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, int folds,
                                                       std::uint64_t seed,
                                                       std::vector<std::string>* warnings) {
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (labels.empty()) throw ConfigError("stratified_folds: no labels");
  if (static_cast<std::size_t>(folds) > labels.size()) {
    throw ConfigError("folds (" + std::to_string(folds) + ") exceed the number of examples (" +
                      std::to_string(labels.size()) + ")");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  std::size_t position = 0;
  for (auto& [label, members] : by_class) {
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng() % i]);
    }
    if (warnings && members.size() < static_cast<std::size_t>(folds)) {
      warnings->push_back("class " + std::to_string(label) + " has " +
                          std::to_string(members.size()) + " members for " +
                          std::to_string(folds) + " folds");
    }
    for (std::size_t idx : members) out[position++ % out.size()].push_back(idx);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

double accuracy(const MulticlassModel& model, const KernelMatrix& kernel,
                std::span<const std::size_t> test_rows, std::span<const int> labels) {
  if (test_rows.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t r : test_rows) correct += predict(model, kernel, r) == labels[r] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(test_rows.size());
}

namespace {

SmoOptions solver_options(const CvConfig& config, std::uint64_t seed) {
  SmoOptions o;
  o.tol = config.solver_tol;
  o.max_passes = config.solver_max_passes;
  o.seed = seed;
  return o;
}

}  // namespace

double inner_cv_accuracy(const KernelMatrix& kernel, std::span<const std::size_t> train_rows,
                         std::span<const int> labels, int num_classes, double c,
                         const CvConfig& config, std::uint64_t seed) {
  std::vector<int> train_labels;
  train_labels.reserve(train_rows.size());
  for (std::size_t r : train_rows) train_labels.push_back(labels[r]);
  const auto inner = stratified_folds(train_labels, config.inner_folds, seed);

  std::size_t correct = 0;
  std::vector<char> held(train_rows.size());
  std::vector<std::size_t> fit_rows;
  std::vector<std::size_t> val_rows;
  for (std::size_t f = 0; f < inner.size(); ++f) {
    std::fill(held.begin(), held.end(), 0);
    for (std::size_t i : inner[f]) held[i] = 1;
    fit_rows.clear();
    val_rows.clear();
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      (held[i] ? val_rows : fit_rows).push_back(train_rows[i]);
    }
    const auto model = train_multiclass(kernel, fit_rows, labels, num_classes, c,
                                        solver_options(config, derive_seed(seed, f)));
    for (std::size_t r : val_rows) correct += predict(model, kernel, r) == labels[r] ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(train_rows.size());
}

CvReport cross_validate(std::span<const GraphVector> vectors, std::span<const int> labels,
                        const FeatureConfig& feature_config, const CvConfig& config) {
  validate(config);
  if (vectors.size() != labels.size()) throw ConfigError("vectors/labels size mismatch");
  if (vectors.empty()) throw ConfigError("cross_validate: no examples");
  for (const auto& v : vectors) {
    for (double x : v) {
      if (!std::isfinite(x)) throw NumericError("cross_validate: non-finite feature value");
    }
  }
  const int num_classes = *std::max_element(labels.begin(), labels.end()) + 1;
  if (*std::min_element(labels.begin(), labels.end()) < 0) {
    throw ConfigError("class labels must be nonnegative");
  }
  if (num_classes < 2) throw ConfigError("cross_validate: need at least two classes");

  const auto reps = static_cast<std::size_t>(config.repetitions);
  const auto folds = static_cast<std::size_t>(config.folds);
  const std::size_t tasks = reps * folds;

  CvReport report;
  report.feature_config = feature_config;
  report.folds = config.folds;
  report.repetitions = config.repetitions;

  std::vector<std::vector<std::size_t>> train_rows(tasks);
  std::vector<std::vector<std::size_t>> test_rows(tasks);
  for (std::size_t r = 0; r < reps; ++r) {
    auto split = stratified_folds(labels, config.folds, config.seed + r,
                                  r == 0 ? &report.warnings : nullptr);
    for (std::size_t f = 0; f < folds; ++f) {
      const std::size_t t = r * folds + f;
      test_rows[t] = split[f];
      std::vector<char> held(vectors.size(), 0);
      for (std::size_t i : split[f]) held[i] = 1;
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (!held[i]) train_rows[t].push_back(i);
      }
      if (train_rows[t].size() < static_cast<std::size_t>(config.inner_folds)) {
        throw ConfigError("degenerate fold: training split smaller than inner fold count");
      }
      if (test_rows[t].empty()) throw ConfigError("degenerate fold: empty test split");
    }
  }

  const auto candidates = hyperparameter_candidates(config);
  std::vector<std::vector<double>> inner(tasks, std::vector<double>(candidates.size()));
  std::vector<std::vector<double>> test(tasks, std::vector<double>(candidates.size()));

  std::vector<KernelSpec> kernels;
  for (const auto& h : candidates) {
    if (std::find(kernels.begin(), kernels.end(), h.kernel) == kernels.end()) {
      kernels.push_back(h.kernel);
    }
  }
  std::vector<double> squared;
  const bool cache = vectors.size() <= KernelMatrix::kDefaultCacheLimit;

  for (const KernelSpec& spec : kernels) {
    std::optional<KernelMatrix> kernel;
    if (spec.kind == KernelKind::Gaussian && cache) {
      if (squared.empty()) squared = squared_distance_matrix(vectors, config.threads);
      kernel.emplace(KernelMatrix::from_squared_distances(squared, vectors.size(), spec.gamma));
    } else {
      kernel.emplace(vectors, spec, config.threads);
    }
    std::vector<std::size_t> cand_ids;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (candidates[k].kernel == spec) cand_ids.push_back(k);
    }
    parallel_for(tasks, config.threads, [&](std::size_t t) {
      const std::uint64_t fold_seed = derive_seed(config.seed, t);
      for (std::size_t k : cand_ids) {
        const double c = candidates[k].c;
        // Model selection sees the training split only.
        inner[t][k] = inner_cv_accuracy(*kernel, train_rows[t], labels, num_classes, c, config,
                                        fold_seed);
        const auto model = train_multiclass(*kernel, train_rows[t], labels, num_classes, c,
                                            solver_options(config, derive_seed(fold_seed, k, 1)));
        test[t][k] = accuracy(model, *kernel, test_rows[t], labels);
      }
    });
  }

  report.accuracies.assign(reps, std::vector<double>(folds, 0.0));
  report.selected.assign(reps, std::vector<HyperParams>(folds));
  std::vector<std::size_t> picks(candidates.size(), 0);
  double total = 0.0;
  for (std::size_t t = 0; t < tasks; ++t) {
    const std::size_t r = t / folds;
    const std::size_t f = t % folds;
    std::size_t best = 0;
    for (std::size_t k = 1; k < candidates.size(); ++k) {
      if (inner[t][k] > inner[t][best]) best = k;
    }
    ++picks[best];
    report.accuracies[r][f] = test[t][best];
    report.selected[r][f] = candidates[best];
    total += test[t][best];
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      report.audit.push_back({feature_config, candidates[k], static_cast<int>(r),
                              static_cast<int>(f), inner[t][k], test[t][k], k == best});
    }
  }
  report.mean_accuracy = total / static_cast<double>(tasks);

  std::vector<double> rep_means(reps, 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    double s = 0.0;
    for (double a : report.accuracies[r]) s += a;
    rep_means[r] = s / static_cast<double>(folds);
  }
  double grand = 0.0;
  for (double m : rep_means) grand += m;
  grand /= static_cast<double>(reps);
  double var = 0.0;
  for (double m : rep_means) var += (m - grand) * (m - grand);
  report.std_accuracy = std::sqrt(var / static_cast<double>(reps));

  report.winning = candidates[static_cast<std::size_t>(
      std::max_element(picks.begin(), picks.end()) - picks.begin())];
  return report;
}

GridSearchResult grid_search(const Dataset& dataset, std::span<const FeatureConfig> candidates,
                             const CvConfig& config) {
  if (candidates.empty()) throw ConfigError("grid_search: no candidate feature configs");
  GridSearchResult result;
  const auto labels = dataset.class_labels();
  for (const auto& fc : candidates) {
    const auto start = std::chrono::steady_clock::now();
    const auto vectors = featurize_dataset(dataset, fc, config.threads);
    result.featurize_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.candidates.push_back(cross_validate(vectors, labels, fc, config));
  }
  for (std::size_t i = 1; i < result.candidates.size(); ++i) {
    if (result.candidates[i].mean_accuracy > result.candidates[result.best_index].mean_accuracy) {
      result.best_index = i;
    }
  }
  result.best = result.candidates[result.best_index];
  return result;
}

std::vector<FeatureConfig> feature_grid(std::span<const int> bins,
                                        std::span<const Aggregation> aggregations,
                                        std::span<const Normalization> normalizations,
                                        std::span<const Scale> scales, bool use_sum,
                                        bool use_label, bool use_distance) {
  std::vector<FeatureConfig> out;
  for (int b : bins) {
    for (Aggregation a : aggregations) {
      for (Normalization n : normalizations) {
        for (Scale s : scales) {
          out.push_back({b, a, n, s, use_sum, use_label, use_distance});
        }
      }
    }
  }
  return out;
}

void write_fold_csv(std::ostream& out, const CvReport& report) {
  out << "repetition,fold,accuracy,kernel,gamma,c\n";
  for (std::size_t r = 0; r < report.accuracies.size(); ++r) {
    for (std::size_t f = 0; f < report.accuracies[r].size(); ++f) {
      const HyperParams& h = report.selected[r][f];
      out << r << ',' << f << ',' << shortest(report.accuracies[r][f]) << ','
          << to_string(h.kernel.kind) << ','
          << (h.kernel.kind == KernelKind::Gaussian ? shortest(h.kernel.gamma) : "") << ','
          << shortest(h.c) << '\n';
    }
  }
}

std::string summary_line(const std::string& name, const CvReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << name << ": mean " << 100.0 * report.mean_accuracy << "% std "
      << 100.0 * report.std_accuracy << "% over " << report.repetitions << "x" << report.folds
      << " folds; features " << report.feature_config.describe() << "; kernel "
      << to_string(report.winning.kernel.kind);
  if (report.winning.kernel.kind == KernelKind::Gaussian) {
    out << " gamma=" << shortest(report.winning.kernel.gamma);
  }
  out << " c=" << shortest(report.winning.c);
  return out.str();
}

void write_audit_csv(std::ostream& out, std::span<const CvReport> reports) {
  out << "bins,aggregation,normalization,scale,use_sum,use_label,use_distance,"
         "kernel,gamma,c,repetition,fold,inner_accuracy,test_accuracy,selected\n";
  for (const auto& report : reports) {
    for (const auto& a : report.audit) {
      const FeatureConfig& f = a.feature;
      out << f.bins << ',' << to_string(f.aggregation) << ',' << to_string(f.normalization) << ','
          << to_string(f.scale) << ',' << f.use_sum << ',' << f.use_label << ','
          << f.use_distance << ',' << to_string(a.params.kernel.kind) << ','
          << (a.params.kernel.kind == KernelKind::Gaussian ? shortest(a.params.kernel.gamma) : "")
          << ',' << shortest(a.params.c) << ',' << a.repetition << ',' << a.fold << ','
          << shortest(a.inner_accuracy) << ',' << shortest(a.test_accuracy) << ','
          << (a.selected ? 1 : 0) << '\n';
    }
  }
}

}  // namespace ldp
