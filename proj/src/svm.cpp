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

#include "ldp/svm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "ldp/error.hpp"
#include "ldp/parallel.hpp"

namespace ldp {

std::string_view to_string(KernelKind k) {
  return k == KernelKind::Linear ? "linear" : "gaussian";
}

KernelKind parse_kernel_kind(std::string_view s) {
  if (s == "linear") return KernelKind::Linear;
  if (s == "gaussian" || s == "rbf") return KernelKind::Gaussian;
  throw ConfigError("unknown kernel '" + std::string(s) + "' (linear|gaussian)");
}

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double unchecked_kernel(const KernelSpec& spec, std::span<const double> x,
                        std::span<const double> y) {
  if (spec.kind == KernelKind::Linear) return dot(x, y);
  return std::exp(-spec.gamma * squared_distance(x, y));
}

void check_spec(const KernelSpec& spec) {
  if (spec.kind == KernelKind::Gaussian && !(spec.gamma > 0.0)) {
    throw std::invalid_argument("gaussian kernel needs gamma > 0");
  }
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kernel_eval: length mismatch " + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()));
  }
  check_spec(spec);
  return unchecked_kernel(spec, x, y);
}

KernelMatrix::KernelMatrix(std::span<const std::vector<double>> rows, const KernelSpec& spec,
                           unsigned threads, std::size_t cache_limit)
    : spec_(spec), n_(rows.size()), rows_(rows) {
  check_spec(spec);
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw std::invalid_argument("ragged kernel rows");
  }
  if (n_ > cache_limit) return;
  cached_ = true;
  values_.assign(n_ * n_, 0.0);
  parallel_for(n_, threads, [&](std::size_t i) {
    for (std::size_t j = i; j < n_; ++j) values_[i * n_ + j] = unchecked_kernel(spec_, rows[i], rows[j]);
  });
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) values_[i * n_ + j] = values_[j * n_ + i];
  }
  rows_ = {};
}

KernelMatrix KernelMatrix::from_squared_distances(std::span<const double> squared, std::size_t n,
                                                  double gamma) {
  if (squared.size() != n * n) throw std::invalid_argument("squared distance matrix size");
  KernelMatrix k;
  k.spec_ = KernelSpec::gaussian(gamma);
  check_spec(k.spec_);
  k.n_ = n;
  k.cached_ = true;
  k.values_.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) k.values_[i] = std::exp(-gamma * squared[i]);
  return k;
}

double KernelMatrix::evaluate(std::size_t i, std::size_t j) const {
  return unchecked_kernel(spec_, rows_[i], rows_[j]);
}

std::vector<double> squared_distance_matrix(std::span<const std::vector<double>> rows,
                                            unsigned threads) {
  const std::size_t n = rows.size();
  std::vector<double> out(n * n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) out[i * n + j] = squared_distance(rows[i], rows[j]);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) out[i * n + j] = out[j * n + i];
  }
  return out;
}

namespace {

// Platt's SMO with a full error cache. The second index is chosen by the
// max |E1 - E2| heuristic, then by scans over non-bound and all indices that
// start at a seeded random offset.
class SmoSolver {
 public:
  SmoSolver(const KernelMatrix& kernel, std::span<const std::size_t> rows, std::span<const int> y,
            double c, const SmoOptions& options)
      : kernel_(kernel),
        rows_(rows),
        y_(y),
        c_(c),
        opt_(options),
        n_(rows.size()),
        alpha_(n_, 0.0),
        error_(n_, 0.0),
        rng_(options.seed) {
    // Dense copy of the training block for small problems; SMO touches it
    // O(n) times per step.
    if (n_ <= kLocalCopyLimit) {
      local_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) local_[i * n_ + j] = kernel_(rows_[i], rows_[j]);
      }
    }
  }

  SvmModel solve() {
    refresh_errors();
    bool examine_all = true;
    int quiet_passes = 0;
    bool converged = false;
    for (std::size_t sweep = 0; sweep < opt_.max_sweeps; ++sweep) {
      int changed = 0;
      if (examine_all) {
        refresh_bias();
        refresh_errors();
        std::size_t violators = 0;
        for (std::size_t i = 0; i < n_; ++i) violators += violates_kkt(i) ? 1 : 0;
        if (violators == 0) {
          converged = true;
          break;
        }
        for (std::size_t i = 0; i < n_; ++i) changed += examine(i);
        quiet_passes = changed == 0 ? quiet_passes + 1 : 0;
        if (quiet_passes >= opt_.max_passes) break;
        examine_all = false;
      } else {
        for (std::size_t i = 0; i < n_; ++i) {
          if (non_bound(i)) changed += examine(i);
        }
        if (changed == 0) examine_all = true;
      }
    }

    refresh_bias();
    SvmModel model;
    model.kernel = kernel_.spec();
    model.c = c_;
    model.bias = bias_;
    model.converged = converged;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha_[i] > 0.0) {
        model.support_indices.push_back(rows_[i]);
        model.dual_coeffs.push_back(alpha_[i] * y_[i]);
      }
    }
    return model;
  }

 private:
  double k(std::size_t i, std::size_t j) const {
    return local_.empty() ? kernel_(rows_[i], rows_[j]) : local_[i * n_ + j];
  }
  bool non_bound(std::size_t i) const { return alpha_[i] > 0.0 && alpha_[i] < c_; }

  bool violates_kkt(std::size_t i) const {
    const double r = error_[i] * y_[i];  // y*f - 1
    return (r < -opt_.tol && alpha_[i] < c_) || (r > opt_.tol && alpha_[i] > 0.0);
  }

  void refresh_errors() {
    for (std::size_t i = 0; i < n_; ++i) {
      double f = bias_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (alpha_[j] > 0.0) f += alpha_[j] * y_[j] * k(j, i);
      }
      error_[i] = f - y_[i];
    }
  }

  // Bias consistent with the KKT conditions for the current alphas: the mean
  // over free multipliers, else the midpoint of the interval allowed by the
  // bound ones. Pair updates alone can leave it stale when every alpha sits
  // on a bound.
  void refresh_bias() {
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
      double g = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (alpha_[j] > 0.0) g += alpha_[j] * y_[j] * k(j, i);
      }
      const double target = y_[i] - g;  // b that puts i exactly on the margin
      if (non_bound(i)) {
        free_sum += target;
        ++free_count;
      } else if ((alpha_[i] == 0.0) == (y_[i] > 0)) {
        lower = std::max(lower, target);
      } else {
        upper = std::min(upper, target);
      }
    }
    if (free_count > 0) {
      bias_ = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(lower) && std::isfinite(upper)) {
      bias_ = 0.5 * (lower + upper);
    } else if (std::isfinite(lower)) {
      bias_ = lower;
    } else if (std::isfinite(upper)) {
      bias_ = upper;
    }
  }

  int examine(std::size_t i2) {
    if (!violates_kkt(i2)) return 0;
    const double e2 = error_[i2];

    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!non_bound(i)) continue;
      const double gap = std::abs(error_[i] - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < n_ && take_step(best, i2)) return 1;

    std::size_t start = rng_() % n_;
    for (std::size_t s = 0; s < n_; ++s) {
      const std::size_t i1 = (start + s) % n_;
      if (non_bound(i1) && take_step(i1, i2)) return 1;
    }
    start = rng_() % n_;
    for (std::size_t s = 0; s < n_; ++s) {
      const std::size_t i1 = (start + s) % n_;
      if (take_step(i1, i2)) return 1;
    }
    return 0;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1];
    const double a2 = alpha_[i2];
    const double y1 = y_[i1];
    const double y2 = y_[i2];
    const double e1 = error_[i1];
    const double e2 = error_[i2];
    const double s = y1 * y2;

    double lo = 0.0;
    double hi = 0.0;
    if (y1 != y2) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c_, c_ + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c_);
      hi = std::min(c_, a1 + a2);
    }
    if (hi - lo <= kEps * c_) return false;

    const double k11 = k(i1, i1);
    const double k12 = k(i1, i2);
    const double k22 = k(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;

    double a2_new = a2;
    if (eta > 0.0) {
      a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Objective is linear (or convex) along the segment: take the better end.
      const double f1 = y1 * (e1 - bias_) - a1 * k11 - s * a2 * k12;
      const double f2 = y2 * (e2 - bias_) - s * a1 * k12 - a2 * k22;
      auto cost = [&](double a2v) {
        const double a1v = a1 + s * (a2 - a2v);
        return a1v * f1 + a2v * f2 + 0.5 * a1v * a1v * k11 + 0.5 * a2v * a2v * k22 +
               s * a1v * a2v * k12;
      };
      const double lo_cost = cost(lo);
      const double hi_cost = cost(hi);
      if (lo_cost < hi_cost - kEps) {
        a2_new = lo;
      } else if (lo_cost > hi_cost + kEps) {
        a2_new = hi;
      }
    }
    if (std::abs(a2_new - a2) < kEps * (a2_new + a2 + kEps)) return false;

    double a1_new = a1 + s * (a2 - a2_new);
    if (a1_new < 0.0) {
      a2_new += s * a1_new;
      a1_new = 0.0;
    } else if (a1_new > c_) {
      a2_new += s * (a1_new - c_);
      a1_new = c_;
    }
    a1_new = snap(a1_new);
    a2_new = snap(a2_new);

    const double d1 = y1 * (a1_new - a1);
    const double d2 = y2 * (a2_new - a2);
    const double b1 = bias_ - e1 - d1 * k11 - d2 * k12;
    const double b2 = bias_ - e2 - d1 * k12 - d2 * k22;
    double b_new = 0.5 * (b1 + b2);
    if (a1_new > 0.0 && a1_new < c_) {
      b_new = b1;
    } else if (a2_new > 0.0 && a2_new < c_) {
      b_new = b2;
    }

    const double db = b_new - bias_;
    if (local_.empty()) {
      for (std::size_t i = 0; i < n_; ++i) error_[i] += d1 * k(i1, i) + d2 * k(i2, i) + db;
    } else {
      const double* row1 = &local_[i1 * n_];
      const double* row2 = &local_[i2 * n_];
      for (std::size_t i = 0; i < n_; ++i) error_[i] += d1 * row1[i] + d2 * row2[i] + db;
    }
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    bias_ = b_new;
    if (opt_.observer) opt_.observer(alpha_);
    return true;
  }

  double snap(double a) const {
    if (a < kEps * c_) return 0.0;
    if (a > c_ - kEps * c_) return c_;
    return a;
  }

  static constexpr double kEps = 1e-12;
  static constexpr std::size_t kLocalCopyLimit = 4096;

  const KernelMatrix& kernel_;
  std::span<const std::size_t> rows_;
  std::span<const int> y_;
  double c_;
  const SmoOptions& opt_;
  std::size_t n_;
  std::vector<double> local_;
  std::vector<double> alpha_;
  std::vector<double> error_;
  double bias_ = 0.0;
  std::mt19937_64 rng_;
};

void check_labels(std::span<const int> y) {
  bool pos = false;
  bool neg = false;
  for (int v : y) {
    if (v == 1) {
      pos = true;
    } else if (v == -1) {
      neg = true;
    } else {
      throw std::invalid_argument("binary labels must be +1 or -1, got " + std::to_string(v));
    }
  }
  if (!pos || !neg) throw std::invalid_argument("train_binary needs both classes");
}

}  // namespace

SvmModel train_binary(const KernelMatrix& kernel, std::span<const std::size_t> rows,
                      std::span<const int> y, double c, const SmoOptions& options) {
  if (rows.size() != y.size()) throw std::invalid_argument("train_binary: rows/labels mismatch");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("train_binary: c must be > 0");
  check_labels(y);
  for (std::size_t r : rows) {
    if (r >= kernel.size()) throw std::out_of_range("train_binary: row outside kernel matrix");
  }
  return SmoSolver(kernel, rows, y, c, options).solve();
}

SvmModel train_binary(std::span<const std::vector<double>> X, std::span<const int> y,
                      const KernelSpec& spec, double c, double tol, int max_passes,
                      std::uint64_t seed) {
  for (const auto& row : X) {
    for (double v : row) {
      if (!std::isfinite(v)) throw NumericError("train_binary: non-finite feature value");
    }
  }
  const KernelMatrix kernel(X, spec);
  std::vector<std::size_t> rows(X.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  SmoOptions options;
  options.tol = tol;
  options.max_passes = max_passes;
  options.seed = seed;
  return train_binary(kernel, rows, y, c, options);
}

double decision(const SvmModel& model, const KernelMatrix& kernel, std::size_t row) {
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_indices.size(); ++i) {
    f += model.dual_coeffs[i] * kernel(model.support_indices[i], row);
  }
  return f;
}

double decision(const SvmModel& model, std::span<const std::vector<double>> training_rows,
                std::span<const double> x) {
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_indices.size(); ++i) {
    f += model.dual_coeffs[i] * kernel_eval(model.kernel, training_rows[model.support_indices.at(i)], x);
  }
  return f;
}

double kkt_violation(const SvmModel& model, const KernelMatrix& kernel,
                     std::span<const std::size_t> rows, std::span<const int> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double alpha = 0.0;
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
      if (model.support_indices[s] == rows[i]) alpha = std::abs(model.dual_coeffs[s]);
    }
    const double margin = y[i] * decision(model, kernel, rows[i]);
    double v = 0.0;
    if (alpha <= 0.0) {
      v = std::max(0.0, 1.0 - margin);
    } else if (alpha >= model.c) {
      v = std::max(0.0, margin - 1.0);
    } else {
      v = std::abs(margin - 1.0);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

double dual_objective(const KernelMatrix& kernel, std::span<const int> y,
                      std::span<const double> alphas, double c) {
  if (alphas.size() != y.size() || alphas.size() > kernel.size()) {
    throw std::invalid_argument("dual_objective: size mismatch");
  }
  double total = 0.0;
  double balance = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < 0.0 || alphas[i] > c) {
      throw std::invalid_argument("dual_objective: alpha " + std::to_string(i) + " outside [0, c]");
    }
    total += alphas[i];
    balance += alphas[i] * y[i];
  }
  if (std::abs(balance) > 1e-9 * std::max(1.0, total)) {
    throw std::invalid_argument("dual_objective: sum(alpha_i y_i) != 0");
  }
  double quad = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] == 0.0) continue;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      quad += alphas[i] * alphas[j] * y[i] * y[j] * kernel(i, j);
    }
  }
  return total - 0.5 * quad;
}

double dual_objective(std::span<const std::vector<double>> X, std::span<const int> y,
                      const KernelSpec& spec, std::span<const double> alphas, double c) {
  return dual_objective(KernelMatrix(X, spec), y, alphas, c);
}

namespace {

SvmModel constant_model(const KernelSpec& spec, double c, double sign) {
  SvmModel m;
  m.kernel = spec;
  m.c = c;
  m.bias = sign;
  return m;
}

}  // namespace

MulticlassModel train_multiclass(const KernelMatrix& kernel, std::span<const std::size_t> rows,
                                 std::span<const int> labels, int num_classes, double c,
                                 const SmoOptions& options) {
  if (num_classes < 2) throw std::invalid_argument("train_multiclass: need >= 2 classes");
  MulticlassModel out;
  out.num_classes = num_classes;
  std::vector<std::size_t> pair_rows;
  std::vector<int> pair_y;
  for (int a = 0; a < num_classes; ++a) {
    for (int b = a + 1; b < num_classes; ++b) {
      pair_rows.clear();
      pair_y.clear();
      bool has_a = false;
      bool has_b = false;
      for (std::size_t r : rows) {
        const int label = labels[r];
        if (label == a || label == b) {
          pair_rows.push_back(r);
          pair_y.push_back(label == b ? 1 : -1);
          has_a |= label == a;
          has_b |= label == b;
        }
      }
      PairModel pm;
      pm.negative_class = a;
      pm.positive_class = b;
      if (has_a && has_b) {
        pm.model = train_binary(kernel, pair_rows, pair_y, c, options);
      } else {
        pm.model = constant_model(kernel.spec(), c, has_b ? 1.0 : -1.0);
      }
      out.pairs.push_back(std::move(pm));
    }
  }
  return out;
}

MulticlassModel train_multiclass(std::vector<std::vector<double>> X, std::span<const int> labels,
                                 int num_classes, const KernelSpec& spec, double c,
                                 const SmoOptions& options) {
  if (X.size() != labels.size()) throw std::invalid_argument("train_multiclass: X/labels mismatch");
  for (const auto& row : X) {
    for (double v : row) {
      if (!std::isfinite(v)) throw NumericError("train_multiclass: non-finite feature value");
    }
  }
  auto shared = std::make_shared<const std::vector<std::vector<double>>>(std::move(X));
  const KernelMatrix kernel(*shared, spec);
  std::vector<std::size_t> rows(shared->size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  MulticlassModel model = train_multiclass(kernel, rows, labels, num_classes, c, options);
  model.training_rows = std::move(shared);
  return model;
}

int majority_vote(std::span<const int> votes) {
  if (votes.empty()) throw std::invalid_argument("majority_vote: no classes");
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

int predict(const MulticlassModel& model, const KernelMatrix& kernel, std::size_t row) {
  std::vector<int> votes(static_cast<std::size_t>(model.num_classes), 0);
  for (const auto& pm : model.pairs) {
    const double f = decision(pm.model, kernel, row);
    ++votes[static_cast<std::size_t>(f > 0.0 ? pm.positive_class : pm.negative_class)];
  }
  return majority_vote(votes);
}

int predict(const MulticlassModel& model, std::span<const double> x) {
  if (!model.training_rows) {
    throw std::logic_error("predict: model has no training rows attached");
  }
  const auto& rows = *model.training_rows;
  if (!rows.empty() && rows.front().size() != x.size()) {
    throw std::invalid_argument("predict: vector length " + std::to_string(x.size()) +
                                " does not match training length " +
                                std::to_string(rows.front().size()));
  }
  std::vector<int> votes(static_cast<std::size_t>(model.num_classes), 0);
  for (const auto& pm : model.pairs) {
    const double f = decision(pm.model, rows, x);
    ++votes[static_cast<std::size_t>(f > 0.0 ? pm.positive_class : pm.negative_class)];
  }
  return majority_vote(votes);
}

namespace {

std::string shortest(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_double(const std::string& token) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw DataError("model: malformed number '" + token + "'");
  }
  return x;
}

std::string expect_key(std::istream& in, const char* key) {
  std::string k;
  std::string v;
  if (!(in >> k >> v) || k != key) {
    throw DataError(std::string("model: expected '") + key + "', got '" + k + "'");
  }
  return v;
}

}  // namespace

void write_model(std::ostream& out, const SvmModel& model, int negative_class,
                 int positive_class) {
  out << "svm-model v1\n"
      << "kernel " << to_string(model.kernel.kind) << '\n'
      << "gamma " << shortest(model.kernel.gamma) << '\n'
      << "c " << shortest(model.c) << '\n'
      << "classes " << negative_class << ' ' << positive_class << '\n'
      << "converged " << (model.converged ? 1 : 0) << '\n'
      << "support_vectors " << model.support_indices.size() << '\n';
  for (std::size_t i = 0; i < model.support_indices.size(); ++i) {
    out << model.support_indices[i] << ' ' << shortest(model.dual_coeffs[i]) << '\n';
  }
  out << "bias " << shortest(model.bias) << '\n';
}

SvmModel read_model(std::istream& in, int* negative_class, int* positive_class) {
  std::string magic;
  std::string version;
  if (!(in >> magic >> version) || magic != "svm-model" || version != "v1") {
    throw DataError("model: missing 'svm-model v1' header");
  }
  SvmModel m;
  m.kernel.kind = parse_kernel_kind(expect_key(in, "kernel"));
  m.kernel.gamma = parse_double(expect_key(in, "gamma"));
  m.c = parse_double(expect_key(in, "c"));
  std::string key;
  int a = 0;
  int b = 0;
  if (!(in >> key >> a >> b) || key != "classes") throw DataError("model: expected 'classes'");
  if (negative_class) *negative_class = a;
  if (positive_class) *positive_class = b;
  m.converged = expect_key(in, "converged") == "1";
  const std::size_t count = std::stoull(expect_key(in, "support_vectors"));
  m.support_indices.resize(count);
  m.dual_coeffs.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string coeff;
    if (!(in >> m.support_indices[i] >> coeff)) throw DataError("model: truncated support vectors");
    m.dual_coeffs[i] = parse_double(coeff);
  }
  m.bias = parse_double(expect_key(in, "bias"));
  return m;
}

void write_model(std::ostream& out, const MulticlassModel& model) {
  out << "multiclass-model v1\n"
      << "num_classes " << model.num_classes << '\n'
      << "pairs " << model.pairs.size() << '\n';
  for (const auto& pm : model.pairs) {
    write_model(out, pm.model, pm.negative_class, pm.positive_class);
  }
}

MulticlassModel read_multiclass_model(std::istream& in) {
  std::string magic;
  std::string version;
  if (!(in >> magic >> version) || magic != "multiclass-model" || version != "v1") {
    throw DataError("model: missing 'multiclass-model v1' header");
  }
  MulticlassModel m;
  m.num_classes = std::stoi(expect_key(in, "num_classes"));
  const std::size_t count = std::stoull(expect_key(in, "pairs"));
  for (std::size_t i = 0; i < count; ++i) {
    PairModel pm;
    pm.model = read_model(in, &pm.negative_class, &pm.positive_class);
    m.pairs.push_back(std::move(pm));
  }
  return m;
}

}  // namespace ldp
