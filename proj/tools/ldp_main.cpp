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

// ldp: command-line driver for dataset statistics, featurization and
// cross-validated evaluation.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 numeric failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldp/cv.hpp"
#include "ldp/error.hpp"
#include "ldp/experiment.hpp"
#include "ldp/features.hpp"
#include "ldp/graph.hpp"
#include "ldp/tu_format.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CommonOptions {
  std::vector<std::string> datasets;
  std::string data_dir;
  std::string out_dir = "results";
  unsigned threads = 1;
};

struct FeatureOptions {
  std::vector<int> bins;
  std::vector<std::string> aggregations;
  std::vector<std::string> normalizations;
  std::vector<std::string> scales;
  bool use_sum = false;
  std::string config_file;
};

struct EvalOptions {
  std::vector<std::string> variants = {"base"};
  std::uint64_t seed = 0;
  int folds = 10;
  int reps = 10;
  std::vector<double> c_grid = ldp::kDefaultCGrid;
  std::vector<double> gamma_grid = ldp::kDefaultGammaGrid;
  double tol = 1e-3;
  int max_passes = 10;
};

std::string default_data_dir() {
  if (const char* env = std::getenv("LDP_DATA_DIR"); env && *env) return env;
  return "data";
}

ldp::Dataset load(const CommonOptions& common, const std::string& name) {
  return ldp::parse_tu_dataset(fs::path(common.data_dir) / name, name);
}

std::ofstream open_output(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ldp::DataError("cannot write " + path.string());
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_all(const std::vector<std::string>& names, Parse parse) {
  std::vector<T> out;
  for (const auto& n : names) out.push_back(parse(n));
  return out;
}

std::vector<ldp::Aggregation> aggregations_of(const FeatureOptions& f) {
  if (f.aggregations.empty()) return {ldp::Aggregation::Histogram, ldp::Aggregation::EDF};
  return parse_all<ldp::Aggregation>(f.aggregations, ldp::parse_aggregation);
}

std::vector<ldp::Normalization> normalizations_of(const FeatureOptions& f) {
  if (f.normalizations.empty()) return {ldp::Normalization::PerGraph, ldp::Normalization::Dataset};
  return parse_all<ldp::Normalization>(f.normalizations, ldp::parse_normalization);
}

std::vector<ldp::Scale> scales_of(const FeatureOptions& f) {
  if (f.scales.empty()) return {ldp::Scale::Linear, ldp::Scale::Log};
  return parse_all<ldp::Scale>(f.scales, ldp::parse_scale);
}

std::vector<int> bins_of(const FeatureOptions& f) {
  if (f.bins.empty()) return {std::begin(ldp::kDefaultBinGrid), std::end(ldp::kDefaultBinGrid)};
  return f.bins;
}

ldp::FeatureConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ldp::DataError("missing file: " + path);
  return ldp::read_feature_config(in);
}

void add_common(CLI::App* cmd, CommonOptions& common, bool many_datasets) {
  auto* opt = cmd->add_option("--dataset", common.datasets,
                              many_datasets ? "Dataset names (comma separated)" : "Dataset name")
                  ->required()
                  ->delimiter(',');
  if (!many_datasets) opt->expected(1);
  cmd->add_option("--data-dir", common.data_dir,
                  "Directory containing one subdirectory per dataset")
      ->capture_default_str();
  cmd->add_option("--out", common.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--threads", common.threads, "Worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
}

void add_features(CLI::App* cmd, FeatureOptions& f, bool grid) {
  cmd->add_option("--bins", f.bins, grid ? "Bin counts to search (default 30,50,70,100)"
                                         : "Bin count (default 50)")
      ->delimiter(',');
  cmd->add_option("--aggregation", f.aggregations,
                  grid ? "histogram,edf (default both)" : "histogram|edf")
      ->delimiter(',');
  cmd->add_option("--normalization", f.normalizations,
                  grid ? "graph,dataset (default both)" : "graph|dataset")
      ->delimiter(',');
  cmd->add_option("--scale", f.scales, grid ? "linear,log (default both)" : "linear|log")
      ->delimiter(',');
  cmd->add_flag("--use-sum", f.use_sum, "Add the neighbor-degree sum channel");
  cmd->add_option("--config", f.config_file,
                  "Feature config file (key = value); replaces the feature flags");
}

void add_eval(CLI::App* cmd, EvalOptions& e, bool many_variants) {
  auto* opt = cmd->add_option("--variant", e.variants,
                              many_variants ? "Variants: base,star,label,distance"
                                            : "Variant: base|star|label|distance")
                  ->delimiter(',')
                  ->capture_default_str();
  if (!many_variants) opt->expected(1);
  cmd->add_option("--seed", e.seed, "Base seed for all randomness")->capture_default_str();
  cmd->add_option("--folds", e.folds, "Cross-validation folds")->capture_default_str();
  cmd->add_option("--reps", e.reps, "Cross-validation repetitions")->capture_default_str();
  cmd->add_option("--c-grid", e.c_grid, "SVM C values")->delimiter(',')->capture_default_str();
  cmd->add_option("--gamma-grid", e.gamma_grid, "Gaussian kernel gamma values")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--tol", e.tol, "SMO KKT tolerance")->capture_default_str();
  cmd->add_option("--max-passes", e.max_passes, "SMO quiet sweeps before stopping")
      ->capture_default_str();
}

int run_stats(const CommonOptions& common) {
  const auto start = Clock::now();
  std::vector<std::vector<std::string>> rows = {
      {"Dataset", "Graphs", "Classes", "AvgNodes", "AvgEdges", "Labels"}};
  for (const auto& name : common.datasets) {
    const ldp::Dataset d = load(common, name);
    ldp::validate(d);
    const ldp::DatasetStats s = ldp::dataset_stats(d);
    char nodes[32];
    char edges[32];
    std::snprintf(nodes, sizeof nodes, "%.2f", s.avg_nodes);
    std::snprintf(edges, sizeof edges, "%.2f", s.avg_edges);
    rows.push_back({name, std::to_string(s.graph_count), std::to_string(s.class_count), nodes,
                    edges, std::to_string(s.label_count)});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream text;
  std::ostringstream csv;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i == 0) {
        text << r[i] << std::string(width[i] - r[i].size(), ' ');
      } else {
        text << "  " << std::string(width[i] - r[i].size(), ' ') << r[i];
        csv << ',';
      }
      csv << r[i];
    }
    text << '\n';
    csv << '\n';
  }
  std::cout << text.str();
  open_output(fs::path(common.out_dir) / "stats.csv") << csv.str();
  std::cerr << "wall time: " << seconds_since(start) << " s\n";
  return kOk;
}

int run_featurize(const CommonOptions& common, const FeatureOptions& f, bool use_label,
                  bool use_distance) {
  const auto start = Clock::now();
  ldp::FeatureConfig config;
  if (!f.config_file.empty()) {
    config = read_config_file(f.config_file);
  } else {
    if (f.bins.size() > 1 || f.aggregations.size() > 1 || f.normalizations.size() > 1 ||
        f.scales.size() > 1) {
      throw ldp::ConfigError("featurize takes a single value per feature option");
    }
    if (!f.bins.empty()) config.bins = f.bins.front();
    if (!f.aggregations.empty()) config.aggregation = ldp::parse_aggregation(f.aggregations[0]);
    if (!f.normalizations.empty()) {
      config.normalization = ldp::parse_normalization(f.normalizations[0]);
    }
    if (!f.scales.empty()) config.scale = ldp::parse_scale(f.scales[0]);
    config.use_sum = f.use_sum;
    config.use_label = use_label;
    config.use_distance = use_distance;
  }
  const std::string& name = common.datasets.front();
  const ldp::Dataset d = load(common, name);
  ldp::validate(d);
  const auto fstart = Clock::now();
  const auto vectors = ldp::featurize_dataset(d, config, common.threads);
  const double featurize_seconds = seconds_since(fstart);

  const fs::path out = common.out_dir;
  const auto labels = d.class_labels();
  auto csv = open_output(out / (name + "_features.csv"));
  ldp::write_feature_csv(csv, vectors, labels);
  auto cfg = open_output(out / (name + "_features.cfg"));
  ldp::write_feature_config(cfg, config);

  std::cout << name << ": " << vectors.size() << " vectors of length " << config.dimension()
            << " written to " << (out / (name + "_features.csv")).string() << '\n';
  std::cerr << "featurization time: " << featurize_seconds << " s\n"
            << "wall time: " << seconds_since(start) << " s\n";
  return kOk;
}

int run_evaluate(const CommonOptions& common, const FeatureOptions& f, const EvalOptions& e) {
  const auto start = Clock::now();
  double featurize_seconds = 0.0;

  ldp::CvConfig base;
  base.folds = e.folds;
  base.repetitions = e.reps;
  base.seed = e.seed;
  base.c_grid = e.c_grid;
  base.gamma_grid = e.gamma_grid;
  base.solver_tol = e.tol;
  base.solver_max_passes = e.max_passes;
  base.threads = common.threads;

  const auto variants = parse_all<ldp::Variant>(e.variants, ldp::parse_variant);
  std::optional<ldp::FeatureConfig> fixed;
  if (!f.config_file.empty()) fixed = read_config_file(f.config_file);

  const fs::path out = common.out_dir;
  std::vector<ldp::ReportEntry> entries;
  for (const auto& name : common.datasets) {
    const ldp::Dataset d = load(common, name);
    ldp::validate(d);
    for (ldp::Variant v : variants) {
      if (v == ldp::Variant::PlusLabel && !d.has_node_labels()) {
        throw ldp::ConfigError("variant 'label' needs node labels, dataset '" + name +
                               "' has none");
      }
      std::vector<ldp::FeatureConfig> grid;
      if (fixed) {
        ldp::FeatureConfig c = *fixed;
        c.use_label = v == ldp::Variant::PlusLabel;
        c.use_distance = v == ldp::Variant::PlusDistance;
        grid.push_back(c);
      } else {
        grid = ldp::variant_feature_grid(v, bins_of(f), aggregations_of(f), normalizations_of(f),
                                         scales_of(f));
        for (auto& c : grid) c.use_sum = f.use_sum;
      }
      const ldp::CvConfig config = ldp::variant_cv_config(v, base);
      const ldp::GridSearchResult result = ldp::grid_search(d, grid, config);
      featurize_seconds += result.featurize_seconds;

      const std::string stem = name + "_" + std::string(ldp::variant_flag(v));
      {
        auto folds = open_output(out / (stem + "_folds.csv"));
        ldp::write_fold_csv(folds, result.best);
        auto audit = open_output(out / (stem + "_audit.csv"));
        ldp::write_audit_csv(audit, result.candidates);
        auto features = open_output(out / (stem + "_features.csv"));
        ldp::write_feature_csv(features,
                               ldp::featurize_dataset(d, result.best.feature_config, common.threads),
                               d.class_labels());
        auto cfg = open_output(out / (stem + "_features.cfg"));
        ldp::write_feature_config(cfg, result.best.feature_config);
        const std::string line = ldp::summary_line(stem, result.best);
        open_output(out / (stem + "_summary.txt")) << line << '\n';
        std::cout << line << '\n';
        for (const auto& w : result.best.warnings) std::cerr << "warning: " << w << '\n';
      }
      entries.push_back({name, v, result.best.mean_accuracy});
    }
  }
  const ldp::FormattedTable table = ldp::report_table(entries);
  open_output(out / "table.txt") << table.text;
  open_output(out / "table.csv") << table.csv;
  std::cout << '\n' << table.text;
  std::cerr << "featurization time: " << featurize_seconds << " s\n"
            << "wall time: " << seconds_since(start) << " s\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local degree profile graph classification baseline"};
  app.require_subcommand(1);

  CommonOptions common;
  common.data_dir = default_data_dir();
  FeatureOptions features;
  EvalOptions eval;
  bool use_label = false;
  bool use_distance = false;

  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  add_common(stats, common, true);

  auto* featurize = app.add_subcommand("featurize", "Write per-graph feature vectors as CSV");
  add_common(featurize, common, false);
  add_features(featurize, features, false);
  featurize->add_flag("--use-label", use_label, "Add the node-label channel");
  featurize->add_flag("--use-distance", use_distance, "Add the shortest-path distance channel");

  auto* evaluate = app.add_subcommand("evaluate", "Nested cross-validation on one dataset");
  add_common(evaluate, common, false);
  add_features(evaluate, features, true);
  add_eval(evaluate, eval, false);

  auto* grid = app.add_subcommand("grid", "Evaluate datasets x variants and build the table");
  add_common(grid, common, true);
  add_features(grid, features, true);
  add_eval(grid, eval, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*stats) return run_stats(common);
    if (*featurize) return run_featurize(common, features, use_label, use_distance);
    return run_evaluate(common, features, eval);
  } catch (const ldp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ldp::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const ldp::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}
