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

// Repeated stratified k-fold cross-validation with nested model selection.
//
// Each repetition r reshuffles the folds with seed + r. For every outer fold
// the SVM hyperparameters (kernel, c, gamma) are chosen by an inner stratified
// CV that only sees the training split; the chosen model is then retrained on
// the whole training split and scored on the held-out fold.

#ifndef LDP_CV_HPP_
#define LDP_CV_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ldp/features.hpp"
#include "ldp/graph.hpp"
#include "ldp/svm.hpp"

namespace ldp {

inline const std::vector<double> kDefaultCGrid = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
inline const std::vector<double> kDefaultGammaGrid = {1e-2, 1e-1, 1.0, 1e1, 1e2};

struct CvConfig {
  int folds = 10;
  int repetitions = 10;
  std::uint64_t seed = 0;
  std::vector<double> c_grid = kDefaultCGrid;
  std::vector<double> gamma_grid = kDefaultGammaGrid;
  std::vector<KernelKind> kernel_kinds = {KernelKind::Linear, KernelKind::Gaussian};
  int inner_folds = 3;
  double solver_tol = 1e-3;
  int solver_max_passes = 10;
  unsigned threads = 1;
};

// Throws ConfigError for folds < 2, empty grids, or non-positive grid values.
void validate(const CvConfig& config);

struct HyperParams {
  KernelSpec kernel;
  double c = 1.0;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

// Candidate order: for each kind in config order, Linear -> every c,
// Gaussian -> every gamma, then every c. Earlier candidates win ties.
std::vector<HyperParams> hyperparameter_candidates(const CvConfig& config);

// Stratified partition into `folds` sorted index sets. Each class is shuffled
// (Fisher-Yates, mt19937_64 seeded with `seed`) and dealt round-robin, the
// dealing position carrying over from class to class. Classes smaller than
// `folds` are still dealt; a message is appended to `warnings` if given.
// Throws ConfigError for folds < 2 or folds > labels.size().
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, int folds,
                                                       std::uint64_t seed,
                                                       std::vector<std::string>* warnings = nullptr);

// Fraction of `test_rows` whose predicted class matches labels[row].
double accuracy(const MulticlassModel& model, const KernelMatrix& kernel,
                std::span<const std::size_t> test_rows, std::span<const int> labels);

// Inner-CV accuracy (pooled over inner folds) of one hyperparameter setting,
// using only `train_rows`. `labels` is indexed by kernel row.
double inner_cv_accuracy(const KernelMatrix& kernel, std::span<const std::size_t> train_rows,
                         std::span<const int> labels, int num_classes, double c,
                         const CvConfig& config, std::uint64_t seed);

struct AuditRecord {
  FeatureConfig feature;
  HyperParams params;
  int repetition = 0;
  int fold = 0;
  double inner_accuracy = 0.0;
  double test_accuracy = 0.0;
  bool selected = false;
};

struct CvReport {
  FeatureConfig feature_config;
  int folds = 0;
  int repetitions = 0;
  // accuracies[r][f]: held-out accuracy of fold f in repetition r.
  std::vector<std::vector<double>> accuracies;
  std::vector<std::vector<HyperParams>> selected;
  double mean_accuracy = 0.0;
  // Population standard deviation of the per-repetition mean accuracies.
  double std_accuracy = 0.0;
  // Most frequently selected hyperparameters (earliest candidate on ties).
  HyperParams winning;
  std::vector<AuditRecord> audit;
  std::vector<std::string> warnings;
};

CvReport cross_validate(std::span<const GraphVector> vectors, std::span<const int> labels,
                        const FeatureConfig& feature_config, const CvConfig& config);

struct GridSearchResult {
  CvReport best;
  std::size_t best_index = 0;
  std::vector<CvReport> candidates;
  double featurize_seconds = 0.0;
};

// Featurizes `dataset` under each candidate and cross-validates it; the
// candidate with the highest mean accuracy wins (earliest on ties).
GridSearchResult grid_search(const Dataset& dataset, std::span<const FeatureConfig> candidates,
                             const CvConfig& config);

// Cartesian product bins x aggregation x normalization x scale with the given
// optional-channel flags.
std::vector<FeatureConfig> feature_grid(std::span<const int> bins,
                                        std::span<const Aggregation> aggregations,
                                        std::span<const Normalization> normalizations,
                                        std::span<const Scale> scales, bool use_sum,
                                        bool use_label, bool use_distance);

// "repetition,fold,accuracy,kernel,gamma,c" rows.
void write_fold_csv(std::ostream& out, const CvReport& report);
// One line: mean, std and winning hyperparameters.
std::string summary_line(const std::string& name, const CvReport& report);
// Every (feature config, kernel, c, gamma, repetition, fold, accuracy) tuple.
void write_audit_csv(std::ostream& out, std::span<const CvReport> reports);

}  // namespace ldp

#endif  // LDP_CV_HPP_
