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

// Soft-margin SVM trained in the dual by sequential minimal optimization,
// with linear and Gaussian kernels and a one-vs-one multiclass wrapper.
//
// The binary decision function is f(x) = sum_i coef_i * k(x_i, x) + bias with
// coef_i = alpha_i * y_i and 0 <= alpha_i <= c.

#ifndef LDP_SVM_HPP_
#define LDP_SVM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace ldp {

enum class KernelKind { Linear, Gaussian };

std::string_view to_string(KernelKind k);
KernelKind parse_kernel_kind(std::string_view s);

struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  double gamma = 1.0;  // Gaussian only: k(x,y) = exp(-gamma * |x-y|^2)

  static KernelSpec linear() { return {KernelKind::Linear, 1.0}; }
  static KernelSpec gaussian(double gamma) { return {KernelKind::Gaussian, gamma}; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

// Throws std::invalid_argument on length mismatch.
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

// Kernel values over a fixed set of rows. Up to `cache_limit` rows the full
// matrix is precomputed; beyond that entries are evaluated on demand from the
// rows, which must then outlive the matrix.
class KernelMatrix {
 public:
  static constexpr std::size_t kDefaultCacheLimit = 20000;

  KernelMatrix(std::span<const std::vector<double>> rows, const KernelSpec& spec,
               unsigned threads = 1, std::size_t cache_limit = kDefaultCacheLimit);

  // Gaussian matrix from precomputed pairwise squared distances (row-major n*n).
  static KernelMatrix from_squared_distances(std::span<const double> squared, std::size_t n,
                                             double gamma);

  double operator()(std::size_t i, std::size_t j) const {
    return cached_ ? values_[i * n_ + j] : evaluate(i, j);
  }
  std::size_t size() const { return n_; }
  bool cached() const { return cached_; }
  const KernelSpec& spec() const { return spec_; }

 private:
  KernelMatrix() = default;
  double evaluate(std::size_t i, std::size_t j) const;

  KernelSpec spec_;
  std::size_t n_ = 0;
  bool cached_ = false;
  std::vector<double> values_;
  std::span<const std::vector<double>> rows_;
};

// Row-major n*n matrix of |x_i - x_j|^2.
std::vector<double> squared_distance_matrix(std::span<const std::vector<double>> rows,
                                            unsigned threads = 1);

struct SmoOptions {
  double tol = 1e-3;
  // Training stops after this many consecutive full sweeps without an update.
  int max_passes = 10;
  std::uint64_t seed = 0;
  // Hard cap on sweeps (full or non-bound); hitting it clears `converged`.
  std::size_t max_sweeps = 1'000'000;
  // Called with the full alpha vector after every accepted pair update.
  std::function<void(std::span<const double>)> observer;
};

struct SvmModel {
  // Rows of the kernel matrix (or training set) with nonzero alpha.
  std::vector<std::size_t> support_indices;
  std::vector<double> dual_coeffs;  // alpha_i * y_i
  double bias = 0.0;
  KernelSpec kernel;
  double c = 1.0;
  bool converged = true;

  friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

// Trains on the kernel-matrix rows listed in `rows` with labels y (+1/-1),
// aligned with `rows`. Throws std::invalid_argument for single-class input,
// c <= 0, or misaligned inputs.
SvmModel train_binary(const KernelMatrix& kernel, std::span<const std::size_t> rows,
                      std::span<const int> y, double c, const SmoOptions& options = {});

// Convenience form over raw vectors; support indices refer to positions in X.
// Throws NumericError for non-finite feature values.
SvmModel train_binary(std::span<const std::vector<double>> X, std::span<const int> y,
                      const KernelSpec& spec, double c, double tol = 1e-3, int max_passes = 10,
                      std::uint64_t seed = 0);

double decision(const SvmModel& model, const KernelMatrix& kernel, std::size_t row);
double decision(const SvmModel& model, std::span<const std::vector<double>> training_rows,
                std::span<const double> x);

// Largest KKT violation of the model over the given training rows:
// alpha = 0 needs y*f >= 1, alpha = c needs y*f <= 1, free alphas y*f = 1.
double kkt_violation(const SvmModel& model, const KernelMatrix& kernel,
                     std::span<const std::size_t> rows, std::span<const int> y);

// sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j k(x_i, x_j). Throws
// std::invalid_argument when alphas leave [0, c] or sum(alpha_i y_i) != 0.
double dual_objective(const KernelMatrix& kernel, std::span<const int> y,
                      std::span<const double> alphas,
                      double c = std::numeric_limits<double>::infinity());
double dual_objective(std::span<const std::vector<double>> X, std::span<const int> y,
                      const KernelSpec& spec, std::span<const double> alphas,
                      double c = std::numeric_limits<double>::infinity());

// One binary model per unordered class pair (a < b); +1 stands for b.
struct PairModel {
  int negative_class = 0;
  int positive_class = 1;
  SvmModel model;
};

struct MulticlassModel {
  int num_classes = 0;
  std::vector<PairModel> pairs;
  // Present when trained from raw vectors; needed by predict(model, x).
  std::shared_ptr<const std::vector<std::vector<double>>> training_rows;
};

// `labels` is indexed by kernel row. Pairs with one class absent from `rows`
// become constant models voting for the present class.
MulticlassModel train_multiclass(const KernelMatrix& kernel, std::span<const std::size_t> rows,
                                 std::span<const int> labels, int num_classes, double c,
                                 const SmoOptions& options = {});
MulticlassModel train_multiclass(std::vector<std::vector<double>> X, std::span<const int> labels,
                                 int num_classes, const KernelSpec& spec, double c,
                                 const SmoOptions& options = {});

// Majority vote over pair models; decision > 0 votes for the larger class id,
// ties go to the smallest tied class id.
int predict(const MulticlassModel& model, const KernelMatrix& kernel, std::size_t row);
int predict(const MulticlassModel& model, std::span<const double> x);

// Vote tally -> class, with the smallest-id tie rule.
int majority_vote(std::span<const int> votes);

// Plain-text serialization; doubles are written in shortest round-trip form.
void write_model(std::ostream& out, const SvmModel& model, int negative_class = 0,
                 int positive_class = 1);
SvmModel read_model(std::istream& in, int* negative_class = nullptr,
                    int* positive_class = nullptr);
void write_model(std::ostream& out, const MulticlassModel& model);
MulticlassModel read_multiclass_model(std::istream& in);

}  // namespace ldp

#endif  // LDP_SVM_HPP_
