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

// Local Degree Profile features.
//
// Each node v gets (deg(v), min DN(v), max DN(v), mean DN(v), std DN(v)) where
// DN(v) is the multiset of its neighbors' degrees. Every channel is scaled into
// [0,1] and summarized over the graph by a histogram or an empirical
// distribution function sampled at `bins` points; the blocks are concatenated
// in channel order into one GraphVector.

#ifndef LDP_FEATURES_HPP_
#define LDP_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldp/graph.hpp"

namespace ldp {

enum class Aggregation { Histogram, EDF };
enum class Normalization { PerGraph, Dataset };
enum class Scale { Linear, Log };

std::string_view to_string(Aggregation a);
std::string_view to_string(Normalization n);
std::string_view to_string(Scale s);
Aggregation parse_aggregation(std::string_view s);
Normalization parse_normalization(std::string_view s);
Scale parse_scale(std::string_view s);

inline constexpr int kDefaultBinGrid[] = {30, 50, 70, 100};

struct FeatureConfig {
  int bins = 50;
  Aggregation aggregation = Aggregation::Histogram;
  Normalization normalization = Normalization::PerGraph;
  Scale scale = Scale::Linear;
  bool use_sum = false;
  bool use_label = false;
  bool use_distance = false;

  std::size_t channel_count() const {
    return 5 + static_cast<std::size_t>(use_sum) + static_cast<std::size_t>(use_label) +
           static_cast<std::size_t>(use_distance);
  }
  std::size_t dimension() const { return channel_count() * static_cast<std::size_t>(bins); }

  // Compact one-line form, e.g. "bins=50 aggregation=histogram ...".
  std::string describe() const;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// Throws ConfigError when bins < 2 or use_label is set on an unlabeled dataset.
void validate(const FeatureConfig& config, const Dataset& d);

// Plain-text key=value form; '#' starts a comment. Unknown keys are an error,
// missing keys keep their defaults.
void write_feature_config(std::ostream& out, const FeatureConfig& config);
FeatureConfig read_feature_config(std::istream& in);

struct NodeProfile {
  double deg = 0.0;
  double dn_min = 0.0;
  double dn_max = 0.0;
  double dn_mean = 0.0;
  double dn_std = 0.0;  // population standard deviation
  std::optional<double> dn_sum;
  std::optional<double> label_value;
};

// Throws std::out_of_range for v >= node_count, ConfigError when the label
// channel is requested on an unlabeled graph. Isolated nodes report 0 for all
// DN statistics.
NodeProfile node_profile(const Graph& g, std::size_t v, const FeatureConfig& config);

// Max degree over g (PerGraph) or over every graph of d (Dataset); under Log
// scale the result is log(1 + max). Returns 1 when the maximum is 0.
double normalization_denominator(const Dataset& d, const Graph& g, const FeatureConfig& config);

// Histogram: uniform cells over [0,1], left-closed except the last cell which
// also holds 1.0, divided by values.size(). EDF: entry k-1 is the fraction of
// values <= k/bins. Empty input gives zeros. Throws std::domain_error for
// values outside [0,1] (or NaN).
std::vector<double> aggregate(std::span<const double> values, int bins, Aggregation mode);

// Shortest-path distances over unordered connected pairs u < v, sorted.
std::vector<std::uint32_t> distance_multiset(const Graph& g);

using GraphVector = std::vector<double>;

// Dataset-wide maxima needed for Dataset-scope normalization, computed once.
class FeatureContext {
 public:
  FeatureContext(const Dataset& d, const FeatureConfig& config);

  const FeatureConfig& config() const { return config_; }
  GraphVector featurize(const Graph& g) const;

 private:
  FeatureConfig config_;
  std::size_t dataset_max_degree_ = 0;
  double dataset_max_sum_ = 0.0;
  int num_node_label_values_ = 0;
};

GraphVector featurize(const Dataset& d, const Graph& g, const FeatureConfig& config);

// One vector per graph in dataset order. threads <= 1 runs inline; output is
// identical for every thread count.
std::vector<GraphVector> featurize_dataset(const Dataset& d, const FeatureConfig& config,
                                           unsigned threads = 1);

// CSV rows: class label, then the vector entries with 9 significant digits.
void write_feature_csv(std::ostream& out, std::span<const GraphVector> vectors,
                       std::span<const int> labels);

struct FeatureTable {
  std::vector<GraphVector> vectors;
  std::vector<int> labels;
};
FeatureTable read_feature_csv(std::istream& in);

}  // namespace ldp

#endif  // LDP_FEATURES_HPP_
