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

#include <array>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "ldp/error.hpp"
#include "ldp/features.hpp"
#include "ldp/tu_format.hpp"
#include "support/test_support.hpp"

using namespace ldp;
using namespace ldp::testing;

namespace {

FeatureConfig config_with(int bins, Aggregation a = Aggregation::Histogram,
                          Normalization n = Normalization::PerGraph, Scale s = Scale::Linear) {
  FeatureConfig c;
  c.bins = bins;
  c.aggregation = a;
  c.normalization = n;
  c.scale = s;
  return c;
}

// Cell membership by exact rational comparison: x lies in cell k when
// k <= x*bins < k+1, with 1.0 in the last cell.
std::vector<double> histogram_oracle(const std::vector<double>& values, int bins) {
  std::vector<double> out(bins, 0.0);
  for (double x : values) {
    int cell = bins - 1;
    for (int k = 0; k < bins; ++k) {
      const double lo = static_cast<double>(k) / bins;
      const double hi = static_cast<double>(k + 1) / bins;
      if (x >= lo && (x < hi || k == bins - 1)) {
        cell = k;
        break;
      }
    }
    out[cell] += 1.0;
  }
  for (auto& v : out) v /= static_cast<double>(values.size());
  return out;
}

std::vector<double> edf_oracle(const std::vector<double>& values, int bins) {
  std::vector<double> out(bins, 0.0);
  for (int k = 1; k <= bins; ++k) {
    const double edge = static_cast<double>(k) / bins;
    int count = 0;
    for (double x : values) count += x <= edge ? 1 : 0;
    out[k - 1] = static_cast<double>(count) / static_cast<double>(values.size());
  }
  return out;
}

void check_profile(const NodeProfile& p, std::array<double, 5> expected) {
  CHECK(p.deg == expected[0]);
  CHECK(p.dn_min == expected[1]);
  CHECK(p.dn_max == expected[2]);
  CHECK(p.dn_mean == expected[3]);
  CHECK(p.dn_std == doctest::Approx(expected[4]).epsilon(1e-12));
}

void check_block_invariants(const GraphVector& v, const FeatureConfig& c) {
  REQUIRE(v.size() == c.dimension());
  for (std::size_t b = 0; b < c.channel_count(); ++b) {
    const auto first = v.begin() + static_cast<std::ptrdiff_t>(b * c.bins);
    double sum = 0.0;
    for (int k = 0; k < c.bins; ++k) {
      const double x = first[k];
      REQUIRE(x >= 0.0);
      REQUIRE(x <= 1.0);
      sum += x;
      if (c.aggregation == Aggregation::EDF && k > 0) REQUIRE(first[k - 1] <= x);
    }
    if (c.aggregation == Aggregation::Histogram) {
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    } else {
      CHECK(std::abs(first[c.bins - 1] - 1.0) <= 1e-9);
    }
  }
}

}  // namespace

TEST_CASE("node_profile examples") {
  const FeatureConfig c;
  for (NodeId v = 0; v < 3; ++v) check_profile(node_profile(triangle(), v, c), {2, 2, 2, 2, 0});
  check_profile(node_profile(star(3), 0, c), {3, 1, 1, 1, 0});
  check_profile(node_profile(star(3), 2, c), {1, 3, 3, 3, 0});
  check_profile(node_profile(path(4), 1, c), {2, 1, 2, 1.5, 0.5});
  check_profile(node_profile(isolated(1), 0, c), {0, 0, 0, 0, 0});
  CHECK_THROWS_AS(node_profile(path(4), 4, c), std::out_of_range);
}

TEST_CASE("node_profile optional fields") {
  FeatureConfig c;
  c.use_sum = true;
  CHECK(node_profile(star(3), 0, c).dn_sum == 3.0);
  CHECK_FALSE(node_profile(star(3), 0, FeatureConfig{}).dn_sum.has_value());
  c.use_label = true;
  CHECK_THROWS_AS(node_profile(star(3), 0, c), ConfigError);
  const Graph labeled = Graph::from_edges(2, EdgeList{{0, 1}}, 0, std::vector<int>{4, 2});
  CHECK(node_profile(labeled, 1, c).label_value == 2.0);
}

TEST_CASE("node_profile agrees with a naive adjacency-matrix computation") {
  std::mt19937_64 rng(2024);
  FeatureConfig c;
  c.use_sum = true;
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 1 + rng() % 8, 0.45);
    const auto naive = brute_force_profiles(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const NodeProfile p = node_profile(g, v, c);
      REQUIRE(p.deg == naive[v].deg);
      REQUIRE(p.dn_min == naive[v].dn_min);
      REQUIRE(p.dn_max == naive[v].dn_max);
      REQUIRE(std::abs(p.dn_mean - naive[v].dn_mean) <= 1e-12);
      REQUIRE(std::abs(p.dn_std - naive[v].dn_std) <= 1e-12);
      REQUIRE(*p.dn_sum == naive[v].dn_sum);
    }
  }
}

TEST_CASE("normalization_denominator") {
  const FeatureConfig graph_linear;
  CHECK(normalization_denominator(make_dataset({triangle()}), triangle(), graph_linear) == 2.0);

  const Dataset d = make_dataset({triangle(), star(3)});
  const FeatureConfig dataset_linear = config_with(50, Aggregation::Histogram, Normalization::Dataset);
  CHECK(normalization_denominator(d, triangle(), dataset_linear) == 3.0);

  CHECK(normalization_denominator(make_dataset({isolated(1)}), isolated(1), graph_linear) == 1.0);

  const FeatureConfig graph_log = config_with(50, Aggregation::Histogram, Normalization::PerGraph, Scale::Log);
  CHECK(normalization_denominator(d, star(3), graph_log) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("aggregate examples") {
  const std::vector<double> v = {0.0, 0.5, 1.0};
  const auto h = aggregate(v, 2, Aggregation::Histogram);
  CHECK(h[0] == doctest::Approx(1.0 / 3));
  CHECK(h[1] == doctest::Approx(2.0 / 3));
  const auto e = aggregate(v, 2, Aggregation::EDF);
  CHECK(e[0] == doctest::Approx(2.0 / 3));
  CHECK(e[1] == 1.0);
  for (std::size_t n : {1u, 4u, 17u}) {
    const std::vector<double> quarter(n, 0.25);
    CHECK(aggregate(quarter, 4, Aggregation::Histogram) == std::vector<double>{0, 1, 0, 0});
  }
  CHECK(aggregate({}, 3, Aggregation::Histogram) == std::vector<double>{0, 0, 0});
  CHECK(aggregate({}, 3, Aggregation::EDF) == std::vector<double>{0, 0, 0});
  const std::vector<double> bad = {1.5};
  CHECK_THROWS_AS(aggregate(bad, 3, Aggregation::Histogram), std::domain_error);
}

TEST_CASE("aggregate matches threshold oracles, including values on cell edges") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int bins = 2 + static_cast<int>(rng() % 99);
    std::vector<double> values;
    const std::size_t n = 1 + rng() % 40;
    for (std::size_t i = 0; i < n; ++i) {
      // Half the values are ratios a/b that land exactly on or near edges.
      if (rng() % 2 == 0) {
        const auto den = 1 + rng() % 120;
        values.push_back(static_cast<double>(rng() % (den + 1)) / static_cast<double>(den));
      } else {
        values.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
      }
    }
    CHECK(aggregate(values, bins, Aggregation::Histogram) == histogram_oracle(values, bins));
    CHECK(aggregate(values, bins, Aggregation::EDF) == edf_oracle(values, bins));
  }
}

TEST_CASE("featurize examples") {
  const Dataset d = make_dataset({triangle()});
  CHECK(featurize(d, triangle(), config_with(2)) ==
        GraphVector{0, 1, 0, 1, 0, 1, 0, 1, 1, 0});

  const Graph empty = isolated(4);
  const FeatureConfig c = config_with(5);
  const auto v = featurize(make_dataset({empty}), empty, c);
  for (std::size_t b = 0; b < 5; ++b) {
    CHECK(v[b * 5] == 1.0);
    for (int k = 1; k < 5; ++k) CHECK(v[b * 5 + k] == 0.0);
  }
}

TEST_CASE("featurize validates its configuration") {
  const Dataset d = make_dataset({triangle()});
  CHECK_THROWS_AS(featurize(d, triangle(), config_with(1)), ConfigError);
  FeatureConfig label = config_with(4);
  label.use_label = true;
  CHECK_THROWS_AS(featurize(d, triangle(), label), ConfigError);
}

TEST_CASE("featurize is invariant under node permutations") {
  std::mt19937_64 rng(99);
  const std::vector<FeatureConfig> configs = [] {
    std::vector<FeatureConfig> out;
    for (auto a : {Aggregation::Histogram, Aggregation::EDF}) {
      for (auto s : {Scale::Linear, Scale::Log}) {
        FeatureConfig c = config_with(13, a, Normalization::PerGraph, s);
        c.use_sum = true;
        c.use_label = true;
        c.use_distance = true;
        out.push_back(c);
      }
    }
    return out;
  }();
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_graph(rng, 1 + rng() % 25, 0.15 + 0.1 * (trial % 4), 3);
    const Dataset d = make_dataset({g});
    const FeatureConfig& c = configs[trial % configs.size()];
    const auto base = featurize(d, g, c);
    for (int p = 0; p < 5; ++p) {
      const Graph h = g.permuted(random_permutation(rng, g.node_count()));
      REQUIRE(featurize(d, h, c) == base);
    }
  }
}

TEST_CASE("block invariants on random graphs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Graph> graphs;
    for (int i = 0; i < 3; ++i) graphs.push_back(random_graph(rng, 1 + rng() % 20, 0.2, 4));
    const Dataset d = make_dataset(graphs);
    FeatureConfig c = config_with(3 + trial % 40, trial % 2 ? Aggregation::EDF : Aggregation::Histogram,
                                  trial % 3 ? Normalization::Dataset : Normalization::PerGraph,
                                  trial % 5 ? Scale::Linear : Scale::Log);
    c.use_sum = trial % 2 == 0;
    c.use_label = d.has_node_labels();
    c.use_distance = true;
    for (const auto& g : d.graphs) check_block_invariants(featurize(d, g, c), c);
  }
}

TEST_CASE("distance_multiset examples") {
  CHECK(distance_multiset(cycle(4)) == std::vector<std::uint32_t>{1, 1, 1, 1, 2, 2});
  CHECK(distance_multiset(triangle_with_pendant()) == std::vector<std::uint32_t>{1, 1, 1, 1, 2, 2});
  CHECK(distance_multiset(path(3)) == std::vector<std::uint32_t>{1, 1, 2});
  CHECK(distance_multiset(isolated(3)).empty());
  const Graph two_parts = make_graph(5, {{0, 1}, {2, 3}, {3, 4}});
  CHECK(distance_multiset(two_parts) == std::vector<std::uint32_t>{1, 1, 1, 2});
}

TEST_CASE("homometric pair: equal distances, different degree profiles") {
  const Graph c4 = cycle(4);
  const Graph tp = triangle_with_pendant();
  CHECK(distance_multiset(c4) == distance_multiset(tp));
  const Dataset d = make_dataset({c4, tp});
  FeatureConfig c = config_with(10, Aggregation::Histogram, Normalization::Dataset);
  CHECK(featurize(d, c4, c) != featurize(d, tp, c));
  c.use_distance = true;
  const auto a = featurize(d, c4, c);
  const auto b = featurize(d, tp, c);
  const std::ptrdiff_t off = 5 * c.bins;
  CHECK(std::equal(a.begin() + off, a.end(), b.begin() + off));
}

TEST_CASE("featurize_dataset is deterministic and thread-count independent") {
  std::mt19937_64 rng(8);
  std::vector<Graph> graphs;
  for (int i = 0; i < 40; ++i) graphs.push_back(random_graph(rng, 5 + rng() % 30, 0.2, 5, i % 2));
  const Dataset d = make_dataset(graphs);
  FeatureConfig c = config_with(30, Aggregation::EDF, Normalization::Dataset, Scale::Log);
  c.use_sum = c.use_label = c.use_distance = true;
  const auto one = featurize_dataset(d, c, 1);
  CHECK(featurize_dataset(d, c, 1) == one);
  CHECK(featurize_dataset(d, c, 4) == one);
  REQUIRE(one.size() == graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) CHECK(one[i] == featurize(d, graphs[i], c));
}

TEST_CASE("feature config text round trip and errors") {
  FeatureConfig c = config_with(70, Aggregation::EDF, Normalization::Dataset, Scale::Log);
  c.use_distance = true;
  std::stringstream ss;
  write_feature_config(ss, c);
  CHECK(read_feature_config(ss) == c);

  std::istringstream partial("# comment\nbins = 30\nscale = log\n");
  const FeatureConfig p = read_feature_config(partial);
  CHECK(p.bins == 30);
  CHECK(p.scale == Scale::Log);
  CHECK(p.aggregation == Aggregation::Histogram);

  std::istringstream unknown("colour = red\n");
  CHECK_THROWS_AS(read_feature_config(unknown), ConfigError);
  std::istringstream bad_bins("bins = 1\n");
  CHECK_THROWS_AS(read_feature_config(bad_bins), ConfigError);
  CHECK_THROWS_AS(parse_aggregation("cdf"), ConfigError);
}

TEST_CASE("feature CSV round trip") {
  std::mt19937_64 rng(1);
  std::vector<GraphVector> vectors(5, GraphVector(12));
  for (auto& v : vectors) {
    for (auto& x : v) x = std::uniform_real_distribution<double>(0, 1)(rng);
  }
  const std::vector<int> labels = {0, 1, 2, 1, 0};
  std::stringstream ss;
  write_feature_csv(ss, vectors, labels);
  const FeatureTable t = read_feature_csv(ss);
  CHECK(t.labels == labels);
  REQUIRE(t.vectors.size() == vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      CHECK(std::abs(t.vectors[i][j] - vectors[i][j]) <= 1e-8);
    }
  }
  // Nine significant digits re-serialize to the same text.
  std::stringstream again;
  write_feature_csv(again, t.vectors, t.labels);
  CHECK(again.str() == ss.str());
}

TEST_CASE("MUTAG vector dimensions") {
  const auto root = std::filesystem::path(LDP_DATA_DIR) / "MUTAG";
  if (!std::filesystem::exists(root / "MUTAG_A.txt")) {
    MESSAGE("MUTAG not present");
    return;
  }
  const Dataset d = parse_tu_dataset(root, "MUTAG");
  FeatureConfig c;
  auto vectors = featurize_dataset(d, c);
  CHECK(vectors.size() == 188);
  CHECK(vectors.front().size() == 250);
  c.use_label = true;
  vectors = featurize_dataset(d, c);
  CHECK(vectors.back().size() == 300);
  for (const auto& v : vectors) check_block_invariants(v, c);
}
