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

#include "ldp/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ldp/error.hpp"
#include "ldp/parallel.hpp"

namespace ldp {

std::string_view to_string(Aggregation a) {
  return a == Aggregation::Histogram ? "histogram" : "edf";
}
std::string_view to_string(Normalization n) {
  return n == Normalization::PerGraph ? "graph" : "dataset";
}
std::string_view to_string(Scale s) { return s == Scale::Linear ? "linear" : "log"; }

Aggregation parse_aggregation(std::string_view s) {
  if (s == "histogram" || s == "hist") return Aggregation::Histogram;
  if (s == "edf") return Aggregation::EDF;
  throw ConfigError("unknown aggregation '" + std::string(s) + "' (histogram|edf)");
}
Normalization parse_normalization(std::string_view s) {
  if (s == "graph" || s == "per-graph") return Normalization::PerGraph;
  if (s == "dataset") return Normalization::Dataset;
  throw ConfigError("unknown normalization '" + std::string(s) + "' (graph|dataset)");
}
Scale parse_scale(std::string_view s) {
  if (s == "linear") return Scale::Linear;
  if (s == "log") return Scale::Log;
  throw ConfigError("unknown scale '" + std::string(s) + "' (linear|log)");
}

std::string FeatureConfig::describe() const {
  std::ostringstream out;
  out << "bins=" << bins << " aggregation=" << to_string(aggregation)
      << " normalization=" << to_string(normalization) << " scale=" << to_string(scale)
      << " use_sum=" << use_sum << " use_label=" << use_label
      << " use_distance=" << use_distance;
  return out.str();
}

void validate(const FeatureConfig& config, const Dataset& d) {
  if (config.bins < 2) {
    throw ConfigError("bins must be >= 2, got " + std::to_string(config.bins));
  }
  if (config.use_label && !d.has_node_labels()) {
    throw ConfigError("label feature requested but dataset '" + d.name +
                      "' has no node labels");
  }
}

void write_feature_config(std::ostream& out, const FeatureConfig& config) {
  out << "bins = " << config.bins << '\n'
      << "aggregation = " << to_string(config.aggregation) << '\n'
      << "normalization = " << to_string(config.normalization) << '\n'
      << "scale = " << to_string(config.scale) << '\n'
      << "use_sum = " << (config.use_sum ? "true" : "false") << '\n'
      << "use_label = " << (config.use_label ? "true" : "false") << '\n'
      << "use_distance = " << (config.use_distance ? "true" : "false") << '\n';
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + value + "'");
}

}  // namespace

FeatureConfig read_feature_config(std::istream& in) {
  FeatureConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "bins") {
      int bins = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), bins);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("config line " + std::to_string(line_no) + ": bad bins '" + value + "'");
      }
      config.bins = bins;
    } else if (key == "aggregation") {
      config.aggregation = parse_aggregation(value);
    } else if (key == "normalization") {
      config.normalization = parse_normalization(value);
    } else if (key == "scale") {
      config.scale = parse_scale(value);
    } else if (key == "use_sum") {
      config.use_sum = parse_bool(key, value);
    } else if (key == "use_label") {
      config.use_label = parse_bool(key, value);
    } else if (key == "use_distance") {
      config.use_distance = parse_bool(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (config.bins < 2) throw ConfigError("bins must be >= 2");
  return config;
}

namespace {

struct DegreeStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;
  double sum = 0.0;
};

DegreeStats neighbor_degree_stats(const Graph& g, NodeId v) {
  DegreeStats s;
  const auto nbrs = g.neighbors(v);
  if (nbrs.empty()) return s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = 0.0;
  for (NodeId u : nbrs) {
    const auto d = static_cast<double>(g.degree_unchecked(u));
    s.min = std::min(s.min, d);
    s.max = std::max(s.max, d);
    s.sum += d;
  }
  const auto n = static_cast<double>(nbrs.size());
  s.mean = s.sum / n;
  double sq = 0.0;
  for (NodeId u : nbrs) {
    const double diff = static_cast<double>(g.degree_unchecked(u)) - s.mean;
    sq += diff * diff;
  }
  s.std = std::sqrt(sq / n);
  return s;
}

double scaled(double x, Scale scale) { return scale == Scale::Log ? std::log1p(x) : x; }

double denominator_from_max(double max_value, Scale scale) {
  if (max_value <= 0.0) return 1.0;
  return scaled(max_value, scale);
}

double unit(double x, double denom, Scale scale) {
  return std::clamp(scaled(x, scale) / denom, 0.0, 1.0);
}

// Streaming form of aggregate(): counts values into cells, then normalizes.
class Binner {
 public:
  Binner(std::size_t bins, Aggregation mode) : counts_(bins, 0), mode_(mode) {}

  void add(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::domain_error("aggregate: value " + std::to_string(x) + " outside [0,1]");
    }
    const std::size_t nbins = counts_.size();
    const double b = static_cast<double>(nbins);
    if (mode_ == Aggregation::Histogram) {
      // Cell k holds [k/bins, (k+1)/bins), the last cell also holds 1.0.
      auto k = static_cast<std::size_t>(std::floor(x * b));
      if (k >= nbins) k = nbins - 1;
      if (k + 1 < nbins && x >= static_cast<double>(k + 1) / b) ++k;
      if (k > 0 && x < static_cast<double>(k) / b) --k;
      ++counts_[k];
    } else {
      // Smallest k in [1, bins] with x <= k/bins; stored at k-1.
      auto k = static_cast<std::size_t>(std::ceil(x * b));
      k = std::clamp<std::size_t>(k, 1, nbins);
      if (k > 1 && x <= static_cast<double>(k - 1) / b) --k;
      if (k < nbins && x > static_cast<double>(k) / b) ++k;
      ++counts_[k - 1];
    }
    ++total_;
  }

  std::vector<double> finish() const {
    std::vector<double> out(counts_.size(), 0.0);
    if (total_ == 0) return out;
    const auto n = static_cast<double>(total_);
    std::size_t running = 0;
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      running = mode_ == Aggregation::Histogram ? counts_[k] : running + counts_[k];
      out[k] = static_cast<double>(running) / n;
    }
    return out;
  }

 private:
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
  Aggregation mode_;
};

// For each finite distance d >= 1, the number of unordered pairs at distance d
// (index 0 unused).
std::vector<std::size_t> distance_counts(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> counts(1, 0);
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> frontier;
  frontier.reserve(n);
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    frontier.clear();
    frontier.push_back(s);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const NodeId u = frontier[head];
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] != kUnseen) continue;
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
        if (w > s) {
          if (counts.size() <= dist[w]) counts.resize(dist[w] + 1, 0);
          ++counts[dist[w]];
        }
      }
    }
  }
  return counts;
}

}  // namespace

NodeProfile node_profile(const Graph& g, std::size_t v, const FeatureConfig& config) {
  NodeProfile p;
  p.deg = static_cast<double>(degree(g, v));
  const DegreeStats s = neighbor_degree_stats(g, static_cast<NodeId>(v));
  p.dn_min = s.min;
  p.dn_max = s.max;
  p.dn_mean = s.mean;
  p.dn_std = s.std;
  if (config.use_sum) p.dn_sum = s.sum;
  if (config.use_label) {
    if (!g.has_node_labels()) throw ConfigError("label feature requested on an unlabeled graph");
    p.label_value = static_cast<double>((*g.node_labels())[v]);
  }
  return p;
}

double normalization_denominator(const Dataset& d, const Graph& g, const FeatureConfig& config) {
  std::size_t max_degree = 0;
  if (config.normalization == Normalization::PerGraph) {
    max_degree = g.max_degree();
  } else {
    for (const auto& other : d.graphs) max_degree = std::max(max_degree, other.max_degree());
  }
  return denominator_from_max(static_cast<double>(max_degree), config.scale);
}

std::vector<double> aggregate(std::span<const double> values, int bins, Aggregation mode) {
  if (bins < 1) throw std::invalid_argument("bins must be positive");
  Binner binner(static_cast<std::size_t>(bins), mode);
  for (double x : values) binner.add(x);
  return binner.finish();
}

std::vector<std::uint32_t> distance_multiset(const Graph& g) {
  const auto counts = distance_counts(g);
  std::vector<std::uint32_t> out;
  for (std::size_t d = 1; d < counts.size(); ++d) {
    out.insert(out.end(), counts[d], static_cast<std::uint32_t>(d));
  }
  return out;
}

FeatureContext::FeatureContext(const Dataset& d, const FeatureConfig& config)
    : config_(config), num_node_label_values_(d.num_node_label_values) {
  validate(config, d);
  if (config.normalization == Normalization::Dataset) {
    for (const auto& g : d.graphs) {
      dataset_max_degree_ = std::max(dataset_max_degree_, g.max_degree());
      if (config.use_sum) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
          double sum = 0.0;
          for (NodeId u : g.neighbors(v)) sum += static_cast<double>(g.degree_unchecked(u));
          dataset_max_sum_ = std::max(dataset_max_sum_, sum);
        }
      }
    }
  }
}

GraphVector FeatureContext::featurize(const Graph& g) const {
  const FeatureConfig& cfg = config_;
  const std::size_t n = g.node_count();
  const auto nbins = static_cast<std::size_t>(cfg.bins);

  // Compact degrees keep the random neighbor lookups cache friendly.
  std::vector<std::uint32_t> deg(n);
  for (NodeId v = 0; v < n; ++v) deg[v] = static_cast<std::uint32_t>(g.degree_unchecked(v));
  auto stats_of = [&](NodeId v) {
    DegreeStats s;
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) return s;
    s.min = std::numeric_limits<double>::infinity();
    s.max = 0.0;
    for (NodeId u : nbrs) {
      const auto d = static_cast<double>(deg[u]);
      s.min = std::min(s.min, d);
      s.max = std::max(s.max, d);
      s.sum += d;
    }
    const auto k = static_cast<double>(nbrs.size());
    s.mean = s.sum / k;
    double sq = 0.0;
    for (NodeId u : nbrs) {
      const double diff = static_cast<double>(deg[u]) - s.mean;
      sq += diff * diff;
    }
    s.std = std::sqrt(sq / k);
    return s;
  };

  double max_degree = static_cast<double>(dataset_max_degree_);
  double max_sum = dataset_max_sum_;
  if (cfg.normalization == Normalization::PerGraph) {
    max_degree = static_cast<double>(g.max_degree());
    max_sum = 0.0;
    if (cfg.use_sum) {
      for (NodeId v = 0; v < n; ++v) {
        double sum = 0.0;
        for (NodeId u : g.neighbors(v)) sum += static_cast<double>(deg[u]);
        max_sum = std::max(max_sum, sum);
      }
    }
  }
  const double degree_denom = denominator_from_max(max_degree, cfg.scale);
  const double sum_denom = denominator_from_max(max_sum, cfg.scale);

  std::vector<Binner> blocks(cfg.use_sum ? 6 : 5, Binner(nbins, cfg.aggregation));
  for (NodeId v = 0; v < n; ++v) {
    const DegreeStats s = stats_of(v);
    blocks[0].add(unit(static_cast<double>(deg[v]), degree_denom, cfg.scale));
    blocks[1].add(unit(s.min, degree_denom, cfg.scale));
    blocks[2].add(unit(s.max, degree_denom, cfg.scale));
    blocks[3].add(unit(s.mean, degree_denom, cfg.scale));
    blocks[4].add(unit(s.std, degree_denom, cfg.scale));
    if (cfg.use_sum) blocks[5].add(unit(s.sum, sum_denom, cfg.scale));
  }

  GraphVector out;
  out.reserve(cfg.dimension());
  for (const Binner& b : blocks) {
    const auto block = b.finish();
    out.insert(out.end(), block.begin(), block.end());
  }

  if (cfg.use_label) {
    if (!g.has_node_labels()) throw ConfigError("label feature requested on an unlabeled graph");
    const auto& labels = *g.node_labels();
    const double span = num_node_label_values_ > 1 ? num_node_label_values_ - 1 : 0;
    Binner block(nbins, cfg.aggregation);
    for (NodeId v = 0; v < n; ++v) {
      block.add(span > 0 ? std::clamp(labels[v] / span, 0.0, 1.0) : 0.0);
    }
    const auto values = block.finish();
    out.insert(out.end(), values.begin(), values.end());
  }

  if (cfg.use_distance) {
    const auto counts = distance_counts(g);
    const double max_distance = static_cast<double>(counts.size() - 1);
    const double denom = denominator_from_max(max_distance, cfg.scale);
    std::vector<double> distances;
    for (std::size_t d = 1; d < counts.size(); ++d) {
      distances.insert(distances.end(), counts[d], unit(static_cast<double>(d), denom, cfg.scale));
    }
    // No connected pair: treat as a single zero distance so the block stays a
    // distribution, like the zero DN statistics of isolated nodes.
    if (distances.empty()) distances.push_back(0.0);
    const auto block = aggregate(distances, cfg.bins, cfg.aggregation);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

GraphVector featurize(const Dataset& d, const Graph& g, const FeatureConfig& config) {
  return FeatureContext(d, config).featurize(g);
}

std::vector<GraphVector> featurize_dataset(const Dataset& d, const FeatureConfig& config,
                                           unsigned threads) {
  const FeatureContext context(d, config);
  std::vector<GraphVector> out(d.graphs.size());
  parallel_for(d.graphs.size(), threads,
               [&](std::size_t i) { out[i] = context.featurize(d.graphs[i]); });
  return out;
}

void write_feature_csv(std::ostream& out, std::span<const GraphVector> vectors,
                       std::span<const int> labels) {
  if (vectors.size() != labels.size()) {
    throw std::invalid_argument("write_feature_csv: vectors/labels size mismatch");
  }
  char buf[64];
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out << labels[i];
    for (double x : vectors[i]) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
      out << ',' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

FeatureTable read_feature_csv(std::istream& in) {
  FeatureTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    int label = 0;
    auto [lp, lec] = std::from_chars(p, end, label);
    if (lec != std::errc{}) throw DataError("feature csv line " + std::to_string(line_no) + ": bad label");
    p = lp;
    GraphVector v;
    while (p < end) {
      if (*p != ',') throw DataError("feature csv line " + std::to_string(line_no) + ": expected ','");
      ++p;
      double x = 0.0;
      auto [vp, vec] = std::from_chars(p, end, x);
      if (vec != std::errc{}) throw DataError("feature csv line " + std::to_string(line_no) + ": bad value");
      v.push_back(x);
      p = vp;
    }
    if (!table.vectors.empty() && v.size() != table.vectors.front().size()) {
      throw DataError("feature csv line " + std::to_string(line_no) + ": row length " +
                      std::to_string(v.size()) + " differs from " +
                      std::to_string(table.vectors.front().size()));
    }
    table.labels.push_back(label);
    table.vectors.push_back(std::move(v));
  }
  return table;
}

}  // namespace ldp
