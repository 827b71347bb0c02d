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

#include "ldp/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ldp/error.hpp"

namespace ldp {

Graph Graph::from_edges(std::size_t node_count,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        int class_label,
                        std::optional<std::vector<int>> node_labels) {
  if (node_labels && node_labels->size() != node_count) {
    throw DataError("node label count " + std::to_string(node_labels->size()) +
                    " does not match node count " + std::to_string(node_count));
  }

  // Counting sort into CSR, then sort + dedup each list.
  std::vector<std::size_t> counts(node_count + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw DataError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                      ") references a node outside [0, " +
                      std::to_string(node_count) + ")");
    }
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];

  std::vector<NodeId> raw(counts.back());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  Graph g;
  g.class_label_ = class_label;
  g.node_labels_ = std::move(node_labels);
  g.offsets_.assign(node_count + 1, 0);
  g.neighbors_.reserve(raw.size());
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.neighbors_.insert(g.neighbors_.end(), first, last);
    g.offsets_[v + 1] = g.neighbors_.size();
  }
  g.neighbors_.shrink_to_fit();
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
    best = std::max(best, offsets_[v + 1] - offsets_[v]);
  }
  return best;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::permuted(std::span<const NodeId> perm) const {
  const std::size_t n = node_count();
  if (perm.size() != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::pair<NodeId, NodeId>> relabeled;
  relabeled.reserve(edge_count());
  for (const auto& [u, v] : edges()) relabeled.emplace_back(perm[u], perm[v]);
  std::optional<std::vector<int>> labels;
  if (node_labels_) {
    labels.emplace(n);
    for (std::size_t v = 0; v < n; ++v) (*labels)[perm[v]] = (*node_labels_)[v];
  }
  return from_edges(n, relabeled, class_label_, std::move(labels));
}

Graph Graph::with_class_label(int class_label) const {
  Graph g = *this;
  g.class_label_ = class_label;
  return g;
}

std::size_t degree(const Graph& g, std::size_t v) {
  if (v >= g.node_count()) {
    throw std::out_of_range("node index " + std::to_string(v) +
                            " out of range for graph with " +
                            std::to_string(g.node_count()) + " nodes");
  }
  return g.degree_unchecked(static_cast<NodeId>(v));
}

std::vector<int> Dataset::class_labels() const {
  std::vector<int> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(g.class_label());
  return out;
}

void validate(const Dataset& d) {
  if (d.graphs.empty()) throw DataError("dataset '" + d.name + "' has no graphs");
  if (d.num_classes <= 0) throw DataError("dataset '" + d.name + "' has no classes");
  std::set<int> label_values;
  bool any_labeled = false;
  for (std::size_t i = 0; i < d.graphs.size(); ++i) {
    const Graph& g = d.graphs[i];
    if (g.class_label() < 0 || g.class_label() >= d.num_classes) {
      throw DataError("graph " + std::to_string(i) + " has class label " +
                      std::to_string(g.class_label()) + " outside [0, " +
                      std::to_string(d.num_classes) + ")");
    }
    if (g.node_labels()) {
      any_labeled = true;
      for (int l : *g.node_labels()) {
        if (l < 0) throw DataError("negative node label in graph " + std::to_string(i));
        label_values.insert(l);
      }
    }
  }
  const int distinct = any_labeled ? static_cast<int>(label_values.size()) : 0;
  if (distinct != d.num_node_label_values) {
    throw DataError("dataset '" + d.name + "' declares " +
                    std::to_string(d.num_node_label_values) +
                    " node-label values but contains " + std::to_string(distinct));
  }
}

DatasetStats dataset_stats(const Dataset& d) {
  DatasetStats s;
  s.graph_count = d.graphs.size();
  s.class_count = d.num_classes;
  s.label_count = d.num_node_label_values;
  if (d.graphs.empty()) return s;
  double nodes = 0.0;
  double edges = 0.0;
  for (const auto& g : d.graphs) {
    nodes += static_cast<double>(g.node_count());
    edges += static_cast<double>(g.edge_count());
  }
  s.avg_nodes = nodes / static_cast<double>(s.graph_count);
  s.avg_edges = edges / static_cast<double>(s.graph_count);
  return s;
}

}  // namespace ldp
