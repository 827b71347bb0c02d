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

#ifndef LDP_GRAPH_HPP_
#define LDP_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ldp {

using NodeId = std::uint32_t;

// Immutable simple undirected graph stored in CSR form. Every neighbor list is
// strictly increasing, symmetric, and free of self-loops.
class Graph {
 public:
  Graph() = default;

  // Builds a simple graph from an arbitrary edge list. Self-loops are dropped
  // and (u,v)/(v,u)/duplicate entries collapse into one undirected edge.
  // Throws DataError when an endpoint is >= node_count or the label vector has
  // the wrong length.
  static Graph from_edges(std::size_t node_count,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          int class_label = 0,
                          std::optional<std::vector<int>> node_labels = {});

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  // Unchecked; see ldp::degree for the checked variant.
  std::size_t degree_unchecked(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::size_t max_degree() const;

  int class_label() const { return class_label_; }
  bool has_node_labels() const { return node_labels_.has_value(); }
  const std::optional<std::vector<int>>& node_labels() const { return node_labels_; }

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // Same structure with node ids relabeled: new id of old node v is perm[v].
  // Node labels travel with their nodes.
  Graph permuted(std::span<const NodeId> perm) const;

  Graph with_class_label(int class_label) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::optional<std::vector<int>> node_labels_;
  int class_label_ = 0;
};

// Checked degree; throws std::out_of_range for v >= node_count.
std::size_t degree(const Graph& g, std::size_t v);

struct Dataset {
  std::string name;
  std::vector<Graph> graphs;
  int num_classes = 0;
  // Distinct node-label values over all graphs; 0 when unlabeled.
  int num_node_label_values = 0;

  bool has_node_labels() const { return num_node_label_values > 0; }
  std::vector<int> class_labels() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Verifies the Dataset invariants (non-empty, class ids in range, label count
// consistent). Throws DataError on violation.
void validate(const Dataset& d);

struct DatasetStats {
  std::size_t graph_count = 0;
  int class_count = 0;
  double avg_nodes = 0.0;
  double avg_edges = 0.0;
  int label_count = 0;
};

DatasetStats dataset_stats(const Dataset& d);

}  // namespace ldp

#endif  // LDP_GRAPH_HPP_
