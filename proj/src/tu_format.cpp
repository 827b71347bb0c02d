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

#include "ldp/tu_format.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <vector>

#include "ldp/error.hpp"

namespace ldp {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r';
}

// Calls on_line(line_number, values) for every non-blank line, where values
// holds the leading `want` integers of the line.
template <typename OnLine>
void for_each_record(const fs::path& path, std::size_t want, OnLine&& on_line) {
  const std::string text = read_file(path);
  const std::string file = path.filename().string();
  std::vector<std::int64_t> values;
  values.reserve(want);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;

    values.clear();
    std::size_t i = 0;
    while (values.size() < want) {
      while (i < line.size() && is_separator(line[i])) ++i;
      if (i == line.size()) break;
      std::int64_t x = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), x);
      if (ec != std::errc{}) {
        throw DataError(file + ":" + std::to_string(line_no) +
                        ": malformed integer in '" + std::string(line) + "'");
      }
      i = static_cast<std::size_t>(ptr - line.data());
      if (i < line.size() && !is_separator(line[i])) {
        throw DataError(file + ":" + std::to_string(line_no) +
                        ": malformed integer in '" + std::string(line) + "'");
      }
      values.push_back(x);
    }
    if (values.empty()) {
      // Blank lines (including a trailing newline) are skipped.
      bool blank = std::all_of(line.begin(), line.end(), is_separator);
      if (blank) continue;
    }
    if (values.size() < want) {
      throw DataError(file + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(want) + " integer(s), got '" +
                      std::string(line) + "'");
    }
    on_line(line_no, values);
  }
}

template <typename T>
std::map<T, int> dense_ids(std::vector<T> raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  std::map<T, int> ids;
  for (std::size_t i = 0; i < raw.size(); ++i) ids.emplace(raw[i], static_cast<int>(i));
  return ids;
}

fs::path file_for(const fs::path& root, const std::string& name, const char* suffix) {
  return root / (name + suffix);
}

}  // namespace

Dataset parse_tu_dataset(const fs::path& root, const std::string& name) {
  const fs::path a_path = file_for(root, name, "_A.txt");
  const fs::path ind_path = file_for(root, name, "_graph_indicator.txt");
  const fs::path gl_path = file_for(root, name, "_graph_labels.txt");
  const fs::path nl_path = file_for(root, name, "_node_labels.txt");
  for (const auto& p : {a_path, ind_path, gl_path}) {
    if (!fs::is_regular_file(p)) throw DataError("missing file: " + p.string());
  }

  std::vector<std::int64_t> raw_class;
  for_each_record(gl_path, 1, [&](std::size_t, const auto& v) { raw_class.push_back(v[0]); });
  if (raw_class.empty()) throw DataError(gl_path.string() + ": no graph labels");
  const std::size_t graph_count = raw_class.size();

  // Graph of each global node and its local index within that graph.
  std::vector<std::uint32_t> node_graph;
  std::vector<NodeId> node_local;
  std::vector<std::size_t> graph_sizes(graph_count, 0);
  for_each_record(ind_path, 1, [&](std::size_t line, const auto& v) {
    if (v[0] < 1 || static_cast<std::uint64_t>(v[0]) > graph_count) {
      throw DataError(ind_path.filename().string() + ":" + std::to_string(line) +
                      ": node " + std::to_string(line) +
                      " references nonexistent graph " + std::to_string(v[0]));
    }
    const auto gid = static_cast<std::uint32_t>(v[0] - 1);
    node_graph.push_back(gid);
    node_local.push_back(static_cast<NodeId>(graph_sizes[gid]++));
  });
  const std::size_t total_nodes = node_graph.size();

  std::vector<std::vector<std::pair<NodeId, NodeId>>> graph_edges(graph_count);
  for_each_record(a_path, 2, [&](std::size_t line, const auto& v) {
    for (auto id : v) {
      if (id < 1 || static_cast<std::uint64_t>(id) > total_nodes) {
        throw DataError(a_path.filename().string() + ":" + std::to_string(line) +
                        ": node id " + std::to_string(id) + " outside [1, " +
                        std::to_string(total_nodes) + "]");
      }
    }
    const auto u = static_cast<std::size_t>(v[0] - 1);
    const auto w = static_cast<std::size_t>(v[1] - 1);
    if (node_graph[u] != node_graph[w]) {
      throw DataError(a_path.filename().string() + ":" + std::to_string(line) +
                      ": edge (" + std::to_string(v[0]) + ", " + std::to_string(v[1]) +
                      ") crosses graphs " + std::to_string(node_graph[u] + 1) +
                      " and " + std::to_string(node_graph[w] + 1));
    }
    graph_edges[node_graph[u]].emplace_back(node_local[u], node_local[w]);
  });

  std::optional<std::vector<std::int64_t>> raw_node_labels;
  if (fs::is_regular_file(nl_path)) {
    raw_node_labels.emplace();
    raw_node_labels->reserve(total_nodes);
    for_each_record(nl_path, 1, [&](std::size_t, const auto& v) {
      raw_node_labels->push_back(v[0]);
    });
    if (raw_node_labels->size() != total_nodes) {
      throw DataError(nl_path.filename().string() + ": " +
                      std::to_string(raw_node_labels->size()) + " labels for " +
                      std::to_string(total_nodes) + " nodes");
    }
  }

  const auto class_ids = dense_ids(raw_class);

  Dataset d;
  d.name = name;
  d.num_classes = static_cast<int>(class_ids.size());

  std::vector<std::vector<int>> labels_per_graph;
  if (raw_node_labels) {
    const auto label_ids = dense_ids(*raw_node_labels);
    d.num_node_label_values = static_cast<int>(label_ids.size());
    labels_per_graph.resize(graph_count);
    for (std::size_t g = 0; g < graph_count; ++g) labels_per_graph[g].resize(graph_sizes[g]);
    for (std::size_t i = 0; i < total_nodes; ++i) {
      labels_per_graph[node_graph[i]][node_local[i]] = label_ids.at((*raw_node_labels)[i]);
    }
  }

  d.graphs.reserve(graph_count);
  for (std::size_t g = 0; g < graph_count; ++g) {
    std::optional<std::vector<int>> labels;
    if (raw_node_labels) labels = std::move(labels_per_graph[g]);
    d.graphs.push_back(Graph::from_edges(graph_sizes[g], graph_edges[g],
                                         class_ids.at(raw_class[g]), std::move(labels)));
    graph_edges[g] = {};
  }
  return d;
}

void write_tu_dataset(const fs::path& root, const Dataset& d) {
  validate(d);
  fs::create_directories(root);
  auto open = [&](const char* suffix) {
    std::ofstream out(file_for(root, d.name, suffix), std::ios::binary);
    if (!out) throw DataError("cannot write " + file_for(root, d.name, suffix).string());
    return out;
  };

  std::ofstream a = open("_A.txt");
  std::ofstream ind = open("_graph_indicator.txt");
  std::ofstream gl = open("_graph_labels.txt");
  std::ofstream nl;
  if (d.has_node_labels()) nl = open("_node_labels.txt");

  std::size_t base = 1;
  for (std::size_t gi = 0; gi < d.graphs.size(); ++gi) {
    const Graph& g = d.graphs[gi];
    gl << g.class_label() << '\n';
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      ind << gi + 1 << '\n';
      if (nl.is_open()) nl << (*g.node_labels())[v] << '\n';
      for (NodeId w : g.neighbors(static_cast<NodeId>(v))) {
        a << base + v << ", " << base + w << '\n';
      }
    }
    base += g.node_count();
  }
}

}  // namespace ldp
