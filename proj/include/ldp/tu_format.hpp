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

// Reader/writer for the TU-Dortmund multi-file benchmark format:
//
//   <name>_A.txt               "row, col" per line, 1-based global node ids
//   <name>_graph_indicator.txt graph id (1-based) of node i on line i
//   <name>_graph_labels.txt    class label of graph i on line i
//   <name>_node_labels.txt     optional, node label of node i on line i
//
// Integers may be separated by commas and/or whitespace; LF and CRLF line
// endings are accepted. Edge labels and attribute files are ignored.

#ifndef LDP_TU_FORMAT_HPP_
#define LDP_TU_FORMAT_HPP_

#include <filesystem>
#include <string>

#include "ldp/graph.hpp"

namespace ldp {

// Parses <root>/<name>_*.txt. Directed duplicates merge into one undirected
// edge, self-loops are dropped, class labels and node labels are remapped to
// contiguous 0-based ids in sorted order of the raw values. Throws DataError
// naming the file (and line, for malformed content).
Dataset parse_tu_dataset(const std::filesystem::path& root, const std::string& name);

// Writes d into <root>/<d.name>_*.txt, both edge directions per edge. Class and
// node labels are written as their 0-based ids, so parse(write(d)) == d.
void write_tu_dataset(const std::filesystem::path& root, const Dataset& d);

}  // namespace ldp

#endif  // LDP_TU_FORMAT_HPP_
