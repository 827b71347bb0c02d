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

#include "ldp/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "ldp/error.hpp"

namespace ldp {

std::string_view variant_flag(Variant v) {
  switch (v) {
    case Variant::Base: return "base";
    case Variant::LinearOnly: return "star";
    case Variant::PlusLabel: return "label";
    case Variant::PlusDistance: return "distance";
  }
  return "base";
}

std::string_view variant_column(Variant v) {
  switch (v) {
    case Variant::Base: return "LDP";
    case Variant::LinearOnly: return "LDP*";
    case Variant::PlusLabel: return "LDP+Label";
    case Variant::PlusDistance: return "LDP+distance";
  }
  return "LDP";
}

Variant parse_variant(std::string_view s) {
  for (Variant v : kAllVariants) {
    if (s == variant_flag(v)) return v;
  }
  throw ConfigError("unknown variant '" + std::string(s) + "' (base|star|label|distance)");
}

std::vector<FeatureConfig> variant_feature_grid(Variant v, std::span<const int> bins,
                                                std::span<const Aggregation> aggregations,
                                                std::span<const Normalization> normalizations,
                                                std::span<const Scale> scales) {
  return feature_grid(bins, aggregations, normalizations, scales, false,
                      v == Variant::PlusLabel, v == Variant::PlusDistance);
}

CvConfig variant_cv_config(Variant v, CvConfig config) {
  if (v == Variant::LinearOnly) config.kernel_kinds = {KernelKind::Linear};
  return config;
}

std::string format_percent(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * accuracy);
  return buf;
}

FormattedTable report_table(std::span<const ReportEntry> entries) {
  std::vector<std::string> datasets;
  std::vector<Variant> columns;
  for (const auto& e : entries) {
    if (std::find(datasets.begin(), datasets.end(), e.dataset) == datasets.end()) {
      datasets.push_back(e.dataset);
    }
  }
  for (Variant v : kAllVariants) {
    const bool present = std::any_of(entries.begin(), entries.end(),
                                     [v](const ReportEntry& e) { return e.variant == v; });
    if (present) columns.push_back(v);
  }

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Dataset"};
  for (Variant v : columns) header.emplace_back(variant_column(v));
  cells.push_back(header);
  for (const auto& name : datasets) {
    std::vector<std::string> row{name};
    for (Variant v : columns) {
      std::string cell = "-";
      for (const auto& e : entries) {
        if (e.dataset == name && e.variant == v) cell = format_percent(e.mean_accuracy);
      }
      row.push_back(cell);
    }
    cells.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }

  std::ostringstream text;
  std::ostringstream csv;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        text << row[i] << std::string(width[i] - row[i].size(), ' ');
      } else {
        text << "  " << std::string(width[i] - row[i].size(), ' ') << row[i];
        csv << ',';
      }
      csv << row[i];
    }
    text << '\n';
    csv << '\n';
  }
  return {text.str(), csv.str()};
}

}  // namespace ldp
