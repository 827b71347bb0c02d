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

#ifndef LDP_EXPERIMENT_HPP_
#define LDP_EXPERIMENT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldp/cv.hpp"
#include "ldp/features.hpp"

namespace ldp {

// Method variants reported in the result tables, in column order.
enum class Variant { Base, LinearOnly, PlusLabel, PlusDistance };

inline constexpr Variant kAllVariants[] = {Variant::Base, Variant::LinearOnly,
                                           Variant::PlusLabel, Variant::PlusDistance};

// CLI spelling: base | star | label | distance.
std::string_view variant_flag(Variant v);
// Column header: LDP | LDP* | LDP+Label | LDP+distance.
std::string_view variant_column(Variant v);
Variant parse_variant(std::string_view s);

// Feature grid for a variant: bins x {histogram, edf} x {graph, dataset} x
// {linear, log} (each axis overridable), with the variant's extra channel.
std::vector<FeatureConfig> variant_feature_grid(Variant v, std::span<const int> bins,
                                                std::span<const Aggregation> aggregations,
                                                std::span<const Normalization> normalizations,
                                                std::span<const Scale> scales);

// LinearOnly restricts the kernel set to {Linear}; other variants keep config's.
CvConfig variant_cv_config(Variant v, CvConfig config);

struct ReportEntry {
  std::string dataset;
  Variant variant = Variant::Base;
  double mean_accuracy = 0.0;
};

struct FormattedTable {
  std::string text;
  std::string csv;
};

// Dataset rows (first-appearance order) x variant columns (canonical order,
// only variants present). Cells are percentages with one decimal, "-" when a
// dataset lacks a variant. No entries gives a header-only table.
FormattedTable report_table(std::span<const ReportEntry> entries);

// Percent with one decimal, e.g. 0.754 -> "75.4".
std::string format_percent(double accuracy);

}  // namespace ldp

#endif  // LDP_EXPERIMENT_HPP_
