// Copyright 2026 The dikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIKIT_PIPELINE_REFERENCE_HPP
#define DIKIT_PIPELINE_REFERENCE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dikit/pipeline/scenario.hpp"

namespace dikit {

inline constexpr const char* kReferenceFile = "fig2_reference.csv";

struct ReferenceRow {
  double qber = 0.0;
  std::optional<double> rate_one_switch;
  std::optional<double> rate_two_switch;
};

/// $DI_KIT_FIXTURE_DIR if set, else the data/ directory of the source tree.
std::filesystem::path fixture_dir();

/// Throws FixtureMissing if the file cannot be opened.
std::vector<ReferenceRow> load_reference(const std::filesystem::path& file);
std::vector<ReferenceRow> load_reference();

struct DeviationRow {
  double qber = 0.0;
  std::optional<double> ours_one, ours_two;
  std::optional<double> ref_one, ref_two;
  std::optional<double> dev_one, dev_two;  // ours - reference
};

/// Informational only: rows are matched on qber within 1e-6.
std::vector<DeviationRow> reference_report(const std::vector<CurvePoint>& points,
                                           const std::vector<ReferenceRow>& reference);
std::string format_report(const std::vector<DeviationRow>& rows);
void to_json(nlohmann::json& j, const DeviationRow& r);

}  // namespace dikit

#endif  // DIKIT_PIPELINE_REFERENCE_HPP
