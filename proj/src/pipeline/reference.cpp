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

#include "dikit/pipeline/reference.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dikit/errors.hpp"

namespace dikit {

namespace {

constexpr double kMatchTol = 1e-6;

std::optional<double> cell(const std::string& s, const std::filesystem::path& file) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ConfigError, file.string() + ": bad number '" + s + "'");
  }
}

std::optional<double> finite(double x) { return std::isfinite(x) ? std::optional<double>(x) : std::nullopt; }

std::string show(const std::optional<double>& v, const char* fmt) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

}  // namespace

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("DI_KIT_FIXTURE_DIR"); env && *env) return env;
  return DIKIT_DEFAULT_FIXTURE_DIR;
}

std::vector<ReferenceRow> load_reference(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorCode::FixtureMissing, "reference fixture not found: " + file.string());
  std::vector<ReferenceRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {  // qber,rate_one_switch,rate_two_switch
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 3) fail(ErrorCode::ConfigError, file.string() + ": expected 3 columns in '" + line + "'");
    auto q = cell(cells[0], file);
    if (!q) fail(ErrorCode::ConfigError, file.string() + ": missing qber");
    rows.push_back({*q, cell(cells[1], file), cell(cells[2], file)});
  }
  return rows;
}

std::vector<ReferenceRow> load_reference() { return load_reference(fixture_dir() / kReferenceFile); }

std::vector<DeviationRow> reference_report(const std::vector<CurvePoint>& points,
                                           const std::vector<ReferenceRow>& reference) {
  std::vector<DeviationRow> out;
  for (const ReferenceRow& r : reference) {
    DeviationRow d;
    d.qber = r.qber;
    d.ref_one = r.rate_one_switch;
    d.ref_two = r.rate_two_switch;
    for (const CurvePoint& p : points) {
      if (std::abs(p.qber - r.qber) > kMatchTol || !p.ok) continue;
      d.ours_one = finite(p.rate_one_switch);
      d.ours_two = finite(p.rate_two_switch);
      break;
    }
    if (d.ours_one && d.ref_one) d.dev_one = *d.ours_one - *d.ref_one;
    if (d.ours_two && d.ref_two) d.dev_two = *d.ours_two - *d.ref_two;
    out.push_back(d);
  }
  return out;
}

std::string format_report(const std::vector<DeviationRow>& rows) {
  std::string out = "qber        ours_one    ref_one     dev_one     ours_two    ref_two     dev_two\n";
  char buf[256];
  for (const DeviationRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%-11.6f %-11s %-11s %-11s %-11s %-11s %-11s\n", r.qber,
                  show(r.ours_one, "%.6f").c_str(), show(r.ref_one, "%.6f").c_str(), show(r.dev_one, "%+.6f").c_str(),
                  show(r.ours_two, "%.6f").c_str(), show(r.ref_two, "%.6f").c_str(), show(r.dev_two, "%+.6f").c_str());
    out += buf;
  }
  return out;
}

void to_json(nlohmann::json& j, const DeviationRow& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  j = {{"qber", r.qber},         {"ours_one", opt(r.ours_one)}, {"ref_one", opt(r.ref_one)},
       {"dev_one", opt(r.dev_one)}, {"ours_two", opt(r.ours_two)}, {"ref_two", opt(r.ref_two)},
       {"dev_two", opt(r.dev_two)}};
}

}  // namespace dikit
