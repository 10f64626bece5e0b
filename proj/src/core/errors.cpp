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

#include "dikit/errors.hpp"

namespace dikit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadFactorIndex: return "BadFactorIndex";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::MarginalMismatch: return "MarginalMismatch";
    case ErrorCode::NotAPOVM: return "NotAPOVM";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::LevelTooLow: return "LevelTooLow";
    case ErrorCode::NodesOutOfRange: return "NodesOutOfRange";
    case ErrorCode::FixtureMissing: return "FixtureMissing";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::SolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dikit
