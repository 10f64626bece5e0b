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

#ifndef DIKIT_ERRORS_HPP
#define DIKIT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace dikit {

enum class ErrorCode {
  NonHermitian,
  NoConvergence,
  BadFactorIndex,
  RangeError,
  MarginalMismatch,
  NotAPOVM,
  DimensionMismatch,
  ShapeError,
  LevelTooLow,
  NodesOutOfRange,
  FixtureMissing,
  ConfigError,
  SolverFailure,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace dikit

#endif  // DIKIT_ERRORS_HPP
