// Copyright 2026 The tfquant Authors. All Rights Reserved.
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

#ifndef TFQ_TOOLS_COMMANDS_HPP_
#define TFQ_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <stdexcept>

#include "config.hpp"

namespace tfq::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kUsage = 2,
  kInputFormat = 3,
  kVerifyFailed = 4,
};

/// Unknown name (symbol, route, probe, weight) or inconsistent options.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each command reads its settings from `cfg`, writes files under `out`, prints
// a short report to `log` and returns an exit code.
int cmd_analyze(const RunConfig& cfg, std::ostream& log);
int cmd_quantize(const RunConfig& cfg, std::ostream& log);
int cmd_portrait(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);

}  // namespace tfq::cli

#endif  // TFQ_TOOLS_COMMANDS_HPP_
