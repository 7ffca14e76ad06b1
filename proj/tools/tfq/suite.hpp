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

#ifndef TFQ_TOOLS_SUITE_HPP_
#define TFQ_TOOLS_SUITE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tfq::suite {

enum class Compare {
  kAtMost,  // value <= tolerance
  kAtLeast, // value >= tolerance
  kBelow,   // value < tolerance
  kAbove,   // value > tolerance
};

struct CheckRow {
  std::string name;
  int criterion = 0;  // acceptance criterion the row belongs to
  double value = 0.0;
  double tolerance = 0.0;
  Compare compare = Compare::kAtMost;
  bool pass = false;
  std::string note;  // exception text when the check threw
};

struct Report {
  std::vector<CheckRow> rows;

  bool pass() const;
  /// `check,value,tolerance,status` with "%.17g" numbers.
  std::string csv() const;
  /// One line per row plus an overall line.
  std::string summary() const;
};

struct Options {
  std::uint64_t seed = 20240901;
  std::map<std::string, double> tolerance_overrides;
  std::vector<std::string> only;  // empty: every check
};

/// Names in report order.
std::vector<std::string> check_names();

/// Runs the selected checks. Throws std::invalid_argument for unknown names
/// in `only` or in the tolerance overrides.
Report run(const Options& opt);

}  // namespace tfq::suite

#endif  // TFQ_TOOLS_SUITE_HPP_
