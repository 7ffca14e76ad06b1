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

#ifndef TFQ_TOOLS_CONFIG_HPP_
#define TFQ_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfq::cli {

/// Bad key, bad value or malformed config line. Maps to the usage exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value settings. Lines starting with '#' are comments. Keys not in
/// known_keys() are rejected; `tol.<check>` keys are accepted for any check
/// name and validated by the verification suite.
class RunConfig {
 public:
  static const std::vector<std::string>& known_keys();

  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::string& path);
  /// Sorted `key=value` lines; parse(serialize()) round-trips.
  std::string serialize() const;

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  std::map<std::string, double> tolerances() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace tfq::cli

#endif  // TFQ_TOOLS_CONFIG_HPP_
