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

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace tfq::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

}  // namespace

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys = {
      "grid.n",          "grid.dt",         "grid.t0",        "probe",
      "lattice.b_stride", "lattice.omega_stride", "input",     "downmix",
      "transform",       "wavelet",         "scales.a_min",   "scales.octaves",
      "scales.voices",   "cwt.b_stride",    "symbol",         "route",
      "apply",           "affine.m",        "affine.dx",      "affine.calibrate",
      "sigmas",          "portrait.n",      "portrait.db",    "out",
      "seed",            "only",
  };
  return keys;
}

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    try {
      c.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  return parse(f);
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  for (const auto& [k, v] : values_) os << k << '=' << v << '\n';
  return os.str();
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  const bool tol = key.rfind("tol.", 0) == 0 && key.size() > 4;
  if (!tol && std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError("unknown config key '" + key + "'");
  }
  if (value.find('\n') != std::string::npos) throw ConfigError("config value for '" + key + "' has a newline");
  values_[key] = value;
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_double(key, it->second);
}

std::uint64_t RunConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::uint64_t out = 0;
  const auto& v = it->second;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("config key '" + key + "': not a non-negative integer: '" + v + "'");
  }
  return out;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("config key '" + key + "': expected true or false");
}

std::vector<double> RunConfig::get_doubles(const std::string& key, std::vector<double> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::map<std::string, double> RunConfig::tolerances() const {
  std::map<std::string, double> out;
  for (const auto& [k, v] : values_) {
    if (k.rfind("tol.", 0) == 0) out[k.substr(4)] = to_double(k, v);
  }
  return out;
}

}  // namespace tfq::cli
