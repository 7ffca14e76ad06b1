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

// Acceptance runner: one PASS/FAIL line per criterion. Criteria 1-11 group the
// rows of the verification suite; criterion 12 runs the verify command twice
// with the same seed and compares the report files byte for byte.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include <unistd.h>

#include "commands.hpp"
#include "config.hpp"
#include "suite.hpp"

namespace {

namespace fs = std::filesystem;

const std::map<int, const char*> kTitles = {
    {1, "Plancherel"},
    {2, "Gabor energy identity and reconstruction"},
    {3, "Gabor resolution of the identity"},
    {4, "Gabor covariance"},
    {5, "CCR and uncertainty"},
    {6, "Gabor quantization of time and frequency"},
    {7, "Closed-form Gabor operators"},
    {8, "Semiclassical portraits and no classical limit"},
    {9, "Route equivalence"},
    {10, "Continuous wavelet transform"},
    {11, "Affine quantization"},
    {12, "Deterministic verify report"},
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "--verbose";
  tfq::suite::Options opt;
  const tfq::suite::Report rep = tfq::suite::run(opt);

  // Each line shows the first failing row of the criterion, else its first row.
  std::map<int, std::string> shown;
  std::map<int, bool> pass;
  for (const auto& row : rep.rows) {
    std::ostringstream os;
    os << row.name << '=' << row.value << (row.note.empty() ? "" : " (" + row.note + ")");
    const bool first = pass.emplace(row.criterion, true).second;
    if (first || (!row.pass && pass[row.criterion])) shown[row.criterion] = os.str();
    pass[row.criterion] = pass[row.criterion] && row.pass;
  }
  if (verbose) std::cerr << rep.summary();

  // Criterion 12.
  const fs::path base = fs::temp_directory_path() / ("tfq_acceptance_" + std::to_string(::getpid()));
  bool same = false;
  std::string detail;
  try {
    std::ostringstream log;
    std::string reports[2];
    for (int i = 0; i < 2; ++i) {
      tfq::cli::RunConfig cfg;
      cfg.set("seed", std::to_string(opt.seed));
      cfg.set("out", (base / std::to_string(i)).string());
      tfq::cli::cmd_verify(cfg, log);
      reports[i] = slurp(base / std::to_string(i) / "report.csv");
    }
    same = !reports[0].empty() && reports[0] == reports[1] && reports[0] == rep.csv();
    detail = std::to_string(reports[0].size()) + " bytes";
  } catch (const std::exception& e) {
    detail = e.what();
  }
  fs::remove_all(base);
  pass[12] = same;
  shown[12] = detail;

  bool all = true;
  for (const auto& [id, title] : kTitles) {
    const bool ok = pass.count(id) && pass[id];
    all = all && ok;
    std::printf("%s AC%-2d %s [%s]\n", ok ? "PASS" : "FAIL", id, title, shown.count(id) ? shown[id].c_str() : "no checks");
  }
  return all ? 0 : 1;
}
