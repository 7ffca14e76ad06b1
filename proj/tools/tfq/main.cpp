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

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "tfq/error.hpp"

namespace {

using tfq::cli::RunConfig;

struct Flags {
  std::string config, out, only, tol_error;
  std::vector<std::string> tol;
  std::map<std::string, std::string> values;
};

void add_value(CLI::App* app, Flags& f, const std::string& flag, const std::string& key, const std::string& help) {
  auto* opt = app->add_option_function<std::string>(
      flag, [&f, key](const std::string& v) { f.values[key] = v; }, help);
  opt->type_name("VALUE");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = RunConfig::load(f.config);
  for (const auto& [k, v] : f.values) cfg.set(k, v);
  if (!f.out.empty()) cfg.set("out", f.out);
  if (!f.only.empty()) cfg.set("only", f.only);
  for (const auto& t : f.tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw tfq::cli::ConfigError("--tol expects name=value, got '" + t + "'");
    cfg.set("tol." + t.substr(0, eq), t.substr(eq + 1));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-frequency and affine quantization toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "key=value run configuration file");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--only", f.only, "comma separated list of verify checks");
  app.add_option("--tol", f.tol, "tolerance override name=value (repeatable)");
  add_value(&app, f, "--seed", "seed", "random seed for verify");

  auto* analyze = app.add_subcommand("analyze", "Gabor spectrogram or wavelet scalogram of a signal");
  add_value(analyze, f, "--input", "input", "signal CSV (t,re,im) or PCM16 WAV");
  add_value(analyze, f, "--transform", "transform", "gabor or cwt");
  add_value(analyze, f, "--probe", "probe", "Gabor window, e.g. gaussian:1");
  add_value(analyze, f, "--wavelet", "wavelet", "analysing wavelet, e.g. mexican-hat:1 or morlet:6:1");
  analyze->add_flag_function("--downmix", [&f](std::int64_t) { f.values["downmix"] = "true"; },
                             "average WAV channels to mono");

  auto* quantize = app.add_subcommand("quantize", "Build the operator of a symbol");
  add_value(quantize, f, "--symbol", "symbol", "builtin symbol name or symbol CSV");
  add_value(quantize, f, "--route", "route", "gabor, weyl, born-jordan, apodized:<probe> or affine:<weight>");
  add_value(quantize, f, "--probe", "probe", "probe for the gabor route");
  add_value(quantize, f, "--apply", "apply", "signal CSV to apply the operator to");

  auto* portrait = app.add_subcommand("portrait", "Semiclassical portraits and the classical-limit table");
  add_value(portrait, f, "--symbol", "symbol", "builtin symbol name or symbol CSV");
  add_value(portrait, f, "--sigmas", "sigmas", "comma separated probe widths");

  auto* verify = app.add_subcommand("verify", "Run the numerical self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tfq::cli::kUsage;
  }

  try {
    const RunConfig cfg = build_config(f);
    // Record the effective configuration next to the results.
    const std::filesystem::path out = cfg.get("out", "tfq-out");
    std::filesystem::create_directories(out);
    std::ofstream(out / "run.cfg") << cfg.serialize();
    if (analyze->parsed()) return tfq::cli::cmd_analyze(cfg, std::cout);
    if (quantize->parsed()) return tfq::cli::cmd_quantize(cfg, std::cout);
    if (portrait->parsed()) return tfq::cli::cmd_portrait(cfg, std::cout);
    if (verify->parsed()) return tfq::cli::cmd_verify(cfg, std::cout);
  } catch (const tfq::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tfq::cli::kUsage;
  } catch (const tfq::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tfq::cli::kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tfq::cli::kUsage;
  } catch (const tfq::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return tfq::cli::kInputFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tfq::cli::kRuntimeError;
  }
  return tfq::cli::kUsage;
}
