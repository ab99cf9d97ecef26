// Copyright 2026 The optholo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "optholo/cli.hpp"

namespace {

using namespace optholo;
using namespace optholo::cli;

int emit(const CommandOutput& out) {
  std::cout << out.report.dump(2) << "\n";
  if (out.exit_code != kExitOk && out.report.contains("error")) {
    std::cerr << "optholo: " << out.report["error"].get<std::string>() << "\n";
  }
  return out.exit_code;
}

int fail(int code, const std::string& message) {
  std::cerr << "optholo: " << message << "\n";
  return code;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gate toolkit for Kerr-degenerate optical modes"};
  app.require_subcommand(1);

  RunConfig cfg;
  int cutoff = 0;
  int steps = 0;
  app.add_option("--cutoff", cutoff, "Fock cutoff per mode (default 60 one mode, 14 two modes)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tolerance", cfg.tolerance, "Area quadrature tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step")->check(CLI::PositiveNumber);
  app.add_option("--steps", steps, "Oracle steps or kick count")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed for statistical noise");
  app.add_flag("--strict", cfg.strict, "Fail when the truncation policy is violated");
  app.add_option("--precision", cfg.precision, "Significant digits in output")
      ->check(CLI::Range(1, 17));
  app.add_option("--oracle-tolerance", cfg.oracle_tolerance,
                 "Largest accepted oracle step-refinement discrepancy")
      ->check(CLI::PositiveNumber);

  std::string loop_path;
  auto* area_cmd = app.add_subcommand("area", "Signed weighted area of a loop");
  area_cmd->add_option("loop", loop_path, "Loop file (JSON)")->required();

  auto* gate_cmd = app.add_subcommand("gate", "Holonomy gate predicted by the area formula");
  gate_cmd->add_option("loop", loop_path, "Loop file (JSON)")->required();

  std::string method = "connection";
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the formula gate with a numerical oracle");
  oracle_cmd->add_option("loop", loop_path, "Loop file (JSON)")->required();
  oracle_cmd->add_option("--method", method, "connection or kicked")
      ->check(CLI::IsMember({"connection", "kicked"}));

  std::vector<double> shift;
  std::vector<double> statistical;
  auto* error_cmd = app.add_subcommand("error", "Border-shift or statistical loop error");
  error_cmd->add_option("loop", loop_path, "Loop file (JSON)")->required();
  auto* shift_opt = error_cmd->add_option("--shift", shift, "du_lo,du_hi,dv_lo,dv_hi (outward)")
                        ->delimiter(',')
                        ->expected(4);
  auto* stat_opt = error_cmd->add_option("--statistical", statistical, "amplitude samples")
                       ->expected(2);
  shift_opt->excludes(stat_opt);

  std::string circuit_path;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a circuit into a loop schedule");
  compile_cmd->add_option("circuit", circuit_path, "Circuit file (text)")->required();
  compile_cmd->add_option("--border-error", cfg.border_error, "Border-shift magnitude per loop")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }
  if (*error_cmd && !*shift_opt && !*stat_opt) {
    return fail(kExitParse, "error: one of --shift or --statistical is required");
  }
  if (cutoff > 0) cfg.cutoff = cutoff;
  if (steps > 0) cfg.steps = steps;

  try {
    if (*compile_cmd) {
      return emit(cmd_compile(parse_circuit(read_text(circuit_path)), cfg));
    }
    const LoopFile file = read_loop_file(loop_path);
    if (*area_cmd) return emit(cmd_area(file, cfg));
    if (*gate_cmd) return emit(cmd_gate(file, cfg));
    if (*oracle_cmd) {
      const auto m = method == "kicked" ? OracleMethod::kicked : OracleMethod::connection;
      return emit(cmd_oracle(file, m, cfg));
    }
    if (*shift_opt) {
      return emit(cmd_error_shift(file, BorderShift{shift[0], shift[1], shift[2], shift[3]}, cfg));
    }
    const int samples = static_cast<int>(statistical[1]);
    if (samples != statistical[1]) throw std::invalid_argument("samples must be an integer");
    return emit(cmd_error_statistical(file, statistical[0], samples, cfg));
  } catch (const ParseError& e) {
    return fail(kExitParse, e.what());
  } catch (const ConvergenceFailure& e) {
    std::cout << nlohmann::json{{"error", "convergence-failure"},
                                {"message", e.what()},
                                {"achieved", e.achieved()}}
                     .dump(2)
              << "\n";
    return fail(kExitConvergence, e.what());
  } catch (const TruncationViolation& e) {
    return fail(kExitTruncation, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitParse, e.what());
  } catch (const std::domain_error& e) {
    return fail(kExitParse, e.what());
  }
}
