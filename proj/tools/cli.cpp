// Copyright 2026 The latmin Authors
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

#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "latmin/export.hpp"
#include "latmin/extension.hpp"
#include "latmin/scenario.hpp"
#include "latmin/solvers.hpp"

namespace latmin::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string scenario;
  std::string out;
  std::string mode = "distributed";
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::vector<double> delta_th;
  bool demo = false;
  bool no_svg = false;
};

class OutputError : public Error {
 public:
  using Error::Error;
};

Scenario load(const Options& o) {
  Scenario s = load_scenario(o.scenario);
  if (o.seed) s.seed = *o.seed;
  if (o.iterations) s.solver.iterations = *o.iterations;
  if (!o.delta_th.empty() && s.game) {
    auto& params = s.game->defender_params;
    if (o.delta_th.size() != 1 && o.delta_th.size() != params.size()) {
      throw InvariantError("--delta-th: expected 1 or " + std::to_string(params.size()) + " values");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i].delta_threshold = o.delta_th.size() == 1 ? o.delta_th[0] : o.delta_th[i];
    }
  }
  validate_scenario(s);
  return s;
}

fs::path output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir);
  return dir;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw OutputError("cannot write " + path.string());
  file.imbue(std::locale::classic());
  writer(file);
  if (!file) throw OutputError("write failed: " + path.string());
}

int check(const Options& o, std::ostream& out) {
  std::vector<ObjectiveOracle<double>> objectives;
  if (o.demo) {
    out << "built-in demo: f(x, y) = x * y on a 2x2 product\n";
    objectives.emplace_back(ChainProduct({2, 2}),
                            [](const LatticePoint& x) { return double(x(0) * x(1)); });
  } else {
    objectives = build_objectives(load(o));
  }
  bool all = true;
  for (std::size_t k = 0; k < objectives.size(); ++k) {
    const auto report = check_submodular(objectives[k]);
    all = all && report.is_submodular;
    out << "objective " << k << ": " << (report.is_submodular ? "submodular" : "NOT submodular")
        << ", " << report.points_checked << " pairs checked, " << report.violations.size()
        << " violations\n";
    for (const auto& v : report.violations) {
      out << "  violation at " << format_point(v.point) << " chains (" << v.chain_i << ", "
          << v.chain_j << "): cross difference " << format_number(v.cross_difference) << '\n';
    }
  }
  return all ? kSuccess : kDomainFailure;
}

void print_solution(std::ostream& out, const std::vector<AgentSolution<double>>& agents) {
  for (std::size_t a = 0; a < agents.size(); ++a) {
    out << "agent " << a << ": point " << format_point(agents[a].point) << " value "
        << format_number(agents[a].value) << '\n';
  }
}

int solve(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  const auto objectives = build_objectives(s);
  const SolverParams params = solver_params(s);
  std::vector<AgentSolution<double>> agents;
  SolveTrace<double> trace;
  if (o.mode == "central") {
    auto r = centralized_minimize(sum_oracles(objectives), params);
    agents.push_back({r.point, r.value, r.profile.values()});
    trace = std::move(r.trace);
  } else {
    auto r = distributed_minimize(objectives, network_matrix(s), params);
    agents = std::move(r.agents);
    trace = std::move(r.trace);
  }
  print_solution(out, agents);
  if (!trace.rows.empty()) {
    out << "final disagreement " << format_number(trace.rows.back().disagreement) << '\n';
  }
  if (!o.out.empty()) {
    const fs::path dir = output_dir(o.out);
    write_file(dir / "solution.csv", [&](std::ostream& f) { write_solution_csv(f, agents); });
    write_file(dir / "trace.csv", [&](std::ostream& f) { write_trace_csv(f, trace); });
    if (!o.no_svg) {
      write_file(dir / "trace.svg", [&](std::ostream& f) { write_trace_svg(f, trace); });
    }
  }
  return kSuccess;
}

int simulate(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  if (!s.game) throw InvariantError("simulate: scenario has no game blocks");
  const auto params = ctf::step_solver_params(*s.game, solver_params(s));
  const auto result = ctf::run_game(*s.game, network_matrix(s), params, s.seed);
  const auto& g = result.outcome;
  out << "steps " << g.steps_played << ", flag " << (g.flag_captured ? "captured" : "safe")
      << ", captures " << g.capture_events << ", releases " << g.release_events
      << ", defender collisions " << g.defender_collisions << ", obstacle occupancies "
      << g.obstacle_occupancies << '\n';
  if (!o.out.empty()) {
    const fs::path dir = output_dir(o.out);
    write_file(dir / "trajectory.csv",
               [&](std::ostream& f) { write_trajectory_csv(f, result.trajectory); });
    write_file(dir / "events.csv", [&](std::ostream& f) { write_events_csv(f, result.events); });
    if (!o.no_svg) {
      write_file(dir / "trajectory.svg", [&](std::ostream& f) {
        write_trajectory_svg(f, s.game->arena, result.trajectory);
      });
    }
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Submodular minimization on chain products and a capture-the-flag simulator",
               "latmin"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed-override", o.seed, "Replace the scenario seed");
    cmd->add_option("--iters-override", o.iterations, "Replace solver.iterations");
  };

  auto* check_cmd = app.add_subcommand("check", "Exhaustively test submodularity of each objective");
  check_cmd->add_option("scenario", o.scenario, "Scenario file");
  check_cmd->add_flag("--demo", o.demo, "Check the built-in supermodular f = x * y");
  add_common(check_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Minimize the scenario's total cost");
  solve_cmd->add_option("scenario", o.scenario, "Scenario file")->required();
  solve_cmd->add_option("--mode", o.mode, "central or distributed")
      ->check(CLI::IsMember({"central", "distributed"}));
  solve_cmd->add_option("--out", o.out, "Output directory for solution.csv and trace.csv");
  solve_cmd->add_flag("--no-svg", o.no_svg, "Skip trace.svg");
  add_common(solve_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Play the capture-the-flag game");
  sim_cmd->add_option("scenario", o.scenario, "Scenario file")->required();
  sim_cmd->add_option("--out", o.out, "Output directory for trajectory.csv and events.csv");
  sim_cmd->add_option("--delta-th", o.delta_th, "Defender delta threshold (one, or one per defender)")
      ->delimiter(',');
  sim_cmd->add_flag("--no-svg", o.no_svg, "Skip trajectory.svg");
  add_common(sim_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (check_cmd->parsed() && o.scenario.empty() && !o.demo) {
      throw CLI::RequiredError("check needs a scenario file or --demo");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (check_cmd->parsed()) return check(o, out);
    if (solve_cmd->parsed()) return solve(o, out);
    return simulate(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

}  // namespace latmin::cli
