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

#include "latmin/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace latmin {

namespace {

using json = nlohmann::json;
using ctf::Cell;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError((path.empty() ? "scenario" : path) + ": expected an object");
}

void expect_keys(const json& j, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  expect_object(j, path);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw SchemaError(join(path, key) + ": unknown field");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(join(path, key) + ": missing required field");
  return *it;
}

const json* optional(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path + ": expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw SchemaError(path + ": integer out of range");
  }
  return static_cast<int>(v);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path + ": expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  return j;
}

std::vector<double> as_numbers(const json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.push_back(as_number(j[i], index(path, i)));
  }
  return out;
}

std::vector<int> as_ints(const json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.push_back(as_int(j[i], index(path, i)));
  }
  return out;
}

Cell as_cell(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path + ": expected a cell [x, y]");
  return {as_int(j[0], index(path, 0)), as_int(j[1], index(path, 1))};
}

std::vector<Cell> as_cells(const json& j, const std::string& path) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.push_back(as_cell(j[i], index(path, i)));
  }
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& j, const std::string& path) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.push_back(as_numbers(j[i], index(path, i)));
  }
  return out;
}

// A defender parameter given either once for every defender or per defender.
std::vector<double> per_defender(const json& j, const std::string& path, int defenders) {
  if (j.is_number()) {
    return std::vector<double>(static_cast<std::size_t>(defenders), j.get<double>());
  }
  std::vector<double> v = as_numbers(j, path);
  if (static_cast<int>(v.size()) != defenders) {
    throw SchemaError(path + ": expected a number or " + std::to_string(defenders) +
                      " per-defender values");
  }
  return v;
}

ctf::Distance parse_distance(const json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "manhattan") return ctf::Distance::kManhattan;
  if (s == "squared_euclidean") return ctf::Distance::kSquaredEuclidean;
  throw SchemaError(path + ": expected \"manhattan\" or \"squared_euclidean\"");
}

ctf::GameConfig parse_game(const json& root) {
  ctf::GameConfig g;
  const json& arena = require(root, "", "arena");
  expect_keys(arena, "arena",
              {"grid_size", "horizon", "defense_zone", "responsibility", "obstacles"});
  g.arena.grid_size = as_int(require(arena, "arena", "grid_size"), "arena.grid_size");
  g.arena.horizon = as_int(require(arena, "arena", "horizon"), "arena.horizon");
  g.arena.defense_zone = as_cells(require(arena, "arena", "defense_zone"), "arena.defense_zone");
  const json& resp = as_array(require(arena, "arena", "responsibility"), "arena.responsibility");
  for (std::size_t i = 0; i < resp.size(); ++i) {
    g.arena.responsibility.push_back(as_cells(resp[i], index("arena.responsibility", i)));
  }
  if (const json* obs = optional(arena, "obstacles")) {
    g.arena.obstacles = as_cells(*obs, "arena.obstacles");
  }

  const json& players = require(root, "", "players");
  expect_keys(players, "players", {"u_max", "defenders", "attackers"});
  g.u_max = as_int(require(players, "players", "u_max"), "players.u_max");
  g.defenders = as_cells(require(players, "players", "defenders"), "players.defenders");
  if (const json* att = optional(players, "attackers")) {
    g.attackers = as_cells(*att, "players.attackers");
  }
  const int nd = static_cast<int>(g.defenders.size());

  const json& def = require(root, "", "defenders");
  expect_keys(def, "defenders",
              {"distance", "pursuit_weight", "cohesion", "mobility_weight", "zeta1", "zeta2",
               "alpha_attack_nominal", "alpha_defend_nominal", "beta", "delta_threshold"});
  if (const json* d = optional(def, "distance")) g.distance = parse_distance(*d, "defenders.distance");
  g.defender_params.assign(static_cast<std::size_t>(nd), ctf::DefenderParams{});
  auto fill = [&](const char* key, double ctf::DefenderParams::*field) {
    if (const json* v = optional(def, key)) {
      const auto values = per_defender(*v, join("defenders", key), nd);
      for (int i = 0; i < nd; ++i) {
        g.defender_params[static_cast<std::size_t>(i)].*field = values[static_cast<std::size_t>(i)];
      }
    }
  };
  fill("pursuit_weight", &ctf::DefenderParams::pursuit_weight);
  fill("mobility_weight", &ctf::DefenderParams::mobility_weight);
  fill("zeta1", &ctf::DefenderParams::zeta1);
  fill("zeta2", &ctf::DefenderParams::zeta2);
  fill("alpha_attack_nominal", &ctf::DefenderParams::alpha_attack_nominal);
  fill("alpha_defend_nominal", &ctf::DefenderParams::alpha_defend_nominal);
  fill("beta", &ctf::DefenderParams::beta);
  fill("delta_threshold", &ctf::DefenderParams::delta_threshold);
  const auto cohesion = as_matrix(require(def, "defenders", "cohesion"), "defenders.cohesion");
  if (static_cast<int>(cohesion.size()) != nd) {
    throw SchemaError("defenders.cohesion: expected " + std::to_string(nd) + " rows");
  }
  for (int i = 0; i < nd; ++i) {
    g.defender_params[static_cast<std::size_t>(i)].cohesion = cohesion[static_cast<std::size_t>(i)];
  }

  const json& att = require(root, "", "attackers");
  expect_keys(att, "attackers", {"eta_base_nominal", "eta_avoid_nominal", "delta_threshold", "kappa"});
  auto& ap = g.attacker_params;
  if (const json* v = optional(att, "eta_base_nominal")) ap.eta_base_nominal = as_number(*v, "attackers.eta_base_nominal");
  if (const json* v = optional(att, "eta_avoid_nominal")) ap.eta_avoid_nominal = as_number(*v, "attackers.eta_avoid_nominal");
  if (const json* v = optional(att, "delta_threshold")) ap.delta_threshold = as_number(*v, "attackers.delta_threshold");
  if (const json* v = optional(att, "kappa")) ap.kappa = as_number(*v, "attackers.kappa");
  return g;
}

ObjectiveSpec parse_objective(const json& j, const std::string& path) {
  expect_object(j, path);
  const std::string type = as_string(require(j, path, "type"), join(path, "type"));
  if (type == "linear") {
    expect_keys(j, path, {"type", "coefficients", "offset"});
    LinearObjective o;
    o.coefficients = as_numbers(require(j, path, "coefficients"), join(path, "coefficients"));
    if (const json* v = optional(j, "offset")) o.offset = as_number(*v, join(path, "offset"));
    return o;
  }
  if (type == "separable_quadratic") {
    expect_keys(j, path, {"type", "centers", "weights"});
    SeparableQuadraticObjective o;
    o.centers = as_numbers(require(j, path, "centers"), join(path, "centers"));
    if (const json* v = optional(j, "weights")) {
      o.weights = as_numbers(*v, join(path, "weights"));
    } else {
      o.weights.assign(o.centers.size(), 1.0);
    }
    return o;
  }
  if (type == "pairwise_product") {
    expect_keys(j, path, {"type", "chains", "coefficient"});
    PairwiseProductObjective o;
    const auto chains = as_ints(require(j, path, "chains"), join(path, "chains"));
    if (chains.size() != 2) throw SchemaError(join(path, "chains") + ": expected two chain indices");
    o.first = chains[0];
    o.second = chains[1];
    if (const json* v = optional(j, "coefficient")) o.coefficient = as_number(*v, join(path, "coefficient"));
    return o;
  }
  if (type == "ctf_step") {
    expect_keys(j, path, {"type", "defender"});
    return CtfStepObjective{as_int(require(j, path, "defender"), join(path, "defender"))};
  }
  throw SchemaError(join(path, "type") + ": unknown objective \"" + type + "\"");
}

ProblemSpec parse_problem(const json& j) {
  expect_keys(j, "problem", {"dims", "objectives"});
  ProblemSpec p;
  if (const json* d = optional(j, "dims")) p.dims = as_ints(*d, "problem.dims");
  const json& objs = as_array(require(j, "problem", "objectives"), "problem.objectives");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    p.objectives.push_back(parse_objective(objs[i], index("problem.objectives", i)));
  }
  return p;
}

NetworkSpec parse_network(const json& j) {
  expect_keys(j, "network", {"matrix", "eta"});
  NetworkSpec n;
  n.matrix = as_matrix(require(j, "network", "matrix"), "network.matrix");
  if (const json* e = optional(j, "eta")) n.eta = as_number(*e, "network.eta");
  return n;
}

SolverSpec parse_solver(const json& j) {
  expect_keys(j, "solver", {"iterations", "step", "t_hat", "init"});
  SolverSpec s;
  if (const json* v = optional(j, "iterations")) s.iterations = as_int(*v, "solver.iterations");
  if (const json* step = optional(j, "step")) {
    expect_keys(*step, "solver.step", {"schedule", "gamma"});
    if (const json* v = optional(*step, "schedule")) {
      const std::string kind = as_string(*v, "solver.step.schedule");
      if (kind == "constant") {
        s.schedule = StepSchedule::Kind::kConstant;
      } else if (kind == "diminishing") {
        s.schedule = StepSchedule::Kind::kDiminishing;
      } else {
        throw SchemaError("solver.step.schedule: expected \"constant\" or \"diminishing\"");
      }
    }
    if (const json* v = optional(*step, "gamma")) s.gamma = as_number(*v, "solver.step.gamma");
  }
  if (const json* v = optional(j, "t_hat")) s.t_hat = as_number(*v, "solver.t_hat");
  if (const json* v = optional(j, "init")) {
    const std::string init = as_string(*v, "solver.init");
    if (init == "midpoint") {
      s.init = InitSpec::kMidpoint;
    } else if (init == "random") {
      s.init = InitSpec::kRandom;
    } else {
      throw SchemaError("solver.init: expected \"midpoint\" or \"random\"");
    }
  }
  return s;
}

json cell_json(Cell c) { return json::array({c.x, c.y}); }

json cells_json(const std::vector<Cell>& cells) {
  json out = json::array();
  for (Cell c : cells) out.push_back(cell_json(c));
  return out;
}

json per_defender_json(const ctf::GameConfig& g, double ctf::DefenderParams::*field) {
  std::vector<double> values;
  for (const auto& p : g.defender_params) values.push_back(p.*field);
  bool uniform = true;
  for (double v : values) uniform = uniform && v == values.front();
  if (uniform && !values.empty()) return values.front();
  return values;
}

json objective_json(const ObjectiveSpec& spec) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearObjective>) {
          return {{"type", "linear"}, {"coefficients", o.coefficients}, {"offset", o.offset}};
        } else if constexpr (std::is_same_v<T, SeparableQuadraticObjective>) {
          return {{"type", "separable_quadratic"}, {"centers", o.centers}, {"weights", o.weights}};
        } else if constexpr (std::is_same_v<T, PairwiseProductObjective>) {
          return {{"type", "pairwise_product"},
                  {"chains", json::array({o.first, o.second})},
                  {"coefficient", o.coefficient}};
        } else {
          return {{"type", "ctf_step"}, {"defender", o.defender}};
        }
      },
      spec);
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw InvariantError("network.matrix: row " + std::to_string(i) +
                           " has the wrong length for a square matrix");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return a;
}

ChainProduct game_step_lattice(const ctf::GameConfig& g) {
  return ChainProduct(std::vector<int>(static_cast<std::size_t>(2 * g.defender_count()),
                                       2 * g.u_max + 1));
}

void validate_objective(const ObjectiveSpec& spec, const std::string& path,
                        const ChainProduct& lattice, const Scenario& s) {
  const auto n = static_cast<std::size_t>(lattice.size());
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, LinearObjective>) {
          if (o.coefficients.size() != n) {
            throw InvariantError(path + ".coefficients: expected " + std::to_string(n) + " entries");
          }
        } else if constexpr (std::is_same_v<T, SeparableQuadraticObjective>) {
          if (o.centers.size() != n || o.weights.size() != n) {
            throw InvariantError(path + ": centers and weights need " + std::to_string(n) + " entries");
          }
        } else if constexpr (std::is_same_v<T, PairwiseProductObjective>) {
          const int m = lattice.size();
          if (o.first < 0 || o.second < 0 || o.first >= m || o.second >= m || o.first == o.second) {
            throw InvariantError(path + ".chains: need two distinct chains of the lattice");
          }
        } else {
          if (!s.game) throw InvariantError(path + ": ctf_step needs a game scenario");
          if (o.defender < 0 || o.defender >= s.game->defender_count()) {
            throw InvariantError(path + ".defender: no such defender");
          }
          if (!(game_step_lattice(*s.game) == lattice)) {
            throw InvariantError("problem.dims: ctf_step needs the game's step lattice");
          }
        }
      },
      spec);
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (!s.game && !s.problem) {
    throw InvariantError("scenario needs either game blocks (arena, players, ...) or a problem block");
  }
  if (s.game) {
    try {
      s.game->validate();
    } catch (const DomainError& e) {
      throw InvariantError(e.what());
    }
  }
  try {
    solver_params(s).validate();
  } catch (const DomainError& e) {
    throw InvariantError(std::string("solver: ") + e.what());
  }
  if (s.network) {
    const Eigen::MatrixXd a = to_eigen(s.network->matrix);
    WeightMatrixReport report;
    try {
      report = validate_weight_matrix(a, s.network->eta);
    } catch (const DomainError& e) {
      throw InvariantError(std::string("network: ") + e.what());
    }
    if (!report.ok()) {
      std::string msg = "network.matrix";
      for (const auto& f : report.failures) msg += ": " + f;
      throw InvariantError(msg);
    }
    const auto agents = static_cast<std::size_t>(a.rows());
    if (s.problem && s.problem->objectives.size() != agents) {
      throw InvariantError("network.matrix: " + std::to_string(agents) + " agents but problem has " +
                           std::to_string(s.problem->objectives.size()) + " objectives");
    }
    if (!s.problem && s.game && static_cast<int>(agents) != s.game->defender_count()) {
      throw InvariantError("network.matrix: " + std::to_string(agents) + " agents but game has " +
                           std::to_string(s.game->defender_count()) + " defenders");
    }
  }
  if (s.problem) {
    if (s.problem->objectives.empty()) throw InvariantError("problem.objectives: empty");
    ChainProduct lattice = [&] {
      try {
        return problem_lattice(s);
      } catch (const DomainError& e) {
        throw InvariantError(std::string("problem.dims: ") + e.what());
      }
    }();
    for (std::size_t i = 0; i < s.problem->objectives.size(); ++i) {
      validate_objective(s.problem->objectives[i], index("problem.objectives", i), lattice, s);
    }
  }
}

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("parse error: ") + e.what());
  }
  expect_keys(root, "",
              {"seed", "arena", "players", "defenders", "attackers", "network", "solver", "problem"});
  Scenario s;
  const json& seed = require(root, "", "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw SchemaError("seed: expected a non-negative integer");
  }
  s.seed = seed.get<std::uint64_t>();
  const bool any_game = root.contains("arena") || root.contains("players") ||
                        root.contains("defenders") || root.contains("attackers");
  if (any_game) s.game = parse_game(root);
  if (const json* p = optional(root, "problem")) s.problem = parse_problem(*p);
  if (const json* n = optional(root, "network")) s.network = parse_network(*n);
  if (const json* v = optional(root, "solver")) s.solver = parse_solver(*v);
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string write_scenario(const Scenario& s) {
  json root = json::object();
  root["seed"] = s.seed;
  if (s.game) {
    const auto& g = *s.game;
    json resp = json::array();
    for (const auto& d : g.arena.responsibility) resp.push_back(cells_json(d));
    root["arena"] = {{"grid_size", g.arena.grid_size},
                     {"horizon", g.arena.horizon},
                     {"defense_zone", cells_json(g.arena.defense_zone)},
                     {"responsibility", resp},
                     {"obstacles", cells_json(g.arena.obstacles)}};
    root["players"] = {{"u_max", g.u_max},
                       {"defenders", cells_json(g.defenders)},
                       {"attackers", cells_json(g.attackers)}};
    json cohesion = json::array();
    for (const auto& p : g.defender_params) cohesion.push_back(p.cohesion);
    root["defenders"] = {
        {"distance", g.distance == ctf::Distance::kManhattan ? "manhattan" : "squared_euclidean"},
        {"pursuit_weight", per_defender_json(g, &ctf::DefenderParams::pursuit_weight)},
        {"cohesion", cohesion},
        {"mobility_weight", per_defender_json(g, &ctf::DefenderParams::mobility_weight)},
        {"zeta1", per_defender_json(g, &ctf::DefenderParams::zeta1)},
        {"zeta2", per_defender_json(g, &ctf::DefenderParams::zeta2)},
        {"alpha_attack_nominal", per_defender_json(g, &ctf::DefenderParams::alpha_attack_nominal)},
        {"alpha_defend_nominal", per_defender_json(g, &ctf::DefenderParams::alpha_defend_nominal)},
        {"beta", per_defender_json(g, &ctf::DefenderParams::beta)},
        {"delta_threshold", per_defender_json(g, &ctf::DefenderParams::delta_threshold)}};
    const auto& ap = g.attacker_params;
    root["attackers"] = {{"eta_base_nominal", ap.eta_base_nominal},
                         {"eta_avoid_nominal", ap.eta_avoid_nominal},
                         {"delta_threshold", ap.delta_threshold},
                         {"kappa", ap.kappa}};
  }
  if (s.network) root["network"] = {{"matrix", s.network->matrix}, {"eta", s.network->eta}};
  root["solver"] = {
      {"iterations", s.solver.iterations},
      {"step",
       {{"schedule", s.solver.schedule == StepSchedule::Kind::kConstant ? "constant" : "diminishing"},
        {"gamma", s.solver.gamma}}},
      {"t_hat", s.solver.t_hat},
      {"init", s.solver.init == InitSpec::kMidpoint ? "midpoint" : "random"}};
  if (s.problem) {
    json objectives = json::array();
    for (const auto& o : s.problem->objectives) objectives.push_back(objective_json(o));
    root["problem"] = {{"objectives", objectives}};
    if (!s.problem->dims.empty()) root["problem"]["dims"] = s.problem->dims;
  }
  return root.dump(2) + "\n";
}

SolverParams solver_params(const Scenario& s) {
  SolverParams p;
  p.iterations = s.solver.iterations;
  p.step = {s.solver.schedule, s.solver.gamma};
  p.t_hat = s.solver.t_hat;
  p.seed = s.seed;
  p.init = s.solver.init == InitSpec::kRandom ? Initialization::kRandom : Initialization::kMidpoint;
  return p;
}

WeightMatrix network_matrix(const Scenario& s) {
  if (!s.network) throw InvariantError("network: block required for distributed solving");
  try {
    return WeightMatrix::validated(to_eigen(s.network->matrix), s.network->eta);
  } catch (const DomainError& e) {
    throw InvariantError(std::string("network.matrix: ") + e.what());
  }
}

ChainProduct problem_lattice(const Scenario& s) {
  if (s.problem && !s.problem->dims.empty()) return ChainProduct(s.problem->dims);
  if (s.game) return game_step_lattice(*s.game);
  throw InvariantError("problem.dims: missing");
}

std::vector<ObjectiveOracle<double>> build_objectives(const Scenario& s) {
  const ChainProduct lattice = problem_lattice(s);
  std::optional<ctf::StepProblem> step;
  auto step_problem = [&]() -> const ctf::StepProblem& {
    if (!step) {
      auto rngs = ctf::player_streams(s.seed, ctf::Team::kDefender, s.game->defender_count());
      step = ctf::build_step_problem(*s.game, ctf::initial_state(*s.game), rngs);
    }
    return *step;
  };

  std::vector<ObjectiveSpec> specs;
  if (s.problem) {
    specs = s.problem->objectives;
  } else {
    for (int i = 0; i < s.game->defender_count(); ++i) specs.push_back(CtfStepObjective{i});
  }

  std::vector<ObjectiveOracle<double>> out;
  for (const auto& spec : specs) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, LinearObjective>) {
            out.emplace_back(lattice, [o](const LatticePoint& x) {
              double v = o.offset;
              for (std::size_t i = 0; i < o.coefficients.size(); ++i) {
                v += o.coefficients[i] * x(static_cast<Eigen::Index>(i));
              }
              return v;
            });
          } else if constexpr (std::is_same_v<T, SeparableQuadraticObjective>) {
            out.emplace_back(lattice, [o](const LatticePoint& x) {
              double v = 0.0;
              for (std::size_t i = 0; i < o.centers.size(); ++i) {
                const double d = x(static_cast<Eigen::Index>(i)) - o.centers[i];
                v += o.weights[i] * d * d;
              }
              return v;
            });
          } else if constexpr (std::is_same_v<T, PairwiseProductObjective>) {
            out.emplace_back(lattice, [o](const LatticePoint& x) {
              return o.coefficient * x(o.first) * x(o.second);
            });
          } else {
            out.push_back(step_problem().costs[static_cast<std::size_t>(o.defender)]);
          }
        },
        spec);
  }
  return out;
}

}  // namespace latmin
