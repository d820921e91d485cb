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

#ifndef LATMIN_SCENARIO_HPP_
#define LATMIN_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latmin/ctf.hpp"
#include "latmin/error.hpp"
#include "latmin/lattice.hpp"
#include "latmin/solvers.hpp"

namespace latmin {

// Scenario files: JSON (comments allowed) with the blocks
//   seed, arena, players, defenders, attackers, network, solver, problem.
// A game scenario has arena/players/defenders/attackers; a standalone
// optimization problem has `problem`. docs/scenario-format.md lists every
// field.

class ScenarioError : public Error {
 public:
  using Error::Error;
};
// Not valid JSON.
class ParseError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};
// Valid JSON, wrong shape: missing or unknown key, wrong type.
class SchemaError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};
// Well-formed but violates a domain invariant.
class InvariantError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

// f(x) = offset + sum_i coefficients[i] * x(i)
struct LinearObjective {
  std::vector<double> coefficients;
  double offset = 0.0;
  bool operator==(const LinearObjective&) const = default;
};

// f(x) = sum_i weights[i] * (x(i) - centers[i])^2
struct SeparableQuadraticObjective {
  std::vector<double> centers;
  std::vector<double> weights;
  bool operator==(const SeparableQuadraticObjective&) const = default;
};

// f(x) = coefficient * x(first) * x(second); supermodular for coefficient > 0.
struct PairwiseProductObjective {
  int first = 0;
  int second = 1;
  double coefficient = 1.0;
  bool operator==(const PairwiseProductObjective&) const = default;
};

// Cost J_i of one defender in the decision problem at the game's start.
struct CtfStepObjective {
  int defender = 0;
  bool operator==(const CtfStepObjective&) const = default;
};

using ObjectiveSpec = std::variant<LinearObjective, SeparableQuadraticObjective,
                                   PairwiseProductObjective, CtfStepObjective>;

struct ProblemSpec {
  std::vector<int> dims;  // empty: derived from the game for ctf_step
  std::vector<ObjectiveSpec> objectives;
  bool operator==(const ProblemSpec&) const = default;
};

struct NetworkSpec {
  std::vector<std::vector<double>> matrix;
  double eta = 0.1;
  bool operator==(const NetworkSpec&) const = default;
};

enum class InitSpec { kMidpoint, kRandom };

struct SolverSpec {
  int iterations = 20;
  StepSchedule::Kind schedule = StepSchedule::Kind::kConstant;
  double gamma = 0.1;
  double t_hat = 0.7;
  InitSpec init = InitSpec::kMidpoint;
  bool operator==(const SolverSpec&) const = default;
};

struct Scenario {
  std::uint64_t seed = 0;
  std::optional<ctf::GameConfig> game;
  std::optional<ProblemSpec> problem;
  std::optional<NetworkSpec> network;
  SolverSpec solver;
  bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
std::string write_scenario(const Scenario& scenario);

// Re-runs every invariant check; throws InvariantError naming the field.
void validate_scenario(const Scenario& scenario);

SolverParams solver_params(const Scenario& scenario);
// Throws InvariantError when the block is missing or the matrix is invalid.
WeightMatrix network_matrix(const Scenario& scenario);

// Lattice of the optimization problem: problem.dims, or the game's step
// lattice when the scenario is a game without a problem block.
ChainProduct problem_lattice(const Scenario& scenario);

// One oracle per objective entry. A game scenario without a problem block
// yields one ctf_step objective per defender.
std::vector<ObjectiveOracle<double>> build_objectives(const Scenario& scenario);

}  // namespace latmin

#endif  // LATMIN_SCENARIO_HPP_
