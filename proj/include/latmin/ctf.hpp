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

#ifndef LATMIN_CTF_HPP_
#define LATMIN_CTF_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "latmin/lattice.hpp"
#include "latmin/solvers.hpp"

// Capture-the-flag coordination on an N_g x N_g grid. Defenders pick their
// next moves by solving a submodular potential-field problem over the
// product of per-axis move chains; attackers follow a stochastic
// attack-base / avoid-defender policy.
namespace latmin::ctf {

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

int manhattan(Cell a, Cell b);

enum class Distance { kManhattan, kSquaredEuclidean };

// Per-axis contribution of the distance: |a - b| or (a - b)^2.
double axis_distance(Distance d, int a, int b);
double distance(Distance d, Cell a, Cell b);

struct Arena {
  int grid_size = 20;
  int horizon = 40;
  std::vector<Cell> defense_zone;
  // responsibility[i] is the subset D_i of the defense zone guarded by
  // defender i; their union is the whole zone.
  std::vector<std::vector<Cell>> responsibility;
  std::vector<Cell> obstacles;

  bool operator==(const Arena&) const = default;
  bool in_grid(Cell c) const;
  bool is_obstacle(Cell c) const;
  bool in_defense_zone(Cell c) const;
  Cell clamp(Cell c) const;
  // Throws DomainError naming the broken invariant.
  void validate(int defenders) const;
};

// Minimum Manhattan distance from c to any cell of `cells`; +inf when empty.
double min_manhattan(Cell c, std::span<const Cell> cells);

enum class Team { kAttacker, kDefender };

struct PlayerState {
  Team team = Team::kDefender;
  Cell position;
  bool captured = false;  // attackers only
};

struct DefenderParams {
  double pursuit_weight = 20.0;  // c
  std::vector<double> cohesion;  // w^d_{i,h}; the diagonal is ignored
  double mobility_weight = 0.1;  // w^u_i
  double zeta1 = 200.0;
  double zeta2 = 5.0;
  double alpha_attack_nominal = 0.1;
  double alpha_defend_nominal = 0.9;
  double beta = 0.7;
  double delta_threshold = 20.0;

  bool operator==(const DefenderParams&) const = default;
  void validate(int defenders) const;
};

struct AttackerParams {
  double eta_base_nominal = 0.3;
  double eta_avoid_nominal = 0.7;
  double delta_threshold = 4.0;
  double kappa = 0.9;

  bool operator==(const AttackerParams&) const = default;
  void validate() const;
};

struct GameConfig {
  Arena arena;
  int u_max = 1;
  Distance distance = Distance::kManhattan;
  std::vector<Cell> defenders;  // initial positions
  std::vector<Cell> attackers;
  std::vector<DefenderParams> defender_params;  // one per defender
  AttackerParams attacker_params;

  bool operator==(const GameConfig&) const = default;
  int defender_count() const { return static_cast<int>(defenders.size()); }
  int attacker_count() const { return static_cast<int>(attackers.size()); }
  void validate() const;
};

struct GameState {
  int k = 0;
  std::vector<PlayerState> defenders;
  std::vector<PlayerState> attackers;
};

GameState initial_state(const GameConfig& config);

// Independent per-player random streams derived from the scenario seed.
std::vector<std::mt19937_64> player_streams(std::uint64_t seed, Team team, int count);

// Cells z + u, u in {-u_max..u_max}^2, that lie inside the grid, sorted.
std::vector<Cell> reachable_set(Cell z, int u_max, const Arena& arena);

struct AvoidancePlanes {
  std::vector<int> x;  // columns x = c the defender must not enter
  std::vector<int> y;  // rows y = c
};

// Planes for defender i such that, if every defender stays off its planes,
// no two defenders share a cell and no defender enters an obstacle at the
// next step. Only u_max = 1 is supported.
//
// A pair with overlapping reachable sets is separated along the axis of its
// larger offset (x on ties): each side gives up the plane next to itself
// toward the other. An obstacle in the reachable set blocks its column, or
// its row when it shares the defender's column.
AvoidancePlanes avoidance_planes(int i, std::span<const Cell> defenders,
                                 const Arena& arena, int u_max = 1);

struct BehaviorWeights {
  double attack;  // alpha^a
  double defend;  // alpha^f = 1 - alpha^a
};

// Logistic switch between pursuit and zone defense around delta_threshold.
// delta = +inf (no active attacker) gives pure defense.
BehaviorWeights adaptive_alpha(double delta, const DefenderParams& params);

// delta(d_i): minimum Manhattan distance of any active attacker to D_i.
double responsibility_distance(std::span<const Cell> responsibility,
                               std::span<const PlayerState> attackers);

// w^a row: pursuit_weight on the active attacker closest to D_i, zero
// elsewhere. Ties are broken uniformly with `rng`, which is only consumed on
// ties. No active attacker gives a zero row.
std::vector<double> attacker_pursuit_weights(
    std::span<const Cell> responsibility, std::span<const PlayerState> attackers,
    double pursuit_weight, std::mt19937_64& rng);

// The defenders' model of attacker motion: one step toward the defense zone.
// Ties go to the smaller x, then the smaller y. Captured attackers stay.
std::vector<Cell> predict_attackers(std::span<const PlayerState> attackers,
                                    const Arena& arena, int u_max);

struct ModeProbabilities {
  double base;
  double avoid;
};

ModeProbabilities attacker_mode_probabilities(double min_defender_distance,
                                              const AttackerParams& params);

// Next cell of active attacker i. Draws one uniform from `rng` every call.
Cell attacker_policy(int i, const GameState& state, const GameConfig& config,
                     std::mt19937_64& rng);

// Everything a defender's cost depends on at one decision time.
struct StepContext {
  Arena arena;
  int u_max = 1;
  Distance distance = Distance::kManhattan;
  std::vector<Cell> defenders;
  std::vector<Cell> predicted_attackers;
  std::vector<DefenderParams> params;
  std::vector<BehaviorWeights> alpha;
  std::vector<std::vector<double>> pursuit;  // w^a rows
  std::vector<AvoidancePlanes> planes;

  int defender_count() const { return static_cast<int>(defenders.size()); }
  // Move of defender j encoded in chains 2j (x) and 2j+1 (y); level l means
  // u = l - u_max.
  Cell next_position(int j, const LatticePoint& u) const;
};

// J_i = alpha^f J^f + alpha^a J^a + J^d + J^avoid + J^mob evaluated at the
// joint move u. Off-grid moves are clamped to the grid.
double defender_cost(int i, const LatticePoint& u, const StepContext& ctx);

struct CostTerms {
  double defend;    // J^f
  double pursue;    // J^a
  double cohesion;  // J^d
  double avoid;     // J^avoid
  double mobility;  // J^mob
};
CostTerms defender_cost_terms(int i, const LatticePoint& u, const StepContext& ctx);

struct StepProblem {
  ChainProduct lattice;
  std::vector<ObjectiveOracle<double>> costs;  // one per defender
  std::shared_ptr<const StepContext> context;

  ObjectiveOracle<double> total_cost() const { return sum_oracles(costs); }
};

// 2 n_d chains of size 2 u_max + 1. `defender_rngs` supply pursuit-target
// tie breaks.
StepProblem build_step_problem(const GameConfig& config, const GameState& state,
                               std::span<std::mt19937_64> defender_rngs);

// Solver settings used at every decision time: warm start at "stay".
SolverParams step_solver_params(const GameConfig& config, SolverParams base);

enum class EventType { kCapture, kRelease, kFlag, kCollisionCheck };
const char* to_string(EventType type);
const char* to_string(Team team);

struct TrajectoryRow {
  int k;
  std::string player_id;  // d<i> or a<i>
  Team team;
  Cell position;
  std::optional<double> alpha_attack;  // defenders only
  bool captured;
};

struct Event {
  int k;
  EventType type;
  std::string subject;
  std::string detail;
};

struct GameOutcome {
  bool flag_captured = false;
  int steps_played = 0;
  int capture_events = 0;
  int release_events = 0;
  int defender_collisions = 0;
  int obstacle_occupancies = 0;
  int captured_at_end = 0;
};

struct GameResult {
  std::vector<TrajectoryRow> trajectory;
  std::vector<Event> events;
  GameOutcome outcome;
  std::vector<GameState> states;  // decision-time states plus the final one
};

// Receding-horizon loop: at each k predict attackers, refresh behavior
// weights, pursuit targets and planes, solve the step problem with the
// distributed solver, move every defender by its own component of its own
// rounded solution and every attacker by its policy, then update captures.
// Stops early when an active attacker enters the defense zone.
GameResult run_game(const GameConfig& config, const WeightMatrix& network,
                    const SolverParams& solver, std::uint64_t seed);

}  // namespace latmin::ctf

#endif  // LATMIN_CTF_HPP_
