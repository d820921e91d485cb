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

#include "latmin/ctf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

namespace latmin::ctf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string cell_string(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

bool contains(std::span<const Cell> cells, Cell c) {
  return std::find(cells.begin(), cells.end(), c) != cells.end();
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::mt19937_64 player_stream(std::uint64_t seed, Team team, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(team == Team::kDefender ? 1 : 2),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

// Reachable, obstacle-free cell minimizing distance to the defense zone.
Cell step_toward_zone(Cell z, const Arena& arena, int u_max) {
  Cell best = z;
  double best_d = kInf;
  for (Cell c : reachable_set(z, u_max, arena)) {
    if (arena.is_obstacle(c)) continue;
    const double d = min_manhattan(c, arena.defense_zone);
    if (d < best_d) {  // reachable_set is sorted by (x, y)
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

int manhattan(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

double axis_distance(Distance d, int a, int b) {
  const double diff = static_cast<double>(a - b);
  return d == Distance::kManhattan ? std::abs(diff) : diff * diff;
}

double distance(Distance d, Cell a, Cell b) {
  return axis_distance(d, a.x, b.x) + axis_distance(d, a.y, b.y);
}

bool Arena::in_grid(Cell c) const {
  return c.x >= 0 && c.y >= 0 && c.x < grid_size && c.y < grid_size;
}

bool Arena::is_obstacle(Cell c) const { return contains(obstacles, c); }

bool Arena::in_defense_zone(Cell c) const { return contains(defense_zone, c); }

Cell Arena::clamp(Cell c) const {
  return {std::clamp(c.x, 0, grid_size - 1), std::clamp(c.y, 0, grid_size - 1)};
}

void Arena::validate(int defenders) const {
  if (grid_size < 1) throw DomainError("arena.grid_size must be positive");
  if (horizon < 1) throw DomainError("arena.horizon must be positive");
  if (defense_zone.empty()) throw DomainError("arena.defense_zone is empty");
  for (Cell c : defense_zone) {
    if (!in_grid(c)) throw DomainError("arena.defense_zone cell " + cell_string(c) + " outside the grid");
    if (is_obstacle(c)) throw DomainError("arena.defense_zone cell " + cell_string(c) + " is an obstacle");
  }
  for (Cell c : obstacles) {
    if (!in_grid(c)) throw DomainError("arena.obstacles cell " + cell_string(c) + " outside the grid");
  }
  if (static_cast<int>(responsibility.size()) != defenders) {
    throw DomainError("arena.responsibility needs one cell set per defender (" +
                      std::to_string(defenders) + ")");
  }
  std::set<Cell> covered;
  for (std::size_t i = 0; i < responsibility.size(); ++i) {
    if (responsibility[i].empty()) {
      throw DomainError("arena.responsibility[" + std::to_string(i) + "] is empty");
    }
    for (Cell c : responsibility[i]) {
      if (!in_defense_zone(c)) {
        throw DomainError("arena.responsibility[" + std::to_string(i) + "] cell " +
                          cell_string(c) + " is not in the defense zone");
      }
      covered.insert(c);
    }
  }
  if (covered.size() != std::set<Cell>(defense_zone.begin(), defense_zone.end()).size()) {
    throw DomainError("arena.responsibility does not cover the defense zone");
  }
}

double min_manhattan(Cell c, std::span<const Cell> cells) {
  double best = kInf;
  for (Cell o : cells) best = std::min(best, static_cast<double>(manhattan(c, o)));
  return best;
}

void DefenderParams::validate(int defenders) const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("defenders.") + name + " must be a non-negative number");
    }
  };
  nonneg(pursuit_weight, "pursuit_weight");
  nonneg(mobility_weight, "mobility_weight");
  nonneg(beta, "beta");
  nonneg(delta_threshold, "delta_threshold");
  if (!(zeta1 >= 1.0)) throw DomainError("defenders.zeta1 must be >= 1");
  if (!(zeta2 >= 1.0)) throw DomainError("defenders.zeta2 must be >= 1");
  if (!(alpha_attack_nominal > 0.0 && alpha_attack_nominal < 1.0) ||
      !(alpha_defend_nominal > 0.0 && alpha_defend_nominal < 1.0) ||
      std::abs(alpha_attack_nominal + alpha_defend_nominal - 1.0) > 1e-9) {
    throw DomainError("defenders.alpha nominals must lie in (0,1) and sum to 1");
  }
  if (static_cast<int>(cohesion.size()) != defenders) {
    throw DomainError("defenders.cohesion row needs " + std::to_string(defenders) + " entries");
  }
  for (double w : cohesion) nonneg(w, "cohesion");
}

void AttackerParams::validate() const {
  if (!(eta_base_nominal > 0.0 && eta_base_nominal < 1.0) ||
      !(eta_avoid_nominal > 0.0 && eta_avoid_nominal < 1.0) ||
      std::abs(eta_base_nominal + eta_avoid_nominal - 1.0) > 1e-9) {
    throw DomainError("attackers.eta nominals must lie in (0,1) and sum to 1");
  }
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("attackers.kappa must lie in [0,1]");
  if (!(delta_threshold >= 0.0)) throw DomainError("attackers.delta_threshold must be non-negative");
}

void GameConfig::validate() const {
  const int nd = defender_count();
  if (nd < 1) throw DomainError("players.defenders is empty");
  if (u_max < 0) throw DomainError("players.u_max must be non-negative");
  arena.validate(nd);
  if (static_cast<int>(defender_params.size()) != nd) {
    throw DomainError("defenders block needs parameters for every defender");
  }
  for (const auto& p : defender_params) p.validate(nd);
  attacker_params.validate();
  std::set<Cell> seen;
  for (int i = 0; i < nd; ++i) {
    const Cell c = defenders[static_cast<std::size_t>(i)];
    if (!arena.in_grid(c)) throw DomainError("players.defenders[" + std::to_string(i) + "] outside the grid");
    if (arena.is_obstacle(c)) {
      throw DomainError("infeasible scenario: players.defenders[" + std::to_string(i) +
                        "] starts on an obstacle");
    }
    if (!seen.insert(c).second) {
      throw DomainError("infeasible scenario: players.defenders[" + std::to_string(i) +
                        "] shares its start cell");
    }
  }
  for (int g = 0; g < attacker_count(); ++g) {
    const Cell c = attackers[static_cast<std::size_t>(g)];
    if (!arena.in_grid(c)) throw DomainError("players.attackers[" + std::to_string(g) + "] outside the grid");
    if (arena.is_obstacle(c)) {
      throw DomainError("infeasible scenario: players.attackers[" + std::to_string(g) +
                        "] starts on an obstacle");
    }
    if (arena.in_defense_zone(c)) {
      throw DomainError("players.attackers[" + std::to_string(g) + "] starts in the defense zone");
    }
  }
}

GameState initial_state(const GameConfig& config) {
  GameState s;
  for (Cell c : config.defenders) s.defenders.push_back({Team::kDefender, c, false});
  for (Cell c : config.attackers) {
    const bool held = contains(config.defenders, c);
    s.attackers.push_back({Team::kAttacker, c, held});
  }
  return s;
}

std::vector<std::mt19937_64> player_streams(std::uint64_t seed, Team team, int count) {
  std::vector<std::mt19937_64> out;
  for (int i = 0; i < count; ++i) out.push_back(player_stream(seed, team, i));
  return out;
}

std::vector<Cell> reachable_set(Cell z, int u_max, const Arena& arena) {
  std::vector<Cell> out;
  for (int dx = -u_max; dx <= u_max; ++dx) {
    for (int dy = -u_max; dy <= u_max; ++dy) {
      const Cell c{z.x + dx, z.y + dy};
      if (arena.in_grid(c)) out.push_back(c);
    }
  }
  return out;
}

AvoidancePlanes avoidance_planes(int i, std::span<const Cell> defenders,
                                 const Arena& arena, int u_max) {
  if (u_max != 1) throw DomainError("avoidance planes are only defined for u_max = 1");
  if (i < 0 || i >= static_cast<int>(defenders.size())) {
    throw DomainError("defender index out of range");
  }
  const Cell zi = defenders[static_cast<std::size_t>(i)];
  const std::vector<Cell> mine = reachable_set(zi, u_max, arena);
  AvoidancePlanes planes;

  for (std::size_t j = 0; j < defenders.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    const Cell zj = defenders[j];
    const std::vector<Cell> theirs = reachable_set(zj, u_max, arena);
    const bool overlap = std::any_of(mine.begin(), mine.end(), [&](Cell c) {
      return contains(theirs, c);
    });
    if (!overlap) continue;
    const int dx = zj.x - zi.x;
    const int dy = zj.y - zi.y;
    if (dx == 0 && dy == 0) throw DomainError("two defenders share a cell");
    if (std::abs(dx) >= std::abs(dy)) {
      planes.x.push_back(zi.x + (dx > 0 ? 1 : -1));
    } else {
      planes.y.push_back(zi.y + (dy > 0 ? 1 : -1));
    }
  }

  for (Cell o : arena.obstacles) {
    if (o == zi || !contains(mine, o)) continue;
    if (o.x != zi.x) {
      planes.x.push_back(o.x);
    } else {
      planes.y.push_back(o.y);
    }
  }
  sort_unique(planes.x);
  sort_unique(planes.y);
  return planes;
}

BehaviorWeights adaptive_alpha(double delta, const DefenderParams& params) {
  if (!(delta >= 0.0)) throw DomainError("delta must be non-negative");
  double attack = 0.0;
  if (std::isfinite(delta)) {
    const double boost = params.alpha_attack_nominal *
                         std::exp(params.beta * (params.delta_threshold - delta));
    attack = boost / (boost + params.alpha_defend_nominal);
  }
  return {attack, 1.0 - attack};
}

double responsibility_distance(std::span<const Cell> responsibility,
                               std::span<const PlayerState> attackers) {
  double best = kInf;
  for (const auto& a : attackers) {
    if (a.captured) continue;
    best = std::min(best, min_manhattan(a.position, responsibility));
  }
  return best;
}

std::vector<double> attacker_pursuit_weights(
    std::span<const Cell> responsibility, std::span<const PlayerState> attackers,
    double pursuit_weight, std::mt19937_64& rng) {
  std::vector<double> row(attackers.size(), 0.0);
  const double nearest = responsibility_distance(responsibility, attackers);
  if (!std::isfinite(nearest)) return row;
  std::vector<std::size_t> tied;
  for (std::size_t g = 0; g < attackers.size(); ++g) {
    if (!attackers[g].captured &&
        min_manhattan(attackers[g].position, responsibility) == nearest) {
      tied.push_back(g);
    }
  }
  std::size_t pick = tied.front();
  if (tied.size() > 1) {
    std::uniform_int_distribution<std::size_t> choose(0, tied.size() - 1);
    pick = tied[choose(rng)];
  }
  row[pick] = pursuit_weight;
  return row;
}

std::vector<Cell> predict_attackers(std::span<const PlayerState> attackers,
                                    const Arena& arena, int u_max) {
  std::vector<Cell> out;
  out.reserve(attackers.size());
  for (const auto& a : attackers) {
    out.push_back(a.captured ? a.position : step_toward_zone(a.position, arena, u_max));
  }
  return out;
}

ModeProbabilities attacker_mode_probabilities(double min_defender_distance,
                                              const AttackerParams& params) {
  if (!std::isfinite(min_defender_distance)) return {1.0, 0.0};
  const double boost = params.eta_avoid_nominal *
                       std::exp(params.kappa * (params.delta_threshold - min_defender_distance));
  const double avoid = boost / (params.eta_base_nominal + boost);
  return {1.0 - avoid, avoid};
}

Cell attacker_policy(int i, const GameState& state, const GameConfig& config,
                     std::mt19937_64& rng) {
  const auto& me = state.attackers.at(static_cast<std::size_t>(i));
  std::vector<Cell> defenders;
  for (const auto& d : state.defenders) defenders.push_back(d.position);
  const double nearest = min_manhattan(me.position, defenders);
  const ModeProbabilities p = attacker_mode_probabilities(nearest, config.attacker_params);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double draw = unit(rng);
  if (me.captured) return me.position;
  if (draw < p.base) return step_toward_zone(me.position, config.arena, config.u_max);

  // Avoid mode: maximize the distance to the nearest defender, preferring
  // cells closer to the zone among equals.
  Cell best = me.position;
  double best_gap = -kInf;
  double best_zone = kInf;
  for (Cell c : reachable_set(me.position, config.u_max, config.arena)) {
    if (config.arena.is_obstacle(c)) continue;
    const double gap = min_manhattan(c, defenders);
    const double zone = min_manhattan(c, config.arena.defense_zone);
    if (gap > best_gap || (gap == best_gap && zone < best_zone)) {
      best = c;
      best_gap = gap;
      best_zone = zone;
    }
  }
  return best;
}

Cell StepContext::next_position(int j, const LatticePoint& u) const {
  const Cell z = defenders[static_cast<std::size_t>(j)];
  return arena.clamp({z.x + u(2 * j) - u_max, z.y + u(2 * j + 1) - u_max});
}

CostTerms defender_cost_terms(int i, const LatticePoint& u, const StepContext& ctx) {
  const int nd = ctx.defender_count();
  if (u.size() != 2 * nd) {
    throw DomainError("joint move has " + std::to_string(u.size()) + " entries, expected " +
                      std::to_string(2 * nd));
  }
  const auto ui = static_cast<std::size_t>(i);
  const DefenderParams& p = ctx.params[ui];
  const Cell next = ctx.next_position(i, u);
  CostTerms t{};

  const auto& zone = ctx.arena.responsibility[ui];
  const double share = 1.0 / static_cast<double>(zone.size());
  for (Cell h : zone) t.defend += share * distance(ctx.distance, next, h);

  const auto& pursuit = ctx.pursuit[ui];
  for (std::size_t g = 0; g < pursuit.size(); ++g) {
    if (pursuit[g] != 0.0) {
      t.pursue += pursuit[g] * distance(ctx.distance, next, ctx.predicted_attackers[g]);
    }
  }

  for (int j = 0; j < nd; ++j) {
    const double w = p.cohesion[static_cast<std::size_t>(j)];
    if (j == i || w == 0.0) continue;
    t.cohesion += w * distance(ctx.distance, next, ctx.next_position(j, u));
  }

  const AvoidancePlanes& planes = ctx.planes[ui];
  for (int cx : planes.x) {
    const double off = static_cast<double>(next.x - cx);
    t.avoid += p.zeta1 * std::exp(-p.zeta2 * off * off);
  }
  for (int cy : planes.y) {
    const double off = static_cast<double>(next.y - cy);
    t.avoid += p.zeta1 * std::exp(-p.zeta2 * off * off);
  }

  const double mx = static_cast<double>(u(2 * i) - ctx.u_max);
  const double my = static_cast<double>(u(2 * i + 1) - ctx.u_max);
  t.mobility = p.mobility_weight * (mx * mx + my * my);
  return t;
}

double defender_cost(int i, const LatticePoint& u, const StepContext& ctx) {
  const CostTerms t = defender_cost_terms(i, u, ctx);
  const BehaviorWeights& a = ctx.alpha[static_cast<std::size_t>(i)];
  return a.defend * t.defend + a.attack * t.pursue + t.cohesion + t.avoid + t.mobility;
}

StepProblem build_step_problem(const GameConfig& config, const GameState& state,
                               std::span<std::mt19937_64> defender_rngs) {
  const int nd = config.defender_count();
  if (static_cast<int>(defender_rngs.size()) != nd) {
    throw DomainError("need one random stream per defender");
  }
  auto ctx = std::make_shared<StepContext>();
  ctx->arena = config.arena;
  ctx->u_max = config.u_max;
  ctx->distance = config.distance;
  for (const auto& d : state.defenders) ctx->defenders.push_back(d.position);
  ctx->predicted_attackers = predict_attackers(state.attackers, config.arena, config.u_max);
  ctx->params = config.defender_params;
  for (int i = 0; i < nd; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto& zone = config.arena.responsibility[ui];
    const DefenderParams& p = config.defender_params[ui];
    ctx->alpha.push_back(adaptive_alpha(responsibility_distance(zone, state.attackers), p));
    ctx->pursuit.push_back(attacker_pursuit_weights(zone, state.attackers,
                                                    p.pursuit_weight, defender_rngs[ui]));
    if (config.u_max == 1) {
      ctx->planes.push_back(avoidance_planes(i, ctx->defenders, config.arena, 1));
    } else {
      ctx->planes.emplace_back();
    }
  }

  ChainProduct lattice(std::vector<int>(static_cast<std::size_t>(2 * nd), 2 * config.u_max + 1));
  StepProblem problem{lattice, {}, ctx};
  for (int i = 0; i < nd; ++i) {
    problem.costs.emplace_back(lattice, [ctx, i](const LatticePoint& u) {
      return defender_cost(i, u, *ctx);
    });
  }
  return problem;
}

SolverParams step_solver_params(const GameConfig& config, SolverParams base) {
  base.init = Initialization::kPoint;
  base.init_point = LatticePoint::Constant(2 * config.defender_count(), config.u_max);
  return base;
}

const char* to_string(EventType type) {
  switch (type) {
    case EventType::kCapture: return "capture";
    case EventType::kRelease: return "release";
    case EventType::kFlag: return "flag";
    case EventType::kCollisionCheck: return "collision_check";
  }
  return "unknown";
}

const char* to_string(Team team) {
  return team == Team::kDefender ? "defender" : "attacker";
}

GameResult run_game(const GameConfig& config, const WeightMatrix& network,
                    const SolverParams& solver, std::uint64_t seed) {
  config.validate();
  const int nd = config.defender_count();
  const int na = config.attacker_count();
  if (network.agents() != nd) {
    throw DomainError("network matrix is " + std::to_string(network.agents()) +
                      "x" + std::to_string(network.agents()) + " but there are " +
                      std::to_string(nd) + " defenders");
  }
  const SolverParams params = step_solver_params(config, solver);

  std::vector<std::mt19937_64> defender_rngs = player_streams(seed, Team::kDefender, nd);
  std::vector<std::mt19937_64> attacker_rngs = player_streams(seed, Team::kAttacker, na);

  GameResult result;
  GameState state = initial_state(config);
  auto attacker_id = [](int g) { return "a" + std::to_string(g); };
  auto defender_id = [](int i) { return "d" + std::to_string(i); };

  for (int k = 0; k < config.arena.horizon; ++k) {
    state.k = k;
    result.states.push_back(state);
    const StepProblem problem = build_step_problem(config, state, defender_rngs);

    for (int i = 0; i < nd; ++i) {
      const auto& d = state.defenders[static_cast<std::size_t>(i)];
      result.trajectory.push_back({k, defender_id(i), Team::kDefender, d.position,
                                   problem.context->alpha[static_cast<std::size_t>(i)].attack,
                                   false});
    }
    for (int g = 0; g < na; ++g) {
      const auto& a = state.attackers[static_cast<std::size_t>(g)];
      result.trajectory.push_back(
          {k, attacker_id(g), Team::kAttacker, a.position, std::nullopt, a.captured});
    }

    const DistributedResult<double> plan =
        distributed_minimize(problem.costs, network, params);

    GameState next = state;
    for (int i = 0; i < nd; ++i) {
      next.defenders[static_cast<std::size_t>(i)].position =
          problem.context->next_position(i, plan.agents[static_cast<std::size_t>(i)].point);
    }
    for (int g = 0; g < na; ++g) {
      const Cell moved =
          attacker_policy(g, state, config, attacker_rngs[static_cast<std::size_t>(g)]);
      next.attackers[static_cast<std::size_t>(g)].position = moved;
    }

    const int logged_k = k + 1;
    for (int g = 0; g < na; ++g) {
      auto& a = next.attackers[static_cast<std::size_t>(g)];
      std::string holder;
      for (int i = 0; i < nd; ++i) {
        if (next.defenders[static_cast<std::size_t>(i)].position == a.position) {
          holder = defender_id(i);
          break;
        }
      }
      if (!a.captured && !holder.empty()) {
        a.captured = true;
        ++result.outcome.capture_events;
        result.events.push_back({logged_k, EventType::kCapture, attacker_id(g),
                                 "by " + holder + " at " + cell_string(a.position)});
      } else if (a.captured && holder.empty()) {
        a.captured = false;
        ++result.outcome.release_events;
        result.events.push_back({logged_k, EventType::kRelease, attacker_id(g),
                                 "at " + cell_string(a.position)});
      }
    }

    std::string problems;
    for (int i = 0; i < nd; ++i) {
      const Cell ci = next.defenders[static_cast<std::size_t>(i)].position;
      if (config.arena.is_obstacle(ci)) {
        ++result.outcome.obstacle_occupancies;
        problems += (problems.empty() ? "" : ";") + defender_id(i) + " on obstacle " + cell_string(ci);
      }
      for (int j = i + 1; j < nd; ++j) {
        if (next.defenders[static_cast<std::size_t>(j)].position == ci) {
          ++result.outcome.defender_collisions;
          problems += (problems.empty() ? "" : ";") + defender_id(i) + "+" + defender_id(j) +
                      " at " + cell_string(ci);
        }
      }
    }
    result.events.push_back({logged_k, EventType::kCollisionCheck, "defenders",
                             problems.empty() ? "ok" : problems});

    state = std::move(next);
    state.k = logged_k;
    result.outcome.steps_played = logged_k;

    bool flag = false;
    for (int g = 0; g < na; ++g) {
      const auto& a = state.attackers[static_cast<std::size_t>(g)];
      if (!a.captured && config.arena.in_defense_zone(a.position)) {
        flag = true;
        result.events.push_back({logged_k, EventType::kFlag, attacker_id(g),
                                 "entered defense zone at " + cell_string(a.position)});
      }
    }
    if (flag) {
      result.outcome.flag_captured = true;
      break;
    }
  }
  result.states.push_back(state);
  for (const auto& a : state.attackers) result.outcome.captured_at_end += a.captured ? 1 : 0;
  return result;
}

}  // namespace latmin::ctf
