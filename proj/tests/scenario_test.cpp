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

#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

namespace latmin {
namespace {

std::string scenario_path(const char* name) {
  return std::string(LATMIN_SOURCE_DIR) + "/scenarios/" + name;
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <typename E>
std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const E& e) {
    return e.what();
  } catch (const std::exception& e) {
    return std::string("wrong exception type: ") + e.what();
  }
  return "no exception";
}

const char* kMinimal = R"({"seed": 1, "problem": {"dims": [3], "objectives": [{"type": "linear", "coefficients": [1]}]}})";

TEST(LoadScenario, GoldenFileCarriesLineGraphMatrix) {
  const Scenario s = load_scenario(scenario_path("paper_fig3.cfg"));
  ASSERT_TRUE(s.network.has_value());
  const std::vector<std::vector<double>> expected = {
      {0.7, 0.3, 0, 0}, {0.3, 0.6, 0.1, 0}, {0, 0.1, 0.6, 0.3}, {0, 0, 0.3, 0.7}};
  EXPECT_EQ(s.network->matrix, expected);
  EXPECT_EQ(s.network->eta, 0.1);
  ASSERT_TRUE(s.game.has_value());
  const auto& g = *s.game;
  EXPECT_EQ(g.arena.grid_size, 20);
  EXPECT_EQ(g.arena.horizon, 40);
  EXPECT_EQ(g.defender_count(), 4);
  EXPECT_EQ(g.attacker_count(), 4);
  EXPECT_EQ(g.arena.obstacles.size(), 6u);
  const std::vector<std::vector<double>> cohesion = {
      {0, 0.5, 0.1, 0.01}, {0.5, 0, 0.1, 0.01}, {0.01, 0.1, 0, 0.5}, {0.01, 0.1, 0.5, 0}};
  for (int i = 0; i < 4; ++i) {
    const auto& p = g.defender_params[static_cast<std::size_t>(i)];
    EXPECT_EQ(p.cohesion, cohesion[static_cast<std::size_t>(i)]);
    EXPECT_EQ(p.pursuit_weight, 20.0);
    EXPECT_EQ(p.zeta1, 200.0);
    EXPECT_EQ(p.zeta2, 5.0);
    EXPECT_EQ(p.alpha_defend_nominal, 0.9);
    EXPECT_EQ(p.alpha_attack_nominal, 0.1);
    EXPECT_EQ(p.beta, 0.7);
  }
  EXPECT_EQ(g.attacker_params.eta_avoid_nominal, 0.7);
  EXPECT_EQ(g.attacker_params.eta_base_nominal, 0.3);
  EXPECT_EQ(g.attacker_params.delta_threshold, 4.0);
  EXPECT_EQ(g.attacker_params.kappa, 0.9);
  EXPECT_EQ(s.solver.iterations, 20);
  EXPECT_EQ(s.solver.gamma, 0.1);
  EXPECT_EQ(s.solver.t_hat, 0.7);
}

TEST(LoadScenario, EveryBundledFileLoads) {
  for (const char* name : {"paper_fig3.cfg", "two_agent_chain.cfg", "supermodular_demo.cfg",
                           "single_chain.cfg", "toy_ctf.cfg"}) {
    EXPECT_NO_THROW(load_scenario(scenario_path(name))) << name;
  }
}

TEST(LoadScenario, ColumnSumsNamedAsConditionFour) {
  std::string text = read(scenario_path("paper_fig3.cfg"));
  const std::string row = "[0.3, 0.6, 0.1, 0]";
  ASSERT_NE(text.find(row), std::string::npos);
  text.replace(text.find(row), row.size(), "[0.4, 0.5, 0.1, 0]");
  const std::string msg = error_of<InvariantError>(text);
  EXPECT_NE(msg.find("network.matrix"), std::string::npos) << msg;
  EXPECT_NE(msg.find("condition 4"), std::string::npos) << msg;
}

TEST(ParseScenario, MinimalProblemTakesSolverDefaults) {
  const Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.seed, 1u);
  EXPECT_FALSE(s.game.has_value());
  EXPECT_FALSE(s.network.has_value());
  ASSERT_TRUE(s.problem.has_value());
  EXPECT_EQ(s.problem->dims, std::vector<int>{3});
}

TEST(LoadScenario, EmptyInputIsParseError) {
  EXPECT_NE(error_of<ParseError>("").find("parse error"), std::string::npos);
  EXPECT_NE(error_of<ParseError>("{\"seed\": ").find("parse error"), std::string::npos);
}

TEST(LoadScenario, MissingFileIsParseError) {
  EXPECT_THROW(load_scenario("/nonexistent/x.cfg"), ParseError);
}

TEST(LoadScenario, SchemaErrorsNameTheField) {
  EXPECT_NE(error_of<SchemaError>(R"({"problem": {"dims": [3], "objectives": []}})").find("seed"),
            std::string::npos);
  EXPECT_NE(error_of<SchemaError>(R"({"seed": 1, "bogus": 2, "problem": {}})").find("bogus"),
            std::string::npos);
  EXPECT_NE(error_of<SchemaError>(
                R"({"seed": 1, "solver": {"iterations": "many"}, "problem": {"dims": [3], "objectives": [{"type": "linear", "coefficients": [1]}]}})")
                .find("solver.iterations"),
            std::string::npos);
  EXPECT_NE(error_of<SchemaError>(R"({"seed": 1, "problem": {"dims": [3], "objectives": [{"type": "cubic"}]}})")
                .find("problem.objectives[0].type"),
            std::string::npos);
  EXPECT_NE(error_of<SchemaError>(R"({"seed": -3, "problem": {"dims": [3], "objectives": []}})").find("seed"),
            std::string::npos);
}

TEST(LoadScenario, InvariantErrorsNameTheField) {
  EXPECT_NE(error_of<InvariantError>(
                R"({"seed": 1, "problem": {"dims": [3, 1], "objectives": [{"type": "linear", "coefficients": [1, 1]}]}})")
                .find("problem.dims"),
            std::string::npos);
  EXPECT_NE(error_of<InvariantError>(
                R"({"seed": 1, "problem": {"dims": [3], "objectives": [{"type": "linear", "coefficients": [1, 1]}]}})")
                .find("problem.objectives[0].coefficients"),
            std::string::npos);
  EXPECT_NE(error_of<InvariantError>(
                R"({"seed": 1, "solver": {"iterations": 0}, "problem": {"dims": [3], "objectives": [{"type": "linear", "coefficients": [1]}]}})")
                .find("iterations >= 1"),
            std::string::npos);
  EXPECT_NE(error_of<InvariantError>(
                R"({"seed": 1, "network": {"matrix": [[1]]}, "problem": {"dims": [3], "objectives": [{"type": "linear", "coefficients": [1]}, {"type": "linear", "coefficients": [2]}]}})")
                .find("network.matrix"),
            std::string::npos);
  std::string text = read(scenario_path("toy_ctf.cfg"));
  const std::string start = "[[1, 4], [4, 4]]";
  ASSERT_NE(text.find(start), std::string::npos);
  text.replace(text.find(start), start.size(), "[[1, 2], [4, 4]]");
  EXPECT_NE(error_of<InvariantError>(text).find("players.defenders[0]"), std::string::npos);
}

TEST(LoadScenario, CommentsAndPerDefenderValues) {
  std::string text = read(scenario_path("toy_ctf.cfg"));
  const std::string key = "\"delta_threshold\": 20";
  ASSERT_NE(text.find(key), std::string::npos);
  text.replace(text.find(key), key.size(), "\"delta_threshold\": [20, 8] // per defender");
  const Scenario s = parse_scenario(text);
  EXPECT_EQ(s.game->defender_params[0].delta_threshold, 20.0);
  EXPECT_EQ(s.game->defender_params[1].delta_threshold, 8.0);
  text.replace(text.find("[20, 8]"), 7, "[20, 8, 3]");
  EXPECT_NE(error_of<SchemaError>(text).find("defenders.delta_threshold"), std::string::npos);
}

TEST(WriteScenario, RoundTripsEveryBundledFile) {
  for (const char* name : {"paper_fig3.cfg", "two_agent_chain.cfg", "supermodular_demo.cfg",
                           "single_chain.cfg", "toy_ctf.cfg"}) {
    const Scenario s = load_scenario(scenario_path(name));
    EXPECT_EQ(parse_scenario(write_scenario(s)), s) << name;
  }
}

TEST(WriteScenario, RoundTripsRandomVariations) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Scenario base = load_scenario(scenario_path("toy_ctf.cfg"));
  for (int trial = 0; trial < 50; ++trial) {
    Scenario s = base;
    s.seed = rng();
    s.solver.gamma = 0.01 + unit(rng);
    s.solver.t_hat = 0.05 + 0.9 * unit(rng);
    s.solver.schedule = trial % 2 ? StepSchedule::Kind::kDiminishing : StepSchedule::Kind::kConstant;
    s.solver.init = trial % 3 ? InitSpec::kMidpoint : InitSpec::kRandom;
    for (auto& p : s.game->defender_params) {
      p.pursuit_weight = 40 * unit(rng);
      p.beta = unit(rng);
      p.alpha_attack_nominal = 0.01 + 0.98 * unit(rng);
      p.alpha_defend_nominal = 1.0 - p.alpha_attack_nominal;
    }
    s.game->distance = trial % 2 ? ctf::Distance::kSquaredEuclidean : ctf::Distance::kManhattan;
    validate_scenario(s);
    EXPECT_EQ(parse_scenario(write_scenario(s)), s);
  }
}

TEST(BuildObjectives, RegistryTypes) {
  const Scenario s = parse_scenario(R"({
    "seed": 1,
    "problem": {"dims": [3, 4], "objectives": [
      {"type": "linear", "coefficients": [2, -1], "offset": 0.5},
      {"type": "separable_quadratic", "centers": [1, 2], "weights": [1, 3]},
      {"type": "pairwise_product", "chains": [0, 1], "coefficient": -2}
    ]}})");
  const auto f = build_objectives(s);
  ASSERT_EQ(f.size(), 3u);
  LatticePoint x(2);
  x << 2, 3;
  EXPECT_EQ(f[0](x), 0.5 + 4 - 3);
  EXPECT_EQ(f[1](x), 1 + 3);
  EXPECT_EQ(f[2](x), -12);
}

TEST(BuildObjectives, GameWithoutProblemGivesOneCostPerDefender) {
  const Scenario s = load_scenario(scenario_path("toy_ctf.cfg"));
  const auto f = build_objectives(s);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].domain().dims(), std::vector<int>(4, 3));
}

}  // namespace
}  // namespace latmin
