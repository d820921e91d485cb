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

#include "latmin/export.hpp"

#include <gtest/gtest.h>

#include <locale>
#include <sstream>

namespace latmin {
namespace {

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-1.5e-7), "-1.5e-07");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  for (double v : {0.7863, 1.0 / 3.0, 123456.789, 1e300}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

TEST(FormatNumber, IgnoresGlobalLocale) {
  // A comma-decimal global locale must not leak into CSV output.
  const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
  SolveTrace<double> t;
  t.iterations = 1;
  t.agents = 1;
  t.rows = {{1, 0, 1234.5, 0.25, 2.0}};
  std::ostringstream out;
  write_trace_csv(out, t);
  std::locale::global(saved);
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(out.str(), "iter,agent,ext_value,disagreement,best_rounded\n1,0,1234.5,0.25,2\n");
}

TEST(TraceCsv, HeaderAndRows) {
  SolveTrace<double> t;
  t.iterations = 1;
  t.agents = 2;
  t.rows = {{1, 0, 1.5, 0.25, 2.0}, {1, 1, 3.0, 0.25, 2.0}};
  std::ostringstream out;
  write_trace_csv(out, t);
  EXPECT_EQ(out.str(),
            "iter,agent,ext_value,disagreement,best_rounded\n"
            "1,0,1.5,0.25,2\n"
            "1,1,3,0.25,2\n");
}

TEST(SolutionCsv, PointAsLevels) {
  LatticePoint x(3);
  x << 1, 0, 2;
  std::ostringstream out;
  write_solution_csv(out, {{x, 2.5, Eigen::VectorXd()}});
  EXPECT_EQ(out.str(), "agent,value,point\n0,2.5,1 0 2\n");
}

TEST(TrajectoryCsv, AttackersHaveEmptyAlpha) {
  std::vector<ctf::TrajectoryRow> rows = {
      {0, "d0", ctf::Team::kDefender, {3, 4}, 0.125, false},
      {0, "a0", ctf::Team::kAttacker, {5, 6}, std::nullopt, true}};
  std::ostringstream out;
  write_trajectory_csv(out, rows);
  EXPECT_EQ(out.str(),
            "k,player_id,team,x,y,alpha_a,captured\n"
            "0,d0,defender,3,4,0.125,0\n"
            "0,a0,attacker,5,6,,1\n");
}

TEST(EventsCsv, QuotesDetailsWithCommas) {
  std::vector<ctf::Event> events = {{3, ctf::EventType::kCapture, "a1", "by d0 at (2,3)"},
                                    {3, ctf::EventType::kCollisionCheck, "all", "ok"}};
  std::ostringstream out;
  write_events_csv(out, events);
  EXPECT_EQ(out.str(),
            "k,type,subject,detail\n"
            "3,capture,a1,\"by d0 at (2,3)\"\n"
            "3,collision_check,all,ok\n");
}

TEST(TrajectorySvg, MarksZoneObstaclesAndPaths) {
  ctf::Arena a;
  a.grid_size = 4;
  a.defense_zone = {{1, 3}};
  a.obstacles = {{2, 1}};
  std::vector<ctf::TrajectoryRow> rows = {
      {0, "d0", ctf::Team::kDefender, {0, 0}, 0.1, false},
      {1, "d0", ctf::Team::kDefender, {1, 1}, 0.1, false},
      {0, "a0", ctf::Team::kAttacker, {3, 0}, std::nullopt, false}};
  std::ostringstream out;
  write_trajectory_svg(out, a, rows);
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("#ffe9a8"), std::string::npos);
  EXPECT_NE(svg.find("#555555"), std::string::npos);
  EXPECT_NE(svg.find("<title>d0</title>"), std::string::npos);
  EXPECT_NE(svg.find("<title>a0</title>"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace latmin
