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

#ifndef LATMIN_EXPORT_HPP_
#define LATMIN_EXPORT_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "latmin/ctf.hpp"
#include "latmin/solvers.hpp"

namespace latmin {

// Shortest round-trip decimal form, independent of the global locale.
std::string format_number(double value);

// iter,agent,ext_value,disagreement,best_rounded
void write_trace_csv(std::ostream& out, const SolveTrace<double>& trace);
// agent,value,point  (point as space-separated levels)
void write_solution_csv(std::ostream& out, const std::vector<AgentSolution<double>>& agents);
// k,player_id,team,x,y,alpha_a,captured  (alpha_a empty for attackers)
void write_trajectory_csv(std::ostream& out, const std::vector<ctf::TrajectoryRow>& rows);
// k,type,subject,detail
void write_events_csv(std::ostream& out, const std::vector<ctf::Event>& events);

// Grid, defense zone, obstacles and one polyline per player.
void write_trajectory_svg(std::ostream& out, const ctf::Arena& arena,
                          const std::vector<ctf::TrajectoryRow>& rows);
// Best rounded total cost and disagreement per round.
void write_trace_svg(std::ostream& out, const SolveTrace<double>& trace);

}  // namespace latmin

#endif  // LATMIN_EXPORT_HPP_
