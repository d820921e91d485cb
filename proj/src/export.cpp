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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

namespace latmin {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#2ca02c", "#9467bd", "#17becf",
                                                 "#d62728", "#ff7f0e", "#8c564b", "#e377c2"};

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw InternalError("format_number: conversion failed");
  return {buf.data(), end};
}

void write_trace_csv(std::ostream& out, const SolveTrace<double>& trace) {
  out << "iter,agent,ext_value,disagreement,best_rounded\n";
  for (const auto& r : trace.rows) {
    out << r.iteration << ',' << r.agent << ',' << format_number(r.ext_value) << ','
        << format_number(r.disagreement) << ',' << format_number(r.best_rounded) << '\n';
  }
}

void write_solution_csv(std::ostream& out, const std::vector<AgentSolution<double>>& agents) {
  out << "agent,value,point\n";
  for (std::size_t a = 0; a < agents.size(); ++a) {
    out << a << ',' << format_number(agents[a].value) << ',';
    const auto& p = agents[a].point;
    for (Eigen::Index i = 0; i < p.size(); ++i) out << (i ? " " : "") << p(i);
    out << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const std::vector<ctf::TrajectoryRow>& rows) {
  out << "k,player_id,team,x,y,alpha_a,captured\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.player_id << ',' << ctf::to_string(r.team) << ',' << r.position.x << ','
        << r.position.y << ',' << (r.alpha_attack ? format_number(*r.alpha_attack) : "") << ','
        << (r.captured ? 1 : 0) << '\n';
  }
}

void write_events_csv(std::ostream& out, const std::vector<ctf::Event>& events) {
  out << "k,type,subject,detail\n";
  for (const auto& e : events) {
    out << e.k << ',' << ctf::to_string(e.type) << ',' << csv_field(e.subject) << ','
        << csv_field(e.detail) << '\n';
  }
}

void write_trajectory_svg(std::ostream& out, const ctf::Arena& arena,
                          const std::vector<ctf::TrajectoryRow>& rows) {
  constexpr int kCell = 24;
  constexpr int kMargin = 16;
  const int n = arena.grid_size;
  const int size = n * kCell + 2 * kMargin;
  // y grows upward on the board.
  auto px = [&](double x) { return kMargin + (x + 0.5) * kCell; };
  auto py = [&](double y) { return kMargin + (n - 0.5 - y) * kCell; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto cell_rect = [&](ctf::Cell c, const char* fill) {
    out << "<rect x=\"" << kMargin + c.x * kCell << "\" y=\"" << kMargin + (n - 1 - c.y) * kCell
        << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\"" << fill << "\"/>\n";
  };
  for (ctf::Cell c : arena.defense_zone) cell_rect(c, "#ffe9a8");
  for (ctf::Cell c : arena.obstacles) cell_rect(c, "#555555");
  out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int i = 0; i <= n; ++i) {
    const int p = kMargin + i * kCell;
    out << "<line x1=\"" << p << "\" y1=\"" << kMargin << "\" x2=\"" << p << "\" y2=\""
        << kMargin + n * kCell << "\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << p << "\" x2=\"" << kMargin + n * kCell
        << "\" y2=\"" << p << "\"/>\n";
  }
  out << "</g>\n";

  std::map<std::string, std::vector<const ctf::TrajectoryRow*>> paths;
  for (const auto& r : rows) paths[r.player_id].push_back(&r);
  int d = 0;
  int a = 0;
  for (const auto& [id, path] : paths) {
    const bool defender = path.front()->team == ctf::Team::kDefender;
    const char* color = defender ? kPalette[static_cast<std::size_t>(d++ % 4)]
                                 : kPalette[4 + static_cast<std::size_t>(a++ % 4)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\""
        << (defender ? "" : " stroke-dasharray=\"5,3\"") << " points=\"";
    for (const auto* r : path) out << px(r->position.x) << ',' << py(r->position.y) << ' ';
    out << "\"><title>" << id << "</title></polyline>\n";
    const auto* first = path.front();
    out << "<circle cx=\"" << px(first->position.x) << "\" cy=\"" << py(first->position.y)
        << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << px(first->position.x) + 5 << "\" y=\"" << py(first->position.y) - 5
        << "\" font-size=\"10\" font-family=\"sans-serif\">" << id << "</text>\n";
  }
  out << "</svg>\n";
}

void write_trace_svg(std::ostream& out, const SolveTrace<double>& trace) {
  constexpr int kWidth = 640;
  constexpr int kHeight = 360;
  constexpr int kPad = 40;
  std::vector<double> best(static_cast<std::size_t>(trace.iterations),
                           std::numeric_limits<double>::infinity());
  std::vector<double> gap(static_cast<std::size_t>(trace.iterations), 0.0);
  for (const auto& r : trace.rows) {
    const auto k = static_cast<std::size_t>(r.iteration - 1);
    best[k] = std::min(best[k], r.best_rounded);
    gap[k] = r.disagreement;
  }
  auto polyline = [&](const std::vector<double>& ys, const char* color) {
    if (ys.empty()) return;
    const auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo > 0 ? *hi_it - lo : 1.0;
    const double dx = ys.size() > 1 ? double(kWidth - 2 * kPad) / double(ys.size() - 1) : 0.0;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) {
      out << kPad + dx * double(i) << ','
          << kHeight - kPad - (ys[i] - lo) / span * (kHeight - 2 * kPad) << ' ';
    }
    out << "\"/>\n";
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kWidth - 2 * kPad
      << "\" height=\"" << kHeight - 2 * kPad << "\" fill=\"none\" stroke=\"#999999\"/>\n";
  polyline(best, kPalette[0]);
  polyline(gap, kPalette[4]);
  out << "<text x=\"" << kPad << "\" y=\"24\" font-size=\"12\" font-family=\"sans-serif\">"
      << "<tspan fill=\"" << kPalette[0] << "\">best rounded cost</tspan>  <tspan fill=\""
      << kPalette[4] << "\">disagreement</tspan> (each scaled to its range, " << trace.iterations
      << " rounds)</text>\n</svg>\n";
}

}  // namespace latmin
