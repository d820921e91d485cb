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

#include "latmin/solvers.hpp"

#include <cmath>
#include <sstream>

namespace latmin {

namespace {

bool all_reachable(const Eigen::MatrixXd& a, bool transpose) {
  const Eigen::Index n = a.rows();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const Eigen::Index u = stack.back();
    stack.pop_back();
    for (Eigen::Index v = 0; v < n; ++v) {
      const double w = transpose ? a(v, u) : a(u, v);
      if (w > 0.0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

}  // namespace

WeightMatrixReport validate_weight_matrix(const Eigen::MatrixXd& a, double eta) {
  if (a.rows() != a.cols()) {
    throw DomainError("weight matrix must be square, got " +
                      std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (a.rows() == 0) throw DomainError("weight matrix is empty");
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0,1)");
  if (!a.allFinite()) throw DomainError("weight matrix has non-finite entries");

  WeightMatrixReport report;
  const Eigen::Index n = a.rows();

  report.strongly_connected = all_reachable(a, false) && all_reachable(a, true);
  if (!report.strongly_connected) {
    report.failures.push_back("condition 1 (strong connectivity): support graph is not strongly connected");
  }

  report.diagonal_weights = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i, i) < eta) {
      report.diagonal_weights = false;
      std::ostringstream msg;
      msg << "condition 2 (self weights): c(" << i << "," << i << ") = " << a(i, i)
          << " < eta = " << eta;
      report.failures.push_back(msg.str());
    }
  }

  report.edge_weights = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = a(i, j);
      if (w < 0.0 || (w > 0.0 && w < eta)) {
        report.edge_weights = false;
        std::ostringstream msg;
        msg << "condition 3 (edge weights): c(" << i << "," << j << ") = " << w
            << " is neither 0 nor >= eta = " << eta;
        report.failures.push_back(msg.str());
      }
    }
  }

  report.doubly_stochastic = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double row = a.row(i).sum();
    const double col = a.col(i).sum();
    if (std::abs(row - 1.0) > kStochasticTolerance) {
      report.doubly_stochastic = false;
      std::ostringstream msg;
      msg << "condition 4 (doubly stochastic): row " << i << " sums to " << row;
      report.failures.push_back(msg.str());
    }
    if (std::abs(col - 1.0) > kStochasticTolerance) {
      report.doubly_stochastic = false;
      std::ostringstream msg;
      msg << "condition 4 (doubly stochastic): column " << i << " sums to " << col;
      report.failures.push_back(msg.str());
    }
  }
  return report;
}

WeightMatrix WeightMatrix::validated(Eigen::MatrixXd a, double eta) {
  const WeightMatrixReport report = validate_weight_matrix(a, eta);
  if (!report.ok()) {
    std::string msg = "invalid weight matrix";
    for (const auto& f : report.failures) msg += "; " + f;
    throw DomainError(msg);
  }
  return WeightMatrix(std::move(a), eta);
}

double step_size(int k, const StepSchedule& schedule) {
  if (k < 1) throw DomainError("step index must be >= 1");
  switch (schedule.kind) {
    case StepSchedule::Kind::kConstant:
      return schedule.gamma;
    case StepSchedule::Kind::kDiminishing:
      return schedule.gamma / std::sqrt(static_cast<double>(k));
  }
  throw InternalError("unknown step schedule");
}

void SolverParams::validate() const {
  if (iterations < 1) throw DomainError("iterations >= 1 required");
  if (!(step.gamma > 0.0) || !std::isfinite(step.gamma)) {
    throw DomainError("step size gamma must be positive");
  }
  if (!(t_hat > 0.0 && t_hat < 1.0)) throw DomainError("t_hat must lie in (0,1)");
}

}  // namespace latmin
