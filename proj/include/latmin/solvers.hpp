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

#ifndef LATMIN_SOLVERS_HPP_
#define LATMIN_SOLVERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latmin/error.hpp"
#include "latmin/extension.hpp"
#include "latmin/lattice.hpp"
#include "latmin/projection.hpp"

namespace latmin {

// Outcome of checking a mixing matrix against the four network conditions
// under which consensus projected subgradient solves the relaxed problem.
struct WeightMatrixReport {
  bool strongly_connected = false;  // 1: support graph strongly connected
  bool diagonal_weights = false;    // 2: every c_ii >= eta
  bool edge_weights = false;        // 3: every off-diagonal c_ij is 0 or >= eta
  bool doubly_stochastic = false;   // 4: rows and columns sum to 1
  std::vector<std::string> failures;

  bool ok() const {
    return strongly_connected && diagonal_weights && edge_weights &&
           doubly_stochastic;
  }
};

inline constexpr double kStochasticTolerance = 1e-9;

// Throws DomainError on a non-square or empty matrix, or eta outside (0,1).
WeightMatrixReport validate_weight_matrix(const Eigen::MatrixXd& a, double eta);

// A mixing matrix that passed validate_weight_matrix.
class WeightMatrix {
 public:
  // Throws DomainError naming every failed condition.
  static WeightMatrix validated(Eigen::MatrixXd a, double eta);

  const Eigen::MatrixXd& matrix() const { return a_; }
  double eta() const { return eta_; }
  int agents() const { return static_cast<int>(a_.rows()); }

 private:
  WeightMatrix(Eigen::MatrixXd a, double eta) : a_(std::move(a)), eta_(eta) {}
  Eigen::MatrixXd a_;
  double eta_;
};

struct StepSchedule {
  enum class Kind { kConstant, kDiminishing };
  Kind kind = Kind::kConstant;
  double gamma = 0.1;
};

// gamma for the constant schedule, gamma / sqrt(k) for the diminishing one.
double step_size(int k, const StepSchedule& schedule);

enum class Initialization {
  kMidpoint,  // every entry 1/2
  kRandom,    // uniform_random_profile(seed)
  kPoint,     // degenerate profile of init_point
};

struct SolverParams {
  int iterations = 20;
  StepSchedule step;
  double t_hat = 0.7;
  std::uint64_t seed = 0;
  Initialization init = Initialization::kMidpoint;
  LatticePoint init_point;
  TieBreak tie = TieBreak::kChainAscending;
  bool record_trace = true;

  void validate() const;
};

template <typename Scalar>
struct TraceRow {
  int iteration;  // 1-based round index
  int agent;
  Scalar ext_value;     // agent's extension value at the profile it stepped from
  Scalar disagreement;  // max_{i,j} ||rho^i - rho^j|| after the round
  Scalar best_rounded;  // best total cost of theta(rho^agent, t_hat) so far
};

template <typename Scalar>
struct SolveTrace {
  int iterations = 0;
  int agents = 0;
  std::vector<TraceRow<Scalar>> rows;  // iteration-major

  const TraceRow<Scalar>& at(int iteration, int agent) const {
    return rows[static_cast<std::size_t>((iteration - 1) * agents + agent)];
  }
};

template <typename Scalar>
struct AgentSolution {
  LatticePoint point;
  Scalar value;  // total cost at point
  DynVector<Scalar> profile;
};

template <typename Scalar>
struct CentralResult {
  LatticePoint point;
  Scalar value;
  ProductProfile<Scalar> profile;
  SolveTrace<Scalar> trace;
};

template <typename Scalar>
struct DistributedResult {
  std::vector<AgentSolution<Scalar>> agents;
  SolveTrace<Scalar> trace;
};

namespace detail {

template <typename Scalar>
DynVector<Scalar> initial_profile(const ChainProduct& lattice,
                                  const SolverParams& params) {
  switch (params.init) {
    case Initialization::kMidpoint:
      return DynVector<Scalar>::Constant(lattice.profile_size(), Scalar(0.5));
    case Initialization::kRandom:
      return uniform_random_profile<Scalar>(lattice, params.seed).values();
    case Initialization::kPoint:
      return profile_from_point<Scalar>(lattice, params.init_point).values();
  }
  throw InternalError("unknown initialization");
}

template <typename Scalar>
Scalar max_pairwise_distance(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& rows) {
  Scalar worst(0);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < rows.rows(); ++j) {
      worst = std::max(worst, (rows.row(i) - rows.row(j)).norm());
    }
  }
  return worst;
}

}  // namespace detail

// nu^i = sum_w c_iw rho^w for every agent at once; rows of `profiles` are
// the agents' flat profiles.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> consensus_mix(
    const WeightMatrix& a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& profiles) {
  if (profiles.rows() != a.agents()) {
    throw DomainError("profile count does not match the mixing matrix");
  }
  return a.matrix().template cast<Scalar>() * profiles;
}

// Single-agent projected subgradient descent on the extension of f, rounded
// through theta at t_hat after the last iteration.
template <typename Scalar>
CentralResult<Scalar> centralized_minimize(const ObjectiveOracle<Scalar>& f,
                                           const SolverParams& params) {
  params.validate();
  const ChainProduct& lattice = f.domain();
  const Scalar t_hat = Scalar(params.t_hat);
  DynVector<Scalar> rho = detail::initial_profile<Scalar>(lattice, params);

  SolveTrace<Scalar> trace;
  trace.agents = 1;
  trace.iterations = params.iterations;
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (int k = 1; k <= params.iterations; ++k) {
    const auto ext = detail::greedy_extension_flat(f, rho, params.tie, false);
    DynVector<Scalar> xi = rho - Scalar(step_size(k, params.step)) * ext.subgradient;
    rho = project_product(lattice, std::move(xi)).values();
    if (params.record_trace) {
      best = std::min(best, f(detail::theta_flat(lattice, rho, t_hat)));
      trace.rows.push_back({k, 0, ext.value, Scalar(0), best});
    }
  }
  ProductProfile<Scalar> final_profile(lattice, rho);
  LatticePoint x = theta(final_profile, t_hat);
  const Scalar value = f(x);
  return {std::move(x), value, std::move(final_profile), std::move(trace)};
}

// Synchronous consensus projected subgradient over a validated network.
//
// Each round every agent mixes the previous round's profiles with its row of
// the weight matrix, steps along the negative subgradient of its own
// extension at the mixed profile, and projects chain-wise. All reads use the
// previous round's state, so agent order inside a round is irrelevant. After
// the last round every agent rounds its own profile at the shared t_hat and
// reports the total cost sum_w f_w there.
template <typename Scalar>
DistributedResult<Scalar> distributed_minimize(
    const std::vector<ObjectiveOracle<Scalar>>& costs, const WeightMatrix& a,
    const SolverParams& params) {
  params.validate();
  if (costs.empty()) throw DomainError("distributed solve needs at least one agent");
  if (static_cast<int>(costs.size()) != a.agents()) {
    throw DomainError("agent count " + std::to_string(costs.size()) +
                      " does not match the " + std::to_string(a.agents()) +
                      "x" + std::to_string(a.agents()) + " weight matrix");
  }
  const ChainProduct& lattice = costs.front().domain();
  for (const auto& f : costs) {
    if (!(f.domain() == lattice)) {
      throw DomainError("agent costs live on different lattices");
    }
  }
  const int n = a.agents();
  const Scalar t_hat = Scalar(params.t_hat);
  auto total_cost = [&](const LatticePoint& x) {
    Scalar total(0);
    for (const auto& f : costs) total += f(x);
    return total;
  };

  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix profiles(n, lattice.profile_size());
  const DynVector<Scalar> start = detail::initial_profile<Scalar>(lattice, params);
  for (int i = 0; i < n; ++i) profiles.row(i) = start.transpose();

  SolveTrace<Scalar> trace;
  trace.agents = n;
  trace.iterations = params.iterations;
  std::vector<Scalar> best(static_cast<std::size_t>(n),
                           std::numeric_limits<Scalar>::infinity());
  std::vector<Scalar> ext_values(static_cast<std::size_t>(n));

  for (int k = 1; k <= params.iterations; ++k) {
    const Matrix mixed = consensus_mix(a, profiles);
    const Scalar gamma = Scalar(step_size(k, params.step));
    for (int i = 0; i < n; ++i) {
      const DynVector<Scalar> nu = mixed.row(i).transpose();
      const auto ext = detail::greedy_extension_flat(
          costs[static_cast<std::size_t>(i)], nu, params.tie, false);
      ext_values[static_cast<std::size_t>(i)] = ext.value;
      DynVector<Scalar> xi = nu - gamma * ext.subgradient;
      profiles.row(i) = project_product(lattice, std::move(xi)).values().transpose();
    }
    if (params.record_trace) {
      const Scalar spread = detail::max_pairwise_distance(profiles);
      for (int i = 0; i < n; ++i) {
        const DynVector<Scalar> rho = profiles.row(i).transpose();
        auto& b = best[static_cast<std::size_t>(i)];
        b = std::min(b, total_cost(detail::theta_flat(lattice, rho, t_hat)));
        trace.rows.push_back(
            {k, i, ext_values[static_cast<std::size_t>(i)], spread, b});
      }
    }
  }

  DistributedResult<Scalar> result;
  result.trace = std::move(trace);
  for (int i = 0; i < n; ++i) {
    DynVector<Scalar> rho = profiles.row(i).transpose();
    LatticePoint x = detail::theta_flat(lattice, rho, t_hat);
    const Scalar value = total_cost(x);
    result.agents.push_back({std::move(x), value, std::move(rho)});
  }
  return result;
}

}  // namespace latmin

#endif  // LATMIN_SOLVERS_HPP_
