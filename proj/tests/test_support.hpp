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

// Reference implementations and instance generators shared by the tests.
// Everything here is written independently of the library's algorithms so
// that it can serve as an oracle.
#ifndef LATMIN_TESTS_TEST_SUPPORT_HPP_
#define LATMIN_TESTS_TEST_SUPPORT_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "latmin/lattice.hpp"

namespace latmin::testing {

// Odometer enumeration, last chain fastest (the opposite of the library).
inline std::vector<LatticePoint> all_points(const std::vector<int>& dims) {
  std::vector<LatticePoint> out;
  LatticePoint x = LatticePoint::Zero(static_cast<Eigen::Index>(dims.size()));
  while (true) {
    out.push_back(x);
    int i = static_cast<int>(dims.size()) - 1;
    while (i >= 0 && x(i) == dims[static_cast<std::size_t>(i)] - 1) x(i--) = 0;
    if (i < 0) return out;
    ++x(i);
  }
}

struct ReferenceMinimum {
  double value = std::numeric_limits<double>::infinity();
  std::vector<LatticePoint> argmins;
};

inline ReferenceMinimum reference_minimum(const std::function<double(const LatticePoint&)>& f,
                                          const std::vector<int>& dims) {
  ReferenceMinimum best;
  for (const auto& x : all_points(dims)) {
    const double v = f(x);
    if (v < best.value) {
      best.value = v;
      best.argmins = {x};
    } else if (v == best.value) {
      best.argmins.push_back(x);
    }
  }
  return best;
}

// Flat profile layout: chain i occupies dims[0]-1 + ... + dims[i-1]-1 onward.
inline int flat_offset(const std::vector<int>& dims, int chain) {
  int off = 0;
  for (int i = 0; i < chain; ++i) off += dims[static_cast<std::size_t>(i)] - 1;
  return off;
}

// theta by counting: rho_i is non-increasing, so the largest level with
// rho_i(l) >= t equals the number of stored entries >= t.
inline LatticePoint reference_theta(const std::vector<int>& dims, const Eigen::VectorXd& rho,
                                    double t) {
  LatticePoint x(static_cast<Eigen::Index>(dims.size()));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const int off = flat_offset(dims, static_cast<int>(i));
    int count = 0;
    for (int l = 0; l < dims[i] - 1; ++l) count += rho(off + l) >= t ? 1 : 0;
    x(static_cast<Eigen::Index>(i)) = count;
  }
  return x;
}

// f^ext(rho) = integral over t in [0,1] of f(theta(rho, t)). theta is
// piecewise constant with breakpoints at the profile entries, so the
// integral is a finite sum over the intervals between distinct entries.
inline double reference_extension(const std::function<double(const LatticePoint&)>& f,
                                  const std::vector<int>& dims, const Eigen::VectorXd& rho) {
  std::vector<double> cuts = {0.0, 1.0};
  for (Eigen::Index k = 0; k < rho.size(); ++k) cuts.push_back(rho(k));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double width = cuts[k + 1] - cuts[k];
    if (width <= 0) continue;
    total += width * f(reference_theta(dims, rho, 0.5 * (cuts[k] + cuts[k + 1])));
  }
  return total;
}

// Exact minimizer of ||y - v||^2 over y in {0, p, 2p, ..., 1}^n with
// y_0 >= y_1 >= ... >= y_{n-1}, by dynamic programming over grid levels.
inline Eigen::VectorXd grid_projection(const Eigen::VectorXd& v, int levels_per_unit = 1000) {
  const int g = levels_per_unit + 1;
  const auto n = static_cast<std::size_t>(v.size());
  auto level = [&](int k) { return double(k) / levels_per_unit; };
  // cost[i][k]: best cost of y_0..y_i with y_i = level k.
  std::vector<std::vector<double>> cost(n, std::vector<double>(static_cast<std::size_t>(g)));
  std::vector<std::vector<int>> from(n, std::vector<int>(static_cast<std::size_t>(g), -1));
  for (int k = 0; k < g; ++k) {
    const double d = level(k) - v(0);
    cost[0][static_cast<std::size_t>(k)] = d * d;
  }
  for (std::size_t i = 1; i < n; ++i) {
    // Running minimum over predecessor levels >= k.
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int k = g - 1; k >= 0; --k) {
      if (cost[i - 1][static_cast<std::size_t>(k)] < best) {
        best = cost[i - 1][static_cast<std::size_t>(k)];
        arg = k;
      }
      const double d = level(k) - v(static_cast<Eigen::Index>(i));
      cost[i][static_cast<std::size_t>(k)] = best + d * d;
      from[i][static_cast<std::size_t>(k)] = arg;
    }
  }
  int k = static_cast<int>(std::min_element(cost[n - 1].begin(), cost[n - 1].end()) -
                           cost[n - 1].begin());
  Eigen::VectorXd y(v.size());
  for (std::size_t i = n; i-- > 0;) {
    y(static_cast<Eigen::Index>(i)) = level(k);
    if (i > 0) k = from[i][static_cast<std::size_t>(k)];
  }
  return y;
}

// Table-driven random submodular function:
//   f(x) = sum_i g_i(x_i) + sum_{i<j} phi_ij(x_i, x_j),
//   phi_ij(a, b) = -sum_{a' < a, b' < b} M_ij(a', b'),  M_ij >= 0,
// whose cross-difference at (x, i, j) is -M_ij(x_i, x_j) <= 0.
class RandomSubmodular {
 public:
  RandomSubmodular(std::vector<int> dims, std::uint64_t seed, double unary_scale = 10.0,
                   double pair_scale = 1.0)
      : dims_(std::move(dims)) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = dims_.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> g(static_cast<std::size_t>(dims_[i]));
      for (double& v : g) v = unary_scale * unit(rng);
      unary_.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int mi = dims_[i];
        const int mj = dims_[j];
        Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(mi, mj);
        for (int a = 1; a < mi; ++a) {
          for (int b = 1; b < mj; ++b) {
            phi(a, b) = phi(a - 1, b) + phi(a, b - 1) - phi(a - 1, b - 1) -
                        pair_scale * unit(rng);
          }
        }
        pairs_.push_back(std::move(phi));
      }
    }
  }

  double operator()(const LatticePoint& x) const {
    double v = 0.0;
    const std::size_t n = dims_.size();
    for (std::size_t i = 0; i < n; ++i) v += unary_[i][static_cast<std::size_t>(x(static_cast<Eigen::Index>(i)))];
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++p) {
        v += pairs_[p](x(static_cast<Eigen::Index>(i)), x(static_cast<Eigen::Index>(j)));
      }
    }
    return v;
  }

  ObjectiveOracle<double> oracle() const {
    auto self = std::make_shared<RandomSubmodular>(*this);
    return ObjectiveOracle<double>(ChainProduct(dims_),
                                   [self](const LatticePoint& x) { return (*self)(x); });
  }

 private:
  std::vector<int> dims_;
  std::vector<std::vector<double>> unary_;
  std::vector<Eigen::MatrixXd> pairs_;
};

// Arbitrary function given by a random table (not submodular in general).
inline ObjectiveOracle<double> random_table_oracle(const std::vector<int>& dims,
                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  auto table = std::make_shared<std::vector<double>>();
  const auto points = all_points(dims);
  for (std::size_t k = 0; k < points.size(); ++k) table->push_back(value(rng));
  auto key = [dims](const LatticePoint& x) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      k = k * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(x(static_cast<Eigen::Index>(i)));
    }
    return k;
  };
  return ObjectiveOracle<double>(ChainProduct(dims), [table, key](const LatticePoint& x) {
    return (*table)[key(x)];
  });
}

// Metropolis weights on a random connected graph: symmetric, hence doubly
// stochastic, with a positive diagonal.
inline Eigen::MatrixXd metropolis_matrix(int n, std::uint64_t seed, double extra_edge_p = 0.3) {
  std::mt19937_64 rng(seed);
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    const int u = parent(rng);
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  std::bernoulli_distribution extra(extra_edge_p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (extra(rng)) {
        adj[static_cast<std::size_t>(u)].insert(v);
        adj[static_cast<std::size_t>(v)].insert(u);
      }
    }
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      const auto du = adj[static_cast<std::size_t>(u)].size();
      const auto dv = adj[static_cast<std::size_t>(v)].size();
      a(u, v) = 1.0 / (1.0 + double(std::max(du, dv)));
    }
  }
  for (int u = 0; u < n; ++u) a(u, u) = 1.0 - (a.row(u).sum() - a(u, u));
  return a;
}

inline double min_positive_entry(const Eigen::MatrixXd& a) {
  double m = 1.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.data()[i] > 0) m = std::min(m, a.data()[i]);
  }
  return m;
}

// Random chain sizes: count in [1, max_chains], each size in [2, max_size].
inline std::vector<int> random_dims(std::mt19937_64& rng, int max_chains, int max_size) {
  std::uniform_int_distribution<int> count(1, max_chains);
  std::uniform_int_distribution<int> size(2, max_size);
  std::vector<int> dims(static_cast<std::size_t>(count(rng)));
  for (int& m : dims) m = size(rng);
  return dims;
}

inline LatticePoint random_point(std::mt19937_64& rng, const std::vector<int>& dims) {
  LatticePoint x(static_cast<Eigen::Index>(dims.size()));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::uniform_int_distribution<int> level(0, dims[i] - 1);
    x(static_cast<Eigen::Index>(i)) = level(rng);
  }
  return x;
}

// Random valid flat profile: uniforms sorted non-increasing per chain.
inline Eigen::VectorXd random_profile(std::mt19937_64& rng, const std::vector<int>& dims) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd v(flat_offset(dims, static_cast<int>(dims.size())));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const int off = flat_offset(dims, static_cast<int>(i));
    std::vector<double> seg(static_cast<std::size_t>(dims[i] - 1));
    for (double& s : seg) s = unit(rng);
    std::sort(seg.begin(), seg.end(), std::greater<>());
    for (std::size_t l = 0; l < seg.size(); ++l) v(off + static_cast<Eigen::Index>(l)) = seg[l];
  }
  return v;
}

}  // namespace latmin::testing

#endif  // LATMIN_TESTS_TEST_SUPPORT_HPP_
