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

#ifndef LATMIN_EXTENSION_HPP_
#define LATMIN_EXTENSION_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "latmin/error.hpp"
#include "latmin/lattice.hpp"

namespace latmin {

template <typename Scalar>
using DynVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Describes the first way v fails to be a point of the product of monotone
// boxes [0,1]^{m_i-1}, non-increasing per chain. nullopt when v is feasible.
template <typename Scalar>
std::optional<std::string> profile_violation(const ChainProduct& lattice,
                                             const DynVector<Scalar>& v) {
  if (v.size() != lattice.profile_size()) {
    return "profile has " + std::to_string(v.size()) + " entries, lattice needs " +
           std::to_string(lattice.profile_size());
  }
  for (int i = 0; i < lattice.size(); ++i) {
    const int base = lattice.offset(i);
    for (int l = 0; l < lattice.dim(i) - 1; ++l) {
      const Scalar value = v(base + l);
      if (!(value >= Scalar(0) && value <= Scalar(1))) {
        return "chain " + std::to_string(i) + " entry " + std::to_string(l + 1) +
               " outside [0,1]";
      }
      if (l > 0 && value > v(base + l - 1)) {
        return "chain " + std::to_string(i) + " increases at entry " +
               std::to_string(l + 1);
      }
    }
  }
  return std::nullopt;
}

// rho = prod_i rho_i, each rho_i a non-increasing vector in [0,1]^{m_i-1}:
// the reversed cumulative distribution (F(1), ..., F(m_i - 1)) of a
// probability measure on chain i. Stored flat in the ChainProduct layout.
template <typename Scalar = double>
class ProductProfile {
 public:
  using Vector = DynVector<Scalar>;

  ProductProfile(ChainProduct domain, Vector values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (auto why = profile_violation<Scalar>(domain_, values_)) {
      throw DomainError("invalid product profile: " + *why);
    }
  }

  const ChainProduct& domain() const { return domain_; }
  const Vector& values() const { return values_; }

  auto chain(int i) const {
    return values_.segment(domain_.offset(i), domain_.dim(i) - 1);
  }

  // rho_i(level) for level in [0, m_i - 1]; level 0 is identically 1.
  Scalar at(int i, int level) const {
    if (level == 0) return Scalar(1);
    return values_(domain_.offset(i) + level - 1);
  }

  bool operator==(const ProductProfile& other) const {
    return domain_ == other.domain_ && values_ == other.values_;
  }

 private:
  ChainProduct domain_;
  Vector values_;
};

// Order among equal entries of different chains. Entries of one chain always
// keep their level order.
enum class TieBreak { kChainAscending, kChainDescending };

template <typename Scalar>
struct SortedEntry {
  Scalar value;
  int chain;
  int level;  // 1 .. m_chain - 1
};

template <typename Scalar>
struct ExtensionResult {
  Scalar value;
  // Same flat layout as the profile; entry (i, level) sits at
  // offset(i) + level - 1. Not constrained to be monotone.
  DynVector<Scalar> subgradient;
  // y_0 = bottom, y_s = y_{s-1} + e_{i_s}, y_r = top.
  std::vector<LatticePoint> chain_of_points;
  std::vector<SortedEntry<Scalar>> sorted_entries;
};

namespace detail {

// Greedy extension on an arbitrary flat vector. Callers guarantee each chain
// segment is non-increasing, which keeps the level order inside a chain.
template <typename Scalar>
ExtensionResult<Scalar> greedy_extension_flat(const ObjectiveOracle<Scalar>& f,
                                              const DynVector<Scalar>& v,
                                              TieBreak tie,
                                              bool keep_path = true) {
  const ChainProduct& lattice = f.domain();
  const int r = lattice.profile_size();
  if (v.size() != r) {
    throw DomainError("profile length " + std::to_string(v.size()) +
                      " does not match lattice (" + std::to_string(r) + ")");
  }

  std::vector<SortedEntry<Scalar>> entries;
  entries.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < lattice.size(); ++i) {
    for (int level = 1; level < lattice.dim(i); ++level) {
      entries.push_back({v(lattice.offset(i) + level - 1), i, level});
    }
  }
  const bool ascending = tie == TieBreak::kChainAscending;
  std::sort(entries.begin(), entries.end(),
            [ascending](const SortedEntry<Scalar>& a, const SortedEntry<Scalar>& b) {
              if (a.value != b.value) return a.value > b.value;
              if (a.chain != b.chain) return ascending ? a.chain < b.chain : a.chain > b.chain;
              return a.level < b.level;
            });

  ExtensionResult<Scalar> out;
  out.subgradient = DynVector<Scalar>::Zero(r);
  LatticePoint y = lattice.bottom();
  if (keep_path) {
    out.chain_of_points.reserve(static_cast<std::size_t>(r) + 1);
    out.chain_of_points.push_back(y);
  }
  Scalar previous = f(y);
  out.value = previous;
  for (const auto& e : entries) {
    y(e.chain) += 1;
    if (y(e.chain) != e.level) {
      throw InternalError("greedy extension visited chain levels out of order");
    }
    const Scalar current = f(y);
    const Scalar increment = current - previous;
    out.value += e.value * increment;
    out.subgradient(lattice.offset(e.chain) + e.level - 1) = increment;
    previous = current;
    if (keep_path) out.chain_of_points.push_back(y);
  }
  if (y != lattice.top()) {
    throw InternalError("greedy extension chain did not end at the top element");
  }
  if (keep_path) out.sorted_entries = std::move(entries);
  return out;
}

template <typename Scalar>
LatticePoint theta_flat(const ChainProduct& lattice, const DynVector<Scalar>& v,
                        Scalar t) {
  if (!(t >= Scalar(0) && t <= Scalar(1))) {
    throw DomainError("theta threshold must lie in [0,1]");
  }
  LatticePoint x(lattice.size());
  for (int i = 0; i < lattice.size(); ++i) {
    int best = 0;
    for (int level = 1; level < lattice.dim(i); ++level) {
      if (v(lattice.offset(i) + level - 1) >= t) best = level;
    }
    x(i) = best;
  }
  return x;
}

}  // namespace detail

// Continuous extension of f at rho together with its subgradient.
// Exactly r + 1 oracle evaluations, r = sum m_i - N.
template <typename Scalar>
ExtensionResult<Scalar> greedy_extension(
    const ObjectiveOracle<Scalar>& f, const ProductProfile<Scalar>& rho,
    TieBreak tie = TieBreak::kChainAscending) {
  if (!(rho.domain() == f.domain())) {
    throw DomainError("profile and oracle live on different lattices");
  }
  return detail::greedy_extension_flat(f, rho.values(), tie);
}

// theta_rho(t): per chain, the largest level l with rho_i(l) >= t.
template <typename Scalar>
LatticePoint theta(const ProductProfile<Scalar>& rho, Scalar t) {
  return detail::theta_flat(rho.domain(), rho.values(), t);
}

// Degenerate profile of a lattice point: rho_i(l) = 1 for l <= x(i), else 0.
template <typename Scalar = double>
ProductProfile<Scalar> profile_from_point(const ChainProduct& lattice,
                                          const LatticePoint& x) {
  if (!lattice.contains(x)) {
    throw DomainError("point outside lattice: " + format_point(x));
  }
  DynVector<Scalar> v = DynVector<Scalar>::Zero(lattice.profile_size());
  for (int i = 0; i < lattice.size(); ++i) {
    for (int level = 1; level <= x(i); ++level) {
      v(lattice.offset(i) + level - 1) = Scalar(1);
    }
  }
  return ProductProfile<Scalar>(lattice, std::move(v));
}

// Per chain, m_i - 1 uniforms on [0,1] sorted non-increasing.
template <typename Scalar = double>
ProductProfile<Scalar> uniform_random_profile(const ChainProduct& lattice,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DynVector<Scalar> v(lattice.profile_size());
  for (int i = 0; i < lattice.size(); ++i) {
    auto seg = v.segment(lattice.offset(i), lattice.dim(i) - 1);
    for (Eigen::Index l = 0; l < seg.size(); ++l) seg(l) = Scalar(unit(rng));
    std::sort(seg.begin(), seg.end(), std::greater<Scalar>());
  }
  return ProductProfile<Scalar>(lattice, std::move(v));
}

}  // namespace latmin

#endif  // LATMIN_EXTENSION_HPP_
