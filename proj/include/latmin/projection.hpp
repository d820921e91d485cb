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

#ifndef LATMIN_PROJECTION_HPP_
#define LATMIN_PROJECTION_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "latmin/error.hpp"
#include "latmin/extension.hpp"
#include "latmin/lattice.hpp"

namespace latmin {

namespace detail {

// In-place Euclidean projection onto {p in [0,1]^n : p non-increasing}.
//
// Pool-adjacent-violators for the antitonic fit, then clipping to [0,1].
// With the same bounds on every coordinate, clipping the isotonic solution is
// the exact box-constrained projection.
template <typename Derived>
void project_monotone_box_inplace(Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  struct Block {
    Scalar sum;
    Eigen::Index count;
    Scalar mean() const { return sum / Scalar(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    blocks.push_back({v(k), 1});
    while (blocks.size() > 1) {
      const Block& last = blocks.back();
      const Block& prev = blocks[blocks.size() - 2];
      if (last.mean() <= prev.mean()) break;
      const Block merged{prev.sum + last.sum, prev.count + last.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  Eigen::Index k = 0;
  for (const Block& b : blocks) {
    const Scalar value = std::clamp(b.mean(), Scalar(0), Scalar(1));
    for (Eigen::Index c = 0; c < b.count; ++c) v(k++) = value;
  }
  for (k = 1; k < n; ++k) v(k) = std::min(v(k), v(k - 1));
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    using std::isfinite;
    if (!isfinite(v(k))) throw DomainError("projection input has a non-finite entry");
  }
}

}  // namespace detail

// argmin ||p - v||^2 over non-increasing p in [0,1]^n.
template <typename Derived>
DynVector<typename Derived::Scalar> project_monotone_box(
    const Eigen::MatrixBase<Derived>& v) {
  if (v.size() == 0) throw DomainError("projection of an empty vector");
  detail::require_finite(v);
  DynVector<typename Derived::Scalar> out = v;
  detail::project_monotone_box_inplace(out);
  return out;
}

// Chain-wise projection of a flat vector onto the product of monotone boxes.
template <typename Scalar>
ProductProfile<Scalar> project_product(const ChainProduct& lattice,
                                       DynVector<Scalar> xi) {
  if (xi.size() != lattice.profile_size()) {
    throw DomainError("projection input has " + std::to_string(xi.size()) +
                      " entries, lattice needs " +
                      std::to_string(lattice.profile_size()));
  }
  detail::require_finite(xi);
  for (int i = 0; i < lattice.size(); ++i) {
    auto seg = xi.segment(lattice.offset(i), lattice.dim(i) - 1);
    detail::project_monotone_box_inplace(seg);
  }
  return ProductProfile<Scalar>(lattice, std::move(xi));
}

// Same, for per-chain vectors.
template <typename Scalar>
ProductProfile<Scalar> project_product(const ChainProduct& lattice,
                                       const std::vector<DynVector<Scalar>>& chains) {
  if (static_cast<int>(chains.size()) != lattice.size()) {
    throw DomainError("projection input has the wrong number of chains");
  }
  DynVector<Scalar> flat(lattice.profile_size());
  for (int i = 0; i < lattice.size(); ++i) {
    if (chains[static_cast<std::size_t>(i)].size() != lattice.dim(i) - 1) {
      throw DomainError("chain " + std::to_string(i) + " has the wrong length");
    }
    flat.segment(lattice.offset(i), lattice.dim(i) - 1) =
        chains[static_cast<std::size_t>(i)];
  }
  return project_product(lattice, std::move(flat));
}

}  // namespace latmin

#endif  // LATMIN_PROJECTION_HPP_
