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

#include "latmin/lattice.hpp"

#include <limits>
#include <sstream>

namespace latmin {

ChainProduct::ChainProduct(std::vector<int> dims, std::uint64_t brute_force_cap)
    : dims_(std::move(dims)), cap_(brute_force_cap) {
  if (dims_.empty()) throw DomainError("empty product");
  offsets_.reserve(dims_.size());
  std::uint64_t card = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const int m = dims_[i];
    if (m < 2) {
      throw DomainError("chain " + std::to_string(i) + " has size " +
                        std::to_string(m) + "; every chain needs at least 2 elements");
    }
    offsets_.push_back(profile_size_);
    profile_size_ += m - 1;
    const auto um = static_cast<std::uint64_t>(m);
    if (!overflow && card > std::numeric_limits<std::uint64_t>::max() / um) {
      overflow = true;
    }
    if (!overflow) card *= um;
  }
  if (!overflow) cardinality_ = card;
}

void ChainProduct::require_enumerable(const char* what) const {
  if (exceeds_cap()) {
    std::ostringstream msg;
    msg << what << ": lattice with ";
    if (cardinality_) {
      msg << *cardinality_;
    } else {
      msg << "more than 2^64";
    }
    msg << " points exceeds the brute-force cap of " << cap_;
    throw CapacityError(msg.str());
  }
}

bool ChainProduct::contains(const LatticePoint& x) const {
  if (x.size() != size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (x(i) < 0 || x(i) >= dim(i)) return false;
  }
  return true;
}

LatticePoint ChainProduct::top() const {
  LatticePoint x(size());
  for (int i = 0; i < size(); ++i) x(i) = dim(i) - 1;
  return x;
}

std::uint64_t ChainProduct::rank(const LatticePoint& x) const {
  if (!contains(x)) throw DomainError("point outside lattice: " + format_point(x));
  std::uint64_t r = 0;
  for (int i = size() - 1; i >= 0; --i) {
    r = r * static_cast<std::uint64_t>(dim(i)) + static_cast<std::uint64_t>(x(i));
  }
  return r;
}

ChainProduct make_chain_product(std::vector<int> dims) {
  return ChainProduct(std::move(dims));
}

bool next_point(const ChainProduct& lattice, LatticePoint& x) {
  for (int i = 0; i < lattice.size(); ++i) {
    if (++x(i) < lattice.dim(i)) return true;
    x(i) = 0;
  }
  return false;
}

std::string format_point(const LatticePoint& x) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x(i));
  }
  return out + ")";
}

}  // namespace latmin
