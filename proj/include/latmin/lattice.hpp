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

#ifndef LATMIN_LATTICE_HPP_
#define LATMIN_LATTICE_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "latmin/error.hpp"

namespace latmin {

// An element of a chain product: one index per chain, 0 <= x(i) < m_i.
using LatticePoint = Eigen::VectorXi;

inline constexpr std::uint64_t kDefaultBruteForceCap = 1'000'000;

// The lattice X = X_0 x ... x X_{N-1} with X_i = {0, ..., m_i - 1}.
//
// Besides the chain sizes this carries the layout of the flattened profile
// vector used by the extension machinery: chain i owns the m_i - 1 entries
// starting at offset(i), and the total length is profile_size() = sum m_i - N.
class ChainProduct {
 public:
  explicit ChainProduct(std::vector<int> dims,
                        std::uint64_t brute_force_cap = kDefaultBruteForceCap);

  int size() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& dims() const { return dims_; }

  int profile_size() const { return profile_size_; }
  int offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }

  // Number of lattice points, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> cardinality() const { return cardinality_; }
  std::uint64_t brute_force_cap() const { return cap_; }
  // Warning state: the lattice is valid but enumeration-based operations
  // will refuse it.
  bool exceeds_cap() const { return !cardinality_ || *cardinality_ > cap_; }
  // Throws CapacityError when exceeds_cap().
  void require_enumerable(const char* what) const;

  bool contains(const LatticePoint& x) const;
  LatticePoint bottom() const { return LatticePoint::Zero(size()); }
  LatticePoint top() const;

  // Mixed-radix rank of x, chain 0 varying fastest.
  std::uint64_t rank(const LatticePoint& x) const;

  bool operator==(const ChainProduct& other) const {
    return dims_ == other.dims_;
  }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int profile_size_ = 0;
  std::optional<std::uint64_t> cardinality_;
  std::uint64_t cap_;
};

ChainProduct make_chain_product(std::vector<int> dims);

// Odometer step in rank order. Returns false after the top point, leaving x
// at the bottom.
bool next_point(const ChainProduct& lattice, LatticePoint& x);

template <typename Fn>
void for_each_point(const ChainProduct& lattice, Fn&& fn) {
  lattice.require_enumerable("enumeration");
  LatticePoint x = lattice.bottom();
  do {
    fn(static_cast<const LatticePoint&>(x));
  } while (next_point(lattice, x));
}

std::string format_point(const LatticePoint& x);

// Deterministic cost f: X -> Scalar. The only access solvers have to a cost.
//
// Evaluations are counted with a relaxed atomic so concurrent callers get a
// consistent total; copying an oracle copies the current count.
template <typename Scalar = double>
class ObjectiveOracle {
 public:
  using Function = std::function<Scalar(const LatticePoint&)>;

  ObjectiveOracle(ChainProduct domain, Function fn)
      : domain_(std::move(domain)), fn_(std::move(fn)) {}

  ObjectiveOracle(const ObjectiveOracle& other)
      : domain_(other.domain_), fn_(other.fn_), evals_(other.evaluations()) {}
  ObjectiveOracle& operator=(const ObjectiveOracle& other) {
    domain_ = other.domain_;
    fn_ = other.fn_;
    evals_.store(other.evaluations(), std::memory_order_relaxed);
    return *this;
  }

  Scalar operator()(const LatticePoint& x) const {
    if (!domain_.contains(x)) {
      throw DomainError("oracle evaluated outside its lattice at " +
                        format_point(x));
    }
    evals_.fetch_add(1, std::memory_order_relaxed);
    const Scalar value = fn_(x);
    using std::isfinite;
    if (!isfinite(value)) {
      throw DomainError("oracle returned a non-finite value at " +
                        format_point(x));
    }
    return value;
  }

  const ChainProduct& domain() const { return domain_; }
  std::uint64_t evaluations() const {
    return evals_.load(std::memory_order_relaxed);
  }
  void reset_evaluations() const { evals_.store(0, std::memory_order_relaxed); }

 private:
  ChainProduct domain_;
  Function fn_;
  mutable std::atomic<std::uint64_t> evals_{0};
};

// Pointwise sum of oracles sharing one lattice. The summands are copied.
template <typename Scalar>
ObjectiveOracle<Scalar> sum_oracles(
    const std::vector<ObjectiveOracle<Scalar>>& terms) {
  if (terms.empty()) throw DomainError("sum of zero oracles");
  for (const auto& t : terms) {
    if (!(t.domain() == terms.front().domain())) {
      throw DomainError("summed oracles live on different lattices");
    }
  }
  return ObjectiveOracle<Scalar>(
      terms.front().domain(), [terms](const LatticePoint& x) {
        Scalar total(0);
        for (const auto& t : terms) total += t(x);
        return total;
      });
}

// [f(x + e_i + e_j) - f(x + e_j)] - [f(x + e_i) - f(x)].
// Non-positive at every admissible (x, i, j) iff f is submodular.
template <typename Scalar>
Scalar cross_difference(const ObjectiveOracle<Scalar>& f, const LatticePoint& x,
                        int i, int j) {
  const ChainProduct& lattice = f.domain();
  if (i == j) throw DomainError("cross difference needs two distinct chains");
  if (i < 0 || j < 0 || i >= lattice.size() || j >= lattice.size()) {
    throw DomainError("chain index out of range");
  }
  if (!lattice.contains(x) || x(i) + 1 >= lattice.dim(i) ||
      x(j) + 1 >= lattice.dim(j)) {
    throw DomainError("unit shift leaves the lattice at " + format_point(x));
  }
  LatticePoint xi = x, xj = x, xij = x;
  xi(i) += 1;
  xj(j) += 1;
  xij(i) += 1;
  xij(j) += 1;
  return (f(xij) - f(xj)) - (f(xi) - f(x));
}

template <typename Scalar>
struct SubmodularityViolation {
  LatticePoint point;
  int chain_i;
  int chain_j;
  Scalar cross_difference;
};

template <typename Scalar>
struct SubmodularityReport {
  bool is_submodular = true;
  std::vector<SubmodularityViolation<Scalar>> violations;
  // Number of admissible (x, i < j) triples examined.
  std::uint64_t points_checked = 0;
};

inline constexpr double kDefaultSubmodularTolerance = 1e-9;

// Exhaustive unit cross-difference test. Cross differences in (0, tolerance]
// count as zero. The oracle is tabulated once, so it is evaluated |X| times
// (and not at all when N = 1).
template <typename Scalar>
SubmodularityReport<Scalar> check_submodular(
    const ObjectiveOracle<Scalar>& f,
    Scalar tolerance = Scalar(kDefaultSubmodularTolerance)) {
  const ChainProduct& lattice = f.domain();
  lattice.require_enumerable("check_submodular");
  SubmodularityReport<Scalar> report;
  const int n = lattice.size();
  if (n < 2) return report;

  std::vector<Scalar> table;
  table.reserve(static_cast<std::size_t>(*lattice.cardinality()));
  for_each_point(lattice, [&](const LatticePoint& x) { table.push_back(f(x)); });

  std::vector<std::uint64_t> stride(static_cast<std::size_t>(n), 1);
  for (int i = 1; i < n; ++i) {
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i - 1)] *
        static_cast<std::uint64_t>(lattice.dim(i - 1));
  }

  LatticePoint x = lattice.bottom();
  std::uint64_t r = 0;
  do {
    for (int i = 0; i < n; ++i) {
      if (x(i) + 1 >= lattice.dim(i)) continue;
      const std::uint64_t si = stride[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) {
        if (x(j) + 1 >= lattice.dim(j)) continue;
        const std::uint64_t sj = stride[static_cast<std::size_t>(j)];
        ++report.points_checked;
        const Scalar cd = (table[r + si + sj] - table[r + sj]) -
                          (table[r + si] - table[r]);
        if (cd > tolerance) {
          report.violations.push_back({x, i, j, cd});
        }
      }
    }
    ++r;
  } while (next_point(lattice, x));
  report.is_submodular = report.violations.empty();
  return report;
}

template <typename Scalar>
struct BruteForceResult {
  Scalar value;
  std::vector<LatticePoint> argmins;  // rank order
};

// Exact minimum by enumeration. Points within tie_tolerance of the minimum
// are reported as argmins.
template <typename Scalar>
BruteForceResult<Scalar> brute_force_minimize(const ObjectiveOracle<Scalar>& f,
                                              Scalar tie_tolerance = Scalar(0)) {
  const ChainProduct& lattice = f.domain();
  lattice.require_enumerable("brute_force_minimize");
  std::vector<std::pair<LatticePoint, Scalar>> values;
  values.reserve(static_cast<std::size_t>(*lattice.cardinality()));
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for_each_point(lattice, [&](const LatticePoint& x) {
    const Scalar v = f(x);
    values.emplace_back(x, v);
    if (v < best) best = v;
  });
  BruteForceResult<Scalar> result{best, {}};
  for (auto& [x, v] : values) {
    if (v <= best + tie_tolerance) result.argmins.push_back(std::move(x));
  }
  return result;
}

}  // namespace latmin

#endif  // LATMIN_LATTICE_HPP_
