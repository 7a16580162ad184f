// Copyright 2026 The mconv Authors.
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

// Submodular set functions, their polymatroids and base polyhedra, and
// univariate convex tables.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/point.hpp"
#include "mconv/rational.hpp"

namespace mconv {

using Mask = std::uint32_t;

inline Mask mask_of(std::span<const Index> subset) {
  Mask m = 0;
  for (Index i : subset) m |= Mask{1} << i;
  return m;
}

inline Mask bit(Index i) { return Mask{1} << i; }

// A set function rho: 2^N -> Z with rho(empty) = 0. Kept both as the
// structured description it was built from (for serialization) and as a
// full table for O(1) queries.
class SubmodularSpec {
 public:
  enum class Kind { kTabulated, kTruncation, kPartition, kCoverage };

  static constexpr std::size_t kMaxDim = 20;

  SubmodularSpec() = default;

  static SubmodularSpec tabulated(std::size_t n, std::vector<std::int64_t> values) {
    check_dim(n);
    ensure(values.size() == (std::size_t{1} << n), ErrorCode::kInvalidArgument,
           "tabulated rank needs 2^n values");
    SubmodularSpec s(Kind::kTabulated, n);
    s.table_ = std::move(values);
    s.finish();
    return s;
  }

  // rho(X) = min(a |X|, b).
  static SubmodularSpec truncation(std::size_t n, std::int64_t a, std::int64_t b) {
    check_dim(n);
    ensure(a >= 0 && b >= 0, ErrorCode::kInvalidArgument, "truncation needs a, b >= 0");
    SubmodularSpec s(Kind::kTruncation, n);
    s.params_ = {a, b};
    s.table_.resize(std::size_t{1} << n);
    for (Mask m = 0; m < s.table_.size(); ++m) {
      s.table_[m] = std::min<std::int64_t>(a * std::popcount(m), b);
    }
    s.finish();
    return s;
  }

  // rho(X) = sum over blocks B of min(|X n B|, cap_B); blocks are disjoint.
  static SubmodularSpec partition(std::size_t n, std::vector<Mask> blocks,
                                  std::vector<std::int64_t> caps) {
    check_dim(n);
    ensure(blocks.size() == caps.size(), ErrorCode::kInvalidArgument,
           "partition needs one cap per block");
    Mask seen = 0;
    for (Mask b : blocks) {
      ensure((seen & b) == 0, ErrorCode::kInvalidArgument, "partition blocks overlap");
      seen |= b;
    }
    SubmodularSpec s(Kind::kPartition, n);
    s.blocks_ = std::move(blocks);
    s.params_ = std::move(caps);
    s.table_.resize(std::size_t{1} << n);
    for (Mask m = 0; m < s.table_.size(); ++m) {
      std::int64_t r = 0;
      for (std::size_t t = 0; t < s.blocks_.size(); ++t) {
        r += std::min<std::int64_t>(std::popcount(m & s.blocks_[t]), s.params_[t]);
      }
      s.table_[m] = r;
    }
    s.finish();
    return s;
  }

  // rho(X) = min(total weight of items covered by X, cap). covers[i] is the
  // item set (as a mask over items) of element i.
  static SubmodularSpec coverage(std::size_t n, std::vector<Mask> covers,
                                 std::vector<std::int64_t> weights, std::int64_t cap) {
    check_dim(n);
    ensure(covers.size() == n, ErrorCode::kInvalidArgument, "coverage needs one cover per element");
    ensure(weights.size() <= 32, ErrorCode::kInvalidArgument, "at most 32 items");
    for (auto w : weights) ensure(w >= 0, ErrorCode::kInvalidArgument, "negative item weight");
    SubmodularSpec s(Kind::kCoverage, n);
    s.blocks_ = std::move(covers);
    s.params_ = std::move(weights);
    s.cap_ = cap;
    s.table_.resize(std::size_t{1} << n);
    for (Mask m = 0; m < s.table_.size(); ++m) {
      Mask items = 0;
      for (Index i = 0; i < n; ++i) {
        if (m & bit(i)) items |= s.blocks_[i];
      }
      std::int64_t w = 0;
      for (std::size_t u = 0; u < s.params_.size(); ++u) {
        if (items & bit(u)) w += s.params_[u];
      }
      s.table_[m] = std::min(w, cap);
    }
    s.finish();
    return s;
  }

  Kind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  Mask full() const { return static_cast<Mask>((std::size_t{1} << n_) - 1); }
  std::int64_t rank(Mask m) const { return table_[m]; }
  std::int64_t rank(std::span<const Index> subset) const { return table_[mask_of(subset)]; }
  std::int64_t total() const { return table_[full()]; }
  const std::vector<std::int64_t>& table() const { return table_; }
  const std::vector<std::int64_t>& params() const { return params_; }
  const std::vector<Mask>& blocks() const { return blocks_; }
  std::int64_t cap() const { return cap_; }

  bool is_submodular() const {
    for (Mask a = 0; a <= full(); ++a) {
      for (Mask b = a + 1; b <= full(); ++b) {
        if (table_[a] + table_[b] < table_[a & b] + table_[a | b]) return false;
      }
    }
    return true;
  }

  bool is_monotone() const {
    for (Mask a = 0; a <= full(); ++a) {
      for (Index i = 0; i < n_; ++i) {
        if (!(a & bit(i)) && table_[a | bit(i)] < table_[a]) return false;
      }
    }
    return true;
  }

  bool is_polymatroid() const { return table_[0] == 0 && is_monotone() && is_submodular(); }

  // x(Y) for every Y, by the low-bit recurrence.
  template <class V>
  std::vector<V> subset_sums(std::span<const V> x) const {
    std::vector<V> sums(table_.size(), V(0));
    for (Mask m = 1; m <= full(); ++m) {
      const Index low = static_cast<Index>(std::countr_zero(m));
      sums[m] = sums[m & (m - 1)] + x[low];
    }
    return sums;
  }

  // x(Y) <= rho(Y) for all Y.
  template <class V>
  bool below(std::span<const V> x) const {
    const auto sums = subset_sums(x);
    for (Mask m = 1; m <= full(); ++m) {
      if (sums[m] > V(table_[m])) return false;
    }
    return true;
  }

  template <class V>
  bool in_polymatroid(std::span<const V> x) const {
    for (const auto& c : x) {
      if (c < V(0)) return false;
    }
    return below(x);
  }

  template <class V>
  bool in_base(std::span<const V> x) const {
    V s(0);
    for (const auto& c : x) s += c;
    return s == V(total()) && below(x);
  }

  bool in_polymatroid(const IntPoint& x) const {
    return in_polymatroid(std::span<const std::int64_t>(x.coords()));
  }
  bool in_base(const IntPoint& x) const { return in_base(std::span<const std::int64_t>(x.coords())); }

  // max lambda with x + lambda chi_i still below rho: min over Y containing i
  // of rho(Y) - x(Y).
  template <class V>
  V saturation_capacity(std::span<const V> x, Index i) const {
    const auto sums = subset_sums(x);
    bool first = true;
    V best(0);
    for (Mask m = 1; m <= full(); ++m) {
      if (!(m & bit(i))) continue;
      V slack = V(table_[m]) - sums[m];
      if (first || slack < best) best = slack;
      first = false;
    }
    return best;
  }

  // max alpha with x + alpha (chi_i - chi_j) still below rho: min over Y with
  // i in Y, j not in Y of rho(Y) - x(Y).
  template <class V>
  V exchange_capacity(std::span<const V> x, Index i, Index j) const {
    const auto sums = subset_sums(x);
    bool first = true;
    V best(0);
    for (Mask m = 1; m <= full(); ++m) {
      if (!(m & bit(i)) || (m & bit(j))) continue;
      V slack = V(table_[m]) - sums[m];
      if (first || slack < best) best = slack;
      first = false;
    }
    return best;
  }

  // Componentwise bounds of the base polyhedron:
  // rho(N) - rho(N - i) <= x(i) <= rho({i}).
  std::pair<std::int64_t, std::int64_t> base_bounds(Index i) const {
    return {total() - table_[full() & ~bit(i)], table_[bit(i)]};
  }

 private:
  SubmodularSpec(Kind kind, std::size_t n) : kind_(kind), n_(n) {}

  static void check_dim(std::size_t n) {
    ensure(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument,
           "set function dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }

  void finish() {
    ensure(table_[0] == 0, ErrorCode::kInconsistentRank, "rho(empty set) must be 0");
  }

  Kind kind_ = Kind::kTabulated;
  std::size_t n_ = 0;
  std::vector<std::int64_t> table_;
  std::vector<std::int64_t> params_;
  std::vector<Mask> blocks_;
  std::int64_t cap_ = 0;
};

// A univariate convex function on the integer range [0, size() - 1], +inf
// elsewhere.
class ConvexTable {
 public:
  ConvexTable() = default;

  explicit ConvexTable(std::vector<Rational> values) : values_(std::move(values)) {
    ensure(!values_.empty(), ErrorCode::kNonConvexTable, "empty table");
    for (std::size_t t = 1; t + 1 < values_.size(); ++t) {
      ensure(values_[t + 1] - values_[t] >= values_[t] - values_[t - 1],
             ErrorCode::kNonConvexTable,
             "second difference negative at t=" + std::to_string(t));
    }
  }

  static ConvexTable from_ints(std::span<const std::int64_t> values) {
    std::vector<Rational> v;
    for (auto x : values) v.emplace_back(x);
    return ConvexTable(std::move(v));
  }

  std::int64_t max_arg() const { return static_cast<std::int64_t>(values_.size()) - 1; }
  const std::vector<Rational>& values() const { return values_; }

  ExtValue operator()(std::int64_t t) const {
    if (t < 0 || t > max_arg()) return ExtValue::infinity();
    return ExtValue(values_[static_cast<std::size_t>(t)]);
  }

  // f(t + 1) - f(t), +inf at the right end.
  ExtValue increment(std::int64_t t) const { return (*this)(t + 1) - (*this)(t); }

  Rational max_abs() const {
    Rational m(0);
    for (const auto& v : values_) m = std::max(m, Rational(boost::multiprecision::abs(v)));
    return m;
  }

 private:
  std::vector<Rational> values_;
};

}  // namespace mconv
