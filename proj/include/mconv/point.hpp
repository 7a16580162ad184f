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

#pragma once

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mconv/error.hpp"

namespace mconv {

// Coordinates are 0-based internally. Text formats (traces, CLI) use the
// 1-based numbering with 0 standing for the null index.
using Index = std::size_t;
using IndexSet = std::vector<Index>;

// +chi_inc - chi_dec. A null `dec` means the pure increment +chi_inc, which
// only makes sense for M-natural functions.
struct Direction {
  static constexpr Index kNull = std::numeric_limits<Index>::max();

  Index inc = 0;
  Index dec = kNull;

  bool has_null() const { return dec == kNull; }

  // 1-based labels with the null index shown as 0.
  std::size_t inc_label() const { return inc + 1; }
  std::size_t dec_label() const { return has_null() ? 0 : dec + 1; }

  friend bool operator==(const Direction&, const Direction&) = default;
  // Lexicographic on the 1-based labels, so the null index sorts first.
  friend bool operator<(const Direction& a, const Direction& b) {
    if (a.inc != b.inc) return a.inc < b.inc;
    return a.dec_label() < b.dec_label();
  }

  std::string str() const {
    return "(" + std::to_string(inc_label()) + "," + std::to_string(dec_label()) + ")";
  }
};

class IntPoint {
 public:
  using value_type = std::int64_t;

  IntPoint() = default;
  explicit IntPoint(std::size_t n, value_type fill = 0) : coords_(n, fill) {}
  IntPoint(std::initializer_list<value_type> coords) : coords_(coords) {}
  explicit IntPoint(std::vector<value_type> coords) : coords_(std::move(coords)) {}

  std::size_t size() const { return coords_.size(); }
  value_type& operator[](std::size_t i) { return coords_[i]; }
  value_type operator[](std::size_t i) const { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<value_type>& coords() const { return coords_; }

  // x + lambda (chi_inc - chi_dec).
  IntPoint moved(const Direction& d, value_type lambda = 1) const {
    IntPoint y = *this;
    y.coords_[d.inc] += lambda;
    if (!d.has_null()) y.coords_[d.dec] -= lambda;
    return y;
  }

  value_type sum() const {
    value_type s = 0;
    for (auto c : coords_) s += c;
    return s;
  }

  value_type sum_over(std::span<const Index> subset) const {
    value_type s = 0;
    for (auto i : subset) s += coords_[i];
    return s;
  }

  friend bool operator==(const IntPoint&, const IntPoint&) = default;
  friend auto operator<=>(const IntPoint& a, const IntPoint& b) {
    return a.coords_ <=> b.coords_;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords_[i]);
    }
    return s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const IntPoint& x) {
    return os << x.str();
  }

 private:
  std::vector<value_type> coords_;
};

struct IntPointHash {
  std::size_t operator()(const IntPoint& x) const {
    return boost::hash_range(x.begin(), x.end());
  }
};

inline std::int64_t l1_distance(const IntPoint& a, const IntPoint& b) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// Componentwise bounds that contain the effective domain.
class Box {
 public:
  Box() = default;
  Box(IntPoint lower, IntPoint upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    ensure(lower_.size() == upper_.size(), ErrorCode::kInvalidArgument,
           "box bounds differ in dimension");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
      ensure(lower_[i] <= upper_[i], ErrorCode::kInvalidArgument,
             "box lower bound exceeds upper bound");
    }
  }

  std::size_t dim() const { return lower_.size(); }
  const IntPoint& lower() const { return lower_; }
  const IntPoint& upper() const { return upper_; }

  bool contains(const IntPoint& x) const {
    if (x.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
    }
    return true;
  }

  // Lattice points in the box, saturating at `cap + 1`.
  std::uint64_t volume(std::uint64_t cap) const {
    unsigned __int128 v = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
      v *= static_cast<unsigned __int128>(upper_[i] - lower_[i] + 1);
      if (v > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(v);
  }

  // Largest lambda keeping x + lambda d inside the box.
  std::int64_t width_along(const IntPoint& x, const Direction& d) const {
    std::int64_t w = upper_[d.inc] - x[d.inc];
    if (!d.has_null()) w = std::min(w, x[d.dec] - lower_[d.dec]);
    return std::max<std::int64_t>(w, 0);
  }

  // Box-derived stand-in for the domain diameter L_inf.
  std::int64_t linf() const {
    std::int64_t w = 0;
    for (std::size_t i = 0; i < dim(); ++i) w = std::max(w, upper_[i] - lower_[i]);
    return w;
  }

 private:
  IntPoint lower_;
  IntPoint upper_;
};

inline IndexSet all_indices(std::size_t n) {
  IndexSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

inline IndexSet complement(std::size_t n, std::span<const Index> subset) {
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(subset.begin(), subset.end(), i) == subset.end()) out.push_back(i);
  }
  return out;
}

}  // namespace mconv
