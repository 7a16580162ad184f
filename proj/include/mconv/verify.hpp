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

// Brute-force referees. Everything here enumerates the oracle's box and is
// independent of the solvers: no slopes, no step lengths, no descent.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/oracle.hpp"
#include "mconv/point.hpp"

namespace mconv {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// All finite points of the box together with their values.
class DomainEnumeration {
 public:
  DomainEnumeration() = default;

  void add(IntPoint x, ExtValue v) {
    index_.emplace(x, points_.size());
    points_.push_back(std::move(x));
    values_.push_back(std::move(v));
  }

  const std::vector<IntPoint>& points() const { return points_; }
  const std::vector<ExtValue>& values() const { return values_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const ExtValue& value_at(const IntPoint& x) const {
    static const ExtValue kInf = ExtValue::infinity();
    auto it = index_.find(x);
    return it == index_.end() ? kInf : values_[it->second];
  }

  bool contains(const IntPoint& x) const { return index_.count(x) != 0; }

 private:
  std::vector<IntPoint> points_;
  std::vector<ExtValue> values_;
  std::unordered_map<IntPoint, std::size_t, IntPointHash> index_;
};

// Visits every lattice point of the box exactly once, in lexicographic order.
inline DomainEnumeration enumerate_domain(const MOracle& f,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
  const Box& box = f.box();
  const std::uint64_t volume = box.volume(cap);
  ensure(volume <= cap, ErrorCode::kEnumerationTooLarge,
         "box of '" + f.name() + "' has more than " + std::to_string(cap) + " points");
  DomainEnumeration dom;
  const std::size_t n = f.dim();
  IntPoint x = box.lower();
  for (std::uint64_t visited = 0; visited < volume; ++visited) {
    ExtValue v = f(x);
    if (v.is_finite()) dom.add(x, std::move(v));
    for (std::size_t i = n; i-- > 0;) {
      if (x[i] < box.upper()[i]) {
        ++x[i];
        break;
      }
      x[i] = box.lower()[i];
    }
  }
  return dom;
}

struct ExchangeWitness {
  IntPoint x;
  IntPoint y;
  Index i = 0;
  // Every candidate j that failed; Direction::kNull marks the null index.
  std::vector<Index> failed_j;

  std::string str() const {
    std::string s = "x=" + x.str() + " y=" + y.str() + " i=" + std::to_string(i + 1) + " failed j={";
    for (std::size_t t = 0; t < failed_j.size(); ++t) {
      if (t) s += ",";
      s += failed_j[t] == Direction::kNull ? "0" : std::to_string(failed_j[t] + 1);
    }
    return s + "}";
  }
};

struct ExchangeReport {
  bool holds = true;
  std::optional<ExchangeWitness> witness;
};

namespace detail {

// Shared body of the two exchange checks. `with_null` adds j = 0 (chi_0 = 0)
// to the candidate set, which is the M-natural axiom.
inline ExchangeReport check_exchange(const DomainEnumeration& dom, bool with_null) {
  const auto& pts = dom.points();
  const auto& vals = dom.values();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    const IntPoint& x = pts[a];
    const std::size_t n = x.size();
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (a == b) continue;
      const IntPoint& y = pts[b];
      IndexSet pos, neg;
      for (Index k = 0; k < n; ++k) {
        if (x[k] > y[k]) pos.push_back(k);
        if (x[k] < y[k]) neg.push_back(k);
      }
      if (pos.empty()) continue;
      const ExtValue lhs = vals[a] + vals[b];
      for (Index i : pos) {
        IndexSet candidates = neg;
        if (with_null) candidates.insert(candidates.begin(), Direction::kNull);
        bool found = false;
        for (Index j : candidates) {
          // x - chi_i + chi_j and y + chi_i - chi_j.
          IntPoint xs = x, ys = y;
          --xs[i];
          ++ys[i];
          if (j != Direction::kNull) {
            ++xs[j];
            --ys[j];
          }
          if (lhs >= dom.value_at(xs) + dom.value_at(ys)) {
            found = true;
            break;
          }
        }
        if (!found) {
          return {false, ExchangeWitness{x, y, i, std::move(candidates)}};
        }
      }
    }
  }
  return {};
}

}  // namespace detail

// (M-EXC): for all x, y in dom f and i in supp+(x - y) some j in supp-(x - y)
// has f(x) + f(y) >= f(x - chi_i + chi_j) + f(y + chi_i - chi_j).
inline ExchangeReport check_m_exc(const DomainEnumeration& dom) {
  return detail::check_exchange(dom, false);
}

inline ExchangeReport check_m_exc(const MOracle& f, std::uint64_t cap = kDefaultEnumerationCap) {
  return check_m_exc(enumerate_domain(f, cap));
}

// (M-natural-EXC): as above with j = 0 (no decrement) also allowed.
inline ExchangeReport check_mnat_exc(const DomainEnumeration& dom) {
  return detail::check_exchange(dom, true);
}

inline ExchangeReport check_mnat_exc(const MOracle& f,
                                     std::uint64_t cap = kDefaultEnumerationCap) {
  return check_mnat_exc(enumerate_domain(f, cap));
}

// Exchange check of the 0/+inf indicator of the domain: for an M-convex
// function the domain itself must be an integral base polyhedron.
inline ExchangeReport check_domain_exchange(const DomainEnumeration& dom, bool natural = false) {
  DomainEnumeration indicator;
  for (const auto& x : dom.points()) indicator.add(x, ExtValue(0));
  return detail::check_exchange(indicator, natural);
}

// x(N) takes one value over the domain.
inline bool has_constant_sum(const DomainEnumeration& dom) {
  for (const auto& x : dom.points()) {
    if (x.sum() != dom.points().front().sum()) return false;
  }
  return true;
}

struct MinimumReport {
  ExtValue value = ExtValue::infinity();
  std::vector<IntPoint> argmin;
};

inline MinimumReport brute_min(const DomainEnumeration& dom) {
  ensure(!dom.empty(), ErrorCode::kEmptyDomain, "domain is empty");
  MinimumReport out;
  for (std::size_t t = 0; t < dom.size(); ++t) {
    const auto& v = dom.values()[t];
    if (v < out.value) {
      out.value = v;
      out.argmin.clear();
    }
    if (v == out.value) out.argmin.push_back(dom.points()[t]);
  }
  return out;
}

inline MinimumReport brute_min(const MOracle& f, std::uint64_t cap = kDefaultEnumerationCap) {
  return brute_min(enumerate_domain(f, cap));
}

// tau(x0): l1 distance from x0 to the nearest global minimizer.
inline std::int64_t tau(const MinimumReport& minimum, const IntPoint& x0) {
  ensure(!minimum.argmin.empty(), ErrorCode::kEmptyDomain, "no minimizers");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& y : minimum.argmin) best = std::min(best, l1_distance(x0, y));
  return best;
}

inline std::int64_t tau(const MOracle& f, const IntPoint& x0,
                        std::uint64_t cap = kDefaultEnumerationCap) {
  ensure(f(x0).is_finite(), ErrorCode::kStartOutsideDomain, "x0 " + x0.str() + " outside dom f");
  return tau(brute_min(f, cap), x0);
}

// z(k) and M(k) for every attained k = x(R), keyed by k.
using SliceProfile = std::map<std::int64_t, MinimumReport>;

inline SliceProfile slice_profile(const DomainEnumeration& dom, std::span<const Index> R) {
  SliceProfile profile;
  for (std::size_t t = 0; t < dom.size(); ++t) {
    const auto& x = dom.points()[t];
    auto& slot = profile[x.sum_over(R)];
    const auto& v = dom.values()[t];
    if (v < slot.value) {
      slot.value = v;
      slot.argmin.clear();
    }
    if (v == slot.value) slot.argmin.push_back(x);
  }
  return profile;
}

// z(k) = min { f(x) | x(R) = k }; +inf with no points when infeasible.
inline MinimumReport brute_constrained(const DomainEnumeration& dom, std::span<const Index> R,
                                       std::int64_t k) {
  MinimumReport out;
  for (std::size_t t = 0; t < dom.size(); ++t) {
    const auto& x = dom.points()[t];
    if (x.sum_over(R) != k) continue;
    const auto& v = dom.values()[t];
    if (v < out.value) {
      out.value = v;
      out.argmin.clear();
    }
    if (v == out.value) out.argmin.push_back(x);
  }
  return out;
}

inline MinimumReport brute_constrained(const MOracle& f, std::span<const Index> R, std::int64_t k,
                                       std::uint64_t cap = kDefaultEnumerationCap) {
  return brute_constrained(enumerate_domain(f, cap), R, k);
}

// z(k) - z(k-1) <= z(k+1) - z(k) for every interior k of the attained range.
inline bool check_z_convexity(const SliceProfile& profile) {
  if (profile.size() <= 2) return true;
  std::vector<std::pair<std::int64_t, ExtValue>> z;
  for (const auto& [k, slot] : profile) z.emplace_back(k, slot.value);
  for (std::size_t t = 1; t < z.size(); ++t) {
    // The attained k-range of a base polyhedron has no gaps.
    if (z[t].first != z[t - 1].first + 1) return false;
  }
  for (std::size_t t = 1; t + 1 < z.size(); ++t) {
    if (z[t].second - z[t - 1].second > z[t + 1].second - z[t].second) return false;
  }
  return true;
}

inline bool check_z_convexity(const MOracle& f, std::span<const Index> R,
                              std::uint64_t cap = kDefaultEnumerationCap) {
  return check_z_convexity(slice_profile(enumerate_domain(f, cap), R));
}

}  // namespace mconv
