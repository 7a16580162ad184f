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

// Instance families: the four-variable example, resource allocation over a
// polymatroid, flow-induced functions, tables, and seeded random generators
// whose outputs are certified by the exhaustive exchange check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/flow.hpp"
#include "mconv/oracle.hpp"
#include "mconv/point.hpp"
#include "mconv/polyhedral.hpp"
#include "mconv/polymatroid.hpp"
#include "mconv/verify.hpp"

namespace mconv {

// dom f = { x in Z^4_+ | x(N) = 3, x(1) <= 2, x(2) <= 2, x(3) <= 1,
// x(4) <= 1 } minus (0,2,1,0); f(x) = -x(1) - x(3) except f(2,0,0,1) = -1.
inline MOracle remark_z4_instance() {
  auto f = [](const IntPoint& x) -> ExtValue {
    for (std::size_t i = 0; i < 4; ++i) {
      if (x[i] < 0) return ExtValue::infinity();
    }
    if (x.sum() != 3 || x[0] > 2 || x[1] > 2 || x[2] > 1 || x[3] > 1) return ExtValue::infinity();
    if (x == IntPoint{0, 2, 1, 0}) return ExtValue::infinity();
    if (x == IntPoint{2, 0, 0, 1}) return ExtValue(-1);
    return ExtValue(-x[0] - x[2]);
  };
  return MOracle(4, Box({0, 0, 0, 0}, {2, 2, 1, 1}), Rational(3), f, OracleClass::kM,
                 IntPoint{0, 2, 0, 1}, "remark-z4");
}

struct RapPair {
  MOracle rap1;  // sum f_i on the bases of rho
  MOracle rap2;  // sum f_i on P(rho)
};

inline RapPair rap_instance(const SubmodularSpec& rho, std::vector<ConvexTable> tables,
                            const std::string& name = "rap") {
  const std::size_t n = rho.n();
  ensure(tables.size() == n, ErrorCode::kInvalidArgument, "need one table per coordinate");
  auto shared = std::make_shared<const std::pair<SubmodularSpec, std::vector<ConvexTable>>>(
      rho, std::move(tables));
  Rational bound(0);
  IntPoint lo1(n), hi1(n), lo2(n), hi2(n);
  for (Index i = 0; i < n; ++i) {
    const auto& t = shared->second[i];
    bound += t.max_abs();
    auto [blo, bhi] = rho.base_bounds(i);
    hi2[i] = std::max<std::int64_t>(0, std::min(bhi, t.max_arg()));
    lo1[i] = std::max<std::int64_t>(0, blo);
    hi1[i] = std::max(lo1[i], std::min(bhi, t.max_arg()));
  }
  auto sep = [shared](const IntPoint& x) {
    ExtValue v(0);
    for (Index i = 0; i < x.size(); ++i) v += shared->second[i](x[i]);
    return v;
  };
  auto f1 = [shared, sep](const IntPoint& x) -> ExtValue {
    if (!shared->first.in_base(x)) return ExtValue::infinity();
    return sep(x);
  };
  auto f2 = [shared, sep](const IntPoint& x) -> ExtValue {
    if (!shared->first.in_polymatroid(x)) return ExtValue::infinity();
    return sep(x);
  };
  const Rational vb = ceil_of(bound);
  return {MOracle(n, Box(lo1, hi1), vb, f1, OracleClass::kM, {}, name + "-1"),
          MOracle(n, Box(lo2, hi2), vb, f2, OracleClass::kMNatural, IntPoint(n), name + "-2")};
}

// Boundary-to-cost function of a flow network over Z^(S u T).
inline MOracle mcf_instance(const FlowNetwork& net, const std::string& name = "mcf") {
  net.validate();
  const auto terminals = net.terminals();
  const std::size_t n = terminals.size();
  ensure(n >= 1, ErrorCode::kInvalidArgument, "network has no terminals");
  IntPoint lo(n), hi(n);
  std::int64_t bound = 0;
  for (const auto& a : net.arcs) {
    std::int64_t m = 0;
    for (auto c : a.cost) m = std::max(m, std::abs(c));
    bound += m;
    for (Index t = 0; t < n; ++t) {
      if (a.from == terminals[t]) hi[t] += a.capacity;
      if (a.to == terminals[t]) lo[t] -= a.capacity;
    }
  }
  auto shared = std::make_shared<const FlowNetwork>(net);
  auto f = [shared, terminals](const IntPoint& x) -> ExtValue {
    std::vector<std::int64_t> supply(shared->vertices, 0);
    for (Index t = 0; t < terminals.size(); ++t) supply[terminals[t]] = x[t];
    auto c = min_cost_flow(*shared, supply);
    if (!c) return ExtValue::infinity();
    return ExtValue(*c);
  };
  return MOracle(n, Box(lo, hi), Rational(bound), f, OracleClass::kM, IntPoint(n), name);
}

// Oracle answering from a finite table; +inf elsewhere.
inline MOracle tabulated_oracle(const std::vector<IntPoint>& points,
                                const std::vector<ExtValue>& values, const Box& box,
                                Rational value_bound, OracleClass klass = OracleClass::kM,
                                const std::string& name = "tabulated") {
  ensure(points.size() == values.size(), ErrorCode::kInvalidArgument,
         "need one value per point");
  auto table = std::make_shared<std::map<IntPoint, ExtValue>>();
  for (std::size_t t = 0; t < points.size(); ++t) {
    ensure(box.contains(points[t]), ErrorCode::kPointOutsideBox,
           "point " + points[t].str() + " lies outside the box");
    ensure(table->emplace(points[t], values[t]).second, ErrorCode::kDuplicatePoint,
           "point " + points[t].str() + " listed twice");
  }
  std::optional<IntPoint> hint;
  for (std::size_t t = 0; t < points.size() && !hint; ++t) {
    if (values[t].is_finite()) hint = points[t];
  }
  auto f = [table](const IntPoint& x) -> ExtValue {
    auto it = table->find(x);
    return it == table->end() ? ExtValue::infinity() : it->second;
  };
  return MOracle(box.dim(), box, std::move(value_bound), f, klass, hint, name);
}

// The same function as a table over its enumerated domain.
inline MOracle tabulate(const MOracle& f, const DomainEnumeration& dom) {
  return tabulated_oracle(dom.points(), dom.values(), f.box(), f.value_bound(), f.klass(),
                          f.name());
}

// A seeded source of integer draws. Uses plain modulo reduction so results
// do not depend on the standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    ensure(lo <= hi, ErrorCode::kInvalidArgument, "empty draw range");
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return uniform(0, 1) == 1; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

  // Convex integer table on [0, len]: sorted random increments.
  std::vector<std::int64_t> convex_ints(std::int64_t len, std::int64_t slope_lo,
                                        std::int64_t slope_hi, std::int64_t start_lo = 0,
                                        std::int64_t start_hi = 0) {
    std::vector<std::int64_t> inc(static_cast<std::size_t>(len));
    for (auto& d : inc) d = uniform(slope_lo, slope_hi);
    std::sort(inc.begin(), inc.end());
    std::vector<std::int64_t> v{uniform(start_lo, start_hi)};
    for (auto d : inc) v.push_back(v.back() + d);
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

enum class Family { kRap, kRapNatural, kMcf, kTabulated, kTabulatedNatural };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::kRap: return "rap";
    case Family::kRapNatural: return "rap-natural";
    case Family::kMcf: return "mcf";
    case Family::kTabulated: return "tabulated";
    case Family::kTabulatedNatural: return "tabulated-natural";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::kRap, Family::kRapNatural, Family::kMcf, Family::kTabulated,
                   Family::kTabulatedNatural}) {
    if (family_name(f) == s) return f;
  }
  fail(ErrorCode::kInvalidArgument, "unknown family '" + s + "'");
}

inline bool family_is_natural(Family f) {
  return f == Family::kRapNatural || f == Family::kTabulatedNatural;
}

struct RandomParams {
  std::size_t n = 3;
  // Largest box width per coordinate.
  std::int64_t width = 4;
  // Largest rho(N) for the polymatroid families.
  std::int64_t total = 8;
  std::size_t max_retries = 50;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

struct RapData {
  SubmodularSpec rho;
  std::vector<ConvexTable> tables;
};

// A random polymatroid with rho({i}) <= width and rho(N) <= total, plus
// random convex integer costs on [0, rho(N)].
inline RapData random_rap_data(Draw& draw, const RandomParams& p) {
  const std::size_t n = p.n;
  SubmodularSpec rho;
  switch (draw.uniform(0, 2)) {
    case 0: {
      const std::int64_t a = draw.uniform(1, std::max<std::int64_t>(1, std::min<std::int64_t>(3, p.width)));
      rho = SubmodularSpec::truncation(n, a, draw.uniform(1, p.total));
      break;
    }
    case 1: {
      std::vector<Index> order = all_indices(n);
      draw.shuffle(order);
      std::vector<Mask> blocks;
      std::vector<std::int64_t> caps;
      for (std::size_t s = 0; s < n;) {
        const std::size_t len = static_cast<std::size_t>(draw.uniform(1, static_cast<std::int64_t>(n - s)));
        Mask b = 0;
        for (std::size_t t = s; t < s + len; ++t) b |= bit(order[t]);
        blocks.push_back(b);
        caps.push_back(draw.uniform(1, static_cast<std::int64_t>(len)));
        s += len;
      }
      rho = SubmodularSpec::partition(n, blocks, caps);
      break;
    }
    default: {
      const std::size_t items = static_cast<std::size_t>(draw.uniform(2, 5));
      std::vector<Mask> covers(n);
      for (auto& c : covers) {
        c = static_cast<Mask>(draw.uniform(1, (std::int64_t{1} << items) - 1));
      }
      std::vector<std::int64_t> weights(items);
      for (auto& w : weights) w = draw.uniform(1, 3);
      rho = SubmodularSpec::coverage(n, covers, weights, draw.uniform(1, p.total));
      break;
    }
  }
  // Truncating a polymatroid rank at a constant keeps it a polymatroid rank.
  std::vector<std::int64_t> clipped(rho.table());
  for (auto& v : clipped) v = std::min(v, p.total);
  SubmodularSpec out = SubmodularSpec::tabulated(n, std::move(clipped));
  std::vector<ConvexTable> tables;
  for (std::size_t i = 0; i < n; ++i) {
    tables.push_back(ConvexTable::from_ints(draw.convex_ints(out.total(), -6, 6, -3, 3)));
  }
  return {std::move(out), std::move(tables)};
}

inline FlowNetwork random_network(Draw& draw, const RandomParams& p) {
  FlowNetwork net;
  const std::size_t n = std::max<std::size_t>(2, p.n);
  const std::size_t ns = static_cast<std::size_t>(draw.uniform(1, static_cast<std::int64_t>(n) - 1));
  const std::size_t inner = static_cast<std::size_t>(draw.uniform(0, 2));
  net.vertices = n + inner;
  for (std::size_t v = 0; v < ns; ++v) net.sources.push_back(v);
  for (std::size_t v = ns; v < n; ++v) net.sinks.push_back(v);
  const std::size_t arcs = static_cast<std::size_t>(draw.uniform(static_cast<std::int64_t>(n) - 1,
                                                                 static_cast<std::int64_t>(n) + 2));
  for (std::size_t a = 0; a < arcs; ++a) {
    FlowArc arc;
    arc.from = static_cast<std::size_t>(draw.uniform(0, static_cast<std::int64_t>(net.vertices) - 1));
    do {
      arc.to = static_cast<std::size_t>(draw.uniform(0, static_cast<std::int64_t>(net.vertices) - 1));
    } while (arc.to == arc.from);
    arc.capacity = draw.uniform(1, 2);
    arc.cost = draw.convex_ints(arc.capacity, -3, 4);
    net.arcs.push_back(std::move(arc));
  }
  return net;
}

// sum_i g_i(x(i)) + sum_{Y in L} g_Y(x(Y)) + <c, x> on a box, with L a random
// laminar family; M-natural, or M-convex once x(N) is pinned.
inline MOracle random_laminar(Draw& draw, const RandomParams& p, bool natural) {
  const std::size_t n = p.n;
  IntPoint lo(n), hi(n);
  for (Index i = 0; i < n; ++i) hi[i] = draw.uniform(1, p.width);
  // Laminar family from a random recursive split of a shuffled ground set.
  std::vector<std::pair<IndexSet, std::vector<std::int64_t>>> terms;
  IndexSet order = all_indices(n);
  draw.shuffle(order);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n}};
  while (!stack.empty()) {
    auto [s, e] = stack.back();
    stack.pop_back();
    IndexSet y(order.begin() + static_cast<long>(s), order.begin() + static_cast<long>(e));
    if (y.size() < n && draw.coin()) {
      std::int64_t range = 0;
      for (Index i : y) range += hi[i];
      terms.emplace_back(y, draw.convex_ints(range, -4, 4));
    }
    if (e - s >= 2) {
      const std::size_t mid = static_cast<std::size_t>(draw.uniform(static_cast<std::int64_t>(s) + 1,
                                                                    static_cast<std::int64_t>(e) - 1));
      stack.emplace_back(s, mid);
      stack.emplace_back(mid, e);
    }
  }
  std::vector<std::int64_t> linear(n);
  for (auto& c : linear) c = draw.uniform(-3, 3);
  std::int64_t bound = 0;
  for (const auto& [y, g] : terms) {
    for (auto v : g) bound = std::max(bound, std::abs(v));
  }
  bound *= static_cast<std::int64_t>(terms.size());
  for (Index i = 0; i < n; ++i) bound += std::abs(linear[i]) * hi[i];
  std::int64_t total = 0;
  if (!natural) total = draw.uniform(0, hi.sum());
  auto shared = std::make_shared<const decltype(terms)>(std::move(terms));
  auto f = [shared, linear, natural, total](const IntPoint& x) -> ExtValue {
    if (!natural && x.sum() != total) return ExtValue::infinity();
    std::int64_t v = 0;
    for (const auto& [y, g] : *shared) v += g[static_cast<std::size_t>(x.sum_over(y))];
    for (Index i = 0; i < x.size(); ++i) v += linear[i] * x[i];
    return ExtValue(v);
  };
  return MOracle(n, Box(lo, hi), Rational(bound), f,
                 natural ? OracleClass::kMNatural : OracleClass::kM, {}, "laminar");
}

struct RandomInstance {
  MOracle oracle;
  Family family = Family::kRap;
  std::uint64_t seed = 0;
  DomainEnumeration domain;
  std::size_t attempts = 0;
};

// Deterministic in (seed, family, params). Each candidate is enumerated and
// kept only if its domain is nonempty and the exchange axiom of its class
// holds; the result is returned as a table over that domain.
inline RandomInstance random_instance(std::uint64_t seed, Family family,
                                      const RandomParams& p = {}) {
  ensure(p.n >= 1 && p.n <= 8, ErrorCode::kInvalidArgument, "random instances need 1 <= n <= 8");
  Draw draw(seed);
  for (std::size_t attempt = 1; attempt <= p.max_retries; ++attempt) {
    MOracle f;
    switch (family) {
      case Family::kRap:
      case Family::kRapNatural: {
        RapData data = random_rap_data(draw, p);
        RapPair pair = rap_instance(data.rho, std::move(data.tables));
        f = family == Family::kRap ? pair.rap1 : pair.rap2;
        break;
      }
      case Family::kMcf:
        f = mcf_instance(random_network(draw, p));
        break;
      case Family::kTabulated:
      case Family::kTabulatedNatural:
        f = random_laminar(draw, p, family == Family::kTabulatedNatural);
        break;
    }
    bool narrow = true;
    for (Index i = 0; i < f.dim(); ++i) {
      narrow = narrow && f.box().upper()[i] - f.box().lower()[i] <= p.width;
    }
    if (!narrow || f.box().volume(p.enumeration_cap) > p.enumeration_cap) continue;
    DomainEnumeration dom = enumerate_domain(f, p.enumeration_cap);
    if (dom.empty()) continue;
    const bool natural = family_is_natural(family);
    const ExchangeReport rep = natural ? check_mnat_exc(dom) : check_m_exc(dom);
    if (!rep.holds) continue;
    const std::string name = family_name(family) + "-n" + std::to_string(p.n) + "-s" +
                             std::to_string(seed);
    MOracle table = tabulate(f.with_name(name), dom);
    return {std::move(table), family, seed, std::move(dom), attempt};
  }
  fail(ErrorCode::kGenerationFailed, "no certified " + family_name(family) + " instance after " +
                                         std::to_string(p.max_retries) + " attempts");
}

// Separable piecewise-linear function over the base polyhedron of a random
// polymatroid. Breakpoints lie on the half-integer grid and cover the
// coordinate bounds of the base polyhedron.
inline PlSeparableFunction random_pl_instance(std::uint64_t seed, const RandomParams& p = {}) {
  Draw draw(seed);
  RapData data = random_rap_data(draw, p);
  std::vector<PiecewiseLinear> pieces;
  for (Index i = 0; i < p.n; ++i) {
    auto [lo, hi] = data.rho.base_bounds(i);
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::max(hi, lo + 1);
    std::set<Rational> cuts{Rational(lo), Rational(hi)};
    const std::int64_t extra = draw.uniform(0, 2);
    for (std::int64_t c = 0; c < extra; ++c) cuts.insert(Rational(draw.uniform(2 * lo, 2 * hi), 2));
    std::vector<Rational> b(cuts.begin(), cuts.end());
    std::vector<Rational> slopes;
    for (std::size_t s = 0; s + 1 < b.size(); ++s) slopes.emplace_back(draw.uniform(-8, 8), 2);
    std::sort(slopes.begin(), slopes.end());
    std::vector<Rational> v{Rational(draw.uniform(-2, 2))};
    for (std::size_t s = 0; s + 1 < b.size(); ++s) v.push_back(v.back() + slopes[s] * (b[s + 1] - b[s]));
    pieces.emplace_back(std::move(b), std::move(v));
  }
  return PlSeparableFunction(std::move(data.rho), std::move(pieces));
}

}  // namespace mconv
