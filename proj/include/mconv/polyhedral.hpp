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

// Steepest descent for polyhedral M-convex functions on R^n, in exact
// rational arithmetic. The oracle reports directional derivatives and the
// length of the linear piece along a direction itself; nothing here probes
// with small steps.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mconv/core.hpp"
#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/oracle.hpp"
#include "mconv/point.hpp"
#include "mconv/polymatroid.hpp"
#include "mconv/rational.hpp"
#include "mconv/unconstrained.hpp"

namespace mconv {

class RatPoint {
 public:
  RatPoint() = default;
  explicit RatPoint(std::size_t n) : coords_(n, Rational(0)) {}
  explicit RatPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  explicit RatPoint(const IntPoint& x) {
    for (auto c : x) coords_.emplace_back(c);
  }
  RatPoint(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t size() const { return coords_.size(); }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<Rational>& coords() const { return coords_; }

  RatPoint moved(const Direction& d, const Rational& alpha) const {
    RatPoint y = *this;
    y.coords_[d.inc] += alpha;
    if (!d.has_null()) y.coords_[d.dec] -= alpha;
    return y;
  }

  Rational sum() const {
    Rational s(0);
    for (const auto& c : coords_) s += c;
    return s;
  }

  friend bool operator==(const RatPoint&, const RatPoint&) = default;
  friend bool operator<(const RatPoint& a, const RatPoint& b) { return a.coords_ < b.coords_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += to_string(coords_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<Rational> coords_;
};

inline Rational l1_distance(const RatPoint& a, const RatPoint& b) {
  Rational d(0);
  for (std::size_t i = 0; i < a.size(); ++i) d += boost::multiprecision::abs(a[i] - b[i]);
  return d;
}

struct RatBox {
  RatPoint lower;
  RatPoint upper;

  bool contains(const RatPoint& x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower[i] || x[i] > upper[i]) return false;
    }
    return true;
  }
};

// Exact oracle for a polyhedral convex function. `dderiv(x, d)` is the
// one-sided derivative along d, +inf when x + alpha d leaves the domain for
// every alpha > 0; `reach(x, d)` is the largest alpha over which f stays
// linear along d (only queried where dderiv is finite).
class PolyOracle {
 public:
  using Eval = std::function<ExtValue(const RatPoint&)>;
  using Deriv = std::function<ExtValue(const RatPoint&, const Direction&)>;
  using Reach = std::function<Rational(const RatPoint&, const Direction&)>;

  PolyOracle() = default;
  PolyOracle(std::size_t dim, RatBox box, Eval eval, Deriv dderiv, Reach reach,
             std::string name = {})
      : dim_(dim),
        box_(std::move(box)),
        eval_(std::move(eval)),
        dderiv_(std::move(dderiv)),
        reach_(std::move(reach)),
        name_(std::move(name)) {
    ensure(box_.lower.size() == dim_ && box_.upper.size() == dim_, ErrorCode::kInvalidArgument,
           "box dimension mismatch");
  }

  std::size_t dim() const { return dim_; }
  const RatBox& box() const { return box_; }
  const std::string& name() const { return name_; }

  ExtValue eval(const RatPoint& x) const {
    ensure(x.size() == dim_, ErrorCode::kInvalidArgument, "point " + x.str() + " has wrong dimension");
    if (!box_.contains(x)) return ExtValue::infinity();
    return eval_(x);
  }

  ExtValue dderiv(const RatPoint& x, const Direction& d) const {
    ensure(eval(x).is_finite(), ErrorCode::kEvalOutsideDomain, "f" + x.str() + " = +inf");
    return dderiv_(x, d);
  }

  Rational reach(const RatPoint& x, const Direction& d) const {
    ensure(dderiv(x, d).is_finite(), ErrorCode::kInfiniteSlope,
           "derivative along " + d.str() + " at " + x.str() + " is +inf");
    Rational r = reach_(x, d);
    ensure(r > 0, ErrorCode::kInvariantViolation, "non-positive reach along " + d.str());
    return r;
  }

 private:
  std::size_t dim_ = 0;
  RatBox box_;
  Eval eval_;
  Deriv dderiv_;
  Reach reach_;
  std::string name_;
};

using PolyTraceStep = BasicTraceStep<Rational>;
using PolySolveTrace = BasicSolveTrace<Rational>;

struct PolySolveResult {
  RatPoint minimizer;
  ExtValue value;
  PolySolveTrace trace;
  std::vector<ExtValue> phi_history;
};

struct PolySolverOptions {
  bool check_invariants = true;
  std::size_t max_iterations = 100'000;
};

// Steepest (i, j) over i != j with lexicographic tie-breaking.
inline std::optional<SteepestMove> poly_steepest(const PolyOracle& f, const RatPoint& x) {
  std::optional<SteepestMove> best;
  for (Index i = 0; i < f.dim(); ++i) {
    for (Index j = 0; j < f.dim(); ++j) {
      if (i == j) continue;
      ExtValue s = f.dderiv(x, {i, j});
      if (!best || s < best->slope) best = SteepestMove{{i, j}, std::move(s)};
    }
  }
  return best;
}

inline ExtValue phi_r(const PolyOracle& f, const RatPoint& x) {
  ensure(f.eval(x).is_finite(), ErrorCode::kEvalOutsideDomain, "f" + x.str() + " = +inf");
  auto best = poly_steepest(f, x);
  if (!best) return ExtValue(0);
  return min(best->slope, ExtValue(0));
}

namespace detail {

inline void poly_start(const PolyOracle& f, const RatPoint& x0) {
  ensure(x0.size() == f.dim(), ErrorCode::kInvalidArgument, "x0 dimension mismatch");
  ensure(f.eval(x0).is_finite(), ErrorCode::kStartOutsideDomain,
         "x0 " + x0.str() + " is outside dom f");
}

}  // namespace detail

// PM-LSD. Termination is not guaranteed in general, so the run is capped and
// a breach is reported as kIterationCapExceeded.
inline PolySolveResult pm_lsd(const PolyOracle& f, const RatPoint& x0,
                              const PolySolverOptions& opts = {}) {
  detail::poly_start(f, x0);
  PolySolveResult r;
  RatPoint x = x0;
  while (true) {
    auto best = poly_steepest(f, x);
    if (!best || best->slope >= ExtValue(0)) break;
    ensure(r.trace.steps.size() < opts.max_iterations, ErrorCode::kIterationCapExceeded,
           "pm_lsd exceeded " + std::to_string(opts.max_iterations) + " iterations");
    const Direction d = best->direction;
    const ExtValue p = best->slope;
    if (opts.check_invariants && !r.trace.steps.empty()) {
      detail::invariant(r.trace.steps.back().slope <= p, "phi_R decreased at " + x.str());
    }
    const Rational lambda = f.reach(x, d);
    x = x.moved(d, lambda);
    r.trace.steps.push_back({d, lambda, p, f.eval(x), 0});
    if (opts.check_invariants) {
      // Every direction at the new point is at least as steep as p, and one
      // that ties never undoes the move just made.
      for (Index h = 0; h < f.dim(); ++h) {
        for (Index k = 0; k < f.dim(); ++k) {
          if (h == k) continue;
          const ExtValue s = f.dderiv(x, {h, k});
          detail::invariant(s >= p, "slope below phi_R after step along " + d.str());
          if (s == p) {
            detail::invariant(k != d.inc && h != d.dec,
                              "tied direction (" + std::to_string(h + 1) + "," +
                                  std::to_string(k + 1) + ") after " + d.str());
          }
        }
      }
    }
  }
  r.minimizer = x;
  r.value = f.eval(x);
  return r;
}

// One slope-raising pass over R^n; same sweep order as m_inc_slope.
inline RatPoint pm_inc_slope(const PolyOracle& f, const RatPoint& x, PolySolveTrace* trace = nullptr,
                             std::size_t outer = 0, const PolySolverOptions& opts = {}) {
  detail::poly_start(f, x);
  const ExtValue phi_x = phi_r(f, x);
  ensure(phi_x < ExtValue(0), ErrorCode::kNotDescending, "phi_R" + x.str() + " = 0");
  std::set<std::pair<Index, Index>> applied;
  RatPoint y = x;
  for (Index i = 0; i < f.dim(); ++i) {
    for (Index j = 0; j < f.dim(); ++j) {
      if (i == j) continue;
      const Direction d{i, j};
      const ExtValue s = f.dderiv(y, d);
      if (s != phi_x) continue;
      detail::invariant(applied.emplace(i, j).second, "direction " + d.str() + " applied twice");
      const Rational lambda = f.reach(y, d);
      y = y.moved(d, lambda);
      if (trace) trace->steps.push_back({d, lambda, s, f.eval(y), outer});
    }
  }
  if (opts.check_invariants) {
    detail::invariant(phi_r(f, y) > phi_x, "phi_R did not increase from " + x.str());
  }
  return y;
}

// PM-LSD2. Always finite; `opts.max_iterations` bounds outer iterations and a
// breach means something is wrong with the oracle.
inline PolySolveResult pm_lsd2(const PolyOracle& f, const RatPoint& x0,
                               const PolySolverOptions& opts = {}) {
  detail::poly_start(f, x0);
  PolySolveResult r;
  RatPoint x = x0;
  while (true) {
    const ExtValue p = phi_r(f, x);
    if (opts.check_invariants && !r.phi_history.empty()) {
      detail::invariant(r.phi_history.back() < p, "phi_R did not strictly increase");
    }
    r.phi_history.push_back(p);
    if (p == ExtValue(0)) break;
    ensure(r.trace.outer_iterations < opts.max_iterations, ErrorCode::kIterationCapExceeded,
           "pm_lsd2 exceeded " + std::to_string(opts.max_iterations) + " outer iterations");
    ++r.trace.outer_iterations;
    x = pm_inc_slope(f, x, &r.trace, r.trace.outer_iterations, opts);
  }
  r.minimizer = x;
  r.value = f.eval(x);
  return r;
}

// Convex piecewise-linear function of one real variable, given by
// breakpoints b_0 < ... < b_m and values there; +inf outside [b_0, b_m].
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Rational> values)
      : b_(std::move(breakpoints)), v_(std::move(values)) {
    ensure(!b_.empty() && b_.size() == v_.size(), ErrorCode::kMalformedBreakpoints,
           "need as many values as breakpoints, at least one");
    for (std::size_t s = 0; s + 1 < b_.size(); ++s) {
      ensure(b_[s] < b_[s + 1], ErrorCode::kMalformedBreakpoints,
             "breakpoints must be strictly increasing");
      slopes_.push_back((v_[s + 1] - v_[s]) / (b_[s + 1] - b_[s]));
      if (s > 0) {
        ensure(slopes_[s - 1] <= slopes_[s], ErrorCode::kMalformedBreakpoints,
               "slopes must be non-decreasing");
      }
    }
  }

  const std::vector<Rational>& breakpoints() const { return b_; }
  const std::vector<Rational>& values() const { return v_; }
  const std::vector<Rational>& slopes() const { return slopes_; }
  const Rational& lo() const { return b_.front(); }
  const Rational& hi() const { return b_.back(); }

  ExtValue operator()(const Rational& t) const {
    if (t < lo() || t > hi()) return ExtValue::infinity();
    const std::size_t s = segment_at(t);
    if (s == slopes_.size()) return ExtValue(v_.back());
    return ExtValue(v_[s] + slopes_[s] * (t - b_[s]));
  }

  // Slope of the piece just right of t; nullopt at or beyond hi().
  std::optional<Rational> right_slope(const Rational& t) const {
    if (t >= hi()) return std::nullopt;
    return slopes_[segment_at(t)];
  }

  // Slope of the piece just left of t; nullopt at or before lo().
  std::optional<Rational> left_slope(const Rational& t) const {
    if (t <= lo()) return std::nullopt;
    auto it = std::lower_bound(b_.begin(), b_.end(), t);
    return slopes_[static_cast<std::size_t>(it - b_.begin()) - 1];
  }

  // Distance from t to the next breakpoint above / below.
  Rational room_up(const Rational& t) const {
    return *std::upper_bound(b_.begin(), b_.end(), t) - t;
  }
  Rational room_down(const Rational& t) const {
    auto it = std::lower_bound(b_.begin(), b_.end(), t);
    return t - *(it - 1);
  }

 private:
  // Index s with b_s <= t < b_{s+1}; slopes_.size() when t == hi().
  std::size_t segment_at(const Rational& t) const {
    auto it = std::upper_bound(b_.begin(), b_.end(), t);
    return static_cast<std::size_t>(it - b_.begin()) - 1;
  }

  std::vector<Rational> b_;
  std::vector<Rational> v_;
  std::vector<Rational> slopes_;
};

// sum_i f_i(x(i)) restricted to the real base polyhedron
// B(rho) = { x | x(Y) <= rho(Y) for all Y, x(N) = rho(N) }.
class PlSeparableFunction {
 public:
  PlSeparableFunction(SubmodularSpec rho, std::vector<PiecewiseLinear> pieces)
      : rho_(std::move(rho)), f_(std::move(pieces)) {
    ensure(f_.size() == rho_.n(), ErrorCode::kInvalidArgument, "need one function per coordinate");
  }

  std::size_t dim() const { return f_.size(); }
  const SubmodularSpec& rho() const { return rho_; }
  const std::vector<PiecewiseLinear>& pieces() const { return f_; }

  // Intersection of the pieces' domains with the base polyhedron's bounds.
  RatBox box() const {
    RatBox b{RatPoint(dim()), RatPoint(dim())};
    for (Index i = 0; i < dim(); ++i) {
      auto [lo, hi] = rho_.base_bounds(i);
      b.lower[i] = std::max(f_[i].lo(), Rational(lo));
      b.upper[i] = std::min(f_[i].hi(), Rational(hi));
    }
    return b;
  }

  ExtValue eval(const RatPoint& x) const {
    if (!rho_.in_base(std::span<const Rational>(x.coords()))) return ExtValue::infinity();
    ExtValue v(0);
    for (Index i = 0; i < dim(); ++i) v += f_[i](x[i]);
    return v;
  }

  Rational exchange_capacity(const RatPoint& x, const Direction& d) const {
    return rho_.exchange_capacity(std::span<const Rational>(x.coords()), d.inc, d.dec);
  }

  ExtValue dderiv(const RatPoint& x, const Direction& d) const {
    auto up = f_[d.inc].right_slope(x[d.inc]);
    auto down = f_[d.dec].left_slope(x[d.dec]);
    if (!up || !down || exchange_capacity(x, d) <= 0) return ExtValue::infinity();
    return ExtValue(*up - *down);
  }

  Rational reach(const RatPoint& x, const Direction& d) const {
    return std::min({exchange_capacity(x, d), f_[d.inc].room_up(x[d.inc]),
                     f_[d.dec].room_down(x[d.dec])});
  }

  PolyOracle oracle(std::string name = "pl-separable") const {
    auto self = std::make_shared<const PlSeparableFunction>(*this);
    return PolyOracle(
        dim(), box(), [self](const RatPoint& x) { return self->eval(x); },
        [self](const RatPoint& x, const Direction& d) { return self->dderiv(x, d); },
        [self](const RatPoint& x, const Direction& d) { return self->reach(x, d); },
        std::move(name));
  }

  // Every negative value s - t with s a piece slope of some f_i and t a piece
  // slope of another f_j. Directional derivatives, and so phi_R, can only
  // take these values below zero.
  std::set<Rational> negative_slope_census() const {
    std::set<Rational> out;
    for (Index i = 0; i < dim(); ++i) {
      for (Index j = 0; j < dim(); ++j) {
        if (i == j) continue;
        for (const auto& s : f_[i].slopes()) {
          for (const auto& t : f_[j].slopes()) {
            if (s - t < 0) out.insert(s - t);
          }
        }
      }
    }
    return out;
  }

  // Least common denominator of all breakpoints.
  BigInt grid_denominator() const {
    BigInt d = 1;
    for (const auto& fi : f_) {
      for (const auto& b : fi.breakpoints()) d = boost::multiprecision::lcm(d, denominator(b));
    }
    return d;
  }

  // Restriction to Z^n. Requires integer breakpoints to be M-convex.
  MOracle to_lattice_oracle(std::string name = "pl-separable|Z") const {
    const RatBox b = box();
    IntPoint lo(dim()), hi(dim());
    Rational bound(0);
    for (Index i = 0; i < dim(); ++i) {
      lo[i] = to_int64(ceil_of(b.lower[i]));
      hi[i] = to_int64(floor_of(b.upper[i]));
      Rational m(0);
      for (const auto& v : f_[i].values()) m = std::max(m, Rational(boost::multiprecision::abs(v)));
      bound += m;
    }
    auto self = std::make_shared<const PlSeparableFunction>(*this);
    return MOracle(
        dim(), Box(lo, hi), ceil_of(bound),
        [self](const IntPoint& x) { return self->eval(RatPoint(x)); }, OracleClass::kM, {},
        std::move(name));
  }

 private:
  SubmodularSpec rho_;
  std::vector<PiecewiseLinear> f_;
};

// Every point of dom f on the grid (1/D) Z^n, D the breakpoint denominator.
// The optimum of a separable piecewise-linear function over an integral base
// polyhedron is attained at such a point.
inline std::vector<RatPoint> grid_domain(const PlSeparableFunction& g,
                                         std::uint64_t cap = 1'000'000) {
  const std::size_t n = g.dim();
  const RatBox box = g.box();
  const Rational step(BigInt(1), g.grid_denominator());
  std::vector<std::int64_t> ticks(n);
  unsigned __int128 volume = 1;
  for (Index i = 0; i < n; ++i) {
    if (box.lower[i] > box.upper[i]) return {};
    ticks[i] = to_int64(floor_of((box.upper[i] - box.lower[i]) / step));
    if (i + 1 < n) volume *= static_cast<unsigned __int128>(ticks[i] + 1);
    ensure(volume <= cap, ErrorCode::kEnumerationTooLarge, "grid has more than " +
                                                               std::to_string(cap) + " points");
  }
  std::vector<RatPoint> out;
  std::vector<std::int64_t> t(n, 0);
  const Rational total(g.rho().total());
  while (true) {
    RatPoint x(n);
    Rational partial(0);
    for (Index i = 0; i + 1 < n; ++i) {
      x[i] = box.lower[i] + step * t[i];
      partial += x[i];
    }
    x[n - 1] = total - partial;
    if (g.eval(x).is_finite()) out.push_back(std::move(x));
    std::size_t i = n - 1;
    while (i > 0) {
      --i;
      if (t[i] < ticks[i]) {
        ++t[i];
        break;
      }
      t[i] = 0;
      if (i == 0) return out;
    }
    if (n == 1) return out;
  }
}

struct PolyMinimum {
  ExtValue value = ExtValue::infinity();
  std::vector<RatPoint> argmin;
};

inline PolyMinimum grid_min(const PlSeparableFunction& g, std::uint64_t cap = 1'000'000) {
  PolyMinimum out;
  for (auto& x : grid_domain(g, cap)) {
    const ExtValue v = g.eval(x);
    if (v < out.value) {
      out.value = v;
      out.argmin.clear();
    }
    if (v == out.value) out.argmin.push_back(std::move(x));
  }
  return out;
}

}  // namespace mconv
