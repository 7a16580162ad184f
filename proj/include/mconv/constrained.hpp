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

// Minimization of an M-convex f subject to x(R) = k.
//
// All solvers start from a point of M(k_min), the optimizers of the slice
// with the smallest attainable x(R), and walk up one slice at a time along
// steepest directions (i in R, j outside R). For M-natural functions the
// index j may also be the null index 0, i.e. a pure increment of x(i).

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mconv/core.hpp"
#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/oracle.hpp"
#include "mconv/point.hpp"
#include "mconv/polymatroid.hpp"
#include "mconv/unconstrained.hpp"

namespace mconv {

struct ConstraintSpec {
  IndexSet R;
  std::int64_t k = 0;
};

struct ConstrainedResult {
  IntPoint optimizer;
  ExtValue value;
  SolveTrace trace;
  std::int64_t k_min = 0;
  // phi^R at the start of each outer iteration (LSD2-style solvers only).
  std::vector<ExtValue> phiR_history;
  // True when the last slope-raising pass was cut short by x(R) reaching k.
  bool budget_terminated = false;
};

namespace detail {

inline IndexSet checked_subset(std::size_t n, std::span<const Index> R, bool natural) {
  IndexSet out(R.begin(), R.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  ensure(!out.empty(), ErrorCode::kInvalidArgument, "R must be nonempty");
  ensure(out.back() < n, ErrorCode::kInvalidArgument, "R has an index out of range");
  ensure(natural || out.size() < n, ErrorCode::kInvalidArgument,
         "R must be a proper subset of N for M-convex functions");
  return out;
}

// (N - R), plus the null index for M-natural functions.
inline IndexSet outside_set(std::size_t n, std::span<const Index> R, bool natural) {
  IndexSet out = complement(n, R);
  if (natural) out.insert(out.begin(), Direction::kNull);
  return out;
}

}  // namespace detail

// phi^R(x): the steepest slope over i in R and j in N - R (and j = 0 when
// `natural`). +inf when no move stays in the domain, i.e. x(R) is maximal.
inline ExtValue phi_R(Evaluator& ev, std::span<const Index> R, const IntPoint& x,
                      bool natural = false) {
  const IndexSet outside = detail::outside_set(x.size(), R, natural);
  auto best = steepest_direction(ev, x, R, outside);
  return best ? best->slope : ExtValue::infinity();
}

inline ExtValue phi_R(const MOracle& f, std::span<const Index> R, const IntPoint& x) {
  Evaluator ev(f);
  return phi_R(ev, R, x, f.is_natural());
}

// The M-convex function on Z^(n+1) whose restriction to the hyperplane
// x(N) + x_0 = 0 is f; the extra coordinate x_0 is stored last.
inline MOracle lift_mnat(const MOracle& f) {
  const std::size_t n = f.dim();
  IntPoint lower(n + 1), upper(n + 1);
  std::int64_t lo_sum = 0, hi_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = f.box().lower()[i];
    upper[i] = f.box().upper()[i];
    lo_sum += lower[i];
    hi_sum += upper[i];
  }
  lower[n] = -hi_sum;
  upper[n] = -lo_sum;
  std::optional<IntPoint> hint;
  if (f.hint()) {
    std::vector<std::int64_t> h(f.hint()->begin(), f.hint()->end());
    h.push_back(-f.hint()->sum());
    hint = IntPoint(std::move(h));
  }
  auto eval = [f, n](const IntPoint& x) -> ExtValue {
    if (x.sum() != 0) return ExtValue::infinity();
    return f(IntPoint(std::vector<std::int64_t>(x.begin(), x.begin() + static_cast<long>(n))));
  };
  return MOracle(n + 1, Box(lower, upper), f.value_bound(), std::move(eval), OracleClass::kM,
                 std::move(hint), f.name() + "~");
}

inline IntPoint project_lift(const IntPoint& lifted) {
  return IntPoint(std::vector<std::int64_t>(lifted.begin(), lifted.end() - 1));
}

// A point of M(k_min) and k_min = min { x(R) | x in dom f }.
//
// Minimizes g(x) = f(x) + Gamma x(R) with Gamma = 2 B + 1, B the value bound:
// any unit decrease of x(R) then outweighs every difference of f values, so
// the minimizers of g are exactly the optimizers of the lowest slice.
inline std::pair<IntPoint, std::int64_t> initial_min_xR(const MOracle& f, std::span<const Index> R,
                                                        std::optional<IntPoint> start = {}) {
  const IndexSet subset = detail::checked_subset(f.dim(), R, f.is_natural());
  if (f.is_natural()) {
    std::optional<IntPoint> lifted_start;
    if (start) {
      std::vector<std::int64_t> h(start->begin(), start->end());
      h.push_back(-start->sum());
      lifted_start = IntPoint(std::move(h));
    }
    auto [x, k] = initial_min_xR(lift_mnat(f), subset, lifted_start);
    return {project_lift(x), k};
  }
  const IntPoint x0 = start ? *start : find_domain_point(f);
  ensure(f(x0).is_finite(), ErrorCode::kStartOutsideDomain, "start " + x0.str() + " outside dom f");
  const Rational gamma = 2 * f.value_bound() + 1;
  std::int64_t reach = 0;
  for (Index i : subset) {
    reach += std::max(std::abs(f.box().lower()[i]), std::abs(f.box().upper()[i]));
  }
  auto shifted = [f, gamma, subset](const IntPoint& x) -> ExtValue {
    ExtValue v = f(x);
    if (v.is_infinite()) return v;
    return ExtValue(v.value() + gamma * x.sum_over(subset));
  };
  MOracle g(f.dim(), f.box(), f.value_bound() + gamma * reach, std::move(shifted), OracleClass::kM,
            x0, f.name() + "+Gamma");
  const SolveResult r = m_lsd2(g, x0);
  return {r.minimizer, r.minimizer.sum_over(subset)};
}

namespace detail {

struct ConstrainedStart {
  IntPoint x;
  std::int64_t k_min;
};

inline ConstrainedStart constrained_start(const MOracle& f, const IndexSet& R,
                                          const std::optional<IntPoint>& x_init) {
  if (x_init) {
    ensure(x_init->size() == f.dim(), ErrorCode::kInvalidArgument, "x_init dimension mismatch");
    ensure(f(*x_init).is_finite(), ErrorCode::kStartOutsideDomain,
           "x_init " + x_init->str() + " outside dom f");
    return {*x_init, x_init->sum_over(R)};
  }
  auto [x, k] = initial_min_xR(f, R);
  return {x, k};
}

// ConstM-SD (unit steps) and ConstM-LSD (long steps clipped at the budget),
// plus their M-natural counterparts.
inline ConstrainedResult const_descend(const MOracle& f, const ConstraintSpec& spec,
                                       const std::optional<IntPoint>& x_init, bool long_steps,
                                       bool natural, const SolverOptions& opts) {
  const IndexSet R = checked_subset(f.dim(), spec.R, natural);
  const IndexSet outside = outside_set(f.dim(), R, natural);
  auto [x, k_min] = constrained_start(f, R, x_init);
  ensure(spec.k >= k_min, ErrorCode::kInfeasibleK,
         "k = " + std::to_string(spec.k) + " is below k_min = " + std::to_string(k_min));
  Evaluator ev(f);
  ReachStats stats;
  ConstrainedResult r;
  r.k_min = k_min;
  std::int64_t xR = x.sum_over(R);
  while (xR < spec.k) {
    ensure(r.trace.steps.size() < opts.max_iterations, ErrorCode::kIterationCapExceeded,
           "constrained descent did not stop");
    auto best = steepest_direction(ev, x, R, outside);
    ensure(best && best->slope.is_finite(), ErrorCode::kInfeasibleK,
           "x(R) cannot exceed " + std::to_string(xR) + " < k = " + std::to_string(spec.k));
    if (opts.check_invariants && !r.trace.steps.empty()) {
      // phi^R on M(h) is z(h+1) - z(h), non-decreasing in h.
      invariant(r.trace.steps.back().slope <= best->slope, "phi^R decreased at " + x.str());
    }
    std::int64_t lambda = 1;
    if (long_steps) {
      lambda = std::min(spec.k - xR, long_step(ev, x, best->direction, opts, stats));
    }
    x = x.moved(best->direction, lambda);
    xR += lambda;
    r.trace.steps.push_back({best->direction, lambda, best->slope, ev(x), 0});
  }
  r.optimizer = x;
  r.value = ev(x);
  r.trace.evals = ev.calls();
  r.trace.reach_calls = stats.calls;
  r.trace.reach_evals_max = stats.max_evals;
  return r;
}

}  // namespace detail

inline ConstrainedResult const_m_sd(const MOracle& f, const ConstraintSpec& spec,
                                    std::optional<IntPoint> x_init = {},
                                    const SolverOptions& opts = {}) {
  return detail::const_descend(f, spec, x_init, false, false, opts);
}

inline ConstrainedResult const_m_lsd(const MOracle& f, const ConstraintSpec& spec,
                                     std::optional<IntPoint> x_init = {},
                                     const SolverOptions& opts = {}) {
  return detail::const_descend(f, spec, x_init, true, false, opts);
}

// One slope-raising pass of the constrained method. Stops as soon as x(R)
// reaches k; otherwise the output has phi^R strictly above phi^R(x).
inline IntPoint const_m_inc_slope(Evaluator& ev, std::span<const Index> R, std::int64_t k,
                                  const IntPoint& x, bool natural = false,
                                  const SolverOptions& opts = {}, IncSlopeContext ctx = {},
                                  bool* budget_hit = nullptr) {
  const std::size_t n = x.size();
  const IndexSet subset = detail::checked_subset(n, R, natural);
  const IndexSet outside = detail::outside_set(n, subset, natural);
  const ExtValue phi_x = phi_R(ev, subset, x, natural);
  ReachStats local_stats;
  ReachStats& stats = ctx.stats ? *ctx.stats : local_stats;
  IntPoint y = x;
  std::int64_t yR = y.sum_over(subset);
  ensure(yR < k, ErrorCode::kInvalidArgument, "x(R) already equals k");
  std::set<std::pair<Index, Index>> applied;
  for (Index i : subset) {
    for (Index j : outside) {
      if (yR == k) break;
      const Direction d{i, j};
      const ExtValue s = slope(ev, y, d);
      if (s != phi_x || s.is_infinite()) continue;
      const std::int64_t lambda = std::min(k - yR, detail::long_step(ev, y, d, opts, stats));
      detail::invariant(lambda >= 1, "zero-length update along " + d.str());
      detail::invariant(applied.emplace(i, j).second, "direction " + d.str() + " applied twice");
      y = y.moved(d, lambda);
      yR += lambda;
      if (ctx.trace) ctx.trace->steps.push_back({d, lambda, s, ev(y), ctx.outer});
    }
  }
  if (budget_hit) *budget_hit = (yR == k);
  if (opts.check_invariants && yR < k) {
    detail::invariant(phi_R(ev, subset, y, natural) > phi_x,
                      "phi^R did not increase from " + x.str());
  }
  return y;
}

inline IntPoint const_m_inc_slope(const MOracle& f, std::span<const Index> R, std::int64_t k,
                                  const IntPoint& x, const SolverOptions& opts = {}) {
  Evaluator ev(f);
  ensure(f(x).is_finite(), ErrorCode::kStartOutsideDomain, "x " + x.str() + " outside dom f");
  return const_m_inc_slope(ev, R, k, x, f.is_natural(), opts);
}

namespace detail {

inline ConstrainedResult const_lsd2(const MOracle& f, const ConstraintSpec& spec,
                                    const std::optional<IntPoint>& x_init, bool natural,
                                    const SolverOptions& opts) {
  const IndexSet R = checked_subset(f.dim(), spec.R, natural);
  auto [x, k_min] = constrained_start(f, R, x_init);
  ensure(spec.k >= k_min, ErrorCode::kInfeasibleK,
         "k = " + std::to_string(spec.k) + " is below k_min = " + std::to_string(k_min));
  Evaluator ev(f);
  ReachStats stats;
  ConstrainedResult r;
  r.k_min = k_min;
  while (x.sum_over(R) < spec.k) {
    const ExtValue p = phi_R(ev, R, x, natural);
    ensure(p.is_finite(), ErrorCode::kInfeasibleK,
           "x(R) cannot exceed " + std::to_string(x.sum_over(R)) + " < k = " +
               std::to_string(spec.k));
    if (opts.check_invariants && !r.phiR_history.empty()) {
      invariant(r.phiR_history.back() < p, "phi^R did not strictly increase");
    }
    r.phiR_history.push_back(p);
    ensure(r.trace.outer_iterations < opts.max_iterations, ErrorCode::kIterationCapExceeded,
           "constrained LSD2 did not stop");
    ++r.trace.outer_iterations;
    x = const_m_inc_slope(ev, R, spec.k, x, natural, opts,
                          {&r.trace, &stats, r.trace.outer_iterations}, &r.budget_terminated);
  }
  r.optimizer = x;
  r.value = ev(x);
  r.trace.evals = ev.calls();
  r.trace.reach_calls = stats.calls;
  r.trace.reach_evals_max = stats.max_evals;
  return r;
}

}  // namespace detail

inline ConstrainedResult const_m_lsd2(const MOracle& f, const ConstraintSpec& spec,
                                      std::optional<IntPoint> x_init = {},
                                      const SolverOptions& opts = {}) {
  return detail::const_lsd2(f, spec, x_init, false, opts);
}

// Native M-natural versions: j ranges over (N - R) u {0}, R = N allowed.
inline ConstrainedResult const_mnat_lsd(const MOracle& f, const ConstraintSpec& spec,
                                        std::optional<IntPoint> x_init = {},
                                        const SolverOptions& opts = {}) {
  return detail::const_descend(f, spec, x_init, true, true, opts);
}

inline ConstrainedResult const_mnat_lsd2(const MOracle& f, const ConstraintSpec& spec,
                                         std::optional<IntPoint> x_init = {},
                                         const SolverOptions& opts = {}) {
  return detail::const_lsd2(f, spec, x_init, true, opts);
}

// R = N: every step is a pure increment +chi_i.
inline ConstrainedResult const_mnat_lsd3(const MOracle& f, std::int64_t k,
                                         std::optional<IntPoint> x_init = {},
                                         const SolverOptions& opts = {}) {
  return detail::const_descend(f, {all_indices(f.dim()), k}, x_init, true, true, opts);
}

// Long-step incremental greedy for
//   minimize sum_i f_i(x(i))  subject to  x in P(rho), x(N) = rho(N),
// starting from 0 and always raising the coordinate with the cheapest next
// unit, for as long as that unit price stays the same and rho allows.
inline ConstrainedResult greedy_sc(std::span<const ConvexTable> tables, const SubmodularSpec& rho) {
  const std::size_t n = rho.n();
  ensure(tables.size() == n, ErrorCode::kInvalidArgument, "need one table per coordinate");
  ensure(rho.rank(Mask{0}) == 0, ErrorCode::kInconsistentRank, "rho(empty set) != 0");
  if (n <= 10) {
    ensure(rho.is_polymatroid(), ErrorCode::kInconsistentRank,
           "rho is not monotone submodular");
  }
  ConstrainedResult r;
  std::vector<std::int64_t> x(n, 0);
  std::int64_t total = 0;
  auto value_of = [&] {
    ExtValue v(0);
    for (std::size_t i = 0; i < n; ++i) v += tables[i](x[i]);
    return v;
  };
  while (total < rho.total()) {
    std::optional<Index> pick;
    ExtValue best = ExtValue::infinity();
    std::int64_t pick_cap = 0;
    for (Index i = 0; i < n; ++i) {
      const std::int64_t cap = rho.saturation_capacity(std::span<const std::int64_t>(x), i);
      ensure(cap >= 0, ErrorCode::kInconsistentRank, "iterate left the polymatroid");
      if (cap < 1) continue;
      ExtValue inc = tables[i].increment(x[i]);
      if (!pick || inc < best) {
        pick = i;
        best = inc;
        pick_cap = cap;
      }
    }
    ensure(pick.has_value(), ErrorCode::kInconsistentRank,
           "no coordinate can grow but x(N) < rho(N)");
    ensure(best.is_finite(), ErrorCode::kInvalidArgument, "cost table too short");
    const Index i = *pick;
    std::int64_t lambda = 1;
    while (lambda < pick_cap) {
      const ExtValue next = tables[i](x[i] + lambda + 1);
      if (next.is_infinite() ||
          next.value() - tables[i](x[i]).value() != Rational(lambda + 1) * best.value()) {
        break;
      }
      ++lambda;
    }
    x[i] += lambda;
    total += lambda;
    r.trace.steps.push_back({Direction{i, Direction::kNull}, lambda, best, value_of(), 0});
  }
  r.optimizer = IntPoint(x);
  r.value = value_of();
  r.k_min = 0;
  return r;
}

}  // namespace mconv
