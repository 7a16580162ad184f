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

// Steepest descent for M-convex functions on Z^n with unit steps (m_sd,
// m_sd_prime) and long steps (m_lsd, m_lsd2).
//
// Ties between equally steep directions are always broken towards the
// lexicographically smallest (i, j), and "take any i" in the slope-raising
// procedure is ascending index order, so runs are reproducible.

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "mconv/core.hpp"
#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/oracle.hpp"
#include "mconv/point.hpp"

namespace mconv {

struct SolverOptions {
  // Online checks of the monotonicity and strict-increase properties; a
  // violation throws kInvariantViolation.
  bool check_invariants = true;
  // Re-derive every long step by direct evaluation (test builds only: it
  // costs one oracle call per unit of step length).
  bool verify_reach = false;
  std::size_t max_iterations = 10'000'000;
};

struct SolveResult {
  IntPoint minimizer;
  ExtValue value;
  SolveTrace trace;
  // phi at the start of each outer iteration plus the final 0 (LSD2 only).
  std::vector<ExtValue> phi_history;
};

namespace detail {

inline void start_in_domain(Evaluator& ev, const IntPoint& x0) {
  check_dim(ev, x0);
  ensure(ev(x0).is_finite(), ErrorCode::kStartOutsideDomain,
         "x0 " + x0.str() + " is outside dom f");
}

inline void invariant(bool ok, const std::string& what) {
  ensure(ok, ErrorCode::kInvariantViolation, what);
}

// Tracks the sign with which each coordinate has moved so far.
class CoordinateMonotonicity {
 public:
  explicit CoordinateMonotonicity(std::size_t n) : sign_(n, 0) {}

  bool record(const Direction& d) {
    bool ok = mark(d.inc, +1);
    if (!d.has_null()) ok = mark(d.dec, -1) && ok;
    return ok;
  }

 private:
  bool mark(Index k, int s) {
    if (sign_[k] == -s) return false;
    sign_[k] = s;
    return true;
  }
  std::vector<int> sign_;
};

inline std::int64_t long_step(Evaluator& ev, const IntPoint& x, const Direction& d,
                              const SolverOptions& opts, ReachStats& stats) {
  const std::int64_t c = step_reach(ev, x, d, &stats);
  if (opts.verify_reach) {
    invariant(reach_is_exact(ev, x, d, c), "step_reach at " + x.str() + " along " + d.str());
  }
  return c;
}

inline void finish(SolveResult& r, Evaluator& ev, const ReachStats& stats) {
  r.value = ev(r.minimizer);
  r.trace.evals = ev.calls();
  r.trace.reach_calls = stats.calls;
  r.trace.reach_evals_max = stats.max_evals;
}

// Shared body of m_sd and m_lsd.
inline SolveResult descend(const MOracle& f, const IntPoint& x0, bool long_steps,
                           const SolverOptions& opts) {
  Evaluator ev(f);
  start_in_domain(ev, x0);
  ReachStats stats;
  CoordinateMonotonicity monotone(f.dim());
  SolveResult r;
  IntPoint x = x0;
  for (std::size_t iter = 0;; ++iter) {
    ensure(iter < opts.max_iterations, ErrorCode::kIterationCapExceeded, "descent did not stop");
    auto best = steepest_direction(ev, x);
    if (!best || best->slope >= ExtValue(0)) break;
    if (opts.check_invariants) {
      invariant(r.trace.steps.empty() || r.trace.steps.back().slope <= best->slope,
                "steepest slope decreased at " + x.str());
      invariant(monotone.record(best->direction), "coordinate moved both ways at " + x.str());
    }
    const std::int64_t length =
        long_steps ? long_step(ev, x, best->direction, opts, stats) : 1;
    x = x.moved(best->direction, length);
    r.trace.steps.push_back({best->direction, length, best->slope, ev(x), 0});
  }
  r.minimizer = x;
  finish(r, ev, stats);
  return r;
}

}  // namespace detail

// Unit-step steepest descent. Makes exactly tau(x0)/2 moves.
inline SolveResult m_sd(const MOracle& f, const IntPoint& x0, const SolverOptions& opts = {}) {
  return detail::descend(f, x0, false, opts);
}

// Long-step steepest descent: each chosen direction is followed for
// step_reach() units.
inline SolveResult m_lsd(const MOracle& f, const IntPoint& x0, const SolverOptions& opts = {}) {
  return detail::descend(f, x0, true, opts);
}

// Unit-step descent that never reverses a coordinate: once j has been
// decreased it may no longer be increased, and vice versa.
inline SolveResult m_sd_prime(const MOracle& f, const IntPoint& x0,
                              const SolverOptions& opts = {}) {
  Evaluator ev(f);
  detail::start_in_domain(ev, x0);
  SolveResult r;
  IndexSet plus = all_indices(f.dim());
  IndexSet minus = all_indices(f.dim());
  IntPoint x = x0;
  for (std::size_t iter = 0;; ++iter) {
    ensure(iter < opts.max_iterations, ErrorCode::kIterationCapExceeded, "descent did not stop");
    auto best = steepest_direction(ev, x, plus, minus);
    if (!best || best->slope >= ExtValue(0)) break;
    const Direction d = best->direction;
    x = x.moved(d);
    r.trace.steps.push_back({d, 1, best->slope, ev(x), 0});
    std::erase(plus, d.dec);
    std::erase(minus, d.inc);
  }
  r.minimizer = x;
  detail::finish(r, ev, {});
  return r;
}

struct IncSlopeContext {
  SolveTrace* trace = nullptr;
  ReachStats* stats = nullptr;
  std::size_t outer = 0;
};

// One slope-raising pass. Every (i, j) whose slope at the running point y
// equals phi(x) is followed for its full reach; each ordered pair fires at
// most once and the result has phi strictly above phi(x).
//
// With `prime` set, the index bookkeeping of the monotone variant is used:
// after a move along (i, j), j leaves the increase candidates and i leaves
// the decrease candidates.
inline IntPoint m_inc_slope(Evaluator& ev, const IntPoint& x, bool prime = false,
                            const SolverOptions& opts = {}, IncSlopeContext ctx = {}) {
  const ExtValue phi_x = phi(ev, x);
  ensure(phi_x < ExtValue(0), ErrorCode::kNotDescending, "phi" + x.str() + " = 0");
  ReachStats local_stats;
  ReachStats& stats = ctx.stats ? *ctx.stats : local_stats;
  const std::size_t n = x.size();
  std::vector<bool> in_plus(n, true), in_minus(n, true);
  std::set<std::pair<Index, Index>> applied;
  IntPoint y = x;
  for (Index i = 0; i < n; ++i) {
    if (!in_plus[i]) continue;
    IndexSet candidates;
    for (Index j = 0; j < n; ++j) {
      if (j != i && (!prime || in_minus[j])) candidates.push_back(j);
    }
    for (Index j : candidates) {
      const Direction d{i, j};
      // A +inf slope never equals phi(x) < 0, so moves out of the domain are
      // skipped here without special handling.
      const ExtValue s = slope(ev, y, d);
      if (s != phi_x) continue;
      const std::int64_t c = detail::long_step(ev, y, d, opts, stats);
      detail::invariant(c >= 1, "zero-length update along " + d.str());
      detail::invariant(applied.emplace(i, j).second, "direction " + d.str() + " applied twice");
      y = y.moved(d, c);
      if (ctx.trace) ctx.trace->steps.push_back({d, c, s, ev(y), ctx.outer});
      if (prime) {
        in_plus[j] = false;
        in_minus[i] = false;
      }
    }
  }
  if (opts.check_invariants) {
    detail::invariant(phi(ev, y) > phi_x, "phi did not increase from " + x.str());
  }
  return y;
}

inline IntPoint m_inc_slope(const MOracle& f, const IntPoint& x, const SolverOptions& opts = {}) {
  Evaluator ev(f);
  detail::start_in_domain(ev, x);
  return m_inc_slope(ev, x, false, opts);
}

inline IntPoint m_inc_slope_prime(const MOracle& f, const IntPoint& x,
                                  const SolverOptions& opts = {}) {
  Evaluator ev(f);
  detail::start_in_domain(ev, x);
  return m_inc_slope(ev, x, true, opts);
}

// Outer loop: recompute phi, stop at zero, else run one slope-raising pass.
// For integer-valued f the number of passes is at most |phi(x0)|.
inline SolveResult m_lsd2(const MOracle& f, const IntPoint& x0, const SolverOptions& opts = {},
                          bool prime = false) {
  Evaluator ev(f);
  detail::start_in_domain(ev, x0);
  ReachStats stats;
  SolveResult r;
  IntPoint x = x0;
  while (true) {
    const ExtValue p = phi(ev, x);
    if (opts.check_invariants && !r.phi_history.empty()) {
      detail::invariant(r.phi_history.back() < p, "phi did not strictly increase");
    }
    r.phi_history.push_back(p);
    if (p == ExtValue(0)) break;
    ensure(r.trace.outer_iterations < opts.max_iterations, ErrorCode::kIterationCapExceeded,
           "m_lsd2 did not stop");
    ++r.trace.outer_iterations;
    x = m_inc_slope(ev, x, prime, opts, {&r.trace, &stats, r.trace.outer_iterations});
  }
  r.minimizer = x;
  detail::finish(r, ev, stats);
  return r;
}

}  // namespace mconv
