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

// Slopes, steepest directions and long-step lengths on Z^n. These are the
// primitives every lattice solver in this library is written against.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/oracle.hpp"
#include "mconv/point.hpp"

namespace mconv {

template <class Length>
struct BasicTraceStep {
  Direction direction;
  Length length{};
  ExtValue slope;
  ExtValue value_after;
  // 1-based outer iteration for LSD2-style solvers, 0 otherwise.
  std::size_t outer = 0;
};

template <class Length>
struct BasicSolveTrace {
  std::vector<BasicTraceStep<Length>> steps;
  std::size_t evals = 0;
  std::size_t outer_iterations = 0;
  // Long-step bookkeeping: number of step_reach calls and the largest number
  // of oracle calls any single one of them needed.
  std::size_t reach_calls = 0;
  std::size_t reach_evals_max = 0;

  Length total_length() const {
    Length total{};
    for (const auto& s : steps) total += s.length;
    return total;
  }
};

using TraceStep = BasicTraceStep<std::int64_t>;
using SolveTrace = BasicSolveTrace<std::int64_t>;

struct SteepestMove {
  Direction direction;
  ExtValue slope;
};

namespace detail {

inline void check_dim(const Evaluator& f, const IntPoint& x) {
  ensure(x.size() == f.dim(), ErrorCode::kInvalidArgument,
         "point " + x.str() + " does not match oracle dimension " + std::to_string(f.dim()));
}

inline const ExtValue& value_in_domain(Evaluator& f, const IntPoint& x) {
  check_dim(f, x);
  const ExtValue& fx = f(x);
  ensure(fx.is_finite(), ErrorCode::kEvalOutsideDomain, "f" + x.str() + " = +inf");
  return fx;
}

// Sorted by 1-based label, so a null index (label 0) comes first.
inline std::vector<Index> label_order(std::span<const Index> set) {
  std::vector<Index> out(set.begin(), set.end());
  std::sort(out.begin(), out.end(), [](Index a, Index b) {
    Direction da{0, a}, db{0, b};
    return da.dec_label() < db.dec_label();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// f'(x; i, j) = f(x + chi_i - chi_j) - f(x). Requires f(x) finite.
inline ExtValue slope(Evaluator& f, const IntPoint& x, const Direction& d) {
  const ExtValue fx = detail::value_in_domain(f, x);
  ensure(d.inc != d.dec, ErrorCode::kInvalidArgument, "direction " + d.str() + " has inc == dec");
  ensure(d.inc < x.size() && (d.has_null() || d.dec < x.size()), ErrorCode::kInvalidArgument,
         "direction " + d.str() + " out of range");
  return f(x.moved(d)) - fx;
}

inline ExtValue slope(const MOracle& f, const IntPoint& x, const Direction& d) {
  Evaluator ev(f);
  return slope(ev, x, d);
}

// f'(x; i, i), zero by definition.
inline ExtValue self_slope() { return ExtValue(0); }

// Minimizes f'(x; i, j) over i in `inc_set`, j in `dec_set`, i != j. Ties go to
// the lexicographically smallest (i, j) in 1-based labels. Returns nullopt
// only when no admissible pair exists; the returned slope is +inf when every
// pair leaves the domain.
inline std::optional<SteepestMove> steepest_direction(Evaluator& f, const IntPoint& x,
                                                      std::span<const Index> inc_set,
                                                      std::span<const Index> dec_set) {
  detail::value_in_domain(f, x);
  const auto incs = detail::label_order(inc_set);
  const auto decs = detail::label_order(dec_set);
  std::optional<SteepestMove> best;
  for (Index i : incs) {
    for (Index j : decs) {
      if (i == j) continue;
      Direction d{i, j};
      ExtValue s = slope(f, x, d);
      if (!best || s < best->slope) best = SteepestMove{d, std::move(s)};
    }
  }
  return best;
}

inline std::optional<SteepestMove> steepest_direction(Evaluator& f, const IntPoint& x) {
  const IndexSet all = all_indices(x.size());
  return steepest_direction(f, x, all, all);
}

// phi(x): steepest slope over all i != j, capped above by the zero slope of
// the identity move. Zero exactly at global minimizers of an M-convex f.
inline ExtValue phi(Evaluator& f, const IntPoint& x) {
  auto best = steepest_direction(f, x);
  if (!best) return ExtValue(0);
  return min(best->slope, ExtValue(0));
}

inline ExtValue phi(const MOracle& f, const IntPoint& x) {
  Evaluator ev(f);
  return phi(ev, x);
}

struct ReachStats {
  std::size_t calls = 0;
  std::size_t max_evals = 0;
};

// Long-step length: the largest lambda >= 0 with
//   f(x + lambda d) - f(x) = lambda f'(x; d).
// Convexity along d makes the predicate monotone, so a binary search over
// [1, width of the box along d] finds it with O(log L_inf) oracle calls.
inline std::int64_t step_reach(Evaluator& f, const IntPoint& x, const Direction& d,
                               ReachStats* stats = nullptr) {
  const ExtValue fx = detail::value_in_domain(f, x);
  const ExtValue s = slope(f, x, d);
  ensure(s.is_finite(), ErrorCode::kInfiniteSlope,
         "slope along " + d.str() + " at " + x.str() + " is +inf");
  const std::size_t calls_before = f.calls();
  auto linear_at = [&](std::int64_t lambda) {
    const ExtValue& v = f(x.moved(d, lambda));
    return v.is_finite() && v.value() - fx.value() == Rational(lambda) * s.value();
  };
  std::int64_t lo = 1;
  std::int64_t hi = std::max<std::int64_t>(1, f.oracle().box().width_along(x, d));
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (linear_at(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (stats) {
    ++stats->calls;
    stats->max_evals = std::max(stats->max_evals, f.calls() - calls_before);
  }
  return lo;
}

inline std::int64_t step_reach(const MOracle& f, const IntPoint& x, const Direction& d) {
  Evaluator ev(f);
  return step_reach(ev, x, d);
}

// Direct check of a computed reach: linear up to `reach`, broken (or out of
// the domain) at reach + 1. Costs reach + 1 evaluations; meant for tests.
inline bool reach_is_exact(Evaluator& f, const IntPoint& x, const Direction& d,
                           std::int64_t reach) {
  const ExtValue fx = detail::value_in_domain(f, x);
  const ExtValue s = slope(f, x, d);
  if (s.is_infinite()) return false;
  for (std::int64_t lambda = 0; lambda <= reach; ++lambda) {
    const ExtValue& v = f(x.moved(d, lambda));
    if (!v.is_finite() || v.value() - fx.value() != Rational(lambda) * s.value()) return false;
  }
  const ExtValue& next = f(x.moved(d, reach + 1));
  return !next.is_finite() || next.value() - fx.value() != Rational(reach + 1) * s.value();
}

// First domain point in lexicographic order over the box. Slow on big boxes.
inline std::optional<IntPoint> scan_domain_point(const MOracle& f) {
  const Box& box = f.box();
  IntPoint x = box.lower();
  while (true) {
    if (f(x).is_finite()) return x;
    std::size_t i = f.dim();
    while (i > 0) {
      --i;
      if (x[i] < box.upper()[i]) {
        ++x[i];
        break;
      }
      x[i] = box.lower()[i];
      if (i == 0) return std::nullopt;
    }
    if (f.dim() == 0) return std::nullopt;
  }
}

// The oracle's hint when it is a domain point, else a lexicographic scan.
inline IntPoint find_domain_point(const MOracle& f) {
  if (f.hint() && f(*f.hint()).is_finite()) return *f.hint();
  auto x = scan_domain_point(f);
  ensure(x.has_value(), ErrorCode::kEmptyDomain, "oracle '" + f.name() + "' has an empty domain");
  return *x;
}

}  // namespace mconv
