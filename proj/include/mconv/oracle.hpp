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

#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/point.hpp"

namespace mconv {

// M-convex functions have their domain on a hyperplane x(N) = r; M-natural
// functions do not and admit the null index in their exchange axiom.
enum class OracleClass { kM, kMNatural };

template <class F>
concept LatticeFunction = std::invocable<const F&, const IntPoint&> &&
    std::convertible_to<std::invoke_result_t<const F&, const IntPoint&>, ExtValue>;

// Type-erased evaluation oracle for a function Z^n -> Q u {+inf}.
//
// The declared box must contain the effective domain; points outside it are
// answered with +inf without consulting the callable. `value_bound` is an
// integer B with |f(x)| <= B on the domain. `hint` is an optional known
// domain point, used as a starting point when none is supplied.
class MOracle {
 public:
  MOracle() = default;

  template <LatticeFunction F>
  MOracle(std::size_t dim, Box box, Rational value_bound, F fn,
          OracleClass klass = OracleClass::kM, std::optional<IntPoint> hint = {},
          std::string name = {})
      : dim_(dim),
        box_(std::move(box)),
        value_bound_(std::move(value_bound)),
        klass_(klass),
        hint_(std::move(hint)),
        name_(std::move(name)),
        eval_(std::make_shared<std::function<ExtValue(const IntPoint&)>>(std::move(fn))) {
    ensure(box_.dim() == dim_, ErrorCode::kInvalidArgument, "box dimension mismatch");
    ensure(is_integer(value_bound_) && value_bound_ >= 0, ErrorCode::kInvalidArgument,
           "value bound must be a non-negative integer");
    if (hint_) {
      ensure(hint_->size() == dim_, ErrorCode::kInvalidArgument, "hint dimension mismatch");
    }
  }

  std::size_t dim() const { return dim_; }
  const Box& box() const { return box_; }
  const Rational& value_bound() const { return value_bound_; }
  OracleClass klass() const { return klass_; }
  bool is_natural() const { return klass_ == OracleClass::kMNatural; }
  const std::optional<IntPoint>& hint() const { return hint_; }
  const std::string& name() const { return name_; }

  ExtValue operator()(const IntPoint& x) const {
    ensure(x.size() == dim_, ErrorCode::kInvalidArgument,
           "point " + x.str() + " has wrong dimension");
    if (!box_.contains(x)) return ExtValue::infinity();
    return (*eval_)(x);
  }

  MOracle with_name(std::string name) const {
    MOracle copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

  MOracle with_hint(IntPoint hint) const {
    MOracle copy = *this;
    copy.hint_ = std::move(hint);
    return copy;
  }

 private:
  std::size_t dim_ = 0;
  Box box_;
  Rational value_bound_{0};
  OracleClass klass_ = OracleClass::kM;
  std::optional<IntPoint> hint_;
  std::string name_;
  std::shared_ptr<const std::function<ExtValue(const IntPoint&)>> eval_;
};

// Per-run memo table in front of an oracle. `calls()` counts the evaluations
// that actually reached the oracle, which is what complexity checks measure.
class Evaluator {
 public:
  explicit Evaluator(const MOracle& f) : f_(&f) {}

  const ExtValue& operator()(const IntPoint& x) {
    ++lookups_;
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
    if (f_->box().contains(x)) ++calls_;
    return memo_.emplace(x, (*f_)(x)).first->second;
  }

  const MOracle& oracle() const { return *f_; }
  std::size_t dim() const { return f_->dim(); }
  std::size_t calls() const { return calls_; }
  std::size_t lookups() const { return lookups_; }

 private:
  const MOracle* f_;
  std::unordered_map<IntPoint, ExtValue, IntPointHash> memo_;
  std::size_t calls_ = 0;
  std::size_t lookups_ = 0;
};

}  // namespace mconv
