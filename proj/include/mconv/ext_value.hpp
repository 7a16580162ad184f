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

#include <compare>
#include <concepts>
#include <ostream>
#include <string>

#include "mconv/error.hpp"
#include "mconv/rational.hpp"

namespace mconv {

// An exact rational or +infinity. Objective values and slopes use this type;
// a point belongs to the effective domain iff its value is finite.
class ExtValue {
 public:
  ExtValue() = default;
  ExtValue(Rational value) : value_(std::move(value)) {}  // NOLINT
  template <std::integral I>
  ExtValue(I value) : value_(static_cast<long long>(value)) {}  // NOLINT

  static ExtValue infinity() {
    ExtValue v;
    v.infinite_ = true;
    return v;
  }

  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }

  const Rational& value() const {
    ensure(!infinite_, ErrorCode::kArithmetic, "value() of +inf");
    return value_;
  }

  friend ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtValue(a.value_ + b.value_);
  }

  // +inf - finite is +inf; anything minus +inf has no value in this type.
  friend ExtValue operator-(const ExtValue& a, const ExtValue& b) {
    ensure(!b.infinite_, ErrorCode::kArithmetic,
           a.infinite_ ? "+inf - +inf" : "finite - +inf");
    if (a.infinite_) return infinity();
    return ExtValue(a.value_ - b.value_);
  }

  friend ExtValue operator*(const Rational& scalar, const ExtValue& a) {
    if (a.infinite_) {
      ensure(scalar > 0, ErrorCode::kArithmetic,
             "non-positive scalar times +inf");
      return infinity();
    }
    return ExtValue(scalar * a.value_);
  }

  ExtValue& operator+=(const ExtValue& other) { return *this = *this + other; }
  ExtValue& operator-=(const ExtValue& other) { return *this = *this - other; }

  friend bool operator==(const ExtValue& a, const ExtValue& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return infinite_ ? "inf" : to_string(value_); }

  friend std::ostream& operator<<(std::ostream& os, const ExtValue& v) {
    return os << v.str();
  }

 private:
  bool infinite_ = false;
  Rational value_{0};
};

inline ExtValue min(const ExtValue& a, const ExtValue& b) { return b < a ? b : a; }

}  // namespace mconv
