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

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "mconv/error.hpp"

namespace mconv {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline BigInt floor_of(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt quot = num / den;
  if (num % den != 0 && num < 0) quot -= 1;
  return quot;
}

inline BigInt ceil_of(const Rational& q) {
  BigInt f = floor_of(q);
  return Rational(f) == q ? f : f + 1;
}

// Narrows an integral rational to int64. Throws when it does not fit.
inline std::int64_t to_int64(const Rational& q) {
  ensure(is_integer(q), ErrorCode::kArithmetic,
         "expected an integer, got " + q.str());
  const BigInt& n = boost::multiprecision::numerator(q);
  ensure(n >= std::numeric_limits<std::int64_t>::min() &&
             n <= std::numeric_limits<std::int64_t>::max(),
         ErrorCode::kArithmetic, "integer out of int64 range");
  return n.convert_to<std::int64_t>();
}

// Lowest terms, "p/q", and bare "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

namespace detail {
inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}
}  // namespace detail

// Accepts "p", "p/q" (q > 0), and finite decimals such as "-1.25".
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() -> Rational {
    fail(ErrorCode::kSchema, "malformed rational '" + std::string(text) + "'");
  };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t lead = 0;
  while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
  s = s.substr(lead);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den)) return bad();
    if (den[0] == '+') den = den.substr(1);
    if (num[0] == '+') num = num.substr(1);
    BigInt d(den);
    if (d <= 0) return bad();
    return Rational(BigInt(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || !detail::is_integer_literal(whole) ||
        !detail::is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+') {
      return bad();
    }
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational q(BigInt(whole) * scale + BigInt(frac), scale);
    return negative ? Rational(-q) : q;
  }
  if (!detail::is_integer_literal(s)) return bad();
  if (s[0] == '+') s = s.substr(1);
  return Rational(BigInt(s));
}

}  // namespace mconv
