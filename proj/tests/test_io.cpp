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

#include <gtest/gtest.h>

#include <sstream>

#include "mconv/instances.hpp"
#include "mconv/io.hpp"
#include "mconv/unconstrained.hpp"

namespace mconv {
namespace {

const std::string kDir = std::string(MCONV_SOURCE_DIR) + "/instances/";

ErrorCode parse_code(const std::string& text) {
  try {
    parse_instance(Json::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

TEST(Load, Z4ExampleMatchesTheBuiltIn) {
  const Instance inst = load_instance(kDir + "remark.json");
  EXPECT_EQ(inst.kind, "tabulated");
  EXPECT_EQ(inst.name, "remark");
  ASSERT_TRUE(inst.lattice.has_value());
  const DomainEnumeration a = enumerate_domain(*inst.lattice);
  const DomainEnumeration b = enumerate_domain(remark_z4_instance());
  EXPECT_EQ(a.points(), b.points());
  EXPECT_EQ(a.values(), b.values());
}

TEST(Load, TabulatedRoundTrip) {
  const MOracle f = remark_z4_instance();
  const DomainEnumeration dom = enumerate_domain(f);
  const Json j = tabulated_json(f, dom);
  const Instance back = parse_instance(Json::parse(j.dump()));
  const DomainEnumeration again = enumerate_domain(*back.lattice);
  EXPECT_EQ(again.points(), dom.points());
  EXPECT_EQ(again.values(), dom.values());
  EXPECT_EQ(back.lattice->box().upper(), f.box().upper());
  EXPECT_EQ(back.lattice->value_bound(), f.value_bound());
}

TEST(Load, RapVariants) {
  const Instance two = load_instance(kDir + "rap_n2.json");
  ASSERT_TRUE(two.rap.has_value());
  EXPECT_TRUE(two.lattice->is_natural());
  EXPECT_EQ((*two.lattice)({1, 2}), ExtValue(5));
  const Instance one = load_instance(kDir + "rap_n2_bases.json");
  EXPECT_FALSE(one.lattice->is_natural());
  EXPECT_EQ((*one.lattice)({1, 1}), ExtValue::infinity());
  // Structured rho survives a round trip.
  RandomParams p;
  Draw draw(3);
  const RapData data = random_rap_data(draw, p);
  const Instance back = parse_instance(rap_json(data, true));
  EXPECT_EQ(back.rap->rho.table(), data.rho.table());
  EXPECT_EQ(enumerate_domain(*back.lattice).values(),
            enumerate_domain(rap_instance(data.rho, data.tables).rap2).values());
}

TEST(Load, McfAndPl) {
  const Instance mcf = load_instance(kDir + "mcf_diamond.json");
  EXPECT_EQ(mcf.lattice->dim(), 3u);
  EXPECT_EQ(enumerate_domain(*mcf.lattice).size(), 13u);
  const Instance pl = load_instance(kDir + "pl_abs.json");
  ASSERT_TRUE(pl.pl.has_value());
  EXPECT_EQ(pm_lsd2(pl.pl->oracle(), RatPoint{Rational(2), Rational(0)}).value, ExtValue(0));
  EXPECT_TRUE(pl.lattice.has_value());
}

TEST(Load, HalfIntegerBreakpointsHaveNoLatticeOracle) {
  const Instance inst = parse_instance(Json::parse(R"({
    "kind": "pl-separable", "dimension": 2,
    "rho": {"type": "truncation", "a": 2, "b": 2},
    "pieces": [{"breakpoints": [0, "1/2", 2], "values": [1, 0, 3]},
               {"breakpoints": [0, 2], "values": [0, 0]}]})"));
  EXPECT_TRUE(inst.pl.has_value());
  EXPECT_FALSE(inst.lattice.has_value());
}

TEST(Schema, Errors) {
  EXPECT_EQ(parse_code(R"({"dimension": 2})"), ErrorCode::kSchema);
  EXPECT_EQ(parse_code(R"({"kind": "nope", "dimension": 2})"), ErrorCode::kSchema);
  EXPECT_EQ(parse_code(R"({"kind": "tabulated", "dimension": "x"})"), ErrorCode::kSchema);
  EXPECT_EQ(parse_code(R"({"kind": "tabulated", "dimension": 1,
      "box": {"lower": [0], "upper": [1]}, "value_bound": 1,
      "points": [[0], [1]], "values": [0]})"),
            ErrorCode::kSchema);
  EXPECT_EQ(parse_code(R"({"kind": "tabulated", "dimension": 1,
      "box": {"lower": [0], "upper": [1]}, "value_bound": 1,
      "points": [[0]], "values": [5]})"),
            ErrorCode::kSchema);
  EXPECT_EQ(parse_code(R"({"kind": "tabulated", "dimension": 1,
      "box": {"lower": [0], "upper": [1]}, "value_bound": 1,
      "points": [[0], [0]], "values": [0, 1]})"),
            ErrorCode::kDuplicatePoint);
  EXPECT_EQ(parse_code(R"({"kind": "rap", "dimension": 2,
      "rho": {"type": "tabulated", "values": [0, 2, 2, 5]},
      "costs": [[0, 1], [0, 1]]})"),
            ErrorCode::kInconsistentRank);
  EXPECT_EQ(parse_code(R"({"kind": "mcf", "dimension": 2, "vertices": 2,
      "sources": [1], "sinks": [3], "arcs": []})"),
            ErrorCode::kSchema);
  EXPECT_EQ(parse_code(R"({"kind": "pl-separable", "dimension": 1,
      "rho": {"type": "tabulated", "values": [0, 1]},
      "pieces": [{"breakpoints": [0, 1, 2], "values": [0, 2, 3]}]})"),
            ErrorCode::kMalformedBreakpoints);
  try {
    load_instance(kDir + "does_not_exist.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
  }
}

TEST(Schema, DeclaredBoxMustCoverTheDerivedOne) {
  const std::string base = R"({"kind": "rap", "dimension": 2, "variant": "rap2",
      "rho": {"type": "tabulated", "values": [0, 2, 2, 3]},
      "costs": [[0, 1, 4, 9], [0, 1, 4, 9]])";
  EXPECT_EQ(parse_code(base + R"(, "box": {"lower": [0, 0], "upper": [1, 1]}})"), ErrorCode::kSchema);
  EXPECT_EQ(parse_code(base + R"(, "value_bound": 1})"), ErrorCode::kSchema);
  const Instance wide = parse_instance(
      Json::parse(base + R"(, "box": {"lower": [0, 0], "upper": [5, 5]}, "value_bound": 100})"));
  EXPECT_EQ(wide.lattice->box().upper(), (IntPoint{5, 5}));
  EXPECT_EQ((*wide.lattice)({2, 1}), ExtValue(5));
}

TEST(Cli, Points) {
  EXPECT_EQ(parse_int_point("0,2,0,1"), (IntPoint{0, 2, 0, 1}));
  EXPECT_EQ(parse_rat_point("3/2,1/2"), (RatPoint{Rational(3, 2), Rational(1, 2)}));
  EXPECT_EQ(parse_index_set("1,3", 4), (IndexSet{0, 2}));
  EXPECT_THROW(parse_index_set("5", 4), Error);
  EXPECT_THROW(parse_int_point("1/2"), Error);
}

TEST(TraceCsv, Format) {
  std::ostringstream out;
  write_trace_csv(out, m_lsd2(remark_z4_instance(), {0, 2, 0, 1}).trace);
  EXPECT_EQ(out.str(),
            "iter,outer,i,j,length,slope,f_value\n"
            "1,1,1,2,1,-1,-1\n"
            "2,1,1,4,1,-1,-2\n"
            "3,1,3,2,1,-1,-3\n");
  std::ostringstream pl;
  PolySolveTrace t;
  t.steps.push_back({Direction{1, 0}, Rational(1, 2), ExtValue(-2), ExtValue(Rational(3, 2)), 0});
  t.steps.push_back({Direction{0, Direction::kNull}, Rational(2), ExtValue(0), ExtValue(1), 0});
  write_trace_csv(pl, t);
  EXPECT_EQ(pl.str(),
            "iter,outer,i,j,length,slope,f_value\n"
            "1,0,2,1,1/2,-2,3/2\n"
            "2,0,1,0,2,0,1\n");
}

}  // namespace
}  // namespace mconv
