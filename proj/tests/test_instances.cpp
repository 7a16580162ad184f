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

#include <fstream>
#include <map>
#include <sstream>

#include "mconv/instances.hpp"
#include "mconv/io.hpp"
#include "mconv/unconstrained.hpp"

namespace mconv {
namespace {

template <class F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

TEST(Z4Example, Values) {
  const MOracle f = remark_z4_instance();
  EXPECT_EQ(f({2, 0, 1, 0}), ExtValue(-3));
  EXPECT_EQ(f({0, 2, 1, 0}), ExtValue::infinity());
  EXPECT_EQ(f({2, 0, 0, 1}), ExtValue(-1));
  EXPECT_EQ(f({1, 1, 1, 0}), ExtValue(-2));
  EXPECT_EQ(f({3, 0, 0, 0}), ExtValue::infinity());
  EXPECT_EQ(f({1, 1, 1, 1}), ExtValue::infinity());
}

SubmodularSpec rho_n2() { return SubmodularSpec::tabulated(2, {0, 2, 2, 3}); }

std::vector<ConvexTable> squares(std::size_t n, std::int64_t len) {
  std::vector<std::int64_t> v;
  for (std::int64_t t = 0; t <= len; ++t) v.push_back(t * t);
  return std::vector<ConvexTable>(n, ConvexTable::from_ints(v));
}

TEST(Rap, SmallInstanceValues) {
  const RapPair p = rap_instance(rho_n2(), squares(2, 3));
  EXPECT_EQ(p.rap1({1, 2}), ExtValue(5));
  EXPECT_EQ(p.rap1({0, 3}), ExtValue::infinity());
  EXPECT_EQ(p.rap1({3, 0}), ExtValue::infinity());
  EXPECT_EQ(p.rap2({0, 0}), ExtValue(0));
  EXPECT_EQ(p.rap2({2, 1}), ExtValue(5));
  EXPECT_EQ(p.rap2({2, 2}), ExtValue::infinity());
  EXPECT_TRUE(check_m_exc(p.rap1).holds);
  EXPECT_TRUE(check_mnat_exc(p.rap2).holds);
  EXPECT_FALSE(p.rap1.is_natural());
  EXPECT_TRUE(p.rap2.is_natural());
}

TEST(Rap, NonConvexTable) {
  EXPECT_EQ(code_of([] { ConvexTable::from_ints(std::vector<std::int64_t>{0, 2, 3}); }),
            ErrorCode::kNonConvexTable);
}

TEST(Rap, DomainIsTheBaseSet) {
  RandomParams p;
  p.n = 4;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Draw draw(seed);
    RapData data = random_rap_data(draw, p);
    ASSERT_TRUE(data.rho.is_polymatroid());
    const RapPair pair = rap_instance(data.rho, data.tables);
    // Bases straight from the rank table, over the nonnegative orthant.
    std::vector<IntPoint> bases;
    const std::int64_t top = data.rho.total();
    IntPoint x(p.n, 0);
    while (true) {
      if (data.rho.in_base(x)) bases.push_back(x);
      std::size_t i = p.n;
      while (i > 0 && x[i - 1] == top) x[--i] = 0;
      if (i == 0) break;
      ++x[i - 1];
    }
    EXPECT_EQ(enumerate_domain(pair.rap1).points(), bases) << "seed=" << seed;
    EXPECT_TRUE(check_m_exc(pair.rap1).holds);
    EXPECT_TRUE(check_mnat_exc(pair.rap2).holds);
  }
}

FlowNetwork one_arc(std::int64_t cap) {
  FlowNetwork net;
  net.vertices = 2;
  net.sources = {0};
  net.sinks = {1};
  FlowArc a{0, 1, cap, {}};
  for (std::int64_t t = 0; t <= cap; ++t) a.cost.push_back(t * t);
  net.arcs.push_back(a);
  return net;
}

TEST(Mcf, SingleArc) {
  const MOracle f = mcf_instance(one_arc(2));
  for (std::int64_t k = 0; k <= 2; ++k) EXPECT_EQ(f({k, -k}), ExtValue(k * k));
  EXPECT_EQ(f({3, -3}), ExtValue::infinity());
  EXPECT_EQ(f({1, 0}), ExtValue::infinity());
  EXPECT_EQ(f({-1, 1}), ExtValue::infinity());
}

// Cheapest cost of every boundary by listing all integral flows.
std::map<IntPoint, std::int64_t> flow_table(const FlowNetwork& net) {
  std::map<IntPoint, std::int64_t> best;
  const auto terminals = net.terminals();
  std::vector<std::int64_t> xi(net.arcs.size(), 0);
  while (true) {
    std::vector<std::int64_t> boundary(net.vertices, 0);
    std::int64_t cost = 0;
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
      boundary[net.arcs[a].from] += xi[a];
      boundary[net.arcs[a].to] -= xi[a];
      cost += net.arcs[a].cost[static_cast<std::size_t>(xi[a])];
    }
    bool conserved = true;
    for (std::size_t v = 0; v < net.vertices; ++v) {
      if (std::find(terminals.begin(), terminals.end(), v) == terminals.end() && boundary[v] != 0) {
        conserved = false;
      }
    }
    if (conserved) {
      IntPoint x(terminals.size());
      for (std::size_t t = 0; t < terminals.size(); ++t) x[t] = boundary[terminals[t]];
      auto [it, fresh] = best.emplace(x, cost);
      if (!fresh) it->second = std::min(it->second, cost);
    }
    std::size_t a = 0;
    while (a < xi.size() && xi[a] == net.arcs[a].capacity) xi[a++] = 0;
    if (a == xi.size()) break;
    ++xi[a];
  }
  return best;
}

void expect_matches_enumeration(const FlowNetwork& net) {
  const MOracle f = mcf_instance(net);
  const auto table = flow_table(net);
  const DomainEnumeration dom = enumerate_domain(f);
  ASSERT_EQ(dom.size(), table.size());
  for (const auto& [x, c] : table) EXPECT_EQ(f(x), ExtValue(c)) << x;
}

FlowNetwork diamond() {
  // Same network as instances/mcf_diamond.json, 0-based.
  FlowNetwork net;
  net.vertices = 5;
  net.sources = {0, 1};
  net.sinks = {2};
  net.arcs = {{0, 3, 2, {0, 1, 3}}, {1, 3, 1, {0, 2}},     {0, 4, 1, {0, 0}},
              {1, 4, 2, {0, -1, 0}}, {3, 2, 2, {0, 1, 2}}, {4, 2, 2, {0, 2, 5}}};
  return net;
}

TEST(Mcf, DiamondIsMConvex) {
  const MOracle f = mcf_instance(diamond());
  EXPECT_TRUE(check_m_exc(f).holds);
  EXPECT_TRUE(has_constant_sum(enumerate_domain(f)));
  expect_matches_enumeration(diamond());
}

TEST(Mcf, ZeroCostIsAnIndicator) {
  FlowNetwork net = diamond();
  for (auto& a : net.arcs) std::fill(a.cost.begin(), a.cost.end(), 0);
  const DomainEnumeration dom = enumerate_domain(mcf_instance(net));
  for (const auto& v : dom.values()) EXPECT_EQ(v, ExtValue(0));
  EXPECT_TRUE(check_domain_exchange(dom).holds);
  expect_matches_enumeration(net);
}

TEST(Mcf, RandomNetworksMatchEnumeration) {
  RandomParams p;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Draw draw(seed);
    p.n = 2 + seed % 3;
    const FlowNetwork net = random_network(draw, p);
    if (net.arcs.size() > 6) continue;
    expect_matches_enumeration(net);
  }
}

TEST(Mcf, NegativeCyclesAreHandled) {
  // Two arcs forming a cycle through an inner vertex, both profitable.
  FlowNetwork net;
  net.vertices = 3;
  net.sources = {0};
  net.sinks = {1};
  net.arcs = {{0, 1, 1, {0, 1}}, {1, 2, 2, {0, -2, -3}}, {2, 1, 2, {0, -1, -1}}};
  expect_matches_enumeration(net);
}

TEST(Tabulated, Errors) {
  const Box box({0, 0}, {1, 1});
  EXPECT_EQ(code_of([&] {
              tabulated_oracle({{0, 1}, {0, 1}}, {ExtValue(0), ExtValue(1)}, box, Rational(1));
            }),
            ErrorCode::kDuplicatePoint);
  EXPECT_EQ(code_of([&] { tabulated_oracle({{0, 2}}, {ExtValue(0)}, box, Rational(1)); }),
            ErrorCode::kPointOutsideBox);
}

TEST(Tabulated, EmptyDomain) {
  const MOracle f = tabulated_oracle({}, {}, Box({0, 0}, {1, 1}), Rational(0));
  EXPECT_EQ(code_of([&] { find_domain_point(f); }), ErrorCode::kEmptyDomain);
  EXPECT_EQ(code_of([&] { brute_min(f); }), ErrorCode::kEmptyDomain);
}

TEST(Tabulated, FourPointViolationGivesWitness) {
  const MOracle f = tabulated_oracle({{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}},
                                     {ExtValue(0), ExtValue(0), ExtValue(5), ExtValue(5)},
                                     Box({0, 0, 0, 0}, {1, 1, 1, 1}), Rational(5));
  const ExchangeReport rep = check_m_exc(f);
  EXPECT_FALSE(rep.holds);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_FALSE(rep.witness->failed_j.empty());
}

TEST(Random, Deterministic) {
  for (Family fam : {Family::kRap, Family::kRapNatural, Family::kMcf, Family::kTabulated,
                     Family::kTabulatedNatural}) {
    const RandomInstance a = random_instance(1, fam);
    const RandomInstance b = random_instance(1, fam);
    EXPECT_EQ(a.domain.points(), b.domain.points());
    EXPECT_EQ(a.domain.values(), b.domain.values());
    EXPECT_EQ(a.oracle.name(), family_name(fam) + "-n3-s1");
    EXPECT_EQ(parse_family(family_name(fam)), fam);
  }
  EXPECT_EQ(code_of([] { parse_family("nope"); }), ErrorCode::kInvalidArgument);
}

TEST(Random, EveryFamilyIsCertified) {
  for (Family fam : {Family::kRap, Family::kRapNatural, Family::kMcf, Family::kTabulated,
                     Family::kTabulatedNatural}) {
    for (std::size_t n : {2u, 3u, 5u}) {
      RandomParams p;
      p.n = n;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const RandomInstance inst = random_instance(seed, fam, p);
        const bool natural = family_is_natural(fam);
        EXPECT_EQ(inst.oracle.is_natural(), natural);
        EXPECT_TRUE(natural ? check_mnat_exc(inst.oracle).holds : check_m_exc(inst.oracle).holds)
            << family_name(fam) << " n=" << n << " seed=" << seed;
        if (!natural) {
          EXPECT_TRUE(has_constant_sum(inst.domain));
          EXPECT_TRUE(check_domain_exchange(inst.domain).holds);
        }
        for (Index i = 0; i < n; ++i) {
          EXPECT_LE(inst.oracle.box().upper()[i] - inst.oracle.box().lower()[i], p.width);
        }
      }
    }
  }
}

TEST(Random, GenerationFailed) {
  RandomParams p;
  p.max_retries = 0;
  EXPECT_EQ(code_of([&] { random_instance(1, Family::kRap, p); }), ErrorCode::kGenerationFailed);
}

TEST(Random, GoldenRapSeedOne) {
  const RandomInstance inst = random_instance(1, Family::kRap);
  std::ifstream in(std::string(MCONV_SOURCE_DIR) + "/tests/golden/rap_n3_s1.json");
  ASSERT_TRUE(in.good());
  const Json golden = Json::parse(in);
  EXPECT_EQ(tabulated_json(inst.oracle, inst.domain), golden);
}

}  // namespace
}  // namespace mconv
