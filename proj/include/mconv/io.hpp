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

// JSON instance files and CSV traces. The file formats are described in
// README.md; all indices in files are 1-based.

#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mconv/constrained.hpp"
#include "mconv/core.hpp"
#include "mconv/error.hpp"
#include "mconv/instances.hpp"
#include "mconv/polyhedral.hpp"
#include "mconv/polymatroid.hpp"
#include "mconv/rational.hpp"

namespace mconv {

using Json = nlohmann::json;

struct Instance {
  std::string kind;
  std::string name;
  // Lattice oracle (tabulated, rap, mcf, and the integer restriction of
  // pl-separable when its breakpoints are integral).
  std::optional<MOracle> lattice;
  std::optional<PlSeparableFunction> pl;
  std::optional<RapData> rap;
};

namespace io_detail {

[[noreturn]] inline void schema(const std::string& what) { fail(ErrorCode::kSchema, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Rational rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  schema("expected an integer or a rational string, got " + j.dump());
}

inline std::int64_t integer(const Json& j) {
  if (!j.is_number_integer()) schema("expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

inline ExtValue ext_value(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtValue::infinity();
  return ExtValue(rational(j));
}

inline std::vector<std::int64_t> int_list(const Json& j) {
  if (!j.is_array()) schema("expected an array, got " + j.dump());
  std::vector<std::int64_t> out;
  for (const auto& e : j) out.push_back(integer(e));
  return out;
}

inline IntPoint point(const Json& j, std::size_t n) {
  auto v = int_list(j);
  if (v.size() != n) schema("point " + j.dump() + " does not have dimension " + std::to_string(n));
  return IntPoint(std::move(v));
}

inline Mask index_mask(const Json& j, std::size_t n) {
  Mask m = 0;
  for (auto i : int_list(j)) {
    if (i < 1 || static_cast<std::size_t>(i) > n) schema("index " + std::to_string(i) + " out of range");
    m |= bit(static_cast<Index>(i - 1));
  }
  return m;
}

inline SubmodularSpec rho(const Json& j, std::size_t n) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "tabulated") return SubmodularSpec::tabulated(n, int_list(field(j, "values")));
  if (type == "truncation") {
    return SubmodularSpec::truncation(n, integer(field(j, "a")), integer(field(j, "b")));
  }
  if (type == "partition") {
    std::vector<Mask> blocks;
    for (const auto& b : field(j, "blocks")) blocks.push_back(index_mask(b, n));
    return SubmodularSpec::partition(n, blocks, int_list(field(j, "caps")));
  }
  if (type == "coverage") {
    std::vector<Mask> covers;
    const auto weights = int_list(field(j, "weights"));
    for (const auto& c : field(j, "covers")) covers.push_back(index_mask(c, weights.size()));
    return SubmodularSpec::coverage(n, covers, weights, integer(field(j, "cap")));
  }
  schema("unknown rho type '" + type + "'");
}

inline Json rho_json(const SubmodularSpec& r) {
  auto mask_list = [](Mask m) {
    Json out = Json::array();
    for (Index i = 0; i < 32; ++i) {
      if (m & bit(i)) out.push_back(i + 1);
    }
    return out;
  };
  switch (r.kind()) {
    case SubmodularSpec::Kind::kTruncation:
      return {{"type", "truncation"}, {"a", r.params()[0]}, {"b", r.params()[1]}};
    case SubmodularSpec::Kind::kPartition: {
      Json blocks = Json::array();
      for (Mask b : r.blocks()) blocks.push_back(mask_list(b));
      return {{"type", "partition"}, {"blocks", blocks}, {"caps", r.params()}};
    }
    case SubmodularSpec::Kind::kCoverage: {
      Json covers = Json::array();
      for (Mask c : r.blocks()) covers.push_back(mask_list(c));
      return {{"type", "coverage"}, {"covers", covers}, {"weights", r.params()}, {"cap", r.cap()}};
    }
    case SubmodularSpec::Kind::kTabulated:
      break;
  }
  return {{"type", "tabulated"}, {"values", r.table()}};
}

inline Json rational_json(const Rational& q) {
  if (is_integer(q)) {
    const BigInt& n = boost::multiprecision::numerator(q);
    if (n >= std::numeric_limits<std::int64_t>::min() &&
        n <= std::numeric_limits<std::int64_t>::max()) {
      return n.convert_to<std::int64_t>();
    }
  }
  return to_string(q);
}

// Declared box and value bound of a derived oracle: optional in the file, but
// when present they must cover what the payload implies.
inline MOracle apply_declared(const Json& j, MOracle f) {
  const std::size_t n = f.dim();
  if (j.contains("box")) {
    const IntPoint lo = point(field(j["box"], "lower"), n);
    const IntPoint hi = point(field(j["box"], "upper"), n);
    for (Index i = 0; i < n; ++i) {
      if (lo[i] > f.box().lower()[i] || hi[i] < f.box().upper()[i]) {
        schema("declared box does not contain the derived box");
      }
    }
    MOracle wide(n, Box(lo, hi), f.value_bound(), [f](const IntPoint& x) { return f(x); },
                 f.klass(), f.hint(), f.name());
    f = wide;
  }
  if (j.contains("value_bound")) {
    const Rational b = rational(j["value_bound"]);
    if (!is_integer(b) || b < f.value_bound()) {
      schema("declared value_bound is below the derived bound " + to_string(f.value_bound()));
    }
    MOracle g(n, f.box(), b, [f](const IntPoint& x) { return f(x); }, f.klass(), f.hint(),
              f.name());
    f = g;
  }
  return f;
}

inline OracleClass oracle_class(const Json& j) {
  if (!j.contains("class")) return OracleClass::kM;
  const std::string c = j["class"].get<std::string>();
  if (c == "M") return OracleClass::kM;
  if (c == "M-natural") return OracleClass::kMNatural;
  schema("class must be 'M' or 'M-natural'");
}

}  // namespace io_detail

inline Instance parse_instance(const Json& j, const std::string& name = "instance") {
  using namespace io_detail;
  try {
    Instance inst;
    inst.name = name;
    inst.kind = field(j, "kind").get<std::string>();
    const std::int64_t dim = integer(field(j, "dimension"));
    if (dim < 1) schema("dimension must be positive");
    const std::size_t n = static_cast<std::size_t>(dim);
    if (inst.kind == "tabulated") {
      const Box box(point(field(field(j, "box"), "lower"), n), point(field(field(j, "box"), "upper"), n));
      const Rational vb = rational(field(j, "value_bound"));
      if (!is_integer(vb) || vb < 0) schema("value_bound must be a non-negative integer");
      std::vector<IntPoint> points;
      std::vector<ExtValue> values;
      for (const auto& p : field(j, "points")) points.push_back(point(p, n));
      for (const auto& v : field(j, "values")) values.push_back(ext_value(v));
      if (points.size() != values.size()) schema("points and values differ in length");
      for (const auto& v : values) {
        if (v.is_finite() && boost::multiprecision::abs(v.value()) > vb) {
          schema("value " + v.str() + " exceeds value_bound");
        }
      }
      inst.lattice = tabulated_oracle(points, values, box, vb, oracle_class(j), name);
    } else if (inst.kind == "rap") {
      SubmodularSpec r = rho(field(j, "rho"), n);
      if (!r.is_polymatroid()) fail(ErrorCode::kInconsistentRank, "rho is not a polymatroid rank");
      std::vector<ConvexTable> tables;
      for (const auto& t : field(j, "costs")) {
        std::vector<Rational> v;
        for (const auto& e : t) v.push_back(rational(e));
        tables.emplace_back(std::move(v));
      }
      if (tables.size() != n) schema("need one cost table per coordinate");
      const std::string variant = j.value("variant", std::string("rap1"));
      if (variant != "rap1" && variant != "rap2") schema("variant must be 'rap1' or 'rap2'");
      RapPair pair = rap_instance(r, tables, name);
      inst.lattice = apply_declared(j, variant == "rap1" ? pair.rap1 : pair.rap2);
      inst.rap = RapData{r, tables};
    } else if (inst.kind == "mcf") {
      FlowNetwork net;
      net.vertices = static_cast<std::size_t>(integer(field(j, "vertices")));
      auto vertex = [&](const Json& v) {
        const std::int64_t id = integer(v);
        if (id < 1 || static_cast<std::size_t>(id) > net.vertices) schema("vertex id out of range");
        return static_cast<std::size_t>(id - 1);
      };
      for (const auto& a : field(j, "arcs")) {
        FlowArc arc;
        arc.from = vertex(field(a, "from"));
        arc.to = vertex(field(a, "to"));
        arc.capacity = integer(field(a, "capacity"));
        arc.cost = int_list(field(a, "cost"));
        net.arcs.push_back(std::move(arc));
      }
      for (const auto& s : field(j, "sources")) net.sources.push_back(vertex(s));
      for (const auto& t : field(j, "sinks")) net.sinks.push_back(vertex(t));
      if (net.terminals().size() != n) schema("dimension must equal |sources| + |sinks|");
      try {
        net.validate();
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kInvalidArgument) schema(e.what());
        throw;
      }
      inst.lattice = apply_declared(j, mcf_instance(net, name));
    } else if (inst.kind == "pl-separable") {
      SubmodularSpec r = rho(field(j, "rho"), n);
      if (!r.is_submodular()) fail(ErrorCode::kInconsistentRank, "rho is not submodular");
      std::vector<PiecewiseLinear> pieces;
      for (const auto& p : field(j, "pieces")) {
        std::vector<Rational> b, v;
        for (const auto& e : field(p, "breakpoints")) b.push_back(rational(e));
        for (const auto& e : field(p, "values")) v.push_back(rational(e));
        pieces.emplace_back(std::move(b), std::move(v));
      }
      if (pieces.size() != n) schema("need one piecewise-linear function per coordinate");
      inst.pl = PlSeparableFunction(r, std::move(pieces));
      if (inst.pl->grid_denominator() == 1) inst.lattice = inst.pl->to_lattice_oracle(name);
    } else {
      schema("unknown kind '" + inst.kind + "'");
    }
    return inst;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kSchema, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) fail(ErrorCode::kSchema, e.what());
    throw;
  }
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  ensure(in.good(), ErrorCode::kSchema, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kSchema, path + ": " + e.what());
  }
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.rfind('.'); dot != std::string::npos) name = name.substr(0, dot);
  return parse_instance(j, name);
}

// The function as a "tabulated" instance listing its domain.
inline Json tabulated_json(const MOracle& f, const DomainEnumeration& dom) {
  Json points = Json::array(), values = Json::array();
  for (std::size_t t = 0; t < dom.size(); ++t) {
    points.push_back(dom.points()[t].coords());
    values.push_back(io_detail::rational_json(dom.values()[t].value()));
  }
  return {{"kind", "tabulated"},
          {"dimension", f.dim()},
          {"class", f.is_natural() ? "M-natural" : "M"},
          {"box", {{"lower", f.box().lower().coords()}, {"upper", f.box().upper().coords()}}},
          {"value_bound", io_detail::rational_json(f.value_bound())},
          {"points", points},
          {"values", values}};
}

inline Json rap_json(const RapData& data, bool natural) {
  Json costs = Json::array();
  for (const auto& t : data.tables) {
    Json row = Json::array();
    for (const auto& v : t.values()) row.push_back(io_detail::rational_json(v));
    costs.push_back(row);
  }
  return {{"kind", "rap"},
          {"dimension", data.rho.n()},
          {"variant", natural ? "rap2" : "rap1"},
          {"rho", io_detail::rho_json(data.rho)},
          {"costs", costs}};
}

// "1,2,0" style lists.
inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

inline IntPoint parse_int_point(const std::string& text) {
  std::vector<std::int64_t> v;
  for (const auto& s : split_list(text)) v.push_back(to_int64(parse_rational(s)));
  ensure(!v.empty(), ErrorCode::kSchema, "empty point");
  return IntPoint(std::move(v));
}

inline RatPoint parse_rat_point(const std::string& text) {
  std::vector<Rational> v;
  for (const auto& s : split_list(text)) v.push_back(parse_rational(s));
  ensure(!v.empty(), ErrorCode::kSchema, "empty point");
  return RatPoint(std::move(v));
}

// 1-based labels to 0-based indices.
inline IndexSet parse_index_set(const std::string& text, std::size_t n) {
  IndexSet out;
  for (const auto& s : split_list(text)) {
    const std::int64_t i = to_int64(parse_rational(s));
    ensure(i >= 1 && static_cast<std::size_t>(i) <= n, ErrorCode::kSchema,
           "index " + s + " out of range 1.." + std::to_string(n));
    out.push_back(static_cast<Index>(i - 1));
  }
  return out;
}

inline std::string length_str(std::int64_t v) { return std::to_string(v); }
inline std::string length_str(const Rational& v) { return to_string(v); }

// iter,outer,i,j,length,slope,f_value with 1-based indices, j = 0 for the
// null index.
template <class Length>
void write_trace_csv(std::ostream& out, const BasicSolveTrace<Length>& trace) {
  out << "iter,outer,i,j,length,slope,f_value\n";
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    const auto& s = trace.steps[t];
    out << t + 1 << ',' << s.outer << ',' << s.direction.inc_label() << ','
        << s.direction.dec_label() << ',' << length_str(s.length) << ',' << s.slope << ','
        << s.value_after << '\n';
  }
}

}  // namespace mconv
