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

// Integer min-cost flow with convex arc costs, by successive shortest paths.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mconv/error.hpp"

namespace mconv {

struct FlowArc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t capacity = 0;
  // cost[t] = f_a(t) for t = 0..capacity; convex.
  std::vector<std::int64_t> cost;
};

struct FlowNetwork {
  std::size_t vertices = 0;
  std::vector<FlowArc> arcs;
  std::vector<std::size_t> sources;
  std::vector<std::size_t> sinks;

  // Sources first, then sinks: the coordinate order of the induced oracle.
  std::vector<std::size_t> terminals() const {
    std::vector<std::size_t> t = sources;
    t.insert(t.end(), sinks.begin(), sinks.end());
    return t;
  }

  void validate() const {
    for (const auto& a : arcs) {
      ensure(a.from < vertices && a.to < vertices && a.from != a.to, ErrorCode::kInvalidArgument,
             "arc endpoint out of range");
      ensure(a.capacity >= 0, ErrorCode::kInvalidArgument, "negative capacity");
      ensure(a.cost.size() == static_cast<std::size_t>(a.capacity) + 1,
             ErrorCode::kInvalidArgument, "arc cost table must cover [0, capacity]");
      for (std::size_t t = 1; t + 1 < a.cost.size(); ++t) {
        ensure(a.cost[t + 1] - a.cost[t] >= a.cost[t] - a.cost[t - 1],
               ErrorCode::kNonConvexTable, "arc cost is not convex");
      }
    }
    std::vector<int> role(vertices, 0);
    for (auto s : sources) {
      ensure(s < vertices && role[s] == 0, ErrorCode::kInvalidArgument, "bad source list");
      role[s] = 1;
    }
    for (auto t : sinks) {
      ensure(t < vertices && role[t] == 0, ErrorCode::kInvalidArgument,
             "sinks must be distinct vertices disjoint from the sources");
      role[t] = 2;
    }
  }
};

namespace detail {

class ResidualGraph {
 public:
  explicit ResidualGraph(std::size_t n) : out_(n) {}

  std::size_t add(std::size_t u, std::size_t v, std::int64_t cap, std::int64_t cost) {
    out_[u].push_back(edges_.size());
    edges_.push_back({v, cap, cost});
    out_[v].push_back(edges_.size());
    edges_.push_back({u, 0, -cost});
    return edges_.size() - 2;
  }

  void add_saturated(std::size_t u, std::size_t v, std::int64_t cap, std::int64_t cost) {
    const std::size_t e = add(u, v, cap, cost);
    edges_[e].cap = 0;
    edges_[e + 1].cap = cap;
  }

  // Sends up to `want` units from s to t along cheapest paths. Returns the
  // amount sent and adds its cost to `cost`.
  std::int64_t push(std::size_t s, std::size_t t, std::int64_t want, std::int64_t& cost) {
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    const std::size_t n = out_.size();
    std::int64_t sent = 0;
    while (sent < want) {
      // Bellman-Ford: residual costs may be negative on reverse edges, but
      // the residual graph never holds a negative cycle.
      std::vector<std::int64_t> dist(n, kInf);
      std::vector<std::size_t> via(n, SIZE_MAX);
      dist[s] = 0;
      for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (std::size_t u = 0; u < n; ++u) {
          if (dist[u] == kInf) continue;
          for (std::size_t e : out_[u]) {
            const Edge& ed = edges_[e];
            if (ed.cap > 0 && dist[u] + ed.cost < dist[ed.to]) {
              dist[ed.to] = dist[u] + ed.cost;
              via[ed.to] = e;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[t] == kInf) break;
      std::int64_t delta = want - sent;
      for (std::size_t v = t; v != s; v = edges_[via[v] ^ 1].to) {
        delta = std::min(delta, edges_[via[v]].cap);
      }
      for (std::size_t v = t; v != s; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].cap -= delta;
        edges_[via[v] ^ 1].cap += delta;
      }
      sent += delta;
      cost += delta * dist[t];
    }
    return sent;
  }

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
    std::int64_t cost;
  };
  std::vector<std::vector<std::size_t>> out_;
  std::vector<Edge> edges_;
};

}  // namespace detail

// Minimum of sum_a f_a(xi(a)) over integer flows 0 <= xi <= u whose net
// outflow at vertex v is supply[v]; nullopt when no such flow exists.
//
// Each arc becomes unit arcs priced f_a(t+1) - f_a(t). Negative unit arcs are
// saturated up front, which leaves a residual graph without negative cycles,
// and the remaining imbalance is routed from a super source to a super sink.
inline std::optional<std::int64_t> min_cost_flow(const FlowNetwork& net,
                                                 std::span<const std::int64_t> supply) {
  ensure(supply.size() == net.vertices, ErrorCode::kInvalidArgument, "supply size mismatch");
  std::int64_t total = 0;
  for (auto b : supply) total += b;
  if (total != 0) return std::nullopt;
  const std::size_t src = net.vertices, snk = net.vertices + 1;
  detail::ResidualGraph g(net.vertices + 2);
  std::vector<std::int64_t> excess(supply.begin(), supply.end());
  std::int64_t cost = 0;
  for (const auto& a : net.arcs) {
    cost += a.cost[0];
    for (std::int64_t t = 0; t < a.capacity; ++t) {
      const std::int64_t c = a.cost[t + 1] - a.cost[t];
      if (c < 0) {
        // Saturated: only the reverse residual edge, of cost -c > 0, is open.
        g.add_saturated(a.from, a.to, 1, c);
        cost += c;
        excess[a.from] -= 1;
        excess[a.to] += 1;
      } else {
        g.add(a.from, a.to, 1, c);
      }
    }
  }
  std::int64_t need = 0;
  for (std::size_t v = 0; v < net.vertices; ++v) {
    if (excess[v] > 0) {
      g.add(src, v, excess[v], 0);
      need += excess[v];
    } else if (excess[v] < 0) {
      g.add(v, snk, -excess[v], 0);
    }
  }
  if (g.push(src, snk, need, cost) != need) return std::nullopt;
  return cost;
}

}  // namespace mconv
