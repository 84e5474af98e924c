#pragma once

// Shared test helpers: a deterministic generator for small strongly
// connected networks, an intentionally broken search variant, and
// independent reimplementations used to cross-check library results.

#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "simpleroute/model.hpp"

namespace testsup {

using simpleroute::CostPair;
using simpleroute::Edge;
using simpleroute::NetworkBuilder;
using simpleroute::NodeId;
using simpleroute::RoadId;
using simpleroute::RoadNetwork;

// splitmix64; fixed across platforms so corpora are reproducible.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// Quarter-unit grid values in [1, 10]. Sums of these are exact in a double,
// so tie handling in tolerant comparisons matches exact arithmetic and the
// cross-checks below cannot drift from the library by rounding.
inline double dyadic_length(Rng& rng) {
  return static_cast<double>(4 + rng.below(37)) * 0.25;
}

// Strongly connected network with 6..12 nodes: a two-way cycle through every
// node split into three roads, plus a few extra roads, some one-way. Every
// consecutive node pair is used by exactly one road. Uniform unit turn costs
// unless with_overrides is set, which adds quarter-unit override entries.
inline RoadNetwork random_connected_net(std::uint64_t seed,
                                        bool with_overrides = false) {
  Rng rng(seed);
  const int n = 6 + static_cast<int>(rng.below(7));

  std::vector<NodeId> perm(n);
  NetworkBuilder b;
  for (int i = 0; i < n; ++i) perm[i] = b.add_node("v" + std::to_string(i));
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);

  auto key = [](NodeId a, NodeId c) {
    if (a > c) std::swap(a, c);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(c);
  };
  std::vector<std::uint64_t> used;
  auto is_used = [&](NodeId a, NodeId c) {
    std::uint64_t k = key(a, c);
    for (std::uint64_t u : used)
      if (u == k) return true;
    return false;
  };

  std::vector<std::vector<NodeId>> road_nodes;
  std::vector<bool> road_oneway;
  auto claim_road = [&](std::vector<NodeId> nodes, bool oneway) {
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
      used.push_back(key(nodes[i], nodes[i + 1]));
    road_nodes.push_back(std::move(nodes));
    road_oneway.push_back(oneway);
  };

  // Cycle split points keep each arc at one edge or more.
  int k1 = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2)));
  int k2 = k1 + 1 +
           static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1 - k1)));
  claim_road({perm.begin(), perm.begin() + k1 + 1}, false);
  claim_road({perm.begin() + k1, perm.begin() + k2 + 1}, false);
  {
    std::vector<NodeId> tail(perm.begin() + k2, perm.end());
    tail.push_back(perm[0]);
    claim_road(std::move(tail), false);
  }

  const int extras = 2 + static_cast<int>(rng.below(3));
  for (int r = 0; r < extras; ++r) {
    std::vector<NodeId> nodes{
        static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)))};
    const int want = 1 + static_cast<int>(rng.below(3));
    for (int step = 0; step < want; ++step) {
      std::vector<NodeId> cand;
      for (NodeId v = 0; v < n; ++v) {
        bool seen = false;
        for (NodeId u : nodes)
          if (u == v) seen = true;
        if (!seen && !is_used(nodes.back(), v)) cand.push_back(v);
      }
      if (cand.empty()) break;
      nodes.push_back(cand[rng.below(cand.size())]);
    }
    if (nodes.size() >= 2) claim_road(std::move(nodes), rng.below(10) < 3);
  }

  std::vector<RoadId> ids;
  for (std::size_t r = 0; r < road_nodes.size(); ++r)
    ids.push_back(
        b.add_road("r" + std::to_string(r), road_oneway[r], road_nodes[r]));
  for (const auto& nodes : road_nodes)
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
      b.set_length(nodes[i], nodes[i + 1], dyadic_length(rng));

  if (with_overrides) {
    std::vector<std::vector<RoadId>> at(n);
    for (std::size_t r = 0; r < road_nodes.size(); ++r)
      for (NodeId v : road_nodes[r]) at[v].push_back(ids[r]);
    b.set_default_turn_cost(static_cast<double>(2 + rng.below(5)) * 0.25);
    int wanted = 1 + static_cast<int>(rng.below(4));
    for (int tries = 0; tries < 20 && wanted > 0; ++tries) {
      NodeId v = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
      if (at[v].size() < 2) continue;
      RoadId from = at[v][rng.below(at[v].size())];
      RoadId to = at[v][rng.below(at[v].size())];
      if (from == to) continue;
      b.set_turn_cost(v, from, to, static_cast<double>(rng.below(9)) * 0.25);
      --wanted;
    }
  }
  return b.build();
}

inline bool strongly_connected(const RoadNetwork& net) {
  const int n = net.node_count();
  std::vector<std::vector<NodeId>> rev(n);
  for (NodeId u = 0; u < n; ++u)
    for (const Edge& e : net.out[u]) rev[e.to].push_back(u);
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<char> seen(n, 0);
    std::vector<NodeId> work{0};
    seen[0] = 1;
    while (!work.empty()) {
      NodeId u = work.back();
      work.pop_back();
      if (dir == 0) {
        for (const Edge& e : net.out[u])
          if (!seen[e.to]) seen[e.to] = 1, work.push_back(e.to);
      } else {
        for (NodeId v : rev[u])
          if (!seen[v]) seen[v] = 1, work.push_back(v);
      }
    }
    for (char s : seen)
      if (!s) return false;
  }
  return true;
}

// Route cost recomputed from first principles, bypassing the library's
// route_length / route_complexity.
inline CostPair path_costs(const RoadNetwork& net,
                           const std::vector<NodeId>& nodes) {
  CostPair c;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    c.len += net.edge_length(nodes[i], nodes[i + 1]);
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    RoadId in = net.road_of_edge(nodes[i - 1], nodes[i]);
    RoadId out = net.road_of_edge(nodes[i], nodes[i + 1]);
    if (in != out) c.cpl += net.turn(nodes[i], in, out);
  }
  return c;
}

// Plain recursive enumeration of simple node paths, independent of the
// library's route enumerator.
inline void brute_paths_rec(const RoadNetwork& net, NodeId target,
                            std::vector<NodeId>& path, std::vector<char>& used,
                            std::vector<std::vector<NodeId>>& out) {
  if (path.back() == target) {
    out.push_back(path);
    return;
  }
  for (const Edge& e : net.out[path.back()]) {
    if (used[e.to]) continue;
    used[e.to] = 1;
    path.push_back(e.to);
    brute_paths_rec(net, target, path, used, out);
    path.pop_back();
    used[e.to] = 0;
  }
}

inline std::vector<std::vector<NodeId>> brute_paths(const RoadNetwork& net,
                                                    NodeId source,
                                                    NodeId target) {
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> path{source};
  std::vector<char> used(net.node_count(), 0);
  used[source] = 1;
  brute_paths_rec(net, target, path, used, out);
  return out;
}

template <typename F>
inline bool fails_with(simpleroute::Errc code, F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const simpleroute::Error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

template <typename F>
inline bool fails_with_msg(simpleroute::Errc code, const std::string& needle,
                           F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const simpleroute::Error& e) {
    return e.code() == code &&
           std::string(e.what()).find(needle) != std::string::npos;
  } catch (...) {
    return false;
  }
  return false;
}

inline bool pair_eq(const CostPair& a, double len, double cpl) {
  return simpleroute::approx::eq(a.len, len) &&
         simpleroute::approx::eq(a.cpl, cpl);
}

// Textbook single-label-per-node search ordered by (complexity, length).
// Deliberately wrong: a node's best label need not extend into the best
// route through that node when the departure road differs, so this variant
// can overstate complexity. Kept as the counter-example foil.
inline CostPair broken_fs_pernode(const RoadNetwork& net, NodeId source,
                                  NodeId target) {
  const double inf = std::numeric_limits<double>::infinity();
  const int n = net.node_count();
  std::vector<double> cpl(n, inf), len(n, inf);
  std::vector<RoadId> in_road(n, -1);
  std::vector<char> done(n, 0);
  using Key = std::tuple<double, double, NodeId>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
  cpl[source] = 0.0;
  len[source] = 0.0;
  heap.push({0.0, 0.0, source});
  while (!heap.empty()) {
    auto [c, l, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const Edge& e : net.out[u]) {
      double turn = (in_road[u] < 0 || in_road[u] == e.road)
                        ? 0.0
                        : net.turn(u, in_road[u], e.road);
      double nc = c + turn;
      double nl = l + e.length;
      if (nc < cpl[e.to] || (nc == cpl[e.to] && nl < len[e.to])) {
        cpl[e.to] = nc;
        len[e.to] = nl;
        in_road[e.to] = e.road;
        heap.push({nc, nl, e.to});
      }
    }
  }
  return {len[target], cpl[target]};
}

}  // namespace testsup
