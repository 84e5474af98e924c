#include "simpleroute/optimal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <utility>

namespace simpleroute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_node(const RoadNetwork& net, NodeId n) {
  if (n < 0 || n >= net.node_count())
    fail(Errc::dangling_node_ref, "node id " + std::to_string(n) +
                                      " outside network");
}

// Exact lexicographic compare; tolerance would break the strict weak
// ordering the heap needs.
inline bool key_less(LexOrder order, double len_a, double cpl_a, double len_b,
                     double cpl_b) {
  if (order == LexOrder::fs) {
    if (cpl_a != cpl_b) return cpl_a < cpl_b;
    return len_a < len_b;
  }
  if (len_a != len_b) return len_a < len_b;
  return cpl_a < cpl_b;
}

struct HeapItem {
  double len, cpl;
  NodeId node;
  RoadId road;
  std::int32_t slot;
};

struct HeapAfter {
  LexOrder order;
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    if (key_less(order, a.len, a.cpl, b.len, b.cpl)) return false;
    if (key_less(order, b.len, b.cpl, a.len, a.cpl)) return true;
    if (a.node != b.node) return a.node > b.node;
    return a.road > b.road;
  }
};

// Label-setting search over (node, departure road) pairs. Labels live in
// flat arrays; slot(n, k) covers the k-th road of roads_at[n].
struct LabelSearch {
  const RoadNetwork& net;
  LexOrder order;
  std::vector<std::size_t> offset;
  std::vector<double> len, cpl;
  std::vector<std::int32_t> prev;
  std::vector<NodeId> slot_node;
  std::vector<char> state;  // 0 untouched, 1 open, 2 settled
  std::priority_queue<HeapItem, std::vector<HeapItem>, HeapAfter> heap;
  std::uint64_t deheaped = 0, enheaped = 0;

  LabelSearch(const RoadNetwork& n, LexOrder o)
      : net(n), order(o), heap(HeapAfter{o}) {
    offset.resize(net.node_count() + 1, 0);
    for (NodeId v = 0; v < net.node_count(); ++v)
      offset[v + 1] = offset[v] + net.roads_at[v].size();
    std::size_t total = offset[net.node_count()];
    len.assign(total, kInf);
    cpl.assign(total, kInf);
    prev.assign(total, -1);
    state.assign(total, 0);
    slot_node.resize(total);
    for (NodeId v = 0; v < net.node_count(); ++v)
      for (std::size_t k = 0; k < net.roads_at[v].size(); ++k)
        slot_node[offset[v] + k] = v;
  }

  std::int32_t slot_of(NodeId n, RoadId r) const {
    const auto& rs = net.roads_at[n];
    auto it = std::lower_bound(rs.begin(), rs.end(), r);
    return static_cast<std::int32_t>(offset[n] + (it - rs.begin()));
  }

  void seed(NodeId source) {
    for (RoadId r : net.roads_at[source]) {
      std::int32_t s = slot_of(source, r);
      len[s] = 0.0;
      cpl[s] = 0.0;
      state[s] = 1;
      heap.push({0.0, 0.0, source, r, s});
      ++enheaped;
    }
  }

  // Settles the next label; returns its slot, or -1 when the heap is done.
  std::int32_t settle() {
    while (!heap.empty()) {
      HeapItem it = heap.top();
      heap.pop();
      if (state[it.slot] != 1 || it.len != len[it.slot] ||
          it.cpl != cpl[it.slot])
        continue;  // superseded or already settled
      state[it.slot] = 2;
      ++deheaped;
      return it.slot;
    }
    return -1;
  }

  void extend(std::int32_t s) {
    NodeId nx = slot_node[s];
    RoadId ri = net.roads_at[nx][s - static_cast<std::int32_t>(offset[nx])];
    double base_len = len[s], base_cpl = cpl[s];
    for (const Edge& e : net.out[nx]) {
      if (e.road != ri) continue;  // edges along the departure road only
      NodeId ny = e.to;
      double nlen = base_len + e.length;
      for (RoadId rj : net.roads_at[ny]) {
        double ncpl = base_cpl + net.turn(ny, ri, rj);
        std::int32_t t = slot_of(ny, rj);
        if (state[t] == 2) continue;
        if (state[t] == 1 && !key_less(order, nlen, ncpl, len[t], cpl[t]))
          continue;
        len[t] = nlen;
        cpl[t] = ncpl;
        prev[t] = s;
        state[t] = 1;
        heap.push({nlen, ncpl, ny, rj, t});
        ++enheaped;
      }
    }
  }

  std::vector<NodeId> backtrack(std::int32_t s) const {
    std::vector<NodeId> nodes;
    for (std::int32_t cur = s; cur >= 0; cur = prev[cur])
      nodes.push_back(slot_node[cur]);
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
  }
};

RouteAnswer single_pair(const RoadNetwork& net, NodeId source, NodeId target,
                        LexOrder order, std::vector<CostPair>* trace) {
  check_node(net, source);
  check_node(net, target);
  LabelSearch ls(net, order);
  ls.seed(source);
  for (;;) {
    std::int32_t s = ls.settle();
    if (s < 0) fail(Errc::unreachable, "no route to target");
    if (trace) trace->push_back({ls.len[s], ls.cpl[s]});
    if (ls.slot_node[s] == target) {
      RouteAnswer ans;
      ans.len = ls.len[s];
      ans.cpl = ls.cpl[s];
      ans.route = make_route(net, ls.backtrack(s));
      ans.labels_deheaped = ls.deheaped;
      ans.labels_enheaped = ls.enheaped;
      return ans;
    }
    ls.extend(s);
  }
}

}  // namespace

bool AllRun::reached(NodeId n) const { return std::isfinite(len[n]); }

std::vector<NodeId> AllRun::path_to(NodeId n) const {
  if (n < 0 || n >= static_cast<NodeId>(first_label_.size()) ||
      first_label_[n] < 0)
    fail(Errc::unreachable, "node never reached");
  std::vector<NodeId> nodes;
  for (std::int32_t cur = first_label_[n]; cur >= 0; cur = label_prev_[cur])
    nodes.push_back(label_node_[cur]);
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

AllRun run_all(const RoadNetwork& net, NodeId source, LexOrder order) {
  check_node(net, source);
  LabelSearch ls(net, order);
  ls.seed(source);
  AllRun run;
  run.len.assign(net.node_count(), kInf);
  run.cpl.assign(net.node_count(), kInf);
  run.first_label_.assign(net.node_count(), -1);
  for (;;) {
    std::int32_t s = ls.settle();
    if (s < 0) break;
    NodeId n = ls.slot_node[s];
    if (run.first_label_[n] < 0) {
      run.first_label_[n] = s;
      run.len[n] = ls.len[s];
      run.cpl[n] = ls.cpl[s];
    }
    ls.extend(s);
  }
  run.label_node_ = std::move(ls.slot_node);
  run.label_prev_ = std::move(ls.prev);
  return run;
}

RouteAnswer fastest_simplest(const RoadNetwork& net, NodeId source,
                             NodeId target, std::vector<CostPair>* trace) {
  return single_pair(net, source, target, LexOrder::fs, trace);
}

RouteAnswer simplest_fastest(const RoadNetwork& net, NodeId source,
                             NodeId target, std::vector<CostPair>* trace) {
  return single_pair(net, source, target, LexOrder::sf, trace);
}

AllRun all_fastest_simplest(const RoadNetwork& net, NodeId source) {
  return run_all(net, source, LexOrder::fs);
}

AllRun all_simplest_fastest(const RoadNetwork& net, NodeId source) {
  return run_all(net, source, LexOrder::sf);
}

double dijkstra_fastest(const RoadNetwork& net, NodeId source, NodeId target) {
  check_node(net, source);
  check_node(net, target);
  std::vector<double> dist(net.node_count(), kInf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, n] = heap.top();
    heap.pop();
    if (d != dist[n]) continue;
    if (n == target) return d;
    for (const Edge& e : net.out[n]) {
      double nd = d + e.length;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        heap.push({nd, e.to});
      }
    }
  }
  fail(Errc::unreachable, "no path to target");
}

namespace {

int position_on(const Road& r, NodeId n) {
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    if (r.nodes[i] == n) return static_cast<int>(i);
  return -1;
}

// Directed distance and node path from a to b along road r; nothing when
// the direction is not drivable.
std::optional<std::pair<double, std::vector<NodeId>>> along_road(
    const RoadNetwork& net, RoadId r, NodeId a, NodeId b) {
  const Road& road = net.roads[r];
  int pa = position_on(road, a), pb = position_on(road, b);
  if (pa < 0 || pb < 0) return std::nullopt;
  if (pa > pb && road.oneway) return std::nullopt;
  int step = pa <= pb ? 1 : -1;
  double sum = 0.0;
  std::vector<NodeId> path;
  path.push_back(a);
  for (int i = pa; i != pb; i += step) {
    sum += net.edge_length(road.nodes[i], road.nodes[i + step]);
    path.push_back(road.nodes[i + step]);
  }
  return std::make_pair(sum, std::move(path));
}

}  // namespace

std::optional<Route> realize_road_sequence(const RoadNetwork& net,
                                           const std::vector<RoadId>& seq,
                                           NodeId source, NodeId target) {
  if (seq.empty()) return std::nullopt;
  // layer[i]: road-entry node -> (cost from source, entry node of road i-1)
  std::vector<std::map<NodeId, std::pair<double, NodeId>>> layer(seq.size());
  layer[0][source] = {0.0, -1};
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const Road& next = net.roads[seq[i + 1]];
    for (NodeId v : next.nodes) {
      if (!net.node_on_road(v, seq[i])) continue;
      for (const auto& [u, entry] : layer[i]) {
        if (u == v) continue;  // every road in the sequence must be driven
        auto hop = along_road(net, seq[i], u, v);
        if (!hop) continue;
        double c = entry.first + hop->first;
        auto it = layer[i + 1].find(v);
        if (it == layer[i + 1].end())
          layer[i + 1].emplace(v, std::make_pair(c, u));
        else if (c < it->second.first)
          it->second = {c, u};
      }
    }
  }
  double best = kInf;
  NodeId best_u = -1;
  for (const auto& [u, entry] : layer.back()) {
    if (u == target) continue;
    auto hop = along_road(net, seq.back(), u, target);
    if (!hop) continue;
    double c = entry.first + hop->first;
    if (c < best) {
      best = c;
      best_u = u;
    }
  }
  if (best_u < 0) return std::nullopt;

  std::vector<NodeId> entries(seq.size());
  entries.back() = best_u;
  for (std::size_t i = seq.size() - 1; i > 0; --i)
    entries[i - 1] = layer[i].at(entries[i]).second;
  std::vector<NodeId> nodes{source};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    NodeId from = entries[i];
    NodeId to = i + 1 < seq.size() ? entries[i + 1] : target;
    auto hop = along_road(net, seq[i], from, to);
    for (std::size_t k = 1; k < hop->second.size(); ++k)
      nodes.push_back(hop->second[k]);
  }
  return make_route(net, std::move(nodes));
}

BslAnswer bsl_fastest_simplest(const RoadNetwork& net, NodeId source,
                               NodeId target, const BslOptions& opt) {
  check_node(net, source);
  check_node(net, target);
  if (net.default_turn_cost <= 0.0)
    fail(Errc::unsupported_cost_table, "needs a positive uniform turn cost");
  for (const auto& [key, value] : net.turn_overrides)
    if (value != net.default_turn_cost)
      fail(Errc::unsupported_cost_table, "needs uniform turn costs");

  BslAnswer ans;
  if (source == target) {
    ans.route = make_route(net, {source});
    return ans;
  }

  // Roads become vertices; sharing a node makes them adjacent.
  int R = net.road_count();
  std::vector<std::vector<RoadId>> adj(R);
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& rs = net.roads_at[n];
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < rs.size(); ++j)
        if (i != j) adj[rs[i]].push_back(rs[j]);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  // Hops from each road to the nearest road through the target.
  std::vector<int> dist_t(R, -1);
  std::queue<RoadId> bfs;
  for (RoadId r : net.roads_at[target]) {
    dist_t[r] = 0;
    bfs.push(r);
  }
  while (!bfs.empty()) {
    RoadId r = bfs.front();
    bfs.pop();
    for (RoadId q : adj[r])
      if (dist_t[q] < 0) {
        dist_t[q] = dist_t[r] + 1;
        bfs.push(q);
      }
  }

  int m0 = -1;
  for (RoadId r : net.roads_at[source])
    if (dist_t[r] >= 0 && (m0 < 0 || dist_t[r] + 1 < m0)) m0 = dist_t[r] + 1;
  if (m0 < 0) fail(Errc::unreachable, "roads of source and target disjoint");

  auto started = std::chrono::steady_clock::now();
  auto expired = [&]() {
    if (opt.timeout_seconds <= 0.0) return false;
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - started;
    return el.count() > opt.timeout_seconds;
  };

  std::vector<RoadId> seq;
  bool found = false;
  double best_len = kInf;
  Route best_route;

  // Depth-limited dfs over all walks of exactly `depth` roads starting at a
  // source road; walks ending on a road through the target are realized.
  // Consecutive entries differ, revisits are allowed (one-way roads can
  // force them). No other pruning: this is the blind baseline, and the
  // enumeration counter is its cost profile.
  int depth = 0;
  auto dfs = [&](auto&& self, RoadId r) -> void {
    seq.push_back(r);
    ++ans.road_sequences_enumerated;
    if ((ans.road_sequences_enumerated & 1023) == 0 && expired())
      fail(Errc::timeout, "road sequence enumeration exceeded the deadline");
    if (static_cast<int>(seq.size()) == depth) {
      if (dist_t[r] == 0) {
        auto route = realize_road_sequence(net, seq, source, target);
        if (route && route->length < best_len) {
          best_len = route->length;
          best_route = std::move(*route);
          found = true;
        }
      }
    } else {
      for (RoadId q : adj[r])
        if (q != r) self(self, q);
    }
    seq.pop_back();
  };

  for (depth = m0; depth <= net.node_count(); ++depth) {
    for (RoadId r : net.roads_at[source]) dfs(dfs, r);
    if (found) {
      ans.depth_fallback = depth > m0;
      ans.len = best_route.length;
      ans.cpl = best_route.complexity;
      ans.route = std::move(best_route);
      return ans;
    }
  }
  fail(Errc::unreachable, "no realizable road sequence");
}

}  // namespace simpleroute
