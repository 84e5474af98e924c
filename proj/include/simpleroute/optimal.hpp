#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simpleroute/model.hpp"

namespace simpleroute {

struct RouteAnswer {
  double len = 0.0;
  double cpl = 0.0;
  Route route;
  std::uint64_t labels_deheaped = 0;
  std::uint64_t labels_enheaped = 0;
};

// Label-setting searches on the expanded graph of (node, departure road)
// pairs. A label (n, r) stands for a route arriving at n that will leave
// along road r; staying on the arrival road costs no turn, so the first
// settled label at a node carries that node's exact optimum.
//
// deheap_trace, when given, receives the (len, cpl) key of every settled
// label in pop order.
RouteAnswer fastest_simplest(const RoadNetwork& net, NodeId source,
                             NodeId target,
                             std::vector<CostPair>* deheap_trace = nullptr);
RouteAnswer simplest_fastest(const RoadNetwork& net, NodeId source,
                             NodeId target,
                             std::vector<CostPair>* deheap_trace = nullptr);

// Single-source run over the whole network. len/cpl hold +infinity for
// nodes the search never reached. Keeps the settled-label forest so the
// optimal route to any reached node can be rebuilt afterwards.
class AllRun {
 public:
  std::vector<double> len, cpl;

  bool reached(NodeId n) const;
  // Node sequence source..n; throws Unreachable for unreached n.
  std::vector<NodeId> path_to(NodeId n) const;

 private:
  friend AllRun run_all(const RoadNetwork&, NodeId, LexOrder);
  std::vector<std::int32_t> first_label_;  // per node, -1 if unreached
  std::vector<NodeId> label_node_;         // settled-label forest
  std::vector<std::int32_t> label_prev_;
};

AllRun all_fastest_simplest(const RoadNetwork& net, NodeId source);
AllRun all_simplest_fastest(const RoadNetwork& net, NodeId source);

// Plain shortest path on edge lengths; cross-check utility.
double dijkstra_fastest(const RoadNetwork& net, NodeId source, NodeId target);

// Minimal-length route visiting roads exactly in seq order, driving at
// least one segment of each. Travel within a road follows the road's node
// sequence and direction. Returns nothing when no directed realization
// exists.
std::optional<Route> realize_road_sequence(const RoadNetwork& net,
                                           const std::vector<RoadId>& seq,
                                           NodeId source, NodeId target);

struct BslOptions {
  double timeout_seconds = 0.0;  // 0 disables the deadline
};

struct BslAnswer {
  double len = 0.0;
  double cpl = 0.0;
  Route route;
  // Every partial or complete road sequence the enumeration visits.
  std::uint64_t road_sequences_enumerated = 0;
  // True when no sequence of the intersection-graph hop count was
  // realizable as a directed route and deeper sequences were needed.
  bool depth_fallback = false;
};

// Baseline: breadth-first hop counts on the road intersection graph, then
// depth-limited enumeration of road sequences, realizing each complete
// sequence and keeping the shortest. Roads may repeat in a sequence (never
// consecutively); one-way roads can force such revisits. Requires turn
// costs that are all equal and positive, where fewest roads = simplest.
BslAnswer bsl_fastest_simplest(const RoadNetwork& net, NodeId source,
                               NodeId target, const BslOptions& opt = {});

}  // namespace simpleroute
