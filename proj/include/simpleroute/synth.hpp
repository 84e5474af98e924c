#pragma once

#include <cstdint>
#include <vector>

#include "simpleroute/model.hpp"

namespace simpleroute {

// A neighborhood slot of a backbone: the roads a template copy may attach
// to, plus the slot's placement square (center and half-extent).
struct Slot {
  std::vector<RoadId> roads;
  double cx = 0.0, cy = 0.0, half = 0.0;
};

struct Backbone {
  RoadNetwork net;
  std::vector<Slot> slots;
};

// Grid of tau horizontal and tau vertical two-way roads: tau^2 intersections
// and (tau-1)^2 slots. Requires tau >= 2.
Backbone gen_grid_backbone(int tau);

// tau concentric rings, each split into 4 arc roads at 4 radial roads:
// 4(tau+1) roads, 4*tau intersections, 4(tau-1)+1 slots. Requires tau >= 1.
Backbone gen_ring_backbone(int tau);

// One template copy per slot. Entrance nodes are spliced into the node
// sequence of an adjacent backbone road, so reaching a neighborhood from the
// backbone costs exactly one turn. Deterministic for a fixed seed.
RoadNetwork compose(const Backbone& backbone, const RoadNetwork& tmpl,
                    const std::vector<NodeId>& entrances, std::uint64_t seed);

// Stock 30-node neighborhood: 6 through rows joined end-to-end by staggered
// one-block connectors (11 roads), entrances all on the first two rows.
RoadNetwork default_template();
std::vector<NodeId> default_template_entrances();

struct Fixture {
  RoadNetwork net;
  NodeId source = -1;
  NodeId target = -1;
};

// Hand-built 13-node, 7-road example network with a rich route inventory:
// the fastest and simplest routes differ, and several near-optimal
// trade-offs sit between them. Certified against the oracle in the tests.
Fixture fixture_table1();

}  // namespace simpleroute
