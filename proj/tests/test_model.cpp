#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "simpleroute/model.hpp"
#include "support/random_net.hpp"

using namespace simpleroute;
using testsup::fails_with;
using testsup::pair_eq;

namespace {

// s --ew-- a --ew-- t with a north spur at a; ew is two-way, sp one-way.
RoadNetwork tee_net(double spur_turn = -1.0) {
  NetworkBuilder b;
  NodeId s = b.add_node("s", 0, 0);
  NodeId a = b.add_node("a", 3, 0);
  NodeId t = b.add_node("t", 7, 0);
  NodeId u = b.add_node("u", 3, 4);
  RoadId ew = b.add_road("ew", false, {s, a, t});
  RoadId sp = b.add_road("sp", true, {a, u});
  if (spur_turn >= 0.0) b.set_turn_cost(a, ew, sp, spur_turn);
  return b.build();
}

}  // namespace

TEST_CASE("tolerant comparisons") {
  CHECK(approx::eq(1.0, 1.0 + 1e-10));
  CHECK(!approx::eq(1.0, 1.0 + 1e-8));
  CHECK(approx::eq(0.0, 1e-13));
  CHECK(!approx::lt(1.0, 1.0 + 1e-10));
  CHECK(approx::lt(1.0, 1.1));
  CHECK(approx::le(1.0, 1.0 + 1e-10));
  CHECK(approx::le(1.0, 1.0));
  CHECK(!approx::le(1.1, 1.0));
  CHECK(approx::eq(1e12, 1e12 + 1.0));
}

TEST_CASE("lexicographic pair orders") {
  CostPair a{5, 2}, b{9, 2}, c{5, 3};
  CHECK(fs_less(a, b));       // complexity tied, shorter wins
  CHECK(fs_less(b, c));       // fewer turns beats shorter
  CHECK(!fs_less(a, a));
  CHECK(sf_less(a, b));
  CHECK(sf_less(a, c));
  CHECK(sf_less(b, c) == false);
  CHECK(lex_less(LexOrder::fs, b, c));
  CHECK(lex_less(LexOrder::sf, c, b));
  CHECK(compare(LexOrder::fs, a, CostPair{5 + 1e-12, 2 + 1e-12}) ==
        Ordering::equal);
  CHECK(compare(LexOrder::fs, a, b) == Ordering::less);
  CHECK(compare(LexOrder::sf, c, a) == Ordering::greater);
  // Near-tie on the primary key falls through to the secondary.
  CHECK(fs_less(CostPair{1, 2 + 1e-12}, CostPair{2, 2}));
}

TEST_CASE("builder accepts the tee and wires adjacency") {
  RoadNetwork net = tee_net();
  CHECK(net.node_count() == 4);
  CHECK(net.road_count() == 2);
  NodeId s = find_node(net, "s"), a = find_node(net, "a");
  NodeId t = find_node(net, "t"), u = find_node(net, "u");
  RoadId ew = find_road(net, "ew"), sp = find_road(net, "sp");
  CHECK(find_node(net, "zz") == -1);
  CHECK(find_road(net, "zz") == -1);

  CHECK(net.road_of_edge(s, a) == ew);
  CHECK(net.road_of_edge(a, s) == ew);
  CHECK(net.road_of_edge(a, u) == sp);
  CHECK(net.road_of_edge(u, a) == -1);  // one-way
  CHECK(net.road_of_edge(s, t) == -1);  // not consecutive

  // Euclidean defaults from coordinates.
  CHECK(approx::eq(net.edge_length(s, a), 3.0));
  CHECK(approx::eq(net.edge_length(a, t), 4.0));
  CHECK(approx::eq(net.edge_length(a, u), 4.0));

  CHECK(net.node_on_road(a, ew));
  CHECK(net.node_on_road(a, sp));
  CHECK(!net.node_on_road(s, sp));
  CHECK(net.intersection_count() == 1);  // only a joins two roads

  CHECK(net.roads_at[a].size() == 2);
  CHECK(net.roads_at[s].size() == 1);
  CHECK(net.out[u].empty());
  CHECK(net.out[a].size() == 3);
}

TEST_CASE("turn costs: default, override, same road") {
  RoadNetwork net = tee_net(2.5);
  NodeId a = find_node(net, "a");
  RoadId ew = find_road(net, "ew"), sp = find_road(net, "sp");
  CHECK(approx::eq(net.turn(a, ew, sp), 2.5));
  CHECK(approx::eq(net.turn(a, sp, ew), 1.0));  // only one direction overridden
  CHECK(net.turn(a, ew, ew) == 0.0);
  CHECK(net.cmax == 2.5);
  CHECK(approx::eq(turn_cost(net, a, ew, sp), 2.5));
  CHECK(fails_with(Errc::node_not_on_road, [&] {
    turn_cost(net, find_node(net, "s"), ew, sp);
  }));

  RoadNetwork plain = tee_net();
  CHECK(plain.cmax == 1.0);
  CHECK(plain.turn_overrides.empty());
}

TEST_CASE("builder rejects malformed input") {
  CHECK(fails_with(Errc::invalid_route, [] { NetworkBuilder{}.build(); }));

  CHECK(fails_with(Errc::invalid_route, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    b.add_node("y");
    b.add_road("r", false, {x});
    b.build();
  }));

  CHECK(fails_with(Errc::invalid_route, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    b.add_road("r", false, {x, y, x});
    b.build();
  }));

  CHECK(fails_with(Errc::orphan_node, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    b.add_node("lonely");
    b.add_road("r", false, {x, y});
    b.build();
  }));

  // Same ordered pair in two roads, including via a two-way reversal.
  CHECK(fails_with(Errc::overlapping_roads, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    NodeId z = b.add_node("z");
    b.add_road("r1", false, {x, y, z});
    b.add_road("r2", true, {x, y});
    b.build();
  }));
  CHECK(fails_with(Errc::overlapping_roads, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    NodeId z = b.add_node("z");
    b.add_road("r1", true, {x, y, z});
    b.add_road("r2", false, {y, x});
    b.build();
  }));

  // Opposite one-way directions are two distinct ordered pairs: allowed.
  {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    b.add_road("fwd", true, {x, y});
    b.add_road("rev", true, {y, x});
    RoadNetwork net = b.build();
    CHECK(net.road_of_edge(x, y) == find_road(net, "fwd"));
    CHECK(net.road_of_edge(y, x) == find_road(net, "rev"));
  }

  CHECK(fails_with(Errc::non_positive_length, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    b.add_road("r", false, {x, y});
    b.set_length(x, y, 0.0);
    b.build();
  }));

  CHECK(fails_with(Errc::dangling_node_ref, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    NodeId z = b.add_node("z");
    b.add_road("r", false, {x, y, z});
    b.set_length(x, z, 1.0);  // not a consecutive pair
    b.build();
  }));

  CHECK(fails_with(Errc::negative_turn_cost, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    NodeId z = b.add_node("z");
    RoadId r1 = b.add_road("r1", false, {x, y});
    RoadId r2 = b.add_road("r2", false, {y, z});
    b.set_turn_cost(y, r1, r2, -0.5);
    b.build();
  }));

  CHECK(fails_with(Errc::same_road_override, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    RoadId r = b.add_road("r", false, {x, y});
    b.set_turn_cost(x, r, r, 1.0);
    b.build();
  }));

  CHECK(fails_with(Errc::node_not_on_road, [] {
    NetworkBuilder b;
    NodeId x = b.add_node("x");
    NodeId y = b.add_node("y");
    NodeId z = b.add_node("z");
    RoadId r1 = b.add_road("r1", false, {x, y});
    RoadId r2 = b.add_road("r2", false, {y, z});
    b.set_turn_cost(x, r1, r2, 1.0);  // x is not on r2
    b.build();
  }));
}

TEST_CASE("length overrides are direction insensitive") {
  NetworkBuilder b;
  NodeId x = b.add_node("x", 0, 0);
  NodeId y = b.add_node("y", 1, 0);
  NodeId z = b.add_node("z", 2, 0);
  b.add_road("r", false, {x, y, z});
  b.set_length(y, x, 7.25);  // reversed pair still names the segment
  RoadNetwork net = b.build();
  CHECK(approx::eq(net.edge_length(x, y), 7.25));
  CHECK(approx::eq(net.edge_length(y, x), 7.25));
  CHECK(approx::eq(net.edge_length(y, z), 1.0));
}

TEST_CASE("nodes without coordinates default to unit segments") {
  NetworkBuilder b;
  NodeId x = b.add_node("x");
  NodeId y = b.add_node("y", 1, 1);
  b.add_road("r", false, {x, y});
  RoadNetwork net = b.build();
  CHECK(approx::eq(net.edge_length(x, y), 1.0));
}

TEST_CASE("route cost helpers") {
  RoadNetwork net = tee_net();
  NodeId s = find_node(net, "s"), a = find_node(net, "a");
  NodeId t = find_node(net, "t"), u = find_node(net, "u");

  CHECK(route_length(net, {s}) == 0.0);
  CHECK(route_complexity(net, {s}) == 0.0);
  CHECK(approx::eq(route_length(net, {s, a, t}), 7.0));
  CHECK(route_complexity(net, {s, a, t}) == 0.0);  // stays on ew
  CHECK(approx::eq(route_complexity(net, {s, a, u}), 1.0));

  Route r = make_route(net, {s, a, u});
  CHECK(approx::eq(r.length, 7.0));
  CHECK(approx::eq(r.complexity, 1.0));
  CHECK(r.nodes.size() == 3);

  CHECK(fails_with(Errc::invalid_route, [&] { make_route(net, {s, t}); }));
  CHECK(fails_with(Errc::invalid_route, [&] { make_route(net, {u, a}); }));
  CHECK(fails_with(Errc::invalid_route, [&] { make_route(net, {}); }));
}

TEST_CASE("reverse network flips one-way roads and transposes overrides") {
  RoadNetwork net = tee_net(2.5);
  RoadNetwork rev = reverse_network(net);
  NodeId a = find_node(rev, "a"), u = find_node(rev, "u");
  NodeId s = find_node(rev, "s");
  RoadId ew = find_road(rev, "ew"), sp = find_road(rev, "sp");

  CHECK(rev.road_of_edge(u, a) == sp);
  CHECK(rev.road_of_edge(a, u) == -1);
  CHECK(rev.road_of_edge(a, s) == ew);  // two-way unchanged
  CHECK(rev.road_of_edge(s, a) == ew);
  CHECK(approx::eq(rev.turn(a, sp, ew), 2.5));  // transposed
  CHECK(approx::eq(rev.turn(a, ew, sp), 1.0));
  CHECK(rev.cmax == net.cmax);

  // Reversing twice restores every directed edge and override.
  RoadNetwork back = reverse_network(rev);
  for (NodeId n = 0; n < net.node_count(); ++n) {
    REQUIRE(back.out[n].size() == net.out[n].size());
    for (std::size_t i = 0; i < net.out[n].size(); ++i) {
      CHECK(back.out[n][i].to == net.out[n][i].to);
      CHECK(back.out[n][i].road == net.out[n][i].road);
      CHECK(approx::eq(back.out[n][i].length, net.out[n][i].length));
    }
  }
  CHECK(back.turn_overrides == net.turn_overrides);
}

TEST_CASE("random networks satisfy the structural contract") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RoadNetwork net = testsup::random_connected_net(seed, seed % 3 == 0);
    CHECK(net.node_count() >= 6);
    CHECK(net.node_count() <= 12);
    CHECK(net.road_count() >= 3);
    CHECK(testsup::strongly_connected(net));
    // Each directed edge belongs to exactly one road, and road_of_edge
    // agrees with the adjacency lists.
    for (NodeId n = 0; n < net.node_count(); ++n)
      for (const Edge& e : net.out[n]) {
        CHECK(net.road_of_edge(n, e.to) == e.road);
        CHECK(approx::eq(net.edge_length(n, e.to), e.length));
      }
    double cmax = net.default_turn_cost;
    for (const auto& [k, v] : net.turn_overrides) cmax = std::fmax(cmax, v);
    CHECK(net.cmax == cmax);
  }
}
