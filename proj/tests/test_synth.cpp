#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "simpleroute/io.hpp"
#include "simpleroute/oracle.hpp"
#include "simpleroute/synth.hpp"
#include "support/random_net.hpp"

using namespace simpleroute;
using testsup::fails_with;
using testsup::pair_eq;

TEST_CASE("example network certification against the oracle") {
  Fixture fx = fixture_table1();
  CHECK(fx.source == find_node(fx.net, "ns"));
  CHECK(fx.target == find_node(fx.net, "nt"));
  CHECK(fx.net.node_count() == 13);
  CHECK(fx.net.road_count() == 7);
  CHECK(testsup::strongly_connected(fx.net));
  CHECK(fx.net.default_turn_cost == 1.0);
  CHECK(fx.net.turn_overrides.empty());

  std::vector<Route> routes =
      enumerate_simple_routes(fx.net, fx.source, fx.target);
  CHECK(pair_eq(oracle_best(routes, LexOrder::fs), 40, 1));
  CHECK(pair_eq(oracle_best(routes, LexOrder::sf), 10, 4));
  CHECK(pair_eq(oracle_near(routes, 1.0, NearMode::snf), 20, 3));
  CHECK(pair_eq(oracle_near(routes, 2.0, NearMode::snf), 30, 2));
  CHECK(pair_eq(oracle_near(routes, 1.0, NearMode::fns), 30, 2));
}

TEST_CASE("grid backbone formulas") {
  for (int tau = 2; tau <= 5; ++tau) {
    Backbone bb = gen_grid_backbone(tau);
    CHECK(bb.net.road_count() == 2 * tau);
    CHECK(bb.net.intersection_count() == tau * tau);
    CHECK(static_cast<int>(bb.slots.size()) == (tau - 1) * (tau - 1));
    CHECK(testsup::strongly_connected(bb.net));
    for (const Slot& slot : bb.slots) {
      CHECK(!slot.roads.empty());
      CHECK(slot.half > 0.0);
      for (RoadId r : slot.roads) {
        CHECK(r >= 0);
        CHECK(r < bb.net.road_count());
      }
    }
  }
  CHECK(fails_with(Errc::tau_too_small, [] { gen_grid_backbone(1); }));
}

TEST_CASE("ring backbone formulas") {
  for (int tau = 1; tau <= 4; ++tau) {
    Backbone bb = gen_ring_backbone(tau);
    CHECK(bb.net.road_count() == 4 * (tau + 1));
    CHECK(bb.net.intersection_count() == 4 * tau);
    CHECK(static_cast<int>(bb.slots.size()) == 4 * (tau - 1) + 1);
    CHECK(testsup::strongly_connected(bb.net));
  }
  CHECK(fails_with(Errc::tau_too_small, [] { gen_ring_backbone(0); }));
}

TEST_CASE("stock neighborhood template") {
  RoadNetwork tmpl = default_template();
  CHECK(tmpl.node_count() == 30);
  CHECK(tmpl.road_count() == 11);
  CHECK(testsup::strongly_connected(tmpl));
  std::vector<NodeId> entr = default_template_entrances();
  CHECK(entr.size() == 6);
  for (NodeId e : entr) {
    CHECK(e >= 0);
    CHECK(e < tmpl.node_count());
  }
}

TEST_CASE("composition wiring and determinism") {
  Backbone bb = gen_grid_backbone(2);
  RoadNetwork tmpl = default_template();
  std::vector<NodeId> entr = default_template_entrances();

  RoadNetwork net = compose(bb, tmpl, entr, 42);
  CHECK(net.node_count() ==
        bb.net.node_count() +
            static_cast<int>(bb.slots.size()) * tmpl.node_count());
  CHECK(net.road_count() ==
        bb.net.road_count() +
            static_cast<int>(bb.slots.size()) * tmpl.road_count());
  CHECK(testsup::strongly_connected(net));

  // Same seed, same bytes; composition is a pure function of its inputs.
  CHECK(write_network(net) == write_network(compose(bb, tmpl, entr, 42)));

  // Every seed must build a valid network even when entrances are adjacent
  // in the template and could collide inside one backbone road.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RoadNetwork c = compose(bb, tmpl, entr, seed);
    CHECK(testsup::strongly_connected(c));
  }

  Backbone ring = gen_ring_backbone(2);
  RoadNetwork rc = compose(ring, tmpl, entr, 7);
  CHECK(rc.road_count() ==
        ring.net.road_count() +
            static_cast<int>(ring.slots.size()) * tmpl.road_count());
  CHECK(testsup::strongly_connected(rc));
}

TEST_CASE("composition copies template metrics verbatim") {
  Backbone bb = gen_grid_backbone(2);
  RoadNetwork tmpl = default_template();
  RoadNetwork net = compose(bb, tmpl, default_template_entrances(), 3);
  // Copied segments keep the template's lengths even though the copy is
  // drawn scaled into the slot.
  for (const Road& r : tmpl.roads) {
    for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) {
      NodeId a = find_node(net, "s0_" + tmpl.node_names[r.nodes[i]]);
      NodeId b = find_node(net, "s0_" + tmpl.node_names[r.nodes[i + 1]]);
      REQUIRE(a >= 0);
      REQUIRE(b >= 0);
      CHECK(approx::eq(net.edge_length(a, b),
                       tmpl.edge_length(r.nodes[i], r.nodes[i + 1])));
    }
  }
}

TEST_CASE("composition carries turn overrides into every copy") {
  NetworkBuilder tb;
  NodeId a = tb.add_node("a", 0, 0);
  NodeId m = tb.add_node("m", 1, 0);
  NodeId c = tb.add_node("c", 1, 1);
  RoadId r1 = tb.add_road("one", false, {a, m});
  RoadId r2 = tb.add_road("two", false, {m, c});
  tb.set_turn_cost(m, r1, r2, 0.25);
  RoadNetwork tmpl = tb.build();

  Backbone bb = gen_grid_backbone(3);  // four slots
  RoadNetwork net = compose(bb, tmpl, {a, c}, 9);
  for (std::size_t s = 0; s < bb.slots.size(); ++s) {
    std::string tag = "s" + std::to_string(s) + "_";
    NodeId mm = find_node(net, tag + "m");
    RoadId q1 = find_road(net, tag + "one");
    RoadId q2 = find_road(net, tag + "two");
    REQUIRE(mm >= 0);
    CHECK(approx::eq(net.turn(mm, q1, q2), 0.25));
    CHECK(approx::eq(net.turn(mm, q2, q1), 1.0));
  }
}

TEST_CASE("one-road template on the small grid") {
  NetworkBuilder tb;
  NodeId x = tb.add_node("x", 0, 0);
  NodeId y = tb.add_node("y", 1, 0);
  NodeId z = tb.add_node("z", 2, 0);
  tb.add_road("lane", false, {x, y, z});
  RoadNetwork tmpl = tb.build();

  Backbone bb = gen_grid_backbone(2);
  RoadNetwork net = compose(bb, tmpl, {x, z}, 1);
  CHECK(net.node_count() == 4 + 3);
  CHECK(net.road_count() == 4 + 1);
  CHECK(testsup::strongly_connected(net));
}

TEST_CASE("composition rejects unusable inputs") {
  Backbone bb = gen_grid_backbone(2);
  RoadNetwork tmpl = default_template();
  CHECK(fails_with(Errc::incompatible_template,
                   [&] { compose(bb, tmpl, {}, 1); }));
  CHECK(fails_with(Errc::incompatible_template,
                   [&] { compose(bb, tmpl, {0, 99}, 1); }));
  CHECK(fails_with(Errc::incompatible_template,
                   [&] { compose(bb, tmpl, {0, 0}, 1); }));
}
