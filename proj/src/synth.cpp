#include "simpleroute/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace simpleroute {

namespace {

// Portable deterministic generator (splitmix64); std distributions vary
// across standard libraries, so draws stay hand-rolled.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

std::string num(int v) { return std::to_string(v); }

}  // namespace

Backbone gen_grid_backbone(int tau) {
  if (tau < 2) fail(Errc::tau_too_small, "grid requires tau >= 2");
  const double spacing = 10.0;
  Backbone bb;
  NetworkBuilder b;
  // Node (i,j): row i, column j.
  for (int i = 0; i < tau; ++i)
    for (int j = 0; j < tau; ++j)
      b.add_node("g" + num(i) + "_" + num(j), j * spacing, i * spacing);
  auto at = [tau](int i, int j) { return static_cast<NodeId>(i * tau + j); };

  std::vector<RoadId> hroad(tau), vroad(tau);
  for (int i = 0; i < tau; ++i) {
    std::vector<NodeId> nodes;
    for (int j = 0; j < tau; ++j) nodes.push_back(at(i, j));
    hroad[i] = b.add_road("h" + num(i), false, std::move(nodes));
  }
  for (int j = 0; j < tau; ++j) {
    std::vector<NodeId> nodes;
    for (int i = 0; i < tau; ++i) nodes.push_back(at(i, j));
    vroad[j] = b.add_road("v" + num(j), false, std::move(nodes));
  }
  bb.net = b.build();

  for (int i = 0; i + 1 < tau; ++i)
    for (int j = 0; j + 1 < tau; ++j) {
      Slot s;
      s.roads = {hroad[i], hroad[i + 1], vroad[j], vroad[j + 1]};
      s.cx = (j + 0.5) * spacing;
      s.cy = (i + 0.5) * spacing;
      s.half = spacing / 2.0;
      bb.slots.push_back(std::move(s));
    }
  return bb;
}

Backbone gen_ring_backbone(int tau) {
  if (tau < 1) fail(Errc::tau_too_small, "ring requires tau >= 1");
  const double spacing = 10.0;
  Backbone bb;
  NetworkBuilder b;

  // Crossing of ring r (1-based) with radial k, on the axes.
  auto axis = [](int k) {
    switch (k & 3) {
      case 0: return std::make_pair(1.0, 0.0);
      case 1: return std::make_pair(0.0, 1.0);
      case 2: return std::make_pair(-1.0, 0.0);
      default: return std::make_pair(0.0, -1.0);
    }
  };
  std::vector<std::vector<NodeId>> cross(tau + 1, std::vector<NodeId>(4));
  for (int r = 1; r <= tau; ++r)
    for (int k = 0; k < 4; ++k) {
      auto [dx, dy] = axis(k);
      cross[r][k] =
          b.add_node("c" + num(r) + "_" + num(k), dx * r * spacing,
                     dy * r * spacing);
    }
  // Dead-end termini keep radial roads two nodes long even at tau = 1; they
  // sit on one road only and so are not intersections.
  std::vector<NodeId> term(4);
  for (int k = 0; k < 4; ++k) {
    auto [dx, dy] = axis(k);
    term[k] = b.add_node("t" + num(k), dx * (tau + 1) * spacing,
                         dy * (tau + 1) * spacing);
  }

  std::vector<std::vector<RoadId>> arc(tau + 1, std::vector<RoadId>(4));
  for (int r = 1; r <= tau; ++r)
    for (int k = 0; k < 4; ++k)
      arc[r][k] = b.add_road("a" + num(r) + "_" + num(k), false,
                             {cross[r][k], cross[r][(k + 1) & 3]});
  std::vector<RoadId> radial(4);
  for (int k = 0; k < 4; ++k) {
    std::vector<NodeId> nodes;
    for (int r = 1; r <= tau; ++r) nodes.push_back(cross[r][k]);
    nodes.push_back(term[k]);
    radial[k] = b.add_road("r" + num(k), false, std::move(nodes));
  }
  bb.net = b.build();

  // Central slot inside ring 1.
  {
    Slot s;
    s.roads = {arc[1][0], arc[1][1], arc[1][2], arc[1][3]};
    s.cx = 0.0;
    s.cy = 0.0;
    s.half = spacing * 0.35;
    bb.slots.push_back(std::move(s));
  }
  // Annulus sectors between consecutive rings.
  for (int r = 1; r < tau; ++r)
    for (int k = 0; k < 4; ++k) {
      Slot s;
      s.roads = {arc[r][k], arc[r + 1][k], radial[k], radial[(k + 1) & 3]};
      double ang = (k + 0.5) * (3.14159265358979323846 / 2.0);
      s.cx = (r + 0.5) * spacing * std::cos(ang);
      s.cy = (r + 0.5) * spacing * std::sin(ang);
      s.half = spacing * 0.3;
      bb.slots.push_back(std::move(s));
    }
  return bb;
}

RoadNetwork compose(const Backbone& backbone, const RoadNetwork& tmpl,
                    const std::vector<NodeId>& entrances, std::uint64_t seed) {
  if (entrances.empty())
    fail(Errc::incompatible_template, "template lists no entrances");
  for (NodeId e : entrances)
    if (e < 0 || e >= tmpl.node_count())
      fail(Errc::incompatible_template, "entrance id out of range");
  {
    std::vector<NodeId> sorted = entrances;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(Errc::incompatible_template, "duplicate entrance");
  }
  if (backbone.slots.empty())
    fail(Errc::incompatible_template, "backbone has no slots");

  // Template bounding box for scaling copies into slot squares.
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  bool have_box = false;
  for (const auto& c : tmpl.coords) {
    if (!c) continue;
    if (!have_box) {
      minx = maxx = c->first;
      miny = maxy = c->second;
      have_box = true;
    } else {
      minx = std::fmin(minx, c->first);
      maxx = std::fmax(maxx, c->first);
      miny = std::fmin(miny, c->second);
      maxy = std::fmax(maxy, c->second);
    }
  }
  double spanx = std::fmax(maxx - minx, 1e-9);
  double spany = std::fmax(maxy - miny, 1e-9);

  const RoadNetwork& bnet = backbone.net;
  Rng rng(seed);
  NetworkBuilder b;
  for (int n = 0; n < bnet.node_count(); ++n) {
    if (bnet.coords[n])
      b.add_node(bnet.node_names[n], bnet.coords[n]->first,
                 bnet.coords[n]->second);
    else
      b.add_node(bnet.node_names[n]);
  }

  const int tn = tmpl.node_count();
  std::vector<std::vector<NodeId>> copy_ids(backbone.slots.size());
  for (std::size_t s = 0; s < backbone.slots.size(); ++s) {
    const Slot& slot = backbone.slots[s];
    copy_ids[s].resize(tn);
    for (int t = 0; t < tn; ++t) {
      std::string name = "s" + std::to_string(s) + "_" + tmpl.node_names[t];
      if (have_box && tmpl.coords[t]) {
        // Scale into 70% of the slot square to keep clear of its borders.
        double fx = (tmpl.coords[t]->first - minx) / spanx - 0.5;
        double fy = (tmpl.coords[t]->second - miny) / spany - 0.5;
        copy_ids[s][t] = b.add_node(std::move(name),
                                    slot.cx + fx * slot.half * 1.4,
                                    slot.cy + fy * slot.half * 1.4);
      } else {
        copy_ids[s][t] = b.add_node(std::move(name));
      }
    }
  }

  // Backbone road sequences grow as entrances are spliced in.
  std::vector<std::vector<NodeId>> broad_nodes;
  for (const Road& r : bnet.roads) broad_nodes.push_back(r.nodes);

  // Consecutive node pairs owned by template roads, plus the template node
  // behind each entrance copy. Two entrance copies of one slot must not be
  // spliced in next to each other if their template nodes already share a
  // road segment; that pair belongs to the copied template road.
  std::unordered_set<std::uint64_t> tmpl_pairs;
  auto pair_key = [](NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
  };
  for (const Road& r : tmpl.roads)
    for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i)
      tmpl_pairs.insert(pair_key(r.nodes[i], r.nodes[i + 1]));
  std::unordered_map<NodeId, std::pair<std::size_t, NodeId>> entr_copy;
  for (std::size_t s = 0; s < backbone.slots.size(); ++s)
    for (NodeId e : entrances) entr_copy[copy_ids[s][e]] = {s, e};

  for (std::size_t s = 0; s < backbone.slots.size(); ++s) {
    const Slot& slot = backbone.slots[s];
    for (NodeId e : entrances) {
      auto clashes = [&](NodeId neighbor) {
        auto it = entr_copy.find(neighbor);
        return it != entr_copy.end() && it->second.first == s &&
               tmpl_pairs.count(pair_key(it->second.second, e)) > 0;
      };
      std::vector<std::pair<RoadId, std::size_t>> cand;
      for (RoadId host : slot.roads) {
        const auto& nodes = broad_nodes[host];
        for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg)
          if (!clashes(nodes[seg]) && !clashes(nodes[seg + 1]))
            cand.emplace_back(host, seg);
      }
      if (cand.empty())
        fail(Errc::incompatible_template,
             "entrance " + tmpl.node_names[e] + " cannot attach to slot " +
                 std::to_string(s) + " without duplicating a template segment");
      auto [host, seg] = cand[rng.below(cand.size())];
      auto& nodes = broad_nodes[host];
      nodes.insert(nodes.begin() + static_cast<std::ptrdiff_t>(seg) + 1,
                   copy_ids[s][e]);
    }
  }

  std::vector<RoadId> broad_ids(bnet.road_count());
  for (const Road& r : bnet.roads)
    broad_ids[r.id] =
        b.add_road(bnet.road_names[r.id], r.oneway, broad_nodes[r.id]);

  std::vector<std::vector<RoadId>> troad_ids(backbone.slots.size());
  for (std::size_t s = 0; s < backbone.slots.size(); ++s) {
    troad_ids[s].resize(tmpl.road_count());
    for (const Road& r : tmpl.roads) {
      std::vector<NodeId> nodes;
      for (NodeId n : r.nodes) nodes.push_back(copy_ids[s][n]);
      troad_ids[s][r.id] = b.add_road(
          "s" + std::to_string(s) + "_" + tmpl.road_names[r.id], r.oneway,
          std::move(nodes));
      // Template lengths are copied verbatim; copies may be drawn at a
      // different visual scale but keep the template's metric.
      for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i)
        b.set_length(copy_ids[s][r.nodes[i]], copy_ids[s][r.nodes[i + 1]],
                     tmpl.edge_length(r.nodes[i], r.nodes[i + 1]));
    }
  }

  b.set_default_turn_cost(bnet.default_turn_cost);
  for (const auto& [key, value] : tmpl.turn_overrides) {
    NodeId n = static_cast<NodeId>(key >> 42);
    RoadId from = static_cast<RoadId>((key >> 21) & ((1u << 21) - 1));
    RoadId to = static_cast<RoadId>(key & ((1u << 21) - 1));
    for (std::size_t s = 0; s < backbone.slots.size(); ++s)
      b.set_turn_cost(copy_ids[s][n], troad_ids[s][from], troad_ids[s][to],
                      value);
  }
  return b.build();
}

RoadNetwork default_template() {
  NetworkBuilder b;
  // 6 rows x 5 columns of unit blocks. Rows are through roads; adjacent rows
  // meet only at one staggered end connector, so reaching the back rows takes
  // one turn per row and road sequences between far nodes are long.
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 5; ++c)
      b.add_node("t" + num(r) + "_" + num(c), c * 1.0, r * 1.0);
  auto at = [](int r, int c) { return static_cast<NodeId>(r * 5 + c); };
  for (int r = 0; r < 6; ++r) {
    std::vector<NodeId> nodes;
    for (int c = 0; c < 5; ++c) nodes.push_back(at(r, c));
    b.add_road("tr" + num(r), false, std::move(nodes));
  }
  for (int r = 0; r < 5; ++r) {
    int c = (r % 2 == 0) ? 4 : 0;
    b.add_road("tc" + num(r), false, {at(r, c), at(r + 1, c)});
  }
  return b.build();
}

std::vector<NodeId> default_template_entrances() {
  // All entrances sit on the two front rows; back rows are reachable only by
  // snaking through the connectors.
  auto at = [](int r, int c) { return static_cast<NodeId>(r * 5 + c); };
  return {at(0, 0), at(0, 2), at(0, 4), at(1, 0), at(1, 2), at(1, 4)};
}

Fixture fixture_table1() {
  NetworkBuilder b;
  NodeId ns = b.add_node("ns");
  std::vector<NodeId> n(12);
  for (int i = 1; i <= 11; ++i) n[i] = b.add_node("n" + num(i));
  NodeId nt = b.add_node("nt");

  // Ring road around the east side, ending in a short stub past nt.
  b.add_road("ra", false, {n[6], n[8], n[11], n[10], nt, n[9]});
  b.add_road("rb", false, {ns, n[1], n[2]});
  b.add_road("rc", false, {n[7], n[11]});
  b.add_road("rd", false, {n[1], n[3], n[8]});
  b.add_road("re", false, {n[3], n[4], n[10]});
  b.add_road("rf", false, {n[6], ns, n[7]});
  b.add_road("rg", false, {n[4], n[5], n[9]});

  b.set_length(n[6], n[8], 12);
  b.set_length(n[8], n[11], 3);
  b.set_length(n[11], n[10], 10);
  b.set_length(n[10], nt, 10);
  b.set_length(nt, n[9], 2);
  b.set_length(ns, n[1], 2);
  b.set_length(n[1], n[2], 3);
  b.set_length(n[7], n[11], 10);
  b.set_length(n[1], n[3], 2);
  b.set_length(n[3], n[8], 3);
  b.set_length(n[3], n[4], 2);
  b.set_length(n[4], n[10], 4);
  b.set_length(n[6], ns, 5);
  b.set_length(ns, n[7], 10);
  b.set_length(n[4], n[5], 1);
  b.set_length(n[5], n[9], 1);

  Fixture f;
  f.net = b.build();
  f.source = ns;
  f.target = nt;
  return f;
}

}  // namespace simpleroute
