#include "simpleroute/model.hpp"

#include <algorithm>
#include <map>

namespace simpleroute {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::overlapping_roads: return "OverlappingRoads";
    case Errc::orphan_node: return "OrphanNode";
    case Errc::non_positive_length: return "NonPositiveLength";
    case Errc::negative_turn_cost: return "NegativeTurnCost";
    case Errc::dangling_node_ref: return "DanglingNodeRef";
    case Errc::invalid_route: return "InvalidRoute";
    case Errc::node_not_on_road: return "NodeNotOnRoad";
    case Errc::same_road_override: return "SameRoadOverride";
    case Errc::unreachable: return "Unreachable";
    case Errc::epsilon_negative: return "EpsilonNegative";
    case Errc::unsupported_cost_table: return "UnsupportedCostTable";
    case Errc::too_large: return "TooLarge";
    case Errc::empty_set: return "EmptySet";
    case Errc::tau_too_small: return "TauTooSmall";
    case Errc::incompatible_template: return "IncompatibleTemplate";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::timeout: return "Timeout";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
      code_(code),
      message_(msg) {}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

bool fs_less(const CostPair& a, const CostPair& b) {
  if (approx::lt(a.cpl, b.cpl)) return true;
  if (approx::lt(b.cpl, a.cpl)) return false;
  return approx::lt(a.len, b.len);
}

bool sf_less(const CostPair& a, const CostPair& b) {
  if (approx::lt(a.len, b.len)) return true;
  if (approx::lt(b.len, a.len)) return false;
  return approx::lt(a.cpl, b.cpl);
}

bool lex_less(LexOrder order, const CostPair& a, const CostPair& b) {
  return order == LexOrder::fs ? fs_less(a, b) : sf_less(a, b);
}

Ordering compare(LexOrder order, const CostPair& a, const CostPair& b) {
  if (lex_less(order, a, b)) return Ordering::less;
  if (lex_less(order, b, a)) return Ordering::greater;
  return Ordering::equal;
}

RoadId RoadNetwork::road_of_edge(NodeId a, NodeId b) const {
  if (a < 0 || a >= node_count()) return -1;
  for (const Edge& e : out[a])
    if (e.to == b) return e.road;
  return -1;
}

double RoadNetwork::edge_length(NodeId a, NodeId b) const {
  if (a >= 0 && a < node_count())
    for (const Edge& e : out[a])
      if (e.to == b) return e.length;
  fail(Errc::invalid_route, "no edge " + std::to_string(a) + " -> " +
                                std::to_string(b));
}

bool RoadNetwork::node_on_road(NodeId n, RoadId r) const {
  if (n < 0 || n >= node_count()) return false;
  const auto& rs = roads_at[n];
  return std::binary_search(rs.begin(), rs.end(), r);
}

std::uint64_t RoadNetwork::override_key(NodeId n, RoadId from, RoadId to) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 42) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 21) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(to));
}

double RoadNetwork::turn(NodeId n, RoadId from, RoadId to) const {
  if (from == to) return 0.0;
  if (!turn_overrides.empty()) {
    auto it = turn_overrides.find(override_key(n, from, to));
    if (it != turn_overrides.end()) return it->second;
  }
  return default_turn_cost;
}

int RoadNetwork::intersection_count() const {
  int k = 0;
  for (const auto& rs : roads_at)
    if (rs.size() >= 2) ++k;
  return k;
}

double turn_cost(const RoadNetwork& net, NodeId n, RoadId from, RoadId to) {
  if (!net.node_on_road(n, from) || !net.node_on_road(n, to))
    fail(Errc::node_not_on_road,
         "node " + std::to_string(n) + " not on both roads " +
             std::to_string(from) + ", " + std::to_string(to));
  return net.turn(n, from, to);
}

NodeId NetworkBuilder::add_node(std::string name) {
  node_names_.push_back(std::move(name));
  coords_.push_back(std::nullopt);
  return static_cast<NodeId>(node_names_.size() - 1);
}

NodeId NetworkBuilder::add_node(std::string name, double x, double y) {
  node_names_.push_back(std::move(name));
  coords_.push_back(std::make_pair(x, y));
  return static_cast<NodeId>(node_names_.size() - 1);
}

RoadId NetworkBuilder::add_road(std::string name, bool oneway,
                                std::vector<NodeId> nodes) {
  roads_.emplace_back(oneway, std::move(nodes));
  road_names_.push_back(std::move(name));
  return static_cast<RoadId>(roads_.size() - 1);
}

void NetworkBuilder::set_length(NodeId a, NodeId b, double value) {
  lengths_.push_back({a, b, value});
}

void NetworkBuilder::set_turn_cost(NodeId n, RoadId from, RoadId to,
                                   double value) {
  turns_.push_back({n, from, to, value});
}

void NetworkBuilder::set_default_turn_cost(double value) {
  if (value < 0.0) fail(Errc::negative_turn_cost, "default turn cost");
  default_turn_cost_ = value;
}

RoadNetwork NetworkBuilder::build() const {
  const int n_nodes = static_cast<int>(node_names_.size());
  RoadNetwork net;
  net.node_names = node_names_;
  net.road_names = road_names_;
  net.coords = coords_;
  net.default_turn_cost = default_turn_cost_;
  net.out.resize(n_nodes);
  net.roads_at.resize(n_nodes);

  if (roads_.empty()) fail(Errc::invalid_route, "network has no roads");

  // Directed segment ownership: ordered pair -> road id.
  std::map<std::pair<NodeId, NodeId>, RoadId> owner;

  for (std::size_t ri = 0; ri < roads_.size(); ++ri) {
    const auto& [oneway, nodes] = roads_[ri];
    const RoadId rid = static_cast<RoadId>(ri);
    if (nodes.size() < 2)
      fail(Errc::invalid_route, "road " + road_names_[ri] + " has < 2 nodes");
    for (NodeId n : nodes) {
      if (n < 0 || n >= n_nodes)
        fail(Errc::dangling_node_ref,
             "road " + road_names_[ri] + " references unknown node");
    }
    std::vector<NodeId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(Errc::invalid_route, "road " + road_names_[ri] + " repeats a node");

    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      NodeId a = nodes[i], b = nodes[i + 1];
      auto claim = [&](NodeId x, NodeId y) {
        auto [it, fresh] = owner.emplace(std::make_pair(x, y), rid);
        if (!fresh)
          fail(Errc::overlapping_roads,
               "pair (" + node_names_[x] + "," + node_names_[y] +
                   ") appears in roads " + road_names_[it->second] + " and " +
                   road_names_[ri]);
      };
      claim(a, b);
      if (!oneway) claim(b, a);
    }

    net.roads.push_back({rid, oneway, nodes});
    for (NodeId n : nodes) net.roads_at[n].push_back(rid);
  }

  for (NodeId n = 0; n < n_nodes; ++n) {
    if (net.roads_at[n].empty())
      fail(Errc::orphan_node, "node " + node_names_[n] + " lies on no road");
    std::sort(net.roads_at[n].begin(), net.roads_at[n].end());
  }

  // Default lengths: Euclidean between coordinates, else 1.
  auto default_length = [&](NodeId a, NodeId b) {
    if (coords_[a] && coords_[b]) {
      double dx = coords_[a]->first - coords_[b]->first;
      double dy = coords_[a]->second - coords_[b]->second;
      return std::sqrt(dx * dx + dy * dy);
    }
    return 1.0;
  };

  std::map<std::pair<NodeId, NodeId>, double> lengths;
  for (const auto& [pair, rid] : owner)
    lengths[pair] = default_length(pair.first, pair.second);

  for (const auto& ov : lengths_) {
    if (ov.a < 0 || ov.a >= n_nodes || ov.b < 0 || ov.b >= n_nodes)
      fail(Errc::dangling_node_ref, "length override on unknown node");
    if (ov.value <= 0.0)
      fail(Errc::non_positive_length,
           "segment (" + node_names_[ov.a] + "," + node_names_[ov.b] + ")");
    // Find the road owning this segment in the given order first, then
    // reversed; apply to whichever directions that road produced.
    auto fwd = owner.find({ov.a, ov.b});
    auto rev = owner.find({ov.b, ov.a});
    RoadId rid = -1;
    if (fwd != owner.end()) rid = fwd->second;
    else if (rev != owner.end()) rid = rev->second;
    else
      fail(Errc::dangling_node_ref,
           "length override (" + node_names_[ov.a] + "," + node_names_[ov.b] +
               ") is not a road segment");
    if (fwd != owner.end() && fwd->second == rid) lengths[{ov.a, ov.b}] = ov.value;
    if (rev != owner.end() && rev->second == rid) lengths[{ov.b, ov.a}] = ov.value;
  }

  for (const auto& [pair, value] : lengths) {
    if (value <= 0.0)
      fail(Errc::non_positive_length,
           "segment (" + node_names_[pair.first] + "," +
               node_names_[pair.second] + ")");
    net.out[pair.first].push_back({pair.second, owner.at(pair), value});
  }
  for (auto& edges : net.out)
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
      return std::tie(x.to, x.road) < std::tie(y.to, y.road);
    });

  for (const auto& ov : turns_) {
    if (ov.from == ov.to)
      fail(Errc::same_road_override,
           "turn override keeps road " + std::to_string(ov.from));
    if (ov.value < 0.0) fail(Errc::negative_turn_cost, "turn override");
    if (ov.n < 0 || ov.n >= n_nodes)
      fail(Errc::dangling_node_ref, "turn override on unknown node");
    if (ov.from < 0 || ov.from >= net.road_count() || ov.to < 0 ||
        ov.to >= net.road_count())
      fail(Errc::dangling_node_ref, "turn override on unknown road");
    if (!net.node_on_road(ov.n, ov.from) || !net.node_on_road(ov.n, ov.to))
      fail(Errc::node_not_on_road,
           "turn override at " + node_names_[ov.n] + " between " +
               road_names_[ov.from] + " and " + road_names_[ov.to]);
    net.turn_overrides[RoadNetwork::override_key(ov.n, ov.from, ov.to)] =
        ov.value;
  }
  // Repeated overrides keep the last value, so take the maximum over the
  // surviving table, not over the calls.
  net.cmax = net.default_turn_cost;
  for (const auto& [key, value] : net.turn_overrides)
    net.cmax = std::fmax(net.cmax, value);

  return net;
}

double route_length(const RoadNetwork& net, const std::vector<NodeId>& nodes) {
  if (nodes.empty()) fail(Errc::invalid_route, "empty route");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    sum += net.edge_length(nodes[i], nodes[i + 1]);
  return sum;
}

double route_complexity(const RoadNetwork& net,
                        const std::vector<NodeId>& nodes) {
  if (nodes.empty()) fail(Errc::invalid_route, "empty route");
  double sum = 0.0;
  RoadId prev = -1;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    RoadId r = net.road_of_edge(nodes[i], nodes[i + 1]);
    if (r < 0)
      fail(Errc::invalid_route, "no edge " + net.node_names[nodes[i]] +
                                    " -> " + net.node_names[nodes[i + 1]]);
    if (prev >= 0) sum += net.turn(nodes[i], prev, r);
    prev = r;
  }
  return sum;
}

Route make_route(const RoadNetwork& net, std::vector<NodeId> nodes) {
  Route r;
  r.length = route_length(net, nodes);
  r.complexity = route_complexity(net, nodes);
  r.nodes = std::move(nodes);
  return r;
}

RoadNetwork reverse_network(const RoadNetwork& net) {
  NetworkBuilder b;
  for (int n = 0; n < net.node_count(); ++n) {
    if (net.coords[n])
      b.add_node(net.node_names[n], net.coords[n]->first,
                 net.coords[n]->second);
    else
      b.add_node(net.node_names[n]);
  }
  for (const Road& r : net.roads) {
    std::vector<NodeId> nodes = r.nodes;
    if (r.oneway) std::reverse(nodes.begin(), nodes.end());
    b.add_road(net.road_names[r.id], r.oneway, std::move(nodes));
  }
  // Reversed edge (a,b) inherits the forward length of (b,a).
  for (NodeId a = 0; a < net.node_count(); ++a)
    for (const Edge& e : net.out[a]) b.set_length(e.to, a, e.length);
  b.set_default_turn_cost(net.default_turn_cost);
  for (const auto& [key, value] : net.turn_overrides) {
    NodeId n = static_cast<NodeId>(key >> 42);
    RoadId from = static_cast<RoadId>((key >> 21) & ((1u << 21) - 1));
    RoadId to = static_cast<RoadId>(key & ((1u << 21) - 1));
    b.set_turn_cost(n, to, from, value);
  }
  return b.build();
}

NodeId find_node(const RoadNetwork& net, const std::string& name) {
  for (std::size_t i = 0; i < net.node_names.size(); ++i)
    if (net.node_names[i] == name) return static_cast<NodeId>(i);
  return -1;
}

RoadId find_road(const RoadNetwork& net, const std::string& name) {
  for (std::size_t i = 0; i < net.road_names.size(); ++i)
    if (net.road_names[i] == name) return static_cast<RoadId>(i);
  return -1;
}

}  // namespace simpleroute
