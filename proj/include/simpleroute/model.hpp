#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simpleroute/error.hpp"

namespace simpleroute {

using NodeId = std::int32_t;
using RoadId = std::int32_t;

// Tolerant float comparison used for all cost decisions: relative 1e-9,
// falling back to an absolute window near zero.
namespace approx {

inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline bool eq(double a, double b) {
  double d = std::fabs(a - b);
  if (d <= kAbsTol) return true;
  return d <= kRelTol * std::fmax(std::fabs(a), std::fabs(b));
}
inline bool lt(double a, double b) { return a < b && !eq(a, b); }
inline bool le(double a, double b) { return a < b || eq(a, b); }

}  // namespace approx

// (length, complexity) of a route or partial route.
struct CostPair {
  double len = 0.0;
  double cpl = 0.0;
};

// The two lexicographic orders on CostPair: fs compares complexity first
// (used when minimizing turns), sf compares length first.
enum class LexOrder { fs, sf };

enum class Ordering { less, equal, greater };

bool fs_less(const CostPair& a, const CostPair& b);
bool sf_less(const CostPair& a, const CostPair& b);
bool lex_less(LexOrder order, const CostPair& a, const CostPair& b);
Ordering compare(LexOrder order, const CostPair& a, const CostPair& b);

struct Edge {
  NodeId to = -1;
  RoadId road = -1;
  double length = 0.0;
};

struct Road {
  RoadId id = -1;
  bool oneway = false;
  std::vector<NodeId> nodes;  // >= 2, all distinct
};

// Immutable after NetworkBuilder::build(); safe for concurrent reads.
struct RoadNetwork {
  std::vector<std::string> node_names;
  std::vector<std::string> road_names;
  std::vector<std::optional<std::pair<double, double>>> coords;
  std::vector<Road> roads;
  std::vector<std::vector<Edge>> out;        // per node, sorted by (to, road)
  std::vector<std::vector<RoadId>> roads_at;  // R(n), sorted
  double default_turn_cost = 1.0;
  std::unordered_map<std::uint64_t, double> turn_overrides;
  double cmax = 1.0;  // largest turn cost in the table

  int node_count() const { return static_cast<int>(out.size()); }
  int road_count() const { return static_cast<int>(roads.size()); }

  // -1 when (a,b) is not a directed edge.
  RoadId road_of_edge(NodeId a, NodeId b) const;
  // Throws invalid_route when (a,b) is not a directed edge.
  double edge_length(NodeId a, NodeId b) const;
  bool node_on_road(NodeId n, RoadId r) const;
  // Unvalidated turn-cost lookup for search inner loops.
  double turn(NodeId n, RoadId from, RoadId to) const;
  // Count of nodes lying on two or more roads.
  int intersection_count() const;

  static std::uint64_t override_key(NodeId n, RoadId from, RoadId to);
};

struct Route {
  std::vector<NodeId> nodes;  // length >= 1
  double length = 0.0;
  double complexity = 0.0;
};

// Incremental construction with full validation in build().
class NetworkBuilder {
 public:
  NodeId add_node(std::string name);
  NodeId add_node(std::string name, double x, double y);
  RoadId add_road(std::string name, bool oneway, std::vector<NodeId> nodes);
  // Overrides the length of the road segment between a and b (both
  // directions on a two-way road). The pair must be consecutive in a road.
  void set_length(NodeId a, NodeId b, double value);
  void set_turn_cost(NodeId n, RoadId from, RoadId to, double value);
  void set_default_turn_cost(double value);

  RoadNetwork build() const;

 private:
  struct LengthOverride {
    NodeId a, b;
    double value;
  };
  struct TurnOverride {
    NodeId n;
    RoadId from, to;
    double value;
  };

  std::vector<std::string> node_names_;
  std::vector<std::optional<std::pair<double, double>>> coords_;
  std::vector<std::pair<bool, std::vector<NodeId>>> roads_;  // (oneway, nodes)
  std::vector<std::string> road_names_;
  std::vector<LengthOverride> lengths_;
  std::vector<TurnOverride> turns_;
  double default_turn_cost_ = 1.0;
};

// Sum of edge lengths along the route; 0 for a single node.
double route_length(const RoadNetwork& net, const std::vector<NodeId>& nodes);
// Sum of turn costs at interior nodes; 0 below 3 nodes.
double route_complexity(const RoadNetwork& net,
                        const std::vector<NodeId>& nodes);
Route make_route(const RoadNetwork& net, std::vector<NodeId> nodes);

// Validated lookup, throws node_not_on_road.
double turn_cost(const RoadNetwork& net, NodeId n, RoadId from, RoadId to);

// Flips every edge: one-way road node sequences are reversed, two-way roads
// are unchanged, and turn overrides are transposed.
RoadNetwork reverse_network(const RoadNetwork& net);

// Name lookups; return -1 when absent.
NodeId find_node(const RoadNetwork& net, const std::string& name);
RoadId find_road(const RoadNetwork& net, const std::string& name);

}  // namespace simpleroute
