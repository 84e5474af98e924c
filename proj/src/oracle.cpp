#include "simpleroute/oracle.hpp"

#include <limits>
#include <string>

namespace simpleroute {

namespace {

void extend(const RoadNetwork& net, NodeId target, std::vector<NodeId>& path,
            std::vector<char>& used, double len, std::vector<Route>& out) {
  NodeId here = path.back();
  if (here == target) {
    Route r;
    r.nodes = path;
    r.length = len;
    r.complexity = route_complexity(net, path);
    out.push_back(std::move(r));
    return;
  }
  for (const Edge& e : net.out[here]) {
    if (used[e.to]) continue;
    used[e.to] = 1;
    path.push_back(e.to);
    extend(net, target, path, used, len + e.length, out);
    path.pop_back();
    used[e.to] = 0;
  }
}

}  // namespace

std::vector<Route> enumerate_simple_routes(const RoadNetwork& net,
                                           NodeId source, NodeId target,
                                           int max_nodes_limit) {
  if (net.node_count() > max_nodes_limit)
    fail(Errc::too_large, "network has " + std::to_string(net.node_count()) +
                              " nodes, oracle limit is " +
                              std::to_string(max_nodes_limit));
  if (source < 0 || source >= net.node_count() || target < 0 ||
      target >= net.node_count())
    fail(Errc::dangling_node_ref, "oracle endpoints out of range");

  std::vector<Route> out;
  std::vector<NodeId> path{source};
  std::vector<char> used(net.node_count(), 0);
  used[source] = 1;
  extend(net, target, path, used, 0.0, out);
  return out;
}

CostPair oracle_best(const std::vector<Route>& routes, LexOrder order) {
  if (routes.empty()) fail(Errc::empty_set, "no routes to choose from");
  CostPair best{routes[0].length, routes[0].complexity};
  for (const Route& r : routes) {
    CostPair c{r.length, r.complexity};
    if (lex_less(order, c, best)) best = c;
  }
  return best;
}

CostPair oracle_near(const std::vector<Route>& routes, double epsilon,
                     NearMode mode) {
  if (routes.empty()) fail(Errc::empty_set, "no routes to choose from");
  if (epsilon < 0.0) fail(Errc::epsilon_negative, "epsilon < 0");

  double best_primary = std::numeric_limits<double>::infinity();
  for (const Route& r : routes) {
    double v = mode == NearMode::snf ? r.length : r.complexity;
    best_primary = std::fmin(best_primary, v);
  }
  double bound = (1.0 + epsilon) * best_primary;

  bool any = false;
  CostPair best{};
  LexOrder order = mode == NearMode::snf ? LexOrder::fs : LexOrder::sf;
  for (const Route& r : routes) {
    double v = mode == NearMode::snf ? r.length : r.complexity;
    if (!approx::le(v, bound)) continue;
    CostPair c{r.length, r.complexity};
    if (!any || lex_less(order, c, best)) {
      best = c;
      any = true;
    }
  }
  // The unconstrained optimum always qualifies, so the filter is non-empty.
  return best;
}

}  // namespace simpleroute
