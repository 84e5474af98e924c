#pragma once

#include <vector>

#include "simpleroute/model.hpp"

namespace simpleroute {

// Reference answers by exhaustive enumeration of simple routes. Intended for
// networks up to ~14 nodes; guarded by max_nodes_limit.
inline constexpr int kOracleNodeLimit = 14;

enum class NearMode { snf, fns };

// All simple directed routes from source to target with exact costs.
// Throws too_large above the node limit.
std::vector<Route> enumerate_simple_routes(const RoadNetwork& net,
                                           NodeId source, NodeId target,
                                           int max_nodes_limit = kOracleNodeLimit);

// Minimal cost pair under the order. Throws empty_set.
CostPair oracle_best(const std::vector<Route>& routes, LexOrder order);

// snf: among routes with len <= (1+eps) * min length, the fs-minimal pair.
// fns: among routes with cpl <= (1+eps) * min complexity, the sf-minimal.
CostPair oracle_near(const std::vector<Route>& routes, double epsilon,
                     NearMode mode);

}  // namespace simpleroute
