#pragma once

#include <cstdint>

#include "simpleroute/model.hpp"
#include "simpleroute/optimal.hpp"

namespace simpleroute {

// Switches for the near-optimal searches. The three prune flags exist for
// conformance experiments: disabling any of them must not change the
// answer, only the amount of work. prune_length gates prunes on the length
// quantity and prune_complexity those on the complexity quantity, whichever
// role (feasibility or incumbent) that quantity plays in the problem.
struct NearOptions {
  bool use_bounds = true;       // false: zero per-node bounds, no early exit
  bool prune_length = true;
  bool prune_complexity = true;
  bool upper_bound = true;      // incumbent tightening from implied completions
  bool dominance = true;        // best-first only: per-node label dominance
  bool drop_cycles = true;      // best-first only: skip node-revisiting labels
};

struct NearAnswer {
  double len = 0.0;
  double cpl = 0.0;
  Route route;
  std::uint64_t routes_examined = 0;  // depth-first: pushes; best-first: pops
  std::uint64_t incumbent_updates = 0;
  std::uint64_t pruned_by_length = 0;
  std::uint64_t pruned_by_complexity = 0;
  std::uint64_t pruned_by_dominance = 0;
  // Minimal complexity is zero, so only turn-free routes qualify.
  bool zero_complexity_threshold = false;
  // Depth-first search marks were all reset when the search finished.
  bool marks_clean = true;
};

// Simplest route no longer than (1+epsilon) times the fastest.
NearAnswer snf_dfs(const RoadNetwork& net, NodeId source, NodeId target,
                   double epsilon, const NearOptions& opt = {});
NearAnswer snf_astar(const RoadNetwork& net, NodeId source, NodeId target,
                     double epsilon, const NearOptions& opt = {});

// Fastest route at most (1+epsilon) times as complex as the simplest.
NearAnswer fns_dfs(const RoadNetwork& net, NodeId source, NodeId target,
                   double epsilon, const NearOptions& opt = {});
NearAnswer fns_astar(const RoadNetwork& net, NodeId source, NodeId target,
                     double epsilon, const NearOptions& opt = {});

// True when every completion of b is beaten by the matching completion of
// a in both length and complexity: b.len > a.len and b.cpl > a.cpl + cmax,
// strictly. cmax covers the one turn where the completions may differ.
bool dominates(const CostPair& a, const CostPair& b, double cmax);

}  // namespace simpleroute
