#include "simpleroute/near.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "simpleroute/error.hpp"

namespace simpleroute {

namespace {

enum class Prob { snf, fns };

// Objective order: snf wants the simplest feasible route, fns the fastest.
bool obj_less(Prob p, const CostPair& a, const CostPair& b) {
  return p == Prob::snf ? fs_less(a, b) : sf_less(a, b);
}

// The constrained quantity: length for snf, complexity for fns.
double feas_value(Prob p, const CostPair& x) {
  return p == Prob::snf ? x.len : x.cpl;
}

// Shared setup: per-node completion bounds toward the target, the feasibility
// threshold, and the starting incumbent. Without bounds the arrays are zero,
// there is no starting incumbent, and only the threshold scalar is computed.
struct Ctx {
  Prob prob = Prob::snf;
  bool bounds = true;
  double threshold = 0.0;
  // Optimal completions from each node to the target: minimum complexity and
  // its length (fsC, fsL), minimum length and its complexity (sfL, sfC).
  std::vector<double> fsL, fsC, sfL, sfC;
  AllRun fs_run, sf_run;
  bool zero_note = false;
  bool early = false;  // one of the two optima already satisfies the bound
  CostPair early_pair;
  std::vector<NodeId> early_nodes;
  bool have_init = false;
  CostPair init_pair;
  std::vector<NodeId> init_nodes;
};

// path_to yields target..n on the reversed network; flip to n..target.
std::vector<NodeId> completion_path(const AllRun& run, NodeId n) {
  std::vector<NodeId> p = run.path_to(n);
  std::reverse(p.begin(), p.end());
  return p;
}

Ctx make_ctx(const RoadNetwork& net, NodeId s, NodeId t, double eps,
             const NearOptions& opt, Prob prob) {
  Ctx c;
  c.prob = prob;
  c.bounds = opt.use_bounds;
  if (opt.use_bounds) {
    RoadNetwork rev = reverse_network(net);
    c.fs_run = all_fastest_simplest(rev, t);
    c.sf_run = all_simplest_fastest(rev, t);
    if (!c.fs_run.reached(s))
      fail(Errc::unreachable, "no route between the given endpoints");
    c.fsL = c.fs_run.len;
    c.fsC = c.fs_run.cpl;
    c.sfL = c.sf_run.len;
    c.sfC = c.sf_run.cpl;
    CostPair fs{c.fsL[s], c.fsC[s]};
    CostPair sf{c.sfL[s], c.sfC[s]};
    if (prob == Prob::snf) {
      c.threshold = (1.0 + eps) * sf.len;
      if (approx::le(fs.len, c.threshold)) {
        // The simplest route overall is already short enough.
        c.early = true;
        c.early_pair = fs;
        c.early_nodes = completion_path(c.fs_run, s);
      } else {
        c.have_init = true;
        c.init_pair = sf;
        c.init_nodes = completion_path(c.sf_run, s);
      }
    } else {
      c.threshold = (1.0 + eps) * fs.cpl;
      c.zero_note = approx::eq(fs.cpl, 0.0);
      if (approx::le(sf.cpl, c.threshold)) {
        // The fastest route overall is already simple enough.
        c.early = true;
        c.early_pair = sf;
        c.early_nodes = completion_path(c.sf_run, s);
      } else {
        c.have_init = true;
        c.init_pair = fs;
        c.init_nodes = completion_path(c.fs_run, s);
      }
    }
  } else {
    int v = net.node_count();
    c.fsL.assign(v, 0.0);
    c.fsC.assign(v, 0.0);
    c.sfL.assign(v, 0.0);
    c.sfC.assign(v, 0.0);
    if (prob == Prob::snf) {
      c.threshold = (1.0 + eps) * dijkstra_fastest(net, s, t);
    } else {
      double best_cpl = fastest_simplest(net, s, t).cpl;
      c.threshold = (1.0 + eps) * best_cpl;
      c.zero_note = approx::eq(best_cpl, 0.0);
    }
  }
  return c;
}

// Feasible candidates must beat the incumbent in the objective order to win;
// ties keep the current holder.
struct Incumbent {
  bool have = false;
  CostPair pair{0.0, 0.0};
  std::vector<NodeId> nodes;
};

bool offer(Prob prob, double threshold, const CostPair& cand, Incumbent& inc) {
  if (!approx::le(feas_value(prob, cand), threshold)) return false;
  if (inc.have && !obj_less(prob, cand, inc.pair)) return false;
  return true;
}

// Splice the optimal completion from n onto the prefix and offer the result
// as an incumbent. The join turn between the arrival road and the first
// completion road is evaluated exactly so the stored pair is the route's
// true cost. prefix() is only materialized when the candidate wins.
template <typename PrefixFn>
void tighten(const RoadNetwork& net, const Ctx& c, double len, double cpl,
             NodeId n, RoadId in_road, PrefixFn&& prefix, Incumbent& inc,
             std::uint64_t& updates) {
  if (!c.bounds) return;
  const AllRun& run = c.prob == Prob::snf ? c.fs_run : c.sf_run;
  const std::vector<double>& dl = c.prob == Prob::snf ? c.fsL : c.sfL;
  const std::vector<double>& dc = c.prob == Prob::snf ? c.fsC : c.sfC;
  if (!run.reached(n)) return;
  double clen = len + dl[n];
  if (c.prob == Prob::snf && !approx::le(clen, c.threshold)) return;
  std::vector<NodeId> cont = completion_path(run, n);
  double ccpl = cpl + dc[n];
  if (cont.size() >= 2 && in_road >= 0)
    ccpl += net.turn(n, in_road, net.road_of_edge(cont[0], cont[1]));
  CostPair cand{clen, ccpl};
  if (!offer(c.prob, c.threshold, cand, inc)) return;
  std::vector<NodeId> nodes = prefix();
  nodes.insert(nodes.end(), cont.begin() + 1, cont.end());
  inc.have = true;
  inc.pair = cand;
  inc.nodes = std::move(nodes);
  ++updates;
}

NearAnswer finish(const RoadNetwork& net, const Incumbent& inc,
                  NearAnswer ans) {
  if (!inc.have)
    fail(Errc::unreachable, "no feasible route between the given endpoints");
  ans.len = inc.pair.len;
  ans.cpl = inc.pair.cpl;
  ans.route = make_route(net, inc.nodes);
  return ans;
}

NearAnswer run_dfs(const RoadNetwork& net, NodeId s, NodeId t, double eps,
                   const NearOptions& opt, Prob prob) {
  NearAnswer ans;
  Ctx c = make_ctx(net, s, t, eps, opt, prob);
  ans.zero_complexity_threshold = c.zero_note;
  if (c.early) {
    ans.len = c.early_pair.len;
    ans.cpl = c.early_pair.cpl;
    ans.route = make_route(net, c.early_nodes);
    return ans;
  }

  Incumbent inc;
  inc.have = c.have_init;
  inc.pair = c.init_pair;
  inc.nodes = c.init_nodes;

  struct Entry {
    NodeId node;
    RoadId in_road;  // -1 at the source
    double len, cpl;
  };
  std::vector<Entry> stack;
  std::vector<char> in_route(net.node_count(), 0);
  std::vector<std::vector<char>> traversed(net.node_count());
  for (int n = 0; n < net.node_count(); ++n)
    traversed[n].assign(net.out[n].size(), 0);

  auto stack_nodes = [&stack]() {
    std::vector<NodeId> nodes;
    nodes.reserve(stack.size());
    for (const auto& e : stack) nodes.push_back(e.node);
    return nodes;
  };

  stack.push_back({s, -1, 0.0, 0.0});
  ++ans.routes_examined;

  while (!stack.empty()) {
    Entry e = stack.back();
    if (!in_route[e.node]) {
      // Entry is fresh: re-check it against the incumbent, then either
      // record a finished route or open the node for extension.
      bool cut = false;
      if (inc.have) {
        if (prob == Prob::snf && opt.prune_complexity) {
          CostPair best{e.len + c.fsL[e.node], e.cpl + c.fsC[e.node]};
          if (!fs_less(best, inc.pair)) {
            ++ans.pruned_by_complexity;
            cut = true;
          }
        } else if (prob == Prob::fns && opt.prune_length) {
          CostPair best{e.len + c.sfL[e.node], e.cpl + c.sfC[e.node]};
          if (!sf_less(best, inc.pair)) {
            ++ans.pruned_by_length;
            cut = true;
          }
        }
      }
      if (cut) {
        stack.pop_back();
        continue;
      }
      if (e.node == t) {
        CostPair cand{e.len, e.cpl};
        if (offer(prob, c.threshold, cand, inc)) {
          inc.have = true;
          inc.pair = cand;
          inc.nodes = stack_nodes();
          ++ans.incumbent_updates;
        }
        stack.pop_back();
        continue;
      }
      in_route[e.node] = true;
      continue;
    }

    // Extend with the first untried edge to a node not already in the route.
    const auto& edges = net.out[e.node];
    int pick = -1;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      if (!traversed[e.node][i] && !in_route[edges[i].to]) {
        pick = i;
        break;
      }
    }
    if (pick < 0) {
      in_route[e.node] = 0;
      std::fill(traversed[e.node].begin(), traversed[e.node].end(), 0);
      stack.pop_back();
      continue;
    }
    traversed[e.node][pick] = 1;
    const Edge& ed = edges[pick];
    NodeId ny = ed.to;
    double nlen = e.len + ed.length;
    double ncpl =
        e.cpl + (e.in_road >= 0 ? net.turn(e.node, e.in_road, ed.road) : 0.0);

    if (prob == Prob::snf) {
      if (opt.prune_length && !approx::le(nlen + c.sfL[ny], c.threshold)) {
        ++ans.pruned_by_length;
        continue;
      }
      if (opt.prune_complexity && inc.have) {
        CostPair best{nlen + c.fsL[ny], ncpl + c.fsC[ny]};
        if (!fs_less(best, inc.pair)) {
          ++ans.pruned_by_complexity;
          continue;
        }
      }
    } else {
      if (opt.prune_complexity && !approx::le(ncpl + c.fsC[ny], c.threshold)) {
        ++ans.pruned_by_complexity;
        continue;
      }
      if (opt.prune_length && inc.have) {
        CostPair best{nlen + c.sfL[ny], ncpl + c.sfC[ny]};
        if (!sf_less(best, inc.pair)) {
          ++ans.pruned_by_length;
          continue;
        }
      }
    }

    if (opt.upper_bound) {
      tighten(net, c, nlen, ncpl, ny, ed.road,
              [&]() {
                std::vector<NodeId> nodes = stack_nodes();
                nodes.push_back(ny);
                return nodes;
              },
              inc, ans.incumbent_updates);
    }
    stack.push_back({ny, ed.road, nlen, ncpl});
    ++ans.routes_examined;
  }

  for (int n = 0; n < net.node_count(); ++n) {
    if (in_route[n]) ans.marks_clean = false;
    for (char f : traversed[n])
      if (f) ans.marks_clean = false;
  }
  return finish(net, inc, std::move(ans));
}

NearAnswer run_astar(const RoadNetwork& net, NodeId s, NodeId t, double eps,
                     const NearOptions& opt, Prob prob) {
  NearAnswer ans;
  Ctx c = make_ctx(net, s, t, eps, opt, prob);
  ans.zero_complexity_threshold = c.zero_note;
  if (c.early) {
    ans.len = c.early_pair.len;
    ans.cpl = c.early_pair.cpl;
    ans.route = make_route(net, c.early_nodes);
    return ans;
  }

  Incumbent inc;
  inc.have = c.have_init;
  inc.pair = c.init_pair;
  inc.nodes = c.init_nodes;

  struct Label {
    NodeId node;
    RoadId in_road;
    double len, cpl;
    std::int32_t prev;
    bool alive;
  };
  std::vector<Label> arena;
  std::vector<std::vector<std::int32_t>> at_node(net.node_count());

  struct HeapEnt {
    double k1, k2;
    std::int32_t idx;
  };
  // Exact lexicographic minimum; insertion order breaks full ties so runs
  // are deterministic.
  struct HeapCmp {
    bool operator()(const HeapEnt& a, const HeapEnt& b) const {
      if (a.k1 != b.k1) return a.k1 > b.k1;
      if (a.k2 != b.k2) return a.k2 > b.k2;
      return a.idx > b.idx;
    }
  };
  std::priority_queue<HeapEnt, std::vector<HeapEnt>, HeapCmp> heap;

  auto push_label = [&](NodeId n, RoadId in_road, double len, double cpl,
                        std::int32_t prev) {
    std::int32_t idx = static_cast<std::int32_t>(arena.size());
    arena.push_back({n, in_road, len, cpl, prev, true});
    at_node[n].push_back(idx);
    if (prob == Prob::snf)
      heap.push({cpl + c.fsC[n], len + c.fsL[n], idx});
    else
      heap.push({len + c.sfL[n], cpl + c.sfC[n], idx});
  };
  auto label_nodes = [&](std::int32_t idx) {
    std::vector<NodeId> nodes;
    for (std::int32_t i = idx; i >= 0; i = arena[i].prev)
      nodes.push_back(arena[i].node);
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
  };
  auto on_path = [&](std::int32_t idx, NodeId n) {
    for (std::int32_t i = idx; i >= 0; i = arena[i].prev)
      if (arena[i].node == n) return true;
    return false;
  };

  push_label(s, -1, 0.0, 0.0, -1);

  while (!heap.empty()) {
    HeapEnt top = heap.top();
    heap.pop();
    Label lab = arena[top.idx];
    if (!lab.alive) continue;
    ++ans.routes_examined;

    if (lab.node == t) {
      CostPair cand{lab.len, lab.cpl};
      if (approx::le(feas_value(prob, cand), c.threshold)) {
        // Keys never overestimate a completion, so nothing still queued can
        // beat this label; the answer is it or the incumbent.
        if (!inc.have || obj_less(prob, cand, inc.pair)) {
          inc.have = true;
          inc.pair = cand;
          inc.nodes = label_nodes(top.idx);
          ++ans.incumbent_updates;
        }
        break;
      }
      continue;  // infeasible arrival; routes through the target never help
    }

    for (const Edge& ed : net.out[lab.node]) {
      NodeId ny = ed.to;
      double nlen = lab.len + ed.length;
      double ncpl = lab.cpl + (lab.in_road >= 0
                                   ? net.turn(lab.node, lab.in_road, ed.road)
                                   : 0.0);
      if (opt.drop_cycles && on_path(top.idx, ny)) continue;

      CostPair np{nlen, ncpl};
      if (opt.dominance) {
        bool dead = false;
        for (std::int32_t mi : at_node[ny]) {
          const Label& m = arena[mi];
          if (m.alive && dominates({m.len, m.cpl}, np, net.cmax)) {
            dead = true;
            break;
          }
        }
        if (dead) {
          ++ans.pruned_by_dominance;
          continue;
        }
        for (std::int32_t mi : at_node[ny]) {
          Label& m = arena[mi];
          if (m.alive && dominates(np, {m.len, m.cpl}, net.cmax)) {
            m.alive = false;
            ++ans.pruned_by_dominance;
          }
        }
      }

      if (prob == Prob::snf) {
        if (opt.prune_length && !approx::le(nlen + c.sfL[ny], c.threshold)) {
          ++ans.pruned_by_length;
          continue;
        }
        if (opt.prune_complexity && inc.have) {
          CostPair best{nlen + c.fsL[ny], ncpl + c.fsC[ny]};
          if (!fs_less(best, inc.pair)) {
            ++ans.pruned_by_complexity;
            continue;
          }
        }
      } else {
        if (opt.prune_complexity &&
            !approx::le(ncpl + c.fsC[ny], c.threshold)) {
          ++ans.pruned_by_complexity;
          continue;
        }
        if (opt.prune_length && inc.have) {
          CostPair best{nlen + c.sfL[ny], ncpl + c.sfC[ny]};
          if (!sf_less(best, inc.pair)) {
            ++ans.pruned_by_length;
            continue;
          }
        }
      }

      if (opt.upper_bound) {
        tighten(net, c, nlen, ncpl, ny, ed.road,
                [&]() {
                  std::vector<NodeId> nodes = label_nodes(top.idx);
                  nodes.push_back(ny);
                  return nodes;
                },
                inc, ans.incumbent_updates);
      }
      push_label(ny, ed.road, nlen, ncpl, top.idx);
    }
  }
  return finish(net, inc, std::move(ans));
}

NearAnswer run_near(const RoadNetwork& net, NodeId s, NodeId t, double eps,
                    NearOptions opt, Prob prob, bool best_first) {
  if (s < 0 || s >= net.node_count() || t < 0 || t >= net.node_count())
    fail(Errc::dangling_node_ref, "endpoint id out of range");
  if (eps < 0.0) fail(Errc::epsilon_negative, "epsilon must be non-negative");
  if (s == t) {
    NearAnswer ans;
    ans.route = make_route(net, {s});
    ans.zero_complexity_threshold = (prob == Prob::fns);
    return ans;
  }
  // Without per-node bounds a zero-cost continuing turn would let best-first
  // search walk a cycle forever below any threshold; forbid such labels.
  if (!opt.use_bounds) opt.drop_cycles = true;
  return best_first ? run_astar(net, s, t, eps, opt, prob)
                    : run_dfs(net, s, t, eps, opt, prob);
}

}  // namespace

bool dominates(const CostPair& a, const CostPair& b, double cmax) {
  return approx::lt(a.len, b.len) && approx::lt(a.cpl + cmax, b.cpl);
}

NearAnswer snf_dfs(const RoadNetwork& net, NodeId source, NodeId target,
                   double epsilon, const NearOptions& opt) {
  return run_near(net, source, target, epsilon, opt, Prob::snf, false);
}

NearAnswer snf_astar(const RoadNetwork& net, NodeId source, NodeId target,
                     double epsilon, const NearOptions& opt) {
  return run_near(net, source, target, epsilon, opt, Prob::snf, true);
}

NearAnswer fns_dfs(const RoadNetwork& net, NodeId source, NodeId target,
                   double epsilon, const NearOptions& opt) {
  return run_near(net, source, target, epsilon, opt, Prob::fns, false);
}

NearAnswer fns_astar(const RoadNetwork& net, NodeId source, NodeId target,
                     double epsilon, const NearOptions& opt) {
  return run_near(net, source, target, epsilon, opt, Prob::fns, true);
}

}  // namespace simpleroute
