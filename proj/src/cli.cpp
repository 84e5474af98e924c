#include "simpleroute/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "simpleroute/error.hpp"
#include "simpleroute/io.hpp"
#include "simpleroute/model.hpp"
#include "simpleroute/near.hpp"
#include "simpleroute/optimal.hpp"
#include "simpleroute/oracle.hpp"
#include "simpleroute/synth.hpp"

namespace simpleroute {

namespace {

const std::vector<std::string> kProblems = {"fs", "sf", "snf", "fns"};
const std::vector<std::string> kAlgos = {
    "fs",      "sf",        "bsl",          "snf-dfs", "snf-astar",
    "snf-astar-wb", "fns-dfs", "fns-astar", "fns-astar-wb", "oracle"};

bool is_near_algo(const std::string& a) {
  return a.rfind("snf", 0) == 0 || a.rfind("fns", 0) == 0;
}

std::string problem_of_algo(const std::string& a) {
  if (a == "fs" || a == "sf") return a;
  if (a == "bsl") return "fs";
  if (a.rfind("snf", 0) == 0) return "snf";
  if (a.rfind("fns", 0) == 0) return "fns";
  return "";  // oracle adapts to the requested problem
}

std::string default_algo(const std::string& problem) {
  if (problem == "fs") return "fs";
  if (problem == "sf") return "sf";
  if (problem == "snf") return "snf-astar";
  return "fns-astar";
}

struct Outcome {
  double len = 0.0;
  double cpl = 0.0;
  std::vector<NodeId> nodes;
  std::uint64_t examined = 0;
};

Outcome solve_oracle(const RoadNetwork& net, const std::string& problem,
                     NodeId s, NodeId t, double eps) {
  if (eps < 0.0) fail(Errc::epsilon_negative, "epsilon must be non-negative");
  std::vector<Route> routes = enumerate_simple_routes(net, s, t);
  if (routes.empty())
    fail(Errc::unreachable, "no route between the given endpoints");
  bool fs_order = problem == "fs" || problem == "snf";
  double bound = std::numeric_limits<double>::infinity();
  if (problem == "snf") {
    double m = routes[0].length;
    for (const Route& r : routes) m = std::min(m, r.length);
    bound = (1.0 + eps) * m;
  } else if (problem == "fns") {
    double m = routes[0].complexity;
    for (const Route& r : routes) m = std::min(m, r.complexity);
    bound = (1.0 + eps) * m;
  }
  const Route* best = nullptr;
  for (const Route& r : routes) {
    if (problem == "snf" && !approx::le(r.length, bound)) continue;
    if (problem == "fns" && !approx::le(r.complexity, bound)) continue;
    if (!best) {
      best = &r;
      continue;
    }
    CostPair pr{r.length, r.complexity};
    CostPair pb{best->length, best->complexity};
    if (fs_order ? fs_less(pr, pb) : sf_less(pr, pb)) best = &r;
  }
  return {best->length, best->complexity, best->nodes,
          static_cast<std::uint64_t>(routes.size())};
}

Outcome solve(const RoadNetwork& net, const std::string& algo,
              const std::string& problem, NodeId s, NodeId t, double eps,
              double bsl_timeout) {
  if (algo == "fs" || algo == "sf") {
    RouteAnswer a =
        algo == "fs" ? fastest_simplest(net, s, t) : simplest_fastest(net, s, t);
    return {a.len, a.cpl, a.route.nodes, a.labels_deheaped};
  }
  if (algo == "bsl") {
    BslOptions bo;
    bo.timeout_seconds = bsl_timeout;
    BslAnswer a = bsl_fastest_simplest(net, s, t, bo);
    return {a.len, a.cpl, a.route.nodes, a.road_sequences_enumerated};
  }
  if (algo == "oracle") return solve_oracle(net, problem, s, t, eps);
  NearOptions opt;
  opt.use_bounds = algo.size() < 3 || algo.substr(algo.size() - 3) != "-wb";
  NearAnswer a;
  if (algo.rfind("snf", 0) == 0)
    a = algo.find("dfs") != std::string::npos
            ? snf_dfs(net, s, t, eps, opt)
            : snf_astar(net, s, t, eps, opt);
  else
    a = algo.find("dfs") != std::string::npos
            ? fns_dfs(net, s, t, eps, opt)
            : fns_astar(net, s, t, eps, opt);
  return {a.len, a.cpl, a.route.nodes, a.routes_examined};
}

std::vector<std::string> node_names(const RoadNetwork& net,
                                    const std::vector<NodeId>& nodes) {
  std::vector<std::string> names;
  names.reserve(nodes.size());
  for (NodeId n : nodes) names.push_back(net.node_names[n]);
  return names;
}

NodeId need_node(const RoadNetwork& net, const std::string& name) {
  NodeId n = find_node(net, name);
  if (n < 0) fail(Errc::syntax_error, "unknown node '" + name + "'");
  return n;
}

// Route sanity before anything is printed: every edge must exist and the
// reported costs must recompute from the node list.
void revalidate(const RoadNetwork& net, const Outcome& o) {
  Route check = make_route(net, o.nodes);
  if (!approx::eq(check.length, o.len) || !approx::eq(check.complexity, o.cpl))
    fail(Errc::invalid_route, "route does not recompute to reported costs");
}

ResultRecord record_for(const RoadNetwork& net, const std::string& problem,
                        const std::string& algo, double eps,
                        const std::string& source, const std::string& target,
                        const Outcome& o, double ms) {
  ResultRecord rec;
  rec.problem = problem;
  rec.algorithm = algo;
  rec.epsilon = eps;
  rec.source = source;
  rec.target = target;
  rec.length = o.len;
  rec.complexity = o.cpl;
  rec.route = node_names(net, o.nodes);
  rec.routes_examined = o.examined;
  rec.elapsed_ms = ms;
  return rec;
}

struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

bool reaches(const RoadNetwork& net, NodeId s, NodeId t) {
  std::vector<char> seen(net.node_count(), 0);
  std::deque<NodeId> queue{s};
  seen[s] = 1;
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    if (n == t) return true;
    for (const Edge& e : net.out[n]) {
      if (!seen[e.to]) {
        seen[e.to] = 1;
        queue.push_back(e.to);
      }
    }
  }
  return false;
}

double mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  std::size_t half = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[half];
  return 0.5 * (xs[half - 1] + xs[half]);
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// ---- subcommand payloads ----

struct QueryArgs {
  std::string net_path, problem, algo, source, target, out_path;
  double epsilon = 0.0;
  double bsl_timeout = 0.0;
};

int cmd_query(const QueryArgs& q, std::ostream& out) {
  RoadNetwork net = load_network(q.net_path);
  std::string algo = q.algo.empty() ? default_algo(q.problem) : q.algo;
  std::string expect = problem_of_algo(algo);
  if (!expect.empty() && expect != q.problem)
    fail(Errc::syntax_error,
         "algorithm '" + algo + "' solves problem '" + expect + "'");
  NodeId s = need_node(net, q.source);
  NodeId t = need_node(net, q.target);
  Clock::time_point start = Clock::now();
  Outcome o = solve(net, algo, q.problem, s, t, q.epsilon, q.bsl_timeout);
  double ms = ms_since(start);
  revalidate(net, o);
  std::string text = write_results(
      {record_for(net, q.problem, algo, q.epsilon, q.source, q.target, o, ms)});
  if (!q.out_path.empty())
    write_text_file(q.out_path, text);
  else
    out << text;
  return 0;
}

struct BenchArgs {
  std::string net_path, out_path;
  int queries = 1000;
  std::uint64_t seed = 1;
  std::vector<double> epsilons = {0.01, 0.05, 0.1, 0.2, 0.3};
  std::vector<std::string> algos;
  bool force_bsl = false;
  double bsl_timeout = 30.0;
};

int cmd_bench(const BenchArgs& cfg, std::ostream& out, std::ostream& err) {
  RoadNetwork net = load_network(cfg.net_path);
  if (cfg.queries <= 0)
    fail(Errc::syntax_error, "query count must be positive");
  for (double e : cfg.epsilons)
    if (e < 0.0) fail(Errc::epsilon_negative, "epsilon must be non-negative");

  std::vector<std::string> algos = cfg.algos;
  if (algos.empty())
    algos = {"fs",           "sf",      "bsl",       "snf-dfs",
             "snf-astar",    "snf-astar-wb", "fns-dfs", "fns-astar",
             "fns-astar-wb"};
  for (const std::string& a : algos)
    if (a == "oracle" ||
        std::find(kAlgos.begin(), kAlgos.end(), a) == kAlgos.end())
      fail(Errc::syntax_error, "unknown bench algorithm '" + a + "'");
  if (net.road_count() > 3000 && !cfg.force_bsl) {
    auto it = std::find(algos.begin(), algos.end(), "bsl");
    if (it != algos.end()) {
      algos.erase(it);
      err << "note: bsl skipped on " << net.road_count()
          << " roads (use --force-bsl to include)\n";
    }
  }

  // One query set for every algorithm: unreachable or degenerate pairs are
  // resampled and counted.
  const int v = net.node_count();
  SplitMix rng(cfg.seed);
  std::vector<std::pair<NodeId, NodeId>> queries;
  std::uint64_t resamples = 0;
  std::uint64_t limit =
      1000ull * static_cast<std::uint64_t>(cfg.queries) + 1000ull;
  while (queries.size() < static_cast<std::size_t>(cfg.queries)) {
    auto s = static_cast<NodeId>(rng.below(v));
    auto t = static_cast<NodeId>(rng.below(v));
    if (s == t || !reaches(net, s, t)) {
      if (++resamples > limit)
        fail(Errc::unreachable, "could not sample enough connected pairs");
      continue;
    }
    queries.emplace_back(s, t);
  }

  std::vector<ResultRecord> records;
  struct Row {
    std::string algo;
    double eps;
    double mean_ms, median_ms, mean_examined;
  };
  std::vector<Row> rows;
  for (const std::string& algo : algos) {
    std::vector<double> eps_list =
        is_near_algo(algo) ? cfg.epsilons : std::vector<double>{0.0};
    std::string problem = problem_of_algo(algo);
    for (double eps : eps_list) {
      std::vector<double> times;
      std::vector<double> counts;
      times.reserve(queries.size());
      for (const auto& [s, t] : queries) {
        Clock::time_point start = Clock::now();
        Outcome o = solve(net, algo, problem, s, t, eps, cfg.bsl_timeout);
        double ms = ms_since(start);
        times.push_back(ms);
        counts.push_back(static_cast<double>(o.examined));
        records.push_back(record_for(net, problem, algo, eps,
                                     net.node_names[s], net.node_names[t], o,
                                     ms));
      }
      rows.push_back(
          {algo, eps, mean(times), median(times), mean(counts)});
    }
  }

  std::string text = write_results(records);
  if (!cfg.out_path.empty())
    write_text_file(cfg.out_path, text);
  else
    out << text;

  char line[160];
  std::snprintf(line, sizeof line, "%-14s %8s %12s %12s %16s\n", "algorithm",
                "epsilon", "mean_ms", "median_ms", "mean_examined");
  out << line;
  for (const Row& r : rows) {
    std::snprintf(line, sizeof line, "%-14s %8.3f %12.4f %12.4f %16.2f\n",
                  r.algo.c_str(), r.eps, r.mean_ms, r.median_ms,
                  r.mean_examined);
    out << line;
  }
  out << queries.size() << " queries, " << resamples << " pairs resampled\n";
  return 0;
}

struct GenArgs {
  std::string topology, template_path, out_path;
  std::vector<std::string> entrance_names;
  bool default_tmpl = false;
  int tau = 0;
  std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& g, std::ostream& out) {
  Backbone bb =
      g.topology == "grid" ? gen_grid_backbone(g.tau) : gen_ring_backbone(g.tau);
  int roads = bb.net.road_count();
  int inter = bb.net.intersection_count();
  auto slots = static_cast<int>(bb.slots.size());

  RoadNetwork result = bb.net;
  if (g.default_tmpl || !g.template_path.empty()) {
    RoadNetwork tmpl;
    std::vector<NodeId> entrances;
    if (!g.template_path.empty()) {
      tmpl = load_network(g.template_path);
      for (const std::string& name : g.entrance_names) {
        NodeId n = find_node(tmpl, name);
        if (n < 0)
          fail(Errc::incompatible_template,
               "template has no node '" + name + "'");
        entrances.push_back(n);
      }
    } else {
      tmpl = default_template();
      entrances = default_template_entrances();
    }
    result = compose(bb, tmpl, entrances, g.seed);
  }

  if (!g.out_path.empty()) write_text_file(g.out_path, write_network(result));
  out << roads << " roads, " << inter << " intersections, " << slots
      << " neighborhoods\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"turn-aware route planning toolkit"};
  app.name("simpleroute");
  app.require_subcommand(1);

  QueryArgs q;
  CLI::App* query = app.add_subcommand("query", "answer one routing query");
  query->add_option("--net", q.net_path, "network file")->required();
  query->add_option("--problem", q.problem, "fs | sf | snf | fns")
      ->required()
      ->check(CLI::IsMember(kProblems));
  query->add_option("--source", q.source, "source node id")->required();
  query->add_option("--target", q.target, "target node id")->required();
  query->add_option("--epsilon", q.epsilon, "near-optimality slack");
  query->add_option("--algo", q.algo, "algorithm")
      ->check(CLI::IsMember(kAlgos));
  query->add_option("--out", q.out_path, "write the result line here");
  query->add_option("--bsl-timeout", q.bsl_timeout,
                    "seconds before bsl gives up (0 = none)");

  BenchArgs b;
  CLI::App* bench = app.add_subcommand("bench", "batch benchmark");
  bench->add_option("--net", b.net_path, "network file")->required();
  bench->add_option("--queries", b.queries, "number of query pairs");
  bench->add_option("--seed", b.seed, "query sampling seed");
  bench->add_option("--epsilons", b.epsilons, "slack values for near modes");
  bench->add_option("--algos", b.algos, "algorithms to run");
  bench->add_option("--out", b.out_path, "write result lines here");
  bench->add_flag("--force-bsl", b.force_bsl,
                  "run bsl even on networks above 3000 roads");
  bench->add_option("--bsl-timeout", b.bsl_timeout,
                    "per-query bsl budget in seconds");

  GenArgs g;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic network");
  gen->add_option("topology", g.topology, "grid | ring")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>{"grid", "ring"}));
  gen->add_option("--tau", g.tau, "size parameter")->required();
  gen->add_option("--seed", g.seed, "composition seed");
  gen->add_option("--template", g.template_path,
                  "neighborhood template network file");
  gen->add_flag("--default-template", g.default_tmpl,
                "use the built-in neighborhood template");
  gen->add_option("--entrance", g.entrance_names,
                  "entrance node id in the template (repeatable)");
  gen->add_option("--out", g.out_path, "write the network here");

  QueryArgs oq;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive reference run");
  oracle->add_option("--net", oq.net_path, "network file")->required();
  oracle->add_option("--problem", oq.problem, "fs | sf | snf | fns")
      ->required()
      ->check(CLI::IsMember(kProblems));
  oracle->add_option("--source", oq.source, "source node id")->required();
  oracle->add_option("--target", oq.target, "target node id")->required();
  oracle->add_option("--epsilon", oq.epsilon, "near-optimality slack");
  oracle->add_option("--out", oq.out_path, "write the result line here");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (query->parsed()) return cmd_query(q, out);
    if (bench->parsed()) return cmd_bench(b, out, err);
    if (gen->parsed()) return cmd_gen(g, out);
    if (oracle->parsed()) {
      oq.algo = "oracle";
      return cmd_query(oq, out);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.code() == Errc::unreachable) return 2;
    if (e.code() == Errc::too_large) return 3;
    return 1;
  }
  return 1;
}

}  // namespace simpleroute
