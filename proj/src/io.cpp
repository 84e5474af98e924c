#include "simpleroute/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "simpleroute/error.hpp"

namespace simpleroute {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& tok, bool& ok) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  ok = res.ec == std::errc() && res.ptr == tok.data() + tok.size();
  return v;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(std::move(t));
  return toks;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string nine_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

RoadNetwork parse_network(const std::string& text) {
  NetworkBuilder b;
  std::unordered_map<std::string, NodeId> node_ids;
  std::unordered_map<std::string, RoadId> road_ids;
  std::vector<std::vector<NodeId>> road_nodes;
  // Directed segment -> declaring line, for early overlap detection.
  std::map<std::pair<NodeId, NodeId>, int> segment_line;

  int lineno = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto where = [&]() { return "line " + std::to_string(lineno) + ": "; };
    auto err = [&](Errc code, const std::string& msg) {
      fail(code, where() + msg);
    };
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;

    auto need_node = [&](const std::string& id) {
      auto it = node_ids.find(id);
      if (it == node_ids.end())
        err(Errc::syntax_error, "unknown node id '" + id + "'");
      return it->second;
    };
    auto need_road = [&](const std::string& id) {
      auto it = road_ids.find(id);
      if (it == road_ids.end())
        err(Errc::syntax_error, "unknown road id '" + id + "'");
      return it->second;
    };
    auto need_value = [&](const std::string& tok) {
      bool ok = false;
      double v = parse_double(tok, ok);
      if (!ok) err(Errc::syntax_error, "malformed number '" + tok + "'");
      return v;
    };

    const std::string& kind = toks[0];
    if (kind == "node") {
      if (toks.size() != 2 && toks.size() != 4)
        err(Errc::syntax_error, "expected 'node <id> [<x> <y>]'");
      if (node_ids.count(toks[1]))
        err(Errc::syntax_error, "duplicate node id '" + toks[1] + "'");
      NodeId id;
      if (toks.size() == 4) {
        double x = need_value(toks[2]);
        double y = need_value(toks[3]);
        id = b.add_node(toks[1], x, y);
      } else {
        id = b.add_node(toks[1]);
      }
      node_ids.emplace(toks[1], id);
    } else if (kind == "road") {
      if (toks.size() < 5)
        err(Errc::syntax_error,
            "expected 'road <id> oneway|twoway <node> <node> ...'");
      if (road_ids.count(toks[1]))
        err(Errc::syntax_error, "duplicate road id '" + toks[1] + "'");
      bool oneway;
      if (toks[2] == "oneway") oneway = true;
      else if (toks[2] == "twoway") oneway = false;
      else err(Errc::syntax_error, "expected 'oneway' or 'twoway'");
      std::vector<NodeId> nodes;
      std::set<NodeId> seen;
      for (std::size_t i = 3; i < toks.size(); ++i) {
        NodeId n = need_node(toks[i]);
        if (!seen.insert(n).second)
          err(Errc::invalid_route, "road repeats node '" + toks[i] + "'");
        nodes.push_back(n);
      }
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        auto claim = [&](NodeId a, NodeId c) {
          auto [it, fresh] = segment_line.emplace(std::make_pair(a, c), lineno);
          if (!fresh)
            err(Errc::overlapping_roads,
                "segment already used by the road on line " +
                    std::to_string(it->second));
        };
        claim(nodes[i], nodes[i + 1]);
        if (!oneway) claim(nodes[i + 1], nodes[i]);
      }
      RoadId rid = b.add_road(toks[1], oneway, nodes);
      road_ids.emplace(toks[1], rid);
      road_nodes.push_back(std::move(nodes));
    } else if (kind == "length") {
      if (toks.size() != 4)
        err(Errc::syntax_error, "expected 'length <a> <b> <value>'");
      NodeId a = need_node(toks[1]);
      NodeId c = need_node(toks[2]);
      double v = need_value(toks[3]);
      if (v <= 0.0)
        err(Errc::non_positive_length, "length must be positive");
      if (!segment_line.count({a, c}) && !segment_line.count({c, a}))
        err(Errc::dangling_node_ref,
            "(" + toks[1] + "," + toks[2] + ") is not a road segment");
      b.set_length(a, c, v);
    } else if (kind == "turncost") {
      if (toks.size() != 5)
        err(Errc::syntax_error,
            "expected 'turncost <node> <road_i> <road_j> <value>'");
      NodeId n = need_node(toks[1]);
      RoadId ri = need_road(toks[2]);
      RoadId rj = need_road(toks[3]);
      double v = need_value(toks[4]);
      if (v < 0.0) err(Errc::negative_turn_cost, "turn cost must be >= 0");
      if (ri == rj)
        err(Errc::same_road_override, "roads must differ");
      auto on = [&](RoadId r) {
        const auto& nodes = road_nodes[r];
        return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
      };
      if (!on(ri) || !on(rj))
        err(Errc::node_not_on_road,
            "'" + toks[1] + "' must lie on both roads");
      b.set_turn_cost(n, ri, rj, v);
    } else {
      err(Errc::syntax_error, "unknown directive '" + kind + "'");
    }
  }
  return b.build();
}

std::string write_network(const RoadNetwork& net) {
  std::string out;
  for (int n = 0; n < net.node_count(); ++n) {
    out += "node " + net.node_names[n];
    if (net.coords[n]) {
      out += " " + shortest(net.coords[n]->first) + " " +
             shortest(net.coords[n]->second);
    }
    out += "\n";
  }
  for (const Road& r : net.roads) {
    out += "road " + net.road_names[r.id];
    out += r.oneway ? " oneway" : " twoway";
    for (NodeId n : r.nodes) out += " " + net.node_names[n];
    out += "\n";
  }
  for (const Road& r : net.roads) {
    for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) {
      NodeId a = r.nodes[i], c = r.nodes[i + 1];
      out += "length " + net.node_names[a] + " " + net.node_names[c] + " " +
             shortest(net.edge_length(a, c)) + "\n";
    }
  }
  if (net.default_turn_cost == 1.0) {
    std::vector<std::uint64_t> keys;
    keys.reserve(net.turn_overrides.size());
    for (const auto& [key, value] : net.turn_overrides) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
      auto n = static_cast<NodeId>(key >> 42);
      auto from = static_cast<RoadId>((key >> 21) & ((1u << 21) - 1));
      auto to = static_cast<RoadId>(key & ((1u << 21) - 1));
      out += "turncost " + net.node_names[n] + " " + net.road_names[from] +
             " " + net.road_names[to] + " " +
             shortest(net.turn_overrides.at(key)) + "\n";
    }
  } else {
    // No directive carries the default, so spell out the whole table.
    for (NodeId n = 0; n < net.node_count(); ++n) {
      for (RoadId from : net.roads_at[n]) {
        for (RoadId to : net.roads_at[n]) {
          if (from == to) continue;
          out += "turncost " + net.node_names[n] + " " +
                 net.road_names[from] + " " + net.road_names[to] + " " +
                 shortest(net.turn(n, from, to)) + "\n";
        }
      }
    }
  }
  return out;
}

std::string write_results(const std::vector<ResultRecord>& records) {
  std::string out;
  for (const ResultRecord& r : records) {
    out += "{\"problem\":\"" + json_escape(r.problem) + "\"";
    out += ",\"algorithm\":\"" + json_escape(r.algorithm) + "\"";
    out += ",\"epsilon\":" + nine_digits(r.epsilon);
    out += ",\"source\":\"" + json_escape(r.source) + "\"";
    out += ",\"target\":\"" + json_escape(r.target) + "\"";
    out += ",\"length\":" + nine_digits(r.length);
    out += ",\"complexity\":" + nine_digits(r.complexity);
    out += ",\"route\":[";
    for (std::size_t i = 0; i < r.route.size(); ++i) {
      if (i) out += ",";
      out += "\"" + json_escape(r.route[i]) + "\"";
    }
    out += "]";
    out += ",\"routes_examined\":" + std::to_string(r.routes_examined);
    out += ",\"elapsed_ms\":" + nine_digits(r.elapsed_ms);
    out += "}\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::syntax_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::syntax_error, "cannot write '" + path + "'");
  out << text;
}

RoadNetwork load_network(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return parse_network(text);
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.message());
  }
}

}  // namespace simpleroute
