#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simpleroute/model.hpp"

namespace simpleroute {

// One query outcome, reported in file-level (string) node ids.
struct ResultRecord {
  std::string problem;  // fs | sf | snf | fns
  std::string algorithm;
  double epsilon = 0.0;
  std::string source;
  std::string target;
  double length = 0.0;
  double complexity = 0.0;
  std::vector<std::string> route;
  std::uint64_t routes_examined = 0;
  double elapsed_ms = 0.0;
};

// Line-oriented network text. Directives, one per line, `#` starts a comment:
//   node <id> [<x> <y>]
//   road <id> oneway|twoway <node_id> <node_id> ...
//   length <a> <b> <positive float>
//   turncost <node> <road_i> <road_j> <non-negative float>
// Ids are arbitrary whitespace-free strings declared before use; they map to
// dense integer ids in declaration order. Undeclared references, duplicate
// ids, malformed numbers, and constraint violations raise errors that name
// the offending line.
RoadNetwork parse_network(const std::string& text);

// Canonical serialization: nodes, then roads, then one explicit length line
// per segment, then turn costs sorted by (node, from, to). Numbers use the
// shortest form that parses back to the same double, so parse(write(net))
// reproduces the network exactly. A network whose default turn cost is not 1
// has every turn pair written explicitly (the format has no default
// directive); the cost table survives, the default collapses to 1.
std::string write_network(const RoadNetwork& net);

// One JSON object per line with a fixed field order; floats carry 9
// significant digits.
std::string write_results(const std::vector<ResultRecord>& records);

// Reads and parses a network file; errors name the path.
RoadNetwork load_network(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace simpleroute
