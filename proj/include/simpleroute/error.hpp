#pragma once

#include <stdexcept>
#include <string>

namespace simpleroute {

// Failure categories raised across the library. Each Error carries one code
// plus a human-readable message with the offending ids or file location.
enum class Errc {
  overlapping_roads,    // a directed node pair appears in more than one road
  orphan_node,          // node referenced by no road
  non_positive_length,  // edge length <= 0
  negative_turn_cost,   // turn cost < 0
  dangling_node_ref,    // road or length line names an unknown node/segment
  invalid_route,        // malformed road/route (short, repeated node, gap)
  node_not_on_road,     // turn override at a node absent from a road
  same_road_override,   // turn override with identical from/to road
  unreachable,          // no route between the query endpoints
  epsilon_negative,     // near-route slack below zero
  unsupported_cost_table,  // baseline requires uniform unit turn costs
  too_large,            // exhaustive enumeration guard tripped
  empty_set,            // oracle selection over an empty route set
  tau_too_small,        // generator degree below the topology minimum
  incompatible_template,   // neighborhood template unusable for composition
  syntax_error,         // network file parse failure
  timeout,              // per-query time budget exceeded
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const { return code_; }
  // Message without the "<Name>: " prefix that what() carries.
  const std::string& message() const { return message_; }

 private:
  Errc code_;
  std::string message_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

}  // namespace simpleroute
