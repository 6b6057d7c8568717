// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/zone_graph.hpp"

namespace tbacert {

SymbolicState initial_state(const TimedAutomaton& a) {
  Dbm zone = constrain(up(zero_zone(a.clocks.size())), a.locations[a.initial].invariant);
  return SymbolicState{a.initial, std::move(zone)};
}

std::vector<Successor> successors(const TimedAutomaton& a, const SymbolicState& s) {
  std::vector<Successor> out;
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    const auto& edge = a.edges[e];
    if (edge.source != s.location) continue;
    Dbm guarded = constrain(s.zone, edge.guard);
    if (is_empty(guarded)) continue;
    Dbm entered = constrain(reset(std::move(guarded), edge.resets),
                            a.locations[edge.target].invariant);
    if (is_empty(entered)) continue;
    Dbm closed = constrain(up(std::move(entered)), a.locations[edge.target].invariant);
    out.push_back({e, SymbolicState{edge.target, std::move(closed)}});
  }
  return out;
}

std::vector<Successor> successors_abstracted(const TimedAutomaton& a, const LuBounds& lu,
                                             const SymbolicState& s) {
  std::vector<Successor> out = successors(a, s);
  for (Successor& succ : out) succ.state.zone = extra_lu_plus(std::move(succ.state.zone), lu);
  return out;
}

}  // namespace tbacert
