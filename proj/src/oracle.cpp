// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/oracle.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "tbacert/errors.hpp"

namespace tbacert {

namespace {

bool satisfies_atom(const Valuation& v, const Atom& atom) {
  const TimeQ value = v.quarters[atom.clock];
  const TimeQ c = atom.constant * kUnit;
  switch (atom.op) {
    case AtomOp::Lt: return value < c;
    case AtomOp::Le: return value <= c;
    case AtomOp::Eq: return value == c;
    case AtomOp::Ge: return value >= c;
    case AtomOp::Gt: return value > c;
  }
  return false;
}

bool satisfies(const Valuation& v, const std::vector<Atom>& atoms) {
  for (const Atom& atom : atoms) {
    if (!satisfies_atom(v, atom)) return false;
  }
  return true;
}

}  // namespace

std::optional<ConcreteState> concrete_step(const TimedAutomaton& a, const ConcreteState& from,
                                           TimeQ delay, std::size_t edge) {
  if (delay < 0) throw std::invalid_argument("concrete_step: negative delay");
  const auto& t = a.edges[edge];
  if (t.source != from.location) return std::nullopt;
  Valuation delayed = from.valuation;
  for (TimeQ& q : delayed.quarters) q += delay;
  if (!satisfies(delayed, a.locations[from.location].invariant)) return std::nullopt;
  if (!satisfies(delayed, t.guard)) return std::nullopt;
  Valuation next = delayed;
  for (std::uint32_t clock : t.resets) next.quarters[clock] = 0;
  if (!satisfies(next, a.locations[t.target].invariant)) return std::nullopt;
  return ConcreteState{t.target, std::move(next)};
}

Exploration explore_full(const TimedAutomaton& a, const std::optional<LuBounds>& lu,
                         std::size_t cap) {
  Exploration out;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> dedup;
  auto find_or_create = [&](const SymbolicState& s) -> std::size_t {
    const std::uint64_t key = hash_value(s.zone) * 31 + s.location;
    for (std::size_t id : dedup[key]) {
      if (out.nodes[id] == s) return id;
    }
    if (out.nodes.size() >= cap)
      throw resource_limit_error("zone graph exploration exceeded the state cap");
    out.nodes.push_back(s);
    dedup[key].push_back(out.nodes.size() - 1);
    return out.nodes.size() - 1;
  };

  const std::size_t root = find_or_create(initial_state(a));
  out.initial = root;
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const SymbolicState state = out.nodes[id];
    const std::vector<Successor> succs =
        lu.has_value() ? successors_abstracted(a, *lu, state) : successors(a, state);
    for (const Successor& succ : succs) {
      const std::size_t before = out.nodes.size();
      const std::size_t target = find_or_create(succ.state);
      out.graph.edges.emplace_back(id, target);
      if (target == before) queue.push_back(target);
    }
  }
  out.graph.node_count = out.nodes.size();
  out.graph.accepting.resize(out.nodes.size());
  for (std::size_t id = 0; id < out.nodes.size(); ++id)
    out.graph.accepting[id] = a.accepting(out.nodes[id].location);
  return out;
}

namespace {

// Plain nested DFS over a finite graph: is some accepting node on a cycle
// reachable from the initial node?
bool graph_has_reachable_accepting_cycle(const FiniteGraph& g, std::size_t initial) {
  if (g.node_count == 0) return false;
  std::vector<std::vector<std::size_t>> adj(g.node_count);
  for (const auto& [u, v] : g.edges) adj[u].push_back(v);

  enum : std::uint8_t { kWhite = 0, kCyan, kBlue };
  std::vector<std::uint8_t> color(g.node_count, kWhite);
  std::vector<char> red(g.node_count, 0);

  struct Frame {
    std::size_t node;
    std::size_t child = 0;
  };

  auto dfs_red = [&](std::size_t seed) -> bool {
    std::vector<Frame> stack{{seed}};
    red[seed] = 1;
    while (!stack.empty()) {
      Frame& fr = stack.back();
      if (fr.child >= adj[fr.node].size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t t = adj[fr.node][fr.child++];
      if (color[t] == kCyan) return true;
      if (!red[t]) {
        red[t] = 1;
        stack.push_back({t});
      }
    }
    return false;
  };

  std::vector<Frame> stack{{initial}};
  color[initial] = kCyan;
  while (!stack.empty()) {
    Frame& fr = stack.back();
    const std::size_t s = fr.node;
    if (fr.child < adj[s].size()) {
      const std::size_t t = adj[s][fr.child++];
      if (color[t] == kWhite) {
        color[t] = kCyan;
        stack.push_back({t});
      }
      continue;
    }
    if (g.accepting[s] && dfs_red(s)) return true;
    color[s] = kBlue;
    stack.pop_back();
  }
  return false;
}

}  // namespace

EmptinessVerdict reference_emptiness(const TimedAutomaton& a, const std::optional<LuBounds>& lu,
                                     std::size_t cap) {
  const Exploration exploration = explore_full(a, lu, cap);
  return graph_has_reachable_accepting_cycle(exploration.graph, exploration.initial)
             ? EmptinessVerdict::NonEmpty
             : EmptinessVerdict::Empty;
}

Certificate trivial_certificate(const TimedAutomaton& a, const LuBounds& lu, std::size_t cap) {
  const Exploration exploration = explore_full(a, lu, cap);
  if (graph_has_reachable_accepting_cycle(exploration.graph, exploration.initial))
    throw std::invalid_argument("automaton is not empty; no trivial certificate exists");
  const Numbering f = scc_numbering(exploration.graph);
  Certificate cert;
  cert.mode = CoverMode::Inclusion;
  cert.clock_names = a.clocks;
  for (std::size_t id = 0; id < exploration.nodes.size(); ++id) {
    cert.entries.push_back({a.locations[exploration.nodes[id].location].name,
                            exploration.nodes[id].zone, f[id]});
  }
  return cert;
}

}  // namespace tbacert
