// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tbacert/certifier.hpp"
#include "tbacert/dbm.hpp"
#include "tbacert/model.hpp"
#include "tbacert/zone_graph.hpp"

namespace tbacert {

struct GraphNode {
  std::string location;
  Dbm zone{0};

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

/// Explored part of the abstracted zone graph with concrete (->) and
/// subsumption (~>) edges. Every subsumption edge connects same-location
/// nodes whose zones cover in the graph's mode; every node is reachable from
/// the initial node.
struct SubsumptionGraph {
  CoverMode mode = CoverMode::Inclusion;
  std::vector<std::string> clock_names;
  std::vector<GraphNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<std::size_t, std::size_t>> subsumptions;
  std::size_t initial = 0;

  friend bool operator==(const SubsumptionGraph&, const SubsumptionGraph&) = default;
};

/// Counterexample: states[0..cycle_start) lead to the cycle; the remaining
/// states form the cycle, whose closing state (equal to states[cycle_start])
/// reoccurs as the final element.
struct Lasso {
  std::vector<GraphNode> states;
  std::size_t cycle_start = 0;
};

struct CheckResult {
  EmptinessVerdict verdict = EmptinessVerdict::Empty;
  std::optional<SubsumptionGraph> graph;  // populated on Empty
  std::optional<Lasso> lasso;             // populated on NonEmpty
};

/// Nested DFS over the abstracted zone graph; the outer search is pruned at
/// states covered by a red state, and each pruning point is exported as a
/// subsumption edge. On an empty verdict the exported graph is
/// liveness-compatible.
CheckResult ndfs_emptiness(const TimedAutomaton& a, const LuBounds& lu, CoverMode mode);

/// Alternates reachability with maximal subsumption and SCC decompositions:
/// subsumption edges inside SCCs holding both an accepting node and a
/// subsumption edge are deleted and their sources re-explored, until either
/// an accepting cycle survives (NonEmpty) or the graph stabilizes (Empty,
/// liveness-compatible).
CheckResult iterative_scc_emptiness(const TimedAutomaton& a, const LuBounds& lu, CoverMode mode);

/// One extra SCC pass over -> union ~> assigns the numbering; refuses (throws
/// std::invalid_argument) if the combined graph has an accepting cycle.
Certificate extract_certificate(const SubsumptionGraph& g, const TimedAutomaton& a);

}  // namespace tbacert
