// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace tbacert {

/// Finite transition system with an accepting predicate per node.
struct FiniteGraph {
  std::size_t node_count = 0;
  std::vector<bool> accepting;  // total over nodes
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Natural number per node.
using Numbering = std::vector<std::uint64_t>;

/// True iff f is non-increasing along every edge and strictly decreasing out
/// of accepting sources. Throws if f is not total over g, naming the node.
bool check_topological_numbering(const FiniteGraph& g, const Numbering& f);

/// True iff some accepting node lies on a cycle.
bool has_accepting_cycle(const FiniteGraph& g);

/// Numbering through a reverse-topological numbering of the condensation:
/// sink components get 0, and every edge between distinct components drops
/// strictly. Valid topological numbering whenever g has no accepting cycle.
Numbering scc_numbering(const FiniteGraph& g);

/// f(s) = number of accepting nodes reachable from s (s included).
Numbering count_reachable_accepting(const FiniteGraph& g);

/// Component id per node; ids are assigned in reverse topological order of
/// the condensation (a component's successors always have smaller ids).
std::vector<std::size_t> strongly_connected_components(const FiniteGraph& g,
                                                       std::size_t* component_count = nullptr);

}  // namespace tbacert
