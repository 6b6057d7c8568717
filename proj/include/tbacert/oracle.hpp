// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tbacert/certifier.hpp"
#include "tbacert/graph.hpp"
#include "tbacert/model.hpp"
#include "tbacert/zone_graph.hpp"

namespace tbacert {

/// Time in exact quarter units: a stored value q represents q/4 time units.
/// Model constants are naturals, so all comparisons stay exact in quarters.
using TimeQ = std::int64_t;
constexpr TimeQ kUnit = 4;

/// Non-negative clock valuation, one quarter-unit value per clock.
struct Valuation {
  std::vector<TimeQ> quarters;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

struct ConcreteState {
  std::uint32_t location = 0;
  Valuation valuation;
};

/// One delay-then-transition step of the concrete semantics, or nullopt when
/// the delayed valuation misses an invariant or the guard.
std::optional<ConcreteState> concrete_step(const TimedAutomaton& a, const ConcreteState& from,
                                           TimeQ delay, std::size_t edge);

/// Exhaustive exploration of the (optionally abstracted) zone graph with
/// exact-equality deduplication and no subsumption.
struct Exploration {
  std::vector<SymbolicState> nodes;
  FiniteGraph graph;
  std::size_t initial = 0;
};

constexpr std::size_t kDefaultStateCap = 100000;

/// Throws resource_limit_error past the state cap. Without LU bounds the
/// unabstracted zone graph is explored (may only terminate via the cap).
Exploration explore_full(const TimedAutomaton& a, const std::optional<LuBounds>& lu,
                         std::size_t cap = kDefaultStateCap);

/// Textbook nested DFS (no subsumption) over explore_full's graph.
EmptinessVerdict reference_emptiness(const TimedAutomaton& a, const std::optional<LuBounds>& lu,
                                     std::size_t cap = kDefaultStateCap);

/// Certificate listing every explored node, numbered by an SCC pass over the
/// exploration graph; inclusion mode. Throws std::invalid_argument when the
/// automaton is not empty.
Certificate trivial_certificate(const TimedAutomaton& a, const LuBounds& lu,
                                std::size_t cap = kDefaultStateCap);

}  // namespace tbacert
