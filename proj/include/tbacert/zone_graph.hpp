// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "tbacert/dbm.hpp"
#include "tbacert/model.hpp"

namespace tbacert {

enum class EmptinessVerdict { Empty, NonEmpty };

/// Node of the (abstracted) zone graph. The zone is canonical, non-empty,
/// delay-closed and contained in the location's invariant.
struct SymbolicState {
  std::uint32_t location = 0;
  Dbm zone{0};

  friend bool operator==(const SymbolicState&, const SymbolicState&) = default;
};

/// Delay closure of the zero valuation under the initial invariant.
SymbolicState initial_state(const TimedAutomaton& a);

struct Successor {
  std::size_t edge = 0;
  SymbolicState state;
};

/// Symbolic successors along every outgoing edge, in edge order; empty
/// successor zones are dropped.
std::vector<Successor> successors(const TimedAutomaton& a, const SymbolicState& s);

/// Successors with Extra_LU+ applied to every successor zone.
std::vector<Successor> successors_abstracted(const TimedAutomaton& a, const LuBounds& lu,
                                             const SymbolicState& s);

}  // namespace tbacert
