// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tbacert/dbm.hpp"

namespace tbacert {

/// Timed Büchi automaton. Immutable after parsing; freely shared.
struct TimedAutomaton {
  struct Location {
    std::string name;
    bool accepting = false;
    std::vector<Atom> invariant;

    friend bool operator==(const Location&, const Location&) = default;
  };

  struct Edge {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    std::vector<Atom> guard;
    std::vector<std::uint32_t> resets;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::vector<std::string> clocks;
  std::vector<Location> locations;
  std::uint32_t initial = 0;
  std::vector<Edge> edges;

  bool accepting(std::uint32_t location) const { return locations[location].accepting; }
  std::optional<std::uint32_t> location_index(std::string_view name) const;
  std::optional<std::uint32_t> clock_index(std::string_view name) const;

  friend bool operator==(const TimedAutomaton&, const TimedAutomaton&) = default;
};

/// Parses the line-oriented model format:
///   clock <name>
///   location <name> [initial] [accepting] [invariant: <conj>]
///   edge <src> -> <dst> [guard: <conj>] [reset: <name>,<name>,...]
/// where <conj> is atoms `<clock> <op> <nat>` joined by `&&`,
/// op in {<, <=, ==, >=, >}, and `#` starts a comment.
/// Throws parse_error with the offending line on any violation.
TimedAutomaton parse_model(std::string_view text);

/// Prints a model in the same format; parse_model(write_model(a)) == a.
std::string write_model(const TimedAutomaton& a);

/// Per-clock maxima of comparison constants over all guards and invariants.
LuBounds compute_lu(const TimedAutomaton& a);

}  // namespace tbacert
