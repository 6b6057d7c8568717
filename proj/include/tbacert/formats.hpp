// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tbacert/certifier.hpp"
#include "tbacert/generator.hpp"

namespace tbacert {

// Certificate file:
//   certificate v1
//   mode inclusion|alpha-lu
//   clocks <n> <name...>
//   entry <location> <numbering> <b00> <b01> ... <bnn>     (row-major bounds)
// Bound tokens: INF | <n | <=n with n a possibly negative decimal integer.
// '#' starts a comment; tokens are whitespace-separated.
std::string write_certificate(const Certificate& c);
Certificate read_certificate(std::string_view text);

// Graph file:
//   graph v1
//   mode inclusion|alpha-lu
//   clocks <n> <name...>
//   node <id> <location> <b00> ... <bnn>
//   initial <id>
//   edge <u> <v>
//   subsume <u> <v>
std::string write_graph(const SubsumptionGraph& g);
SubsumptionGraph read_graph(std::string_view text);

/// Name-to-index dictionary, injective per namespace.
struct Renaming {
  std::unordered_map<std::string, std::uint32_t> locations;
  std::unordered_map<std::string, std::uint32_t> clocks;
};

// Renaming file: lines `location <name> <index>` and `clock <name> <index>`.
Renaming read_renaming(std::string_view text);

}  // namespace tbacert
