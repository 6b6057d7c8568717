// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "tbacert/errors.hpp"
#include "tbacert/formats.hpp"
#include "tbacert/generator.hpp"
#include "tbacert/model.hpp"
#include "test_support.hpp"

using namespace tbacert;
namespace ts = tbacert::test;

namespace {

Certificate random_certificate(std::mt19937& rng) {
  Certificate c;
  c.mode = ts::rand_int(rng, 0, 1) == 0 ? CoverMode::Inclusion : CoverMode::AlphaLu;
  const std::size_t clocks = static_cast<std::size_t>(ts::rand_int(rng, 0, 3));
  for (std::size_t i = 0; i < clocks; ++i) c.clock_names.push_back("c" + std::to_string(i));
  const int entries = static_cast<int>(ts::rand_int(rng, 0, 6));
  for (int e = 0; e < entries; ++e) {
    c.entries.push_back({"loc" + std::to_string(ts::rand_int(rng, 0, 3)),
                         clocks == 0 ? zero_zone(0) : ts::random_zone(rng, clocks, 5),
                         static_cast<std::uint64_t>(ts::rand_int(rng, 0, 1000))});
  }
  return c;
}

SubsumptionGraph random_graph_file(std::mt19937& rng) {
  SubsumptionGraph g;
  g.mode = ts::rand_int(rng, 0, 1) == 0 ? CoverMode::Inclusion : CoverMode::AlphaLu;
  g.clock_names = {"x"};
  const std::size_t nodes = static_cast<std::size_t>(ts::rand_int(rng, 1, 6));
  for (std::size_t i = 0; i < nodes; ++i) {
    g.nodes.push_back({"loc" + std::to_string(ts::rand_int(rng, 0, 1)),
                       ts::lower_bound_zone(ts::rand_int(rng, 0, 4))});
  }
  g.initial = static_cast<std::size_t>(ts::rand_int(rng, 0, nodes - 1));
  const int edges = static_cast<int>(ts::rand_int(rng, 0, 8));
  for (int e = 0; e < edges; ++e) {
    const auto u = static_cast<std::size_t>(ts::rand_int(rng, 0, nodes - 1));
    const auto v = static_cast<std::size_t>(ts::rand_int(rng, 0, nodes - 1));
    if (ts::rand_int(rng, 0, 2) == 0 && g.nodes[u].location == g.nodes[v].location) {
      g.subsumptions.emplace_back(u, v);
    } else {
      g.edges.emplace_back(u, v);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("certificate text layout") {
  Certificate c;
  c.mode = CoverMode::Inclusion;
  c.clock_names = {"x"};
  c.entries.push_back({"q0", zero_zone(1), 3});
  const std::string text = write_certificate(c);
  CHECK(text ==
        "certificate v1\n"
        "mode inclusion\n"
        "clocks 1 x\n"
        "entry q0 3 <=0 <=0 <=0 <=0\n");
  CHECK(read_certificate(text) == c);
}

TEST_CASE("certificate round-trips preserve strictness and mode") {
  std::mt19937 rng(71);
  for (int round = 0; round < 200; ++round) {
    const Certificate c = random_certificate(rng);
    CHECK(read_certificate(write_certificate(c)) == c);
  }
}

TEST_CASE("certificate parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(
      read_certificate("certificate v1\nmode inclusion\nclocks 1 x\nentry q0 0 <=x <=0 <=0 <=0\n"),
      "line 4: malformed bound token '<=x'", parse_error);
  CHECK_THROWS_AS(
      read_certificate("certificate v1\nmode inclusion\nclocks 1 x\nentry q0 0 <=0 <=0\n"),
      parse_error);  // wrong arity
  CHECK_THROWS_AS(read_certificate("certificate v1\nmode sometimes\nclocks 1 x\n"), parse_error);
  CHECK_THROWS_AS(read_certificate("graph v1\nmode inclusion\nclocks 0\n"), parse_error);
  // comments and blank lines are fine
  const Certificate c = read_certificate(
      "# preamble\ncertificate v1\nmode alpha-lu\n\nclocks 1 x # names\n");
  CHECK(c.mode == CoverMode::AlphaLu);
  CHECK(c.entries.empty());
}

TEST_CASE("graph text layout for the demo shape") {
  const TimedAutomaton a = parse_model(ts::demo_model_text());
  const CheckResult result = ndfs_emptiness(a, compute_lu(a), CoverMode::Inclusion);
  const std::string text = write_graph(*result.graph);
  std::size_t nodes = 0, edges = 0, subsumes = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    nodes += line.starts_with("node ");
    edges += line.starts_with("edge ");
    subsumes += line.starts_with("subsume ");
  }
  CHECK(nodes == 5);
  CHECK(edges == 4);
  CHECK(subsumes == 1);
  CHECK(read_graph(text) == *result.graph);
}

TEST_CASE("empty graph writes the header only") {
  SubsumptionGraph g;
  g.clock_names = {"x"};
  const std::string text = write_graph(g);
  CHECK(text == "graph v1\nmode inclusion\nclocks 1 x\n");
  CHECK(read_graph(text) == g);
}

TEST_CASE("graph round-trips") {
  std::mt19937 rng(72);
  for (int round = 0; round < 200; ++round) {
    const SubsumptionGraph g = random_graph_file(rng);
    CHECK(read_graph(write_graph(g)) == g);
  }
}

TEST_CASE("graph validation") {
  const char* header = "graph v1\nmode inclusion\nclocks 1 x\n";
  const std::string node0 = std::string(header) + "node 0 a <=0 <=0 INF <=0\ninitial 0\n";
  CHECK_THROWS_AS(read_graph(node0 + "edge 0 3\n"), parse_error);  // dangling id
  const std::string two_locs =
      std::string(header) + "node 0 a <=0 <=0 INF <=0\nnode 1 b <=0 <=0 INF <=0\ninitial 0\n";
  CHECK_THROWS_AS(read_graph(two_locs + "subsume 0 1\n"), parse_error);
  CHECK_THROWS_AS(read_graph(std::string(header) + "node 4 a <=0 <=0 INF <=0\n"), parse_error);
  // a node without an initial line is incomplete
  CHECK_THROWS_AS(read_graph(std::string(header) + "node 0 a <=0 <=0 INF <=0\n"), parse_error);
  CHECK_NOTHROW(read_graph(node0));
}

TEST_CASE("renaming files") {
  const Renaming r = read_renaming("location q0 0\nclock x 1\n");
  CHECK(r.locations.size() == 1);
  CHECK(r.clocks.size() == 1);
  CHECK(r.locations.at("q0") == 0);
  CHECK(r.clocks.at("x") == 1);

  CHECK_THROWS_AS(read_renaming("location q0 0\nlocation q0 1\n"), parse_error);
  CHECK_THROWS_AS(read_renaming("clock x 0\nclock y 0\n"), parse_error);
  CHECK(read_renaming("").locations.empty());
  // separate namespaces may reuse indices
  CHECK_NOTHROW(read_renaming("location q0 0\nclock x 0\n"));
}
