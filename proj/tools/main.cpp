// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: check certificates, generate them from the NDFS or
// iterative-SCC engines, query the reference oracle, and convert between the
// graph and certificate formats.
//
// Exit codes: 0 verdict "good" (accepted / empty / converted), 1 verdict
// "bad" (rejected / nonempty / refused), 2 usage or structural errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tbacert/certifier.hpp"
#include "tbacert/errors.hpp"
#include "tbacert/formats.hpp"
#include "tbacert/generator.hpp"
#include "tbacert/graph.hpp"
#include "tbacert/model.hpp"
#include "tbacert/oracle.hpp"

namespace {

using namespace tbacert;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string zone_text(const Dbm& z) {
  std::ostringstream out;
  for (std::size_t i = 0; i < z.dim(); ++i) {
    for (std::size_t j = 0; j < z.dim(); ++j) {
      if (i != 0 || j != 0) out << ' ';
      const Bound& b = z.at(i, j);
      if (b.infinite) {
        out << "INF";
      } else {
        out << (b.strict ? "<" : "<=") << b.value;
      }
    }
  }
  return out.str();
}

void print_rejections(const TimedAutomaton& a, const Verdict& verdict) {
  for (const Rejection& r : verdict.rejections) {
    std::cerr << "rejection: entry ";
    if (r.entry.has_value()) {
      std::cerr << *r.entry;
    } else {
      std::cerr << "initial";
    }
    std::cerr << ' ' << reason_name(r.reason);
    if (r.witness.has_value()) {
      std::cerr << " successor " << a.locations[r.witness->location].name << ' '
                << zone_text(r.witness->zone);
    }
    std::cerr << '\n';
  }
}

CoverMode mode_flag_value(const std::string& flag, CoverMode fallback) {
  if (flag.empty()) return fallback;
  const auto mode = parse_mode(flag);
  if (!mode) throw std::runtime_error("unknown mode '" + flag + "'");
  return *mode;
}

int run_check(const std::string& model_path, const std::string& cert_path,
              const std::string& mode_flag, unsigned jobs, bool fail_fast) {
  const TimedAutomaton a = parse_model(slurp(model_path));
  const Certificate c = read_certificate(slurp(cert_path));
  CheckOptions options;
  options.mode = mode_flag_value(mode_flag, c.mode);
  options.jobs = jobs;
  options.fail_fast = fail_fast;
  const Verdict verdict = check_certificate(a, c, options);
  if (verdict.accepted) {
    std::cout << "accepted\n";
    return 0;
  }
  std::cout << "rejected\n";
  print_rejections(a, verdict);
  return 1;
}

int run_generate(const std::string& model_path, const std::string& algo,
                 const std::string& mode_flag, const std::string& out_cert,
                 const std::string& out_graph) {
  const TimedAutomaton a = parse_model(slurp(model_path));
  const LuBounds lu = compute_lu(a);
  const CoverMode mode = mode_flag_value(mode_flag, CoverMode::Inclusion);
  const CheckResult result = algo == "ndfs" ? ndfs_emptiness(a, lu, mode)
                                            : iterative_scc_emptiness(a, lu, mode);
  if (result.verdict == EmptinessVerdict::NonEmpty) {
    std::cout << "nonempty\n";
    std::cerr << "counterexample lasso of " << result.lasso->states.size()
              << " states (cycle starts at " << result.lasso->cycle_start << ")\n";
    return 1;
  }
  std::cout << "empty\n";
  const Certificate cert = extract_certificate(*result.graph, a);
  spill(out_cert, write_certificate(cert));
  if (!out_graph.empty()) spill(out_graph, write_graph(*result.graph));
  return 0;
}

int run_oracle(const std::string& model_path, std::size_t cap, const std::string& emit_cert) {
  const TimedAutomaton a = parse_model(slurp(model_path));
  const LuBounds lu = compute_lu(a);
  const EmptinessVerdict verdict = reference_emptiness(a, lu, cap);
  std::cout << (verdict == EmptinessVerdict::Empty ? "empty" : "nonempty") << '\n';
  if (!emit_cert.empty()) {
    if (verdict == EmptinessVerdict::NonEmpty) {
      std::cerr << "refusing to emit a certificate for a nonempty automaton\n";
      return 1;
    }
    spill(emit_cert, write_certificate(trivial_certificate(a, lu, cap)));
  }
  return 0;
}

int run_convert(const std::string& graph_path, const std::string& model_path,
                const std::string& out_cert) {
  const TimedAutomaton a = parse_model(slurp(model_path));
  const SubsumptionGraph g = read_graph(slurp(graph_path));
  const LuBounds lu = compute_lu(a);
  // Validate the covering invariant of every subsumption edge up front.
  for (const auto& [u, v] : g.subsumptions) {
    const bool ok = g.mode == CoverMode::Inclusion
                        ? includes(g.nodes[u].zone, g.nodes[v].zone)
                        : subsumes_alpha_lu(g.nodes[u].zone, g.nodes[v].zone, lu);
    if (!ok)
      throw std::runtime_error("subsumption edge " + std::to_string(u) + " -> " +
                               std::to_string(v) + " violates the covering invariant");
  }
  Certificate cert;
  try {
    cert = extract_certificate(g, a);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  spill(out_cert, write_certificate(cert));
  std::cout << "converted " << cert.entries.size() << " entries\n";
  return 0;
}

int run_renumber(const std::string& cert_path, const std::string& model_path,
                 const std::string& out_path) {
  const TimedAutomaton a = parse_model(slurp(model_path));
  Certificate c = read_certificate(slurp(cert_path));
  const LuBounds lu = compute_lu(a);
  const CertificateIndex index(c);
  // Cover graph over entries: per symbolic successor one edge, to the
  // covering entry with the smallest current numbering (input order breaks
  // ties). Numbers are then recomputed blindly; `check` decides validity.
  FiniteGraph fg;
  fg.node_count = c.entries.size();
  fg.accepting.resize(c.entries.size());
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    const auto location = a.location_index(c.entries[i].location);
    if (!location)
      throw std::runtime_error("certificate names unknown location " + c.entries[i].location);
    fg.accepting[i] = a.accepting(*location);
    if (is_empty(c.entries[i].zone) || !is_canonical(c.entries[i].zone)) continue;
    for (const Successor& succ : successors(a, SymbolicState{*location, c.entries[i].zone})) {
      const std::string& target = a.locations[succ.state.location].name;
      std::optional<std::size_t> best;
      for (std::size_t candidate : index.entries_at(target)) {
        const Dbm& big = c.entries[candidate].zone;
        if (big.dim() != succ.state.zone.dim()) continue;
        const bool ok = c.mode == CoverMode::Inclusion
                            ? includes(succ.state.zone, big)
                            : subsumes_alpha_lu(succ.state.zone, big, lu);
        if (ok && (!best || c.entries[candidate].numbering < c.entries[*best].numbering))
          best = candidate;
      }
      if (best) fg.edges.emplace_back(i, *best);
    }
  }
  const Numbering f = scc_numbering(fg);
  for (std::size_t i = 0; i < c.entries.size(); ++i) c.entries[i].numbering = f[i];
  spill(out_path, write_certificate(c));
  std::cout << "renumbered " << c.entries.size() << " entries\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"timed Büchi automaton emptiness certificates: generate, check, convert"};
  app.require_subcommand(1);

  std::string model_path, cert_path, graph_path, out_cert, out_graph, out_path;
  std::string mode_flag, algo;
  unsigned jobs = 0;
  bool fail_fast = false;
  std::size_t cap = kDefaultStateCap;

  CLI::App* check = app.add_subcommand("check", "validate a certificate against a model");
  check->add_option("--model", model_path, "model file")->required();
  check->add_option("--certificate", cert_path, "certificate file")->required();
  check->add_option("--mode", mode_flag, "inclusion|alpha-lu (default: certificate's mode)");
  check->add_option("--jobs", jobs, "worker threads (default: hardware concurrency)");
  check->add_flag("--fail-fast", fail_fast, "stop at the first rejection");

  CLI::App* generate = app.add_subcommand("generate", "model-check and extract a certificate");
  generate->add_option("--model", model_path, "model file")->required();
  generate->add_option("--algo", algo, "ndfs|scc")
      ->required()
      ->check(CLI::IsMember({"ndfs", "scc"}));
  generate->add_option("--mode", mode_flag, "inclusion|alpha-lu (default: inclusion)");
  generate->add_option("--out-cert", out_cert, "certificate output file")->required();
  generate->add_option("--out-graph", out_graph, "subsumption graph output file");

  CLI::App* oracle = app.add_subcommand("oracle", "reference emptiness check, no subsumption");
  oracle->add_option("--model", model_path, "model file")->required();
  oracle->add_option("--cap", cap, "symbolic state cap");
  oracle->add_option("--emit-trivial-cert", out_cert, "write the full-exploration certificate");

  CLI::App* convert = app.add_subcommand("convert", "extract a certificate from a graph file");
  convert->add_option("--graph", graph_path, "subsumption graph file")->required();
  convert->add_option("--model", model_path, "model file")->required();
  convert->add_option("--out-cert", out_cert, "certificate output file")->required();

  CLI::App* renumber = app.add_subcommand("renumber", "recompute certificate numberings");
  renumber->add_option("--cert", cert_path, "certificate file")->required();
  renumber->add_option("--model", model_path, "model file")->required();
  renumber->add_option("--out", out_path, "certificate output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(check))
      return run_check(model_path, cert_path, mode_flag, jobs, fail_fast);
    if (app.got_subcommand(generate))
      return run_generate(model_path, algo, mode_flag, out_cert, out_graph);
    if (app.got_subcommand(oracle)) return run_oracle(model_path, cap, out_cert);
    if (app.got_subcommand(convert)) return run_convert(graph_path, model_path, out_cert);
    if (app.got_subcommand(renumber)) return run_renumber(cert_path, model_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
