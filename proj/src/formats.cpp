// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/formats.hpp"

#include <charconv>
#include <sstream>

#include "tbacert/errors.hpp"

namespace tbacert {

namespace {

void write_bound(std::ostream& out, const Bound& b) {
  if (b.infinite) {
    out << "INF";
  } else {
    out << (b.strict ? "<" : "<=") << b.value;
  }
}

void write_zone(std::ostream& out, const Dbm& z) {
  for (std::size_t i = 0; i < z.dim(); ++i) {
    for (std::size_t j = 0; j < z.dim(); ++j) {
      out << ' ';
      write_bound(out, z.at(i, j));
    }
  }
}

Bound parse_bound(std::string_view token, std::size_t line) {
  if (token == "INF") return Bound::inf();
  bool strict = true;
  std::string_view digits;
  if (token.starts_with("<=")) {
    strict = false;
    digits = token.substr(2);
  } else if (token.starts_with("<")) {
    digits = token.substr(1);
  } else {
    throw parse_error(line, "malformed bound token '" + std::string(token) + "'");
  }
  std::int64_t value = 0;
  const auto result = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (result.ec != std::errc() || result.ptr != digits.data() + digits.size())
    throw parse_error(line, "malformed bound token '" + std::string(token) + "'");
  return strict ? Bound::lt(value) : Bound::le(value);
}

std::uint64_t parse_nat(std::string_view token, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc() || result.ptr != token.data() + token.size())
    throw parse_error(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  return value;
}

struct TokenLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<TokenLine> tokenize(std::string_view text) {
  std::vector<TokenLine> lines;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    TokenLine out{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      if (i > start) out.tokens.emplace_back(line.substr(start, i - start));
    }
    if (!out.tokens.empty()) lines.push_back(std::move(out));
    if (end == text.size()) break;
  }
  return lines;
}

struct HeaderInfo {
  CoverMode mode;
  std::vector<std::string> clock_names;
  std::size_t body_start;  // index into the token lines
};

HeaderInfo parse_header(const std::vector<TokenLine>& lines, const char* magic) {
  if (lines.empty() || lines[0].tokens != std::vector<std::string>{magic, "v1"})
    throw parse_error(lines.empty() ? 1 : lines[0].number,
                      std::string("expected header '") + magic + " v1'");
  if (lines.size() < 2 || lines[1].tokens.size() != 2 || lines[1].tokens[0] != "mode")
    throw parse_error(lines.size() < 2 ? lines[0].number : lines[1].number,
                      "expected 'mode inclusion|alpha-lu'");
  const auto mode = parse_mode(lines[1].tokens[1]);
  if (!mode) throw parse_error(lines[1].number, "unknown mode '" + lines[1].tokens[1] + "'");
  if (lines.size() < 3 || lines[2].tokens.size() < 2 || lines[2].tokens[0] != "clocks")
    throw parse_error(lines.size() < 3 ? lines[1].number : lines[2].number,
                      "expected 'clocks <n> <names...>'");
  const std::uint64_t n = parse_nat(lines[2].tokens[1], lines[2].number, "clock count");
  if (lines[2].tokens.size() != 2 + n)
    throw parse_error(lines[2].number, "clock count does not match the listed names");
  HeaderInfo info{*mode, {}, 3};
  info.clock_names.assign(lines[2].tokens.begin() + 2, lines[2].tokens.end());
  return info;
}

Dbm parse_zone(const TokenLine& line, std::size_t first, std::size_t clock_count) {
  const std::size_t dim = clock_count + 1;
  Dbm z(clock_count);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      z.at(i, j) = parse_bound(line.tokens[first + i * dim + j], line.number);
    }
  }
  return z;
}

}  // namespace

std::string write_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "certificate v1\n";
  out << "mode " << mode_name(c.mode) << '\n';
  out << "clocks " << c.clock_names.size();
  for (const std::string& name : c.clock_names) out << ' ' << name;
  out << '\n';
  for (const CertificateEntry& e : c.entries) {
    out << "entry " << e.location << ' ' << e.numbering;
    write_zone(out, e.zone);
    out << '\n';
  }
  return out.str();
}

Certificate read_certificate(std::string_view text) {
  const auto lines = tokenize(text);
  const HeaderInfo header = parse_header(lines, "certificate");
  Certificate c;
  c.mode = header.mode;
  c.clock_names = header.clock_names;
  const std::size_t n = header.clock_names.size();
  const std::size_t bounds = (n + 1) * (n + 1);
  for (std::size_t i = header.body_start; i < lines.size(); ++i) {
    const TokenLine& line = lines[i];
    if (line.tokens[0] != "entry")
      throw parse_error(line.number, "expected 'entry', got '" + line.tokens[0] + "'");
    if (line.tokens.size() != 3 + bounds)
      throw parse_error(line.number, "wrong entry arity: expected " +
                                         std::to_string(3 + bounds) + " tokens, got " +
                                         std::to_string(line.tokens.size()));
    CertificateEntry e;
    e.location = line.tokens[1];
    e.numbering = parse_nat(line.tokens[2], line.number, "numbering");
    e.zone = parse_zone(line, 3, n);
    c.entries.push_back(std::move(e));
  }
  return c;
}

std::string write_graph(const SubsumptionGraph& g) {
  std::ostringstream out;
  out << "graph v1\n";
  out << "mode " << mode_name(g.mode) << '\n';
  out << "clocks " << g.clock_names.size();
  for (const std::string& name : g.clock_names) out << ' ' << name;
  out << '\n';
  for (std::size_t id = 0; id < g.nodes.size(); ++id) {
    out << "node " << id << ' ' << g.nodes[id].location;
    write_zone(out, g.nodes[id].zone);
    out << '\n';
  }
  if (!g.nodes.empty()) out << "initial " << g.initial << '\n';
  for (const auto& [u, v] : g.edges) out << "edge " << u << ' ' << v << '\n';
  for (const auto& [u, v] : g.subsumptions) out << "subsume " << u << ' ' << v << '\n';
  return out.str();
}

SubsumptionGraph read_graph(std::string_view text) {
  const auto lines = tokenize(text);
  const HeaderInfo header = parse_header(lines, "graph");
  SubsumptionGraph g;
  g.mode = header.mode;
  g.clock_names = header.clock_names;
  const std::size_t n = header.clock_names.size();
  const std::size_t bounds = (n + 1) * (n + 1);
  bool saw_initial = false;

  auto node_ref = [&](const TokenLine& line, const std::string& token) -> std::size_t {
    const std::uint64_t id = parse_nat(token, line.number, "node id");
    if (id >= g.nodes.size())
      throw parse_error(line.number, "dangling node id " + std::to_string(id));
    return static_cast<std::size_t>(id);
  };

  for (std::size_t i = header.body_start; i < lines.size(); ++i) {
    const TokenLine& line = lines[i];
    const std::string& kind = line.tokens[0];
    if (kind == "node") {
      if (line.tokens.size() != 3 + bounds)
        throw parse_error(line.number, "wrong node arity");
      const std::uint64_t id = parse_nat(line.tokens[1], line.number, "node id");
      if (id != g.nodes.size())
        throw parse_error(line.number, "node ids must be consecutive from 0");
      g.nodes.push_back({line.tokens[2], parse_zone(line, 3, n)});
    } else if (kind == "initial") {
      if (line.tokens.size() != 2) throw parse_error(line.number, "wrong initial arity");
      g.initial = node_ref(line, line.tokens[1]);
      saw_initial = true;
    } else if (kind == "edge" || kind == "subsume") {
      if (line.tokens.size() != 3) throw parse_error(line.number, "wrong edge arity");
      const std::size_t u = node_ref(line, line.tokens[1]);
      const std::size_t v = node_ref(line, line.tokens[2]);
      if (kind == "edge") {
        g.edges.emplace_back(u, v);
      } else {
        if (g.nodes[u].location != g.nodes[v].location)
          throw parse_error(line.number, "subsumption between different locations");
        g.subsumptions.emplace_back(u, v);
      }
    } else {
      throw parse_error(line.number, "unknown directive '" + kind + "'");
    }
  }
  if (!g.nodes.empty() && !saw_initial)
    throw parse_error(lines.empty() ? 1 : lines.back().number, "missing initial line");
  return g;
}

Renaming read_renaming(std::string_view text) {
  const auto lines = tokenize(text);
  Renaming r;
  auto insert = [](std::unordered_map<std::string, std::uint32_t>& map, const TokenLine& line,
                   const std::string& name, std::uint32_t index) {
    for (const auto& [existing_name, existing_index] : map) {
      if (existing_name == name)
        throw parse_error(line.number, "duplicate name '" + name + "'");
      if (existing_index == index)
        throw parse_error(line.number, "duplicate index " + std::to_string(index));
    }
    map.emplace(name, index);
  };
  for (const TokenLine& line : lines) {
    if (line.tokens.size() != 3)
      throw parse_error(line.number, "expected '<location|clock> <name> <index>'");
    const std::uint64_t index = parse_nat(line.tokens[2], line.number, "index");
    if (index > 0xffffffffull) throw parse_error(line.number, "index out of range");
    if (line.tokens[0] == "location") {
      insert(r.locations, line, line.tokens[1], static_cast<std::uint32_t>(index));
    } else if (line.tokens[0] == "clock") {
      insert(r.clocks, line, line.tokens[1], static_cast<std::uint32_t>(index));
    } else {
      throw parse_error(line.number, "unknown directive '" + line.tokens[0] + "'");
    }
  }
  return r;
}

}  // namespace tbacert
