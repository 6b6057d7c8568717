// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tbacert/errors.hpp"

namespace tbacert {

std::optional<std::uint32_t> TimedAutomaton::location_index(std::string_view name) const {
  for (std::uint32_t i = 0; i < locations.size(); ++i) {
    if (locations[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> TimedAutomaton::clock_index(std::string_view name) const {
  for (std::uint32_t i = 0; i < clocks.size(); ++i) {
    if (clocks[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

struct LineScanner {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  // Next line with comments stripped; empty lines are skipped by callers.
  std::optional<std::string_view> next() {
    if (pos >= text.size()) return std::nullopt;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    return line;
  }
};

struct RawLine {
  std::size_t number;
  std::string content;
};

std::optional<std::int64_t> parse_nat(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
    if (value > (std::int64_t{1} << 40)) return std::nullopt;
  }
  return value;
}

struct AtomParser {
  const TimedAutomaton& a;
  std::size_t line;

  Atom parse(std::string_view text) const {
    text = trim(text);
    // Operator search: two-character forms first.
    static constexpr struct {
      const char* token;
      AtomOp op;
    } kOps[] = {{"<=", AtomOp::Le}, {">=", AtomOp::Ge}, {"==", AtomOp::Eq},
                {"<", AtomOp::Lt},  {">", AtomOp::Gt}};
    for (const auto& candidate : kOps) {
      const std::size_t at = text.find(candidate.token);
      if (at == std::string_view::npos) continue;
      std::string_view clock_name = trim(text.substr(0, at));
      std::string_view rest = trim(text.substr(at + std::string(candidate.token).size()));
      if (!valid_name(clock_name)) throw parse_error(line, "bad clock name in atom");
      const auto clock = a.clock_index(clock_name);
      if (!clock) throw parse_error(line, "undeclared clock '" + std::string(clock_name) + "'");
      const auto constant = parse_nat(rest);
      if (!constant) throw parse_error(line, "atom constant must be a natural number");
      return Atom{*clock, candidate.op, *constant};
    }
    throw parse_error(line, "atom missing comparison operator");
  }

  std::vector<Atom> parse_conjunction(std::string_view text) const {
    std::vector<Atom> atoms;
    text = trim(text);
    if (text.empty()) return atoms;
    std::size_t start = 0;
    while (true) {
      const std::size_t amp = text.find("&&", start);
      if (amp == std::string_view::npos) {
        atoms.push_back(parse(text.substr(start)));
        break;
      }
      atoms.push_back(parse(text.substr(start, amp - start)));
      start = amp + 2;
    }
    return atoms;
  }
};

bool zero_satisfies(const std::vector<Atom>& atoms) {
  for (const Atom& atom : atoms) {
    switch (atom.op) {
      case AtomOp::Lt:
        if (!(0 < atom.constant)) return false;
        break;
      case AtomOp::Le:
        break;
      case AtomOp::Eq:
        if (atom.constant != 0) return false;
        break;
      case AtomOp::Ge:
        if (atom.constant != 0) return false;
        break;
      case AtomOp::Gt:
        return false;
    }
  }
  return true;
}

}  // namespace

TimedAutomaton parse_model(std::string_view text) {
  TimedAutomaton a;
  std::vector<RawLine> location_lines;
  std::vector<RawLine> edge_lines;
  std::optional<std::uint32_t> initial;
  std::unordered_set<std::string> clock_names;
  std::unordered_set<std::string> location_names;

  // First pass declares names so conjunctions can resolve them.
  LineScanner scanner{text};
  while (auto maybe = scanner.next()) {
    std::string_view line = trim(*maybe);
    if (line.empty()) continue;
    const std::size_t no = scanner.line_no;
    const std::size_t space = line.find_first_of(" \t");
    const std::string_view keyword = line.substr(0, space);
    if (keyword == "clock") {
      const auto tokens = split_ws(line);
      if (tokens.size() != 2 || !valid_name(tokens[1]))
        throw parse_error(no, "expected: clock <name>");
      if (!clock_names.insert(tokens[1]).second)
        throw parse_error(no, "duplicate clock '" + tokens[1] + "'");
      a.clocks.push_back(tokens[1]);
    } else if (keyword == "location") {
      location_lines.push_back({no, std::string(line)});
    } else if (keyword == "edge") {
      edge_lines.push_back({no, std::string(line)});
    } else {
      throw parse_error(no, "unknown directive '" + std::string(keyword) + "'");
    }
  }

  // Location names first, then invariants (which may mention any clock).
  for (const RawLine& raw : location_lines) {
    std::string_view line = raw.content;
    const std::size_t inv = line.find("invariant:");
    const std::string_view head = inv == std::string_view::npos ? line : line.substr(0, inv);
    const auto tokens = split_ws(head);
    if (tokens.size() < 2 || !valid_name(tokens[1]))
      throw parse_error(raw.number, "expected: location <name> [initial] [accepting] [invariant: ...]");
    if (!location_names.insert(tokens[1]).second)
      throw parse_error(raw.number, "duplicate location '" + tokens[1] + "'");
    TimedAutomaton::Location loc;
    loc.name = tokens[1];
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      if (tokens[i] == "initial") {
        if (initial.has_value()) throw parse_error(raw.number, "duplicate initial location");
        initial = static_cast<std::uint32_t>(a.locations.size());
      } else if (tokens[i] == "accepting") {
        loc.accepting = true;
      } else {
        throw parse_error(raw.number, "unknown location flag '" + tokens[i] + "'");
      }
    }
    a.locations.push_back(std::move(loc));
  }

  for (std::size_t i = 0; i < location_lines.size(); ++i) {
    const RawLine& raw = location_lines[i];
    const std::size_t inv = raw.content.find("invariant:");
    if (inv == std::string::npos) continue;
    AtomParser parser{a, raw.number};
    a.locations[i].invariant =
        parser.parse_conjunction(std::string_view(raw.content).substr(inv + 10));
  }

  if (!initial.has_value()) throw parse_error(scanner.line_no, "missing initial location");
  a.initial = *initial;
  if (!zero_satisfies(a.locations[a.initial].invariant))
    throw parse_error(location_lines[a.initial].number,
                      "zero valuation violates the initial location's invariant");

  for (const RawLine& raw : edge_lines) {
    std::string_view line = raw.content;
    const std::size_t guard_at = line.find("guard:");
    const std::size_t reset_at = line.find("reset:");
    if (guard_at != std::string_view::npos && reset_at != std::string_view::npos &&
        reset_at < guard_at)
      throw parse_error(raw.number, "reset: must follow guard:");
    const std::size_t head_end = std::min(guard_at, reset_at);
    const auto tokens = split_ws(line.substr(0, head_end));
    if (tokens.size() != 4 || tokens[2] != "->")
      throw parse_error(raw.number, "expected: edge <src> -> <dst> [guard: ...] [reset: ...]");
    TimedAutomaton::Edge edge;
    const auto src = a.location_index(tokens[1]);
    if (!src) throw parse_error(raw.number, "undeclared location '" + tokens[1] + "'");
    const auto dst = a.location_index(tokens[3]);
    if (!dst) throw parse_error(raw.number, "undeclared location '" + tokens[3] + "'");
    edge.source = *src;
    edge.target = *dst;
    if (guard_at != std::string_view::npos) {
      const std::size_t guard_end = reset_at == std::string_view::npos ? line.size() : reset_at;
      AtomParser parser{a, raw.number};
      edge.guard = parser.parse_conjunction(line.substr(guard_at + 6, guard_end - guard_at - 6));
    }
    if (reset_at != std::string_view::npos) {
      std::string_view list = trim(line.substr(reset_at + 6));
      if (list.empty()) throw parse_error(raw.number, "empty reset list");
      std::size_t start = 0;
      while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        if (comma == std::string_view::npos) comma = list.size();
        const std::string_view name = trim(list.substr(start, comma - start));
        const auto clock = a.clock_index(name);
        if (!clock) throw parse_error(raw.number, "undeclared clock '" + std::string(name) + "'");
        edge.resets.push_back(*clock);
        start = comma + 1;
        if (comma == list.size()) break;
      }
    }
    a.edges.push_back(std::move(edge));
  }

  if (a.locations.empty()) throw parse_error(scanner.line_no, "model has no locations");
  return a;
}

namespace {

const char* op_token(AtomOp op) {
  switch (op) {
    case AtomOp::Lt: return "<";
    case AtomOp::Le: return "<=";
    case AtomOp::Eq: return "==";
    case AtomOp::Ge: return ">=";
    case AtomOp::Gt: return ">";
  }
  return "?";
}

void write_conjunction(std::ostream& out, const TimedAutomaton& a, const std::vector<Atom>& atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out << " && ";
    out << a.clocks[atoms[i].clock] << ' ' << op_token(atoms[i].op) << ' ' << atoms[i].constant;
  }
}

}  // namespace

std::string write_model(const TimedAutomaton& a) {
  std::ostringstream out;
  for (const std::string& clock : a.clocks) out << "clock " << clock << '\n';
  for (std::uint32_t i = 0; i < a.locations.size(); ++i) {
    const auto& loc = a.locations[i];
    out << "location " << loc.name;
    if (i == a.initial) out << " initial";
    if (loc.accepting) out << " accepting";
    if (!loc.invariant.empty()) {
      out << " invariant: ";
      write_conjunction(out, a, loc.invariant);
    }
    out << '\n';
  }
  for (const auto& edge : a.edges) {
    out << "edge " << a.locations[edge.source].name << " -> " << a.locations[edge.target].name;
    if (!edge.guard.empty()) {
      out << " guard: ";
      write_conjunction(out, a, edge.guard);
    }
    if (!edge.resets.empty()) {
      out << " reset: ";
      for (std::size_t i = 0; i < edge.resets.size(); ++i) {
        if (i > 0) out << ',';
        out << a.clocks[edge.resets[i]];
      }
    }
    out << '\n';
  }
  return out.str();
}

LuBounds compute_lu(const TimedAutomaton& a) {
  LuBounds lu;
  lu.lower.assign(a.clocks.size(), std::nullopt);
  lu.upper.assign(a.clocks.size(), std::nullopt);
  auto absorb = [&lu](const Atom& atom) {
    auto raise = [](std::optional<std::int64_t>& slot, std::int64_t c) {
      if (!slot.has_value() || *slot < c) slot = c;
    };
    switch (atom.op) {
      case AtomOp::Lt:
      case AtomOp::Le:
        raise(lu.upper[atom.clock], atom.constant);
        break;
      case AtomOp::Eq:
        raise(lu.lower[atom.clock], atom.constant);
        raise(lu.upper[atom.clock], atom.constant);
        break;
      case AtomOp::Ge:
      case AtomOp::Gt:
        raise(lu.lower[atom.clock], atom.constant);
        break;
    }
  };
  for (const auto& loc : a.locations) {
    for (const Atom& atom : loc.invariant) absorb(atom);
  }
  for (const auto& edge : a.edges) {
    for (const Atom& atom : edge.guard) absorb(atom);
  }
  return lu;
}

}  // namespace tbacert
