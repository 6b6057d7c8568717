// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/generator.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "tbacert/graph.hpp"

namespace tbacert {

namespace {

bool covers(CoverMode mode, const Dbm& small, const Dbm& big, const LuBounds& lu) {
  return mode == CoverMode::Inclusion ? includes(small, big) : subsumes_alpha_lu(small, big, lu);
}

// Shared node store with exact-state deduplication.
class NodeStore {
 public:
  struct Node {
    std::uint32_t location;
    Dbm zone;
    bool boundary = false;                       // subsumed, never explored
    std::optional<std::size_t> cover;            // target of this node's ~> edge
    std::optional<std::vector<std::size_t>> successors;  // cached ids, edge order
  };

  std::size_t find_or_create(std::uint32_t location, const Dbm& zone, bool* created) {
    const std::uint64_t key = hash_value(zone) * 31 + location;
    for (std::size_t id : dedup_[key]) {
      if (nodes_[id].location == location && nodes_[id].zone == zone) {
        if (created != nullptr) *created = false;
        return id;
      }
    }
    nodes_.push_back(Node{location, zone, false, std::nullopt, std::nullopt});
    dedup_[key].push_back(nodes_.size() - 1);
    if (created != nullptr) *created = true;
    return nodes_.size() - 1;
  }

  Node& operator[](std::size_t id) { return nodes_[id]; }
  const Node& operator[](std::size_t id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> dedup_;
};

// Materializes (once) the abstracted successors of an explored node.
const std::vector<std::size_t>& materialize(NodeStore& store, std::size_t id,
                                            const TimedAutomaton& a, const LuBounds& lu) {
  if (!store[id].successors.has_value()) {
    std::vector<std::size_t> ids;
    const SymbolicState state{store[id].location, store[id].zone};
    for (const Successor& succ : successors_abstracted(a, lu, state)) {
      ids.push_back(store.find_or_create(succ.state.location, succ.state.zone, nullptr));
    }
    store[id].successors = std::move(ids);
  }
  return *store[id].successors;
}

SubsumptionGraph export_graph(const NodeStore& store, const TimedAutomaton& a, CoverMode mode,
                              std::size_t initial) {
  SubsumptionGraph g;
  g.mode = mode;
  g.clock_names = a.clocks;
  g.initial = initial;
  for (std::size_t id = 0; id < store.size(); ++id) {
    g.nodes.push_back({a.locations[store[id].location].name, store[id].zone});
    if (store[id].successors.has_value()) {
      for (std::size_t target : *store[id].successors) g.edges.emplace_back(id, target);
    }
    if (store[id].cover.has_value()) g.subsumptions.emplace_back(id, *store[id].cover);
  }
  return g;
}

Lasso make_lasso(const NodeStore& store, const TimedAutomaton& a,
                 const std::vector<std::size_t>& ids, std::size_t cycle_start) {
  Lasso lasso;
  lasso.cycle_start = cycle_start;
  for (std::size_t id : ids)
    lasso.states.push_back({a.locations[store[id].location].name, store[id].zone});
  return lasso;
}

}  // namespace

CheckResult ndfs_emptiness(const TimedAutomaton& a, const LuBounds& lu, CoverMode mode) {
  NodeStore store;
  const SymbolicState init = initial_state(a);
  const std::size_t root = store.find_or_create(init.location, init.zone, nullptr);

  enum : std::uint8_t { kWhite = 0, kCyan, kBlue };
  std::vector<std::uint8_t> color;
  std::vector<char> red;
  std::vector<std::vector<std::size_t>> red_by_location(a.locations.size());
  auto grow = [&] {
    color.resize(store.size(), kWhite);
    red.resize(store.size(), 0);
  };
  grow();

  auto red_cover = [&](std::size_t id) -> std::optional<std::size_t> {
    for (std::size_t r : red_by_location[store[id].location]) {
      if (covers(mode, store[id].zone, store[r].zone, lu)) return r;
    }
    return std::nullopt;
  };

  struct Frame {
    std::size_t node;
    std::size_t child = 0;
  };
  std::vector<Frame> blue_stack;

  // Inner (red) search from an accepting seed; reports a cyan hit.
  auto dfs_red = [&](std::size_t seed) -> std::optional<std::vector<std::size_t>> {
    std::vector<Frame> stack;
    stack.push_back({seed});
    red[seed] = 1;
    red_by_location[store[seed].location].push_back(seed);
    while (!stack.empty()) {
      Frame& fr = stack.back();
      const auto& succs = materialize(store, fr.node, a, lu);
      grow();
      if (fr.child >= succs.size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t t = succs[fr.child++];
      if (color[t] == kCyan) {
        std::vector<std::size_t> path;
        for (const Frame& f : stack) path.push_back(f.node);
        path.push_back(t);
        return path;
      }
      if (red[t] || store[t].boundary) continue;
      if (auto cover = red_cover(t); cover.has_value()) {
        // Covered by a red state: prune and record the subsumption.
        store[t].boundary = true;
        store[t].cover = cover;
        continue;
      }
      red[t] = 1;
      red_by_location[store[t].location].push_back(t);
      stack.push_back({t});
    }
    return std::nullopt;
  };

  blue_stack.push_back({root});
  color[root] = kCyan;
  while (!blue_stack.empty()) {
    Frame& fr = blue_stack.back();
    const std::size_t s = fr.node;
    const auto& succs = materialize(store, s, a, lu);
    grow();
    if (fr.child < succs.size()) {
      const std::size_t t = succs[fr.child++];
      if (color[t] == kCyan && (a.accepting(store[s].location) || a.accepting(store[t].location))) {
        // Cycle through the current search path.
        std::vector<std::size_t> ids;
        std::size_t cycle_start = 0;
        for (std::size_t i = 0; i < blue_stack.size(); ++i) {
          if (blue_stack[i].node == t) cycle_start = i;
          ids.push_back(blue_stack[i].node);
        }
        ids.push_back(t);
        return {EmptinessVerdict::NonEmpty, std::nullopt, make_lasso(store, a, ids, cycle_start)};
      }
      if (color[t] != kWhite || store[t].boundary) continue;
      if (auto cover = red_cover(t); cover.has_value()) {
        store[t].boundary = true;
        store[t].cover = cover;
        continue;
      }
      color[t] = kCyan;
      blue_stack.push_back({t});
      continue;
    }
    if (a.accepting(store[s].location)) {
      if (auto hit = dfs_red(s); hit.has_value()) {
        // Blue stack reaches the seed; the red path closes back into it.
        std::vector<std::size_t> ids;
        std::size_t cycle_start = 0;
        const std::size_t cyan_hit = hit->back();
        for (std::size_t i = 0; i < blue_stack.size(); ++i) {
          if (blue_stack[i].node == cyan_hit) cycle_start = i;
          ids.push_back(blue_stack[i].node);
        }
        // hit starts at the seed (== blue stack top), skip the duplicate.
        ids.insert(ids.end(), hit->begin() + 1, hit->end());
        return {EmptinessVerdict::NonEmpty, std::nullopt, make_lasso(store, a, ids, cycle_start)};
      }
    }
    color[s] = kBlue;
    blue_stack.pop_back();
  }

  CheckResult result;
  result.verdict = EmptinessVerdict::Empty;
  result.graph = export_graph(store, a, mode, root);
  return result;
}

CheckResult iterative_scc_emptiness(const TimedAutomaton& a, const LuBounds& lu, CoverMode mode) {
  NodeStore store;
  const SymbolicState init = initial_state(a);
  const std::size_t root = store.find_or_create(init.location, init.zone, nullptr);
  // Non-boundary nodes per location, in discovery order; these are the
  // admissible cover targets for maximal subsumption.
  std::vector<std::vector<std::size_t>> candidates_by_location(a.locations.size());
  candidates_by_location[store[root].location].push_back(root);
  std::deque<std::size_t> pending{root};

  auto explore = [&](std::size_t id) {
    const SymbolicState state{store[id].location, store[id].zone};
    std::vector<std::size_t> ids;
    for (const Successor& succ : successors_abstracted(a, lu, state)) {
      bool created = false;
      const std::size_t t = store.find_or_create(succ.state.location, succ.state.zone, &created);
      ids.push_back(t);
      if (!created) continue;
      // Maximal subsumption: cover a new state by the first visited cover.
      std::optional<std::size_t> cover;
      for (std::size_t candidate : candidates_by_location[store[t].location]) {
        if (covers(mode, store[t].zone, store[candidate].zone, lu)) {
          cover = candidate;
          break;
        }
      }
      if (cover.has_value()) {
        store[t].boundary = true;
        store[t].cover = cover;
      } else {
        candidates_by_location[store[t].location].push_back(t);
        pending.push_back(t);
      }
    }
    store[id].successors = std::move(ids);
  };

  while (true) {
    while (!pending.empty()) {
      const std::size_t id = pending.front();
      pending.pop_front();
      explore(id);
    }

    // Combined graph for this round's SCC decomposition.
    FiniteGraph fg;
    fg.node_count = store.size();
    fg.accepting.resize(store.size());
    for (std::size_t id = 0; id < store.size(); ++id)
      fg.accepting[id] = a.accepting(store[id].location);
    std::vector<std::pair<std::size_t, std::size_t>> subs;
    for (std::size_t id = 0; id < store.size(); ++id) {
      if (store[id].successors.has_value()) {
        for (std::size_t t : *store[id].successors) fg.edges.emplace_back(id, t);
      }
      if (store[id].cover.has_value()) subs.emplace_back(id, *store[id].cover);
    }
    const std::size_t concrete_count = fg.edges.size();
    for (const auto& edge : subs) fg.edges.push_back(edge);

    std::size_t comp_count = 0;
    const auto comp = strongly_connected_components(fg, &comp_count);
    std::vector<char> comp_accepting(comp_count, 0), comp_has_sub(comp_count, 0),
        comp_has_edge(comp_count, 0);
    for (std::size_t id = 0; id < store.size(); ++id) {
      if (fg.accepting[id]) comp_accepting[comp[id]] = 1;
    }
    for (std::size_t e = 0; e < fg.edges.size(); ++e) {
      const auto& [u, v] = fg.edges[e];
      if (comp[u] != comp[v]) continue;
      comp_has_edge[comp[u]] = 1;
      if (e >= concrete_count) comp_has_sub[comp[u]] = 1;
    }

    std::size_t promoted = 0;
    std::optional<std::size_t> real_cycle_comp;
    for (std::size_t c = 0; c < comp_count; ++c) {
      if (!comp_accepting[c] || !comp_has_edge[c]) continue;
      if (comp_has_sub[c]) {
        // Possibly spurious: drop the subsumptions and re-explore their sources.
        for (const auto& [u, v] : subs) {
          if (comp[u] == c && comp[v] == c && store[u].cover.has_value()) {
            store[u].cover.reset();
            store[u].boundary = false;
            candidates_by_location[store[u].location].push_back(u);
            pending.push_back(u);
            ++promoted;
          }
        }
      } else if (!real_cycle_comp.has_value()) {
        real_cycle_comp = c;
      }
    }

    if (real_cycle_comp.has_value() && promoted == 0) {
      // Accepting cycle over concrete edges only: genuine counterexample.
      const std::size_t c = *real_cycle_comp;
      std::size_t anchor = 0;
      for (std::size_t id = 0; id < store.size(); ++id) {
        if (comp[id] == c && fg.accepting[id]) anchor = id;
      }
      // Shortest path from -> to over -> union ~>, of length >= 1 edge.
      auto bfs_path = [&](std::size_t from, std::size_t to,
                          bool restrict_comp) -> std::vector<std::size_t> {
        constexpr std::size_t kNone = static_cast<std::size_t>(-1);
        std::vector<std::size_t> parent(store.size(), kNone);
        std::deque<std::size_t> queue{from};
        std::vector<char> seen(store.size(), 0);
        seen[from] = 1;
        std::size_t last_hop = kNone;
        while (!queue.empty() && last_hop == kNone) {
          const std::size_t u = queue.front();
          queue.pop_front();
          std::vector<std::size_t> next;
          if (store[u].successors.has_value()) next = *store[u].successors;
          if (store[u].cover.has_value()) next.push_back(*store[u].cover);
          for (std::size_t v : next) {
            if (restrict_comp && comp[v] != c) continue;
            if (v == to) {
              last_hop = u;
              break;
            }
            if (!seen[v]) {
              seen[v] = 1;
              parent[v] = u;
              queue.push_back(v);
            }
          }
        }
        if (last_hop == kNone) throw std::logic_error("lasso reconstruction lost its path");
        std::vector<std::size_t> path{to};
        for (std::size_t cur = last_hop; cur != from; cur = parent[cur]) path.push_back(cur);
        path.push_back(from);
        std::reverse(path.begin(), path.end());
        return path;
      };
      std::vector<std::size_t> prefix =
          root == anchor ? std::vector<std::size_t>{root} : bfs_path(root, anchor, false);
      std::vector<std::size_t> cycle = bfs_path(anchor, anchor, true);
      const std::size_t cycle_start = prefix.size() - 1;
      prefix.insert(prefix.end(), cycle.begin() + 1, cycle.end());
      return {EmptinessVerdict::NonEmpty, std::nullopt,
              make_lasso(store, a, prefix, cycle_start)};
    }

    if (promoted == 0) break;
    if (pending.empty()) throw std::logic_error("iterative scc made no progress");
  }

  CheckResult result;
  result.verdict = EmptinessVerdict::Empty;
  result.graph = export_graph(store, a, mode, root);
  return result;
}

Certificate extract_certificate(const SubsumptionGraph& g, const TimedAutomaton& a) {
  if (g.clock_names != a.clocks)
    throw std::invalid_argument("graph clock list does not match the model");
  FiniteGraph fg;
  fg.node_count = g.nodes.size();
  fg.accepting.resize(g.nodes.size());
  for (std::size_t id = 0; id < g.nodes.size(); ++id) {
    const auto location = a.location_index(g.nodes[id].location);
    if (!location)
      throw std::invalid_argument("graph names unknown location " + g.nodes[id].location);
    fg.accepting[id] = a.accepting(*location);
  }
  fg.edges = g.edges;
  fg.edges.insert(fg.edges.end(), g.subsumptions.begin(), g.subsumptions.end());
  if (has_accepting_cycle(fg))
    throw std::invalid_argument("subsumption graph has an accepting cycle; no certificate exists");
  const Numbering f = scc_numbering(fg);

  Certificate cert;
  cert.mode = g.mode;
  cert.clock_names = g.clock_names;
  for (std::size_t id = 0; id < g.nodes.size(); ++id) {
    cert.entries.push_back({g.nodes[id].location, g.nodes[id].zone, f[id]});
  }
  return cert;
}

}  // namespace tbacert
