// Copyright (c) tbacert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tbacert/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tbacert {

namespace {

std::vector<std::vector<std::size_t>> adjacency(const FiniteGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.node_count);
  for (const auto& [u, v] : g.edges) {
    if (u >= g.node_count || v >= g.node_count)
      throw std::invalid_argument("graph edge endpoint out of range");
    adj[u].push_back(v);
  }
  return adj;
}

void require_total(const FiniteGraph& g, const Numbering& f) {
  if (f.size() < g.node_count)
    throw std::invalid_argument("numbering missing for node " + std::to_string(f.size()));
}

}  // namespace

bool check_topological_numbering(const FiniteGraph& g, const Numbering& f) {
  require_total(g, f);
  for (const auto& [u, v] : g.edges) {
    if (u >= g.node_count || v >= g.node_count)
      throw std::invalid_argument("graph edge endpoint out of range");
    if (f[u] < f[v]) return false;
    if (g.accepting[u] && f[u] <= f[v]) return false;
  }
  return true;
}

std::vector<std::size_t> strongly_connected_components(const FiniteGraph& g,
                                                       std::size_t* component_count) {
  const std::size_t n = g.node_count;
  const auto adj = adjacency(g);
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), lowlink(n, kUnset), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  std::size_t next_comp = 0;

  // Iterative Tarjan; components pop in reverse topological order.
  struct Frame {
    std::size_t node;
    std::size_t child = 0;
  };
  std::vector<Frame> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      const std::size_t u = fr.node;
      if (fr.child < adj[u].size()) {
        const std::size_t v = adj[u][fr.child++];
        if (index[v] == kUnset) {
          index[v] = lowlink[v] = next_index++;
          stack.push_back(v);
          on_stack[v] = true;
          frames.push_back({v});
        } else if (on_stack[v]) {
          lowlink[u] = std::min(lowlink[u], index[v]);
        }
      } else {
        if (lowlink[u] == index[u]) {
          while (true) {
            const std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == u) break;
          }
          ++next_comp;
        }
        frames.pop_back();
        if (!frames.empty()) {
          const std::size_t parent = frames.back().node;
          lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
        }
      }
    }
  }
  if (component_count != nullptr) *component_count = next_comp;
  return comp;
}

bool has_accepting_cycle(const FiniteGraph& g) {
  std::size_t comp_count = 0;
  const auto comp = strongly_connected_components(g, &comp_count);
  std::vector<std::size_t> comp_size(comp_count, 0);
  for (std::size_t v = 0; v < g.node_count; ++v) ++comp_size[comp[v]];
  std::vector<bool> has_internal_edge(comp_count, false);
  for (const auto& [u, v] : g.edges) {
    if (comp[u] == comp[v]) has_internal_edge[comp[u]] = true;
  }
  for (std::size_t v = 0; v < g.node_count; ++v) {
    if (!g.accepting[v]) continue;
    const std::size_t c = comp[v];
    if (comp_size[c] > 1 || has_internal_edge[c]) return true;
  }
  return false;
}

Numbering scc_numbering(const FiniteGraph& g) {
  std::size_t comp_count = 0;
  const auto comp = strongly_connected_components(g, &comp_count);
  // Longest path to a sink in the condensation. Component ids come out in
  // reverse topological order, so cross-edge targets are already numbered.
  std::vector<std::vector<std::size_t>> cross(comp_count);
  for (const auto& [u, v] : g.edges) {
    if (comp[u] != comp[v]) cross[comp[u]].push_back(comp[v]);
  }
  std::vector<std::uint64_t> height(comp_count, 0);
  for (std::size_t c = 0; c < comp_count; ++c) {
    for (std::size_t target : cross[c]) height[c] = std::max(height[c], height[target] + 1);
  }
  Numbering f(g.node_count, 0);
  for (std::size_t v = 0; v < g.node_count; ++v) f[v] = height[comp[v]];
  return f;
}

Numbering count_reachable_accepting(const FiniteGraph& g) {
  const auto adj = adjacency(g);
  Numbering f(g.node_count, 0);
  std::vector<bool> seen(g.node_count);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < g.node_count; ++s) {
    std::fill(seen.begin(), seen.end(), false);
    queue.assign(1, s);
    seen[s] = true;
    std::uint64_t count = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.back();
      queue.pop_back();
      if (g.accepting[u]) ++count;
      for (std::size_t v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    f[s] = count;
  }
  return f;
}

}  // namespace tbacert
