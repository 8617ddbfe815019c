#include "graph.hpp"

#include <algorithm>

namespace parrondo::detail {

namespace {

// Iterative DFS recording finish order (Kosaraju pass 1).
void dfs_finish_order(const AdjList& adj, std::vector<std::int64_t>& order) {
  const std::int64_t n = static_cast<std::int64_t>(adj.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<std::int64_t, std::size_t>> stack;
  for (std::int64_t s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    seen[static_cast<std::size_t>(s)] = 1;
    stack.emplace_back(s, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& out = adj[static_cast<std::size_t>(v)];
      if (next < out.size()) {
        std::int64_t w = out[next++];
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
}

}  // namespace

SccResult strongly_connected_components(const AdjList& adj) {
  const std::int64_t n = static_cast<std::int64_t>(adj.size());
  std::vector<std::int64_t> order;
  order.reserve(static_cast<std::size_t>(n));
  dfs_finish_order(adj, order);

  AdjList rev(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v)
    for (std::int64_t w : adj[static_cast<std::size_t>(v)])
      rev[static_cast<std::size_t>(w)].push_back(v);

  SccResult out;
  out.comp.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::int64_t> stack;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (out.comp[static_cast<std::size_t>(*it)] >= 0) continue;
    const std::int64_t id = out.count++;
    stack.push_back(*it);
    out.comp[static_cast<std::size_t>(*it)] = id;
    while (!stack.empty()) {
      std::int64_t v = stack.back();
      stack.pop_back();
      for (std::int64_t w : rev[static_cast<std::size_t>(v)])
        if (out.comp[static_cast<std::size_t>(w)] < 0) {
          out.comp[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
    }
  }
  return out;
}

std::vector<bool> closed_components(const AdjList& adj, const SccResult& scc) {
  std::vector<bool> closed(static_cast<std::size_t>(scc.count), true);
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::int64_t w : adj[v])
      if (scc.comp[v] != scc.comp[static_cast<std::size_t>(w)])
        closed[static_cast<std::size_t>(scc.comp[v])] = false;
  return closed;
}

std::vector<bool> reachable_from(const AdjList& adj,
                                 const std::vector<std::int64_t>& starts) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::int64_t> stack;
  for (std::int64_t s : starts)
    if (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    std::int64_t v = stack.back();
    stack.pop_back();
    for (std::int64_t w : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
  }
  return seen;
}

bool is_strongly_connected(const AdjList& adj) {
  return strongly_connected_components(adj).count == 1;
}

std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
bipartition(const AdjList& adj) {
  const std::int64_t n = static_cast<std::int64_t>(adj.size());
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<std::int64_t> queue;
  for (std::int64_t s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = s == 0 ? 0 : 1;
    queue.push_back(s);
    while (!queue.empty()) {
      std::int64_t v = queue.back();
      queue.pop_back();
      for (std::int64_t w : adj[static_cast<std::size_t>(v)]) {
        if (color[static_cast<std::size_t>(w)] < 0) {
          color[static_cast<std::size_t>(w)] =
              1 - color[static_cast<std::size_t>(v)];
          queue.push_back(w);
        } else if (color[static_cast<std::size_t>(w)] ==
                   color[static_cast<std::size_t>(v)]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<std::int64_t> a, b;
  for (std::int64_t v = 0; v < n; ++v)
    (color[static_cast<std::size_t>(v)] == 0 ? a : b).push_back(v);
  return std::make_pair(std::move(a), std::move(b));
}

}  // namespace parrondo::detail
