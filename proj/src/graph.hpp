#pragma once

// Small digraph helpers shared by the pattern-rate and doubled-chain code:
// iterative Kosaraju SCCs, reachability, and bipartition by BFS 2-coloring.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace parrondo::detail {

using AdjList = std::vector<std::vector<std::int64_t>>;

struct SccResult {
  std::vector<std::int64_t> comp;  // component id per vertex
  std::int64_t count = 0;
};

SccResult strongly_connected_components(const AdjList& adj);

// A component is closed when no edge leaves it; closed components are the
// recurrent classes of a finite chain.
std::vector<bool> closed_components(const AdjList& adj, const SccResult& scc);

std::vector<bool> reachable_from(const AdjList& adj,
                                 const std::vector<std::int64_t>& starts);

bool is_strongly_connected(const AdjList& adj);

// Partition of an undirected-sense-connected digraph into two color classes
// with every edge crossing; nullopt when some edge joins equal colors.
// First class is the one containing vertex 0.
std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
bipartition(const AdjList& adj);

}  // namespace parrondo::detail
