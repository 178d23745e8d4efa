#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fbr/graph.hpp"

namespace fbr {

// Small-graph enumeration. A graph on n <= 11 nodes is encoded as a bit mask
// over pair_index(i, j).

using EdgeMask = std::uint64_t;

constexpr int pair_count(int n) { return n * (n - 1) / 2; }

/// Triangular index of the unordered pair {i, j}: for i < j, j*(j-1)/2 + i.
constexpr int pair_index(Agent i, Agent j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

/// Inverse of pair_index.
AgentPair pair_at(int index);

Graph graph_from_mask(int n, EdgeMask mask);
EdgeMask edge_mask(const Graph& g);

/// Per-node neighbour bit masks.
std::vector<std::uint32_t> neighbour_masks(int n, EdgeMask mask);

bool mask_connected(int n, EdgeMask mask);

/// Smallest relabelled edge mask over all n! permutations (n <= 8).
EdgeMask canonical_form(int n, EdgeMask mask);

/// Calls fn(graph) for every labelled graph on n nodes, optionally only the
/// connected ones. Enumeration order is increasing mask value.
void for_each_graph(int n, bool connected_only, const std::function<void(const Graph&)>& fn);

/// Runs body(chunk, begin, end) over [0, count) split into `chunks` contiguous
/// ranges, processed by up to `workers` threads. Chunk boundaries depend only
/// on `chunks`, so callers that merge per-chunk results in chunk order get
/// output independent of the worker count.
void parallel_chunks(std::uint64_t count, int chunks,
                     const std::function<void(int chunk, std::uint64_t begin, std::uint64_t end)>& body,
                     int workers = 1);

}  // namespace fbr
