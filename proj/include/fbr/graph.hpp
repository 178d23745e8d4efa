#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fbr {

/// Agents are dense 0-based ids. Every index tie-break in the library
/// compares these ids numerically.
using Agent = int;

/// Unordered agent pair, stored with first < second.
struct AgentPair {
  Agent first = 0;
  Agent second = 0;

  static AgentPair of(Agent a, Agent b) { return a < b ? AgentPair{a, b} : AgentPair{b, a}; }
  auto operator<=>(const AgentPair&) const = default;
};

std::string to_string(const AgentPair& p);

/// Result of a predicate quantified over pairs. When the predicate fails,
/// `failing` holds the lexicographically smallest offending pair.
struct PairCheck {
  bool holds = true;
  std::optional<AgentPair> failing;

  explicit operator bool() const { return holds; }
};

/// Undirected simple graph over agents 0..n-1. Immutable once built.
class Graph {
 public:
  /// Throws std::invalid_argument on n == 0, self-loops and out-of-range
  /// endpoints. Duplicate edges (in either orientation) are merged.
  Graph(int n, std::span<const std::pair<Agent, Agent>> edges);
  Graph(int n, std::initializer_list<std::pair<Agent, Agent>> edges);

  int size() const { return n_; }
  bool adjacent(Agent a, Agent b) const { return matrix_[static_cast<std::size_t>(a) * n_ + b] != 0; }
  std::span<const Agent> neighbors(Agent a) const { return adjacency_[a]; }
  int degree(Agent a) const { return static_cast<int>(adjacency_[a].size()); }

  /// Edges sorted lexicographically, each with first < second.
  const std::vector<AgentPair>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Relabel agents: agent a becomes perm[a].
  Graph relabeled(std::span<const Agent> perm) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<AgentPair> edges_;
  std::vector<std::vector<Agent>> adjacency_;
  std::vector<std::uint8_t> matrix_;
};

Graph build_graph(int n, std::span<const std::pair<Agent, Agent>> edges);

/// Agents k outside {i, j} adjacent to both. Throws on i == j.
std::vector<Agent> common_friends(const Graph& g, Agent i, Agent j);

/// Every pair is linked or has a common friend.
PairCheck is_completely_informative(const Graph& g);

/// Every pair, linked or not, has a common friend.
PairCheck all_pairs_supported(const Graph& g);

/// Every edge has a common friend (the link is supported).
PairCheck all_links_supported(const Graph& g);

/// Graph linking every pair of agents with at least one common neighbour,
/// together with the witnesses for each such pair.
struct ComparisonNetwork {
  int n = 0;
  std::vector<AgentPair> edges;                 // sorted
  std::vector<std::vector<Agent>> witnesses;    // parallel to edges, sorted

  Graph as_graph() const;
};

ComparisonNetwork comparison_network(const Graph& g);

struct Bipartition {
  bool bipartite = false;
  std::vector<Agent> part_a;  // contains agent 0
  std::vector<Agent> part_b;
  std::optional<AgentPair> odd_edge;  // an edge inside one colour class when not bipartite
};

/// Two-colouring by BFS from agent 0. Throws std::invalid_argument when g is
/// disconnected.
Bipartition is_bipartite(const Graph& g);

bool is_connected(const Graph& g);

/// Connected component labels, numbered in order of smallest member.
std::vector<int> component_labels(const Graph& g);

struct Component {
  Graph graph;
  std::vector<Agent> original;  // original[new id] = old id
};

/// Largest component; ties go to the component holding the smallest index.
Component giant_component(const Graph& g);

/// Induced subgraph on `members` (sorted), relabelled 0..k-1 in that order.
Component induced_subgraph(const Graph& g, std::span<const Agent> members);

/// Friendship (windmill) graph. Hub 0, sails {1,2},{3,4},... For even n the
/// last sail has three nodes n-3, n-2, n-1 joined as a path.
Graph windmill(int n);

/// Degrees in non-increasing order.
std::vector<int> degree_sequence(const Graph& g);

struct MinimalSupportedGraphs {
  int n = 0;
  int min_edges = 0;
  std::uint64_t graphs_scanned = 0;
  std::uint64_t labelled_minimizers = 0;
  std::vector<std::uint64_t> canonical_forms;  // edge masks, sorted
};

/// Exhaustive scan of all labelled graphs on n nodes (3 <= n <= 7) for the
/// fewest edges such that every pair has a common friend. Minimizers are
/// reported up to isomorphism. The scan is split over `jobs` workers; the
/// result does not depend on the split.
MinimalSupportedGraphs min_edges_for_all_pairs_supported(int n, int jobs = 1);

}  // namespace fbr
