#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fbr/graph.hpp"

namespace fbr {

/// Directed comparison relation over agents. Arc (a, b) means a is ranked
/// above b. At most one orientation per pair. Each arc carries an optional
/// small integer provenance tag (-1 when unset).
class ComparisonRelation {
 public:
  explicit ComparisonRelation(int n);

  int size() const { return n_; }
  bool has_arc(Agent above, Agent below) const { return arc_[index(above, below)] != 0; }
  int tag(Agent above, Agent below) const { return tag_[index(above, below)]; }
  std::size_t arc_count() const { return arcs_; }

  /// Throws std::invalid_argument for self-arcs or when the reverse arc exists.
  void add_arc(Agent above, Agent below, int tag = -1);
  void remove_arc(Agent above, Agent below);

  /// All arcs in lexicographic order.
  std::vector<std::pair<Agent, Agent>> arcs() const;

  /// Agents directly below a.
  std::vector<Agent> below(Agent a) const;

  bool operator==(const ComparisonRelation& other) const { return n_ == other.n_ && arc_ == other.arc_; }

 private:
  std::size_t index(Agent a, Agent b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_ = 0;
  std::size_t arcs_ = 0;
  std::vector<std::uint8_t> arc_;
  std::vector<std::int8_t> tag_;
};

/// Thrown when an operation requires an acyclic relation. Carries one
/// directed cycle as a witness.
class CycleError : public std::invalid_argument {
 public:
  explicit CycleError(std::vector<Agent> cycle);
  const std::vector<Agent>& cycle() const { return cycle_; }

 private:
  std::vector<Agent> cycle_;
};

/// Reachability closure. Throws CycleError on cyclic input.
ComparisonRelation transitive_closure(const ComparisonRelation& rel);

enum class Order { above, below, incomparable };

const char* to_string(Order o);

/// Position of i relative to j in the closure of rel. An agent is
/// incomparable with itself. Throws CycleError when i and j lie on a common
/// cycle.
Order comparable(const ComparisonRelation& rel, Agent i, Agent j);

/// Whether `to` is reachable from `from` by a directed path of at least one
/// arc avoiding `avoid` (pass -1 to avoid nothing).
bool reachable(const ComparisonRelation& rel, Agent from, Agent to, Agent avoid = -1);

/// Some directed cycle, or nullopt for an acyclic relation.
std::optional<std::vector<Agent>> find_cycle(const ComparisonRelation& rel);

/// A shortest directed cycle (node sequence starting at its smallest node),
/// or nullopt for an acyclic relation.
std::optional<std::vector<Agent>> has_cycle(const ComparisonRelation& rel);

/// Every directed cycle of minimum length, each listed once starting at its
/// smallest node, sorted lexicographically. Empty for acyclic relations.
std::vector<std::vector<Agent>> shortest_cycles(const ComparisonRelation& rel);

/// Deterministic linear extension of an acyclic relation, listed from worst
/// to best: repeatedly take the lowest-index agent with nothing remaining
/// below it. Throws CycleError on cyclic input.
std::vector<Agent> linear_extension(const ComparisonRelation& rel);

/// As linear_extension, but returns nullopt instead of throwing.
std::optional<std::vector<Agent>> try_linear_extension(const ComparisonRelation& rel);

/// Drops every arc whose endpoints share a strongly connected component,
/// leaving an acyclic relation.
ComparisonRelation drop_cyclic_arcs(const ComparisonRelation& rel);

}  // namespace fbr
