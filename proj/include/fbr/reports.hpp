#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fbr/graph.hpp"
#include "fbr/relation.hpp"

namespace fbr {

/// Reported comparison on a pair {a, b} with a < b: +1 means a is above b,
/// -1 means b is above a.
using Sign = std::int8_t;

/// Strict total order of the characteristic, as a position per agent in 1..n
/// (higher position = higher characteristic).
class CharacteristicProfile {
 public:
  /// Throws std::invalid_argument unless positions is a bijection onto 1..n.
  explicit CharacteristicProfile(std::vector<int> positions);

  /// Agents listed from lowest to highest characteristic.
  static CharacteristicProfile from_ascending(std::span<const Agent> order);

  int size() const { return static_cast<int>(position_.size()); }
  int position(Agent a) const { return position_[a]; }
  const std::vector<int>& positions() const { return position_; }
  bool higher(Agent a, Agent b) const { return position_[a] > position_[b]; }

  /// Truthful sign for the pair.
  Sign sign(AgentPair p) const { return higher(p.first, p.second) ? Sign{1} : Sign{-1}; }

  bool operator==(const CharacteristicProfile&) const = default;

 private:
  std::vector<int> position_;
};

/// Which pairs each agent observes in a fixed graph: pairs containing the
/// agent and a neighbour (self-comparisons), and pairs of two neighbours
/// (friend-based comparisons).
class Observability {
 public:
  explicit Observability(Graph g);

  const Graph& graph() const { return graph_; }
  int size() const { return graph_.size(); }

  /// Observable pairs of agent i, sorted.
  std::span<const AgentPair> pairs(Agent i) const { return pairs_[i]; }

  /// Index of p within pairs(i), or -1 when i does not observe p.
  int slot(Agent i, AgentPair p) const;

  /// Agents observing p, ascending.
  std::span<const Agent> observers(AgentPair p) const;

  static bool is_self_comparison(Agent observer, AgentPair p) {
    return observer == p.first || observer == p.second;
  }

 private:
  Graph graph_;
  std::vector<std::vector<AgentPair>> pairs_;
  std::vector<std::vector<Agent>> observers_;  // by pair_index
};

/// Pairs agent i observes in g, sorted.
std::vector<AgentPair> observable_pairs(const Graph& g, Agent i);

/// Every agent's announcement: a +/-1 sign on each of its observable pairs
/// and nothing elsewhere. Announcements need not be transitive.
class ReportProfile {
 public:
  /// signs[i] follows the order of observability->pairs(i). Throws
  /// std::invalid_argument on size mismatches or entries other than +/-1.
  ReportProfile(std::shared_ptr<const Observability> observability, std::vector<std::vector<Sign>> signs);

  int size() const { return observability_->size(); }
  const Graph& graph() const { return observability_->graph(); }
  const Observability& observability() const { return *observability_; }
  const std::shared_ptr<const Observability>& shared_observability() const { return observability_; }

  /// Agent i's report on p, or 0 when i does not observe p.
  Sign sign(Agent reporter, AgentPair p) const;

  std::span<const Sign> report(Agent i) const { return signs_[i]; }

  /// Copy with agent i's whole announcement replaced.
  ReportProfile with_report(Agent i, std::vector<Sign> signs) const;

  /// Replaces agent i's whole announcement in place. Same checks as with_report.
  void assign_report(Agent i, std::span<const Sign> signs);

  /// Overwrites one entry. Throws when i does not observe p or s is not +/-1.
  void set(Agent i, AgentPair p, Sign s);

  bool operator==(const ReportProfile& other) const;

 private:
  std::shared_ptr<const Observability> observability_;
  std::vector<std::vector<Sign>> signs_;
};

ReportProfile truthful_reports(const Graph& g, const CharacteristicProfile& theta);
ReportProfile truthful_reports(std::shared_ptr<const Observability> obs, const CharacteristicProfile& theta);

/// Which comparisons enter a pooled relation.
enum class Pooling {
  all,           // self-comparisons and friend-based comparisons
  friend_based,  // only reports by a third agent adjacent to both
};

/// Arc on a pair iff at least one counted observer (excluding `exclude`)
/// reports it and every counted observer agrees. Conflicting pairs get no
/// arc.
ComparisonRelation pooled_relation(const ReportProfile& reports, std::optional<Agent> exclude = std::nullopt,
                                   Pooling pooling = Pooling::all);

}  // namespace fbr
