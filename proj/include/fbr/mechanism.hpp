#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fbr/graph.hpp"
#include "fbr/relation.hpp"
#include "fbr/reports.hpp"

namespace fbr {

/// Complete ranking. rank(a) is in 1..n; higher is better and 1 is worst.
class Ranking {
 public:
  /// Agents listed from worst (rank 1) to best (rank n).
  static Ranking from_worst_to_best(std::span<const Agent> order);

  /// rank(a) = a + 1, i.e. a above b iff a > b.
  static Ranking by_index(int n);

  int size() const { return static_cast<int>(rank_.size()); }
  int rank(Agent a) const { return rank_[a]; }
  const std::vector<int>& ranks() const { return rank_; }

  /// Agents from worst to best.
  std::vector<Agent> order() const;

  bool operator==(const Ranking&) const = default;

 private:
  std::vector<int> rank_;
};

/// Ordered partition from worst to best. Only the bottom class may hold two
/// agents; every other class is a singleton.
struct CoarseRanking {
  std::vector<std::vector<Agent>> classes;

  /// 1 + number of agents in strictly lower classes.
  int rank(Agent a) const;

  /// Payoff-relevant rank: agents are indifferent between the two worst
  /// spots, so this is max(rank, 2).
  int utility(Agent a) const;

  bool operator==(const CoarseRanking&) const = default;
};

/// How an aggregated pair comparison was decided.
enum class Rule {
  none,                // nobody observes the pair
  unanimous,           // every observer agrees
  majority_minus_one,  // exactly one observer dissents
  index_fallback,      // >= 3 observers, no near-unanimity: higher index above
  path_override,       // <= 2 observers, settled by paths among the others
  dictator,            // <= 2 observers, the highest-index observer decides
};

const char* to_string(Rule r);

struct PairDecision {
  AgentPair pair;
  Sign sign = 0;  // +1: pair.first above pair.second; 0 only with Rule::none
  Rule rule = Rule::none;
  std::optional<Agent> dictator;

  bool operator==(const PairDecision&) const = default;
};

struct MechanismTrace {
  std::vector<PairDecision> pairs;  // every unordered pair, lexicographic
  bool cyclic = false;
  std::vector<std::vector<Agent>> cycles;  // all shortest cycles when cyclic
  std::optional<Agent> punished;

  const PairDecision& decision(AgentPair p) const;
  bool operator==(const MechanismTrace&) const = default;
};

struct MechanismOutcome {
  Ranking ranking;
  MechanismTrace trace;
};

/// Thrown when a graph fails the structural condition a mechanism needs.
/// Carries the offending pair.
class InfeasibleError : public std::invalid_argument {
 public:
  InfeasibleError(const std::string& what, AgentPair witness)
      : std::invalid_argument(what), witness_(witness) {}
  AgentPair witness() const { return witness_; }

 private:
  AgentPair witness_;
};

struct MechanismOptions {
  /// When false, run on any graph (for demonstrations of failure modes).
  bool enforce_precondition = true;
};

/// Aggregated comparison of one pair under the friend-based rule.
PairDecision aggregate_pair(const ReportProfile& reports, AgentPair pair);

/// The friend-based ranking mechanism: aggregate every pair, extend an
/// acyclic aggregate to a ranking, punish a lone cycle creator otherwise.
/// Requires every link to be supported unless the precondition is waived;
/// throws InfeasibleError with the unsupported link.
MechanismOutcome run_mechanism(const ReportProfile& reports, MechanismOptions options = {});

/// Two-sided mechanism for connected bipartite graphs: the part holding agent
/// 0 is ranked above the other part, each part ordered by the friend-based
/// reports of the other side. Throws InfeasibleError on non-bipartite input
/// and std::invalid_argument on disconnected input.
Ranking run_bipartite_mechanism(const ReportProfile& reports);

/// Friend-based mechanism with a shared bottom class. A link observed by its
/// two members alone counts only when they agree; on a conflict both go to
/// the bottom.
/// Requires a completely informative graph unless the precondition is waived.
CoarseRanking run_coarse_mechanism(const ReportProfile& reports, MechanismOptions options = {});

/// Strawman: linear extension of the pooled relation after discarding
/// conflicting pairs and cycles. Efficient, not incentive compatible.
Ranking run_naive_efficient(const ReportProfile& reports);

/// Strawman that ignores all reports.
Ranking run_index_only(const ReportProfile& reports);

}  // namespace fbr
