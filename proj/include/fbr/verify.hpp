#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbr/graph.hpp"
#include "fbr/mechanism.hpp"
#include "fbr/reports.hpp"

namespace fbr {

enum class MechanismKind {
  standard,   // run_mechanism
  bipartite,  // run_bipartite_mechanism
  coarse,     // run_coarse_mechanism
  naive,      // run_naive_efficient
  index,      // run_index_only
};

const char* to_string(MechanismKind k);

/// Accepts the names produced by to_string. Throws std::invalid_argument.
MechanismKind parse_mechanism_kind(const std::string& name);

/// Outcome of one mechanism run as the verifier sees it.
struct Evaluation {
  std::vector<int> position;  // rank, or class rank for coarse rankings
  std::vector<int> payoff;    // what the agent maximises
};

Evaluation evaluate(MechanismKind kind, const ReportProfile& reports, const MechanismOptions& options = {});

/// Throws InfeasibleError (or std::invalid_argument) when `kind` cannot run
/// on g.
void check_precondition(const Graph& g, MechanismKind kind);

enum class Verdict { no_gain, strict_gain };

const char* to_string(Verdict v);

/// A unilateral or group deviation from truthful reporting. Single-agent
/// deviations have a coalition of one.
struct DeviationReport {
  Graph graph;
  CharacteristicProfile theta;
  std::vector<Agent> coalition;
  std::vector<std::vector<Sign>> original;  // truthful announcement per member
  std::vector<std::vector<Sign>> deviant;
  std::vector<int> before;  // payoff per member
  std::vector<int> after;
  Verdict verdict = Verdict::no_gain;

  bool operator==(const DeviationReport&) const = default;
};

/// Re-runs the mechanism on the stored scenario, recomputing the payoffs and
/// the verdict.
DeviationReport replay(const DeviationReport& report, MechanismKind kind, const MechanismOptions& options = {});

struct VerifyOptions {
  bool list_all = false;               // otherwise stop at the first violation
  bool enforce_precondition = true;
  std::optional<std::uint64_t> samples;  // sampled mode: number of random draws
  std::uint64_t seed = 1;
  std::optional<CharacteristicProfile> theta;  // restrict to one profile
  int jobs = 1;
};

/// Largest n accepted by exhaustive IC and efficiency checks.
inline constexpr int kExhaustiveLimit = 8;

struct IcResult {
  std::vector<DeviationReport> violations;
  std::uint64_t profiles = 0;    // characteristic profiles examined
  std::uint64_t deviations = 0;  // alternative announcements evaluated
};

/// Searches for profitable unilateral deviations from truth. Exhaustive
/// mode enumerates every theta, every agent and every alternative
/// announcement (sign vectors in lexicographic order, -1 before +1).
/// Throws std::invalid_argument above kExhaustiveLimit without samples.
IcResult check_ex_post_ic(const Graph& g, MechanismKind kind, const VerifyOptions& options = {});

struct EfficiencyViolation {
  CharacteristicProfile theta;
  Agent higher = 0;  // above `lower` in the pooled closure
  Agent lower = 0;
  int position_higher = 0;
  int position_lower = 0;

  bool operator==(const EfficiencyViolation&) const = default;
};

struct EfficiencyResult {
  std::vector<EfficiencyViolation> violations;
  std::uint64_t profiles = 0;
};

/// Pooling used as the efficiency reference: friend-based for the bipartite
/// mechanism, all comparisons otherwise.
Pooling reference_pooling(MechanismKind kind);

/// Violations of ex post efficiency on a single truthful profile.
std::vector<EfficiencyViolation> efficiency_violations(const Graph& g, MechanismKind kind,
                                                      const CharacteristicProfile& theta,
                                                      const MechanismOptions& options = {});

EfficiencyResult check_ex_post_efficiency(const Graph& g, MechanismKind kind, const VerifyOptions& options = {});

/// Largest n accepted by find_group_deviation.
inline constexpr int kGroupLimit = 5;

/// Coalitions of size 1..max_coalition deviating jointly; a violation needs
/// every member weakly better off and one strictly.
IcResult find_group_deviation(const Graph& g, MechanismKind kind, int max_coalition,
                              const VerifyOptions& options = {});

/// Failure of one mechanism on a graph with an unsupported link, built by
/// ranking the link's endpoints lowest and everyone else by distance.
struct NecessityWitness {
  AgentPair link;
  CharacteristicProfile theta_low_first;   // link.first lowest
  CharacteristicProfile theta_low_second;  // link.second lowest
  std::optional<EfficiencyViolation> inefficiency;
  std::optional<DeviationReport> deviation;
};

/// Throws std::invalid_argument when every link is supported or g is
/// disconnected. Returns nullopt only if the mechanism survives the
/// construction.
std::optional<NecessityWitness> necessity_witness(const Graph& g, MechanismKind kind);

}  // namespace fbr
