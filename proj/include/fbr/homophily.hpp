#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fbr {

/// Two equal groups: agents 0..n/2-1 (low characteristic) and n/2..n-1
/// (high). Agent id equals characteristic position minus one.
struct IslandsModel {
  int n = 0;
  double p_within = 0;
  double p_across = 0;

  /// Throws std::invalid_argument unless n is even, n >= 4 and both
  /// probabilities lie in [0, 1].
  void validate() const;
};

/// Probability that two consecutive agents of the same group share a friend.
double pr_within_pair(const IslandsModel& m);

/// Probability that the two agents straddling the groups share a friend.
double pr_across_pair(const IslandsModel& m);

/// Product of the n-1 consecutive-pair probabilities.
double pr_complete_ranking(const IslandsModel& m);

struct LinkProbabilities {
  double p_within = 0;
  double p_across = 0;
};

/// Admissible homophily range [lo, hi] for base probability p.
std::pair<double, double> admissible_eta(double p, int n);

/// p_w = p + eta, p_a = p - eta n/(n-2). Throws std::invalid_argument naming
/// the admissible interval when either leaves [0, 1].
LinkProbabilities eta_parameterization(double p, double eta, int n);

struct McEstimate {
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t seed = 0;
};

/// Trials per independently seeded block.
inline constexpr std::uint64_t kMcBlock = 1024;

/// Fraction of sampled graphs in which every consecutive pair has a common
/// neighbour. Trials are grouped in blocks of kMcBlock, block b seeded from
/// (seed, b), so the result does not depend on `jobs`.
McEstimate mc_complete_ranking(const IslandsModel& m, std::uint64_t trials, std::uint64_t seed, int jobs = 1);

struct CurveRow {
  double eta = 0;
  LinkProbabilities probabilities;
  double pr_closed = 0;
  std::optional<McEstimate> mc;
};

/// One row per eta; Monte Carlo columns only when trials > 0. Each grid point
/// uses its own seed derived from `seed` and the row index.
std::vector<CurveRow> homophily_curve(double p, int n, std::span<const double> etas, std::uint64_t trials = 0,
                                      std::uint64_t seed = 0, int jobs = 1);

/// CSV with header eta,p_w,p_a,pr_closed,pr_mc,se; empty Monte Carlo cells
/// when not sampled.
std::string curve_csv(std::span<const CurveRow> rows);

/// Evenly spaced grid from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace fbr
