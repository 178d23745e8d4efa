#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fbr {

// Strategy-proof, efficient ranking on the triangle {0, 1, 2}.
//
// Each agent observes all three pairs, so an announcement is a sign vector on
// (0,1), (0,2), (1,2), encoded as 3 bits: bit t set means +1 on pair t. Six
// of the eight announcements are transitive.

/// Pairs of the triangle in announcement bit order.
inline constexpr std::array<std::array<int, 2>, 3> kTrianglePairs{{{0, 1}, {0, 2}, {1, 2}}};

/// Announcement encoding the strict order given by positions (1..3).
int triangle_announcement(const std::array<int, 3>& positions);

bool is_transitive_announcement(int announcement);

/// Which profiles carry efficiency pins.
enum class EfficiencyPins {
  all_truthful,  // the six profiles where everyone announces the same order
  none,
  two_profiles,  // only the two profiles 0>1>2 and 1>2>0
};

struct CspCertificate {
  std::uint64_t nodes = 0;  // search nodes expanded, root included
  int depth = 0;            // deepest decision level reached
};

/// One forced assignment found by propagation.
struct Fixing {
  int agent = 0;
  int others = 0;  // 8 * (lower-index other's announcement) + higher-index other's
  int rank = 0;
};

/// Reduced model: an agent's rank depends only on the two other
/// announcements, giving 3 x 64 variables with domain {1,2,3}. At each of
/// the 512 full profiles the three ranks must be a permutation.
struct ReducedCspResult {
  bool satisfiable = false;
  CspCertificate certificate;
  std::vector<std::array<int, 64>> table;  // per agent, when satisfiable
};

ReducedCspResult solve_reduced_triangle(EfficiencyPins pins = EfficiencyPins::all_truthful);

/// Checks a table against the permutation constraints and the pins.
bool check_reduced_witness(const std::vector<std::array<int, 64>>& table, EfficiencyPins pins);

/// Propagation alone (no search) on the reduced model.
struct PropagationResult {
  bool wipeout = false;
  std::vector<Fixing> fixings;  // in derivation order, pins excluded
};

PropagationResult propagate_reduced_triangle(EfficiencyPins pins);

/// Direct model without own-report irrelevance: one variable per full
/// profile (512) whose value is one of the 6 rankings. For every agent whose
/// announcement is transitive, no other announcement may earn a higher rank.
struct DirectCspResult {
  bool satisfiable = false;
  CspCertificate certificate;
  std::vector<std::array<int, 3>> table;  // ranks per profile, when satisfiable
};

DirectCspResult solve_direct_triangle(EfficiencyPins pins = EfficiencyPins::all_truthful);

bool check_direct_witness(const std::vector<std::array<int, 3>>& table, EfficiencyPins pins);

/// Index of the full profile (a0, a1, a2): 64 * a0 + 8 * a1 + a2.
constexpr int profile_index(int a0, int a1, int a2) { return 64 * a0 + 8 * a1 + a2; }

}  // namespace fbr
