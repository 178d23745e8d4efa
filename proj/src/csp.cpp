#include "fbr/csp.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <optional>
#include <utility>

namespace fbr {

namespace {

// Rankings of the triangle as rank triples, lexicographic.
constexpr std::array<std::array<int, 3>, 6> kPerms{{{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};

struct Pin {
  int profile;
  std::array<int, 3> ranks;
};

std::vector<Pin> pins_for(EfficiencyPins pins) {
  std::vector<Pin> out;
  auto add = [&](const std::array<int, 3>& pos) {
    const int a = triangle_announcement(pos);
    out.push_back({profile_index(a, a, a), pos});
  };
  switch (pins) {
    case EfficiencyPins::all_truthful:
      for (const auto& p : kPerms) add(p);
      break;
    case EfficiencyPins::none:
      break;
    case EfficiencyPins::two_profiles:
      add({3, 2, 1});  // 0 > 1 > 2
      add({1, 3, 2});  // 1 > 2 > 0
      break;
  }
  return out;
}

std::array<int, 3> announcements_of(int profile) { return {profile / 64, (profile / 8) % 8, profile % 8}; }

// Reduced model ------------------------------------------------------------

constexpr int kReducedVars = 192;
using Domains = std::array<std::uint8_t, kReducedVars>;  // bit r-1 for rank r

int others_index(const std::array<int, 3>& a, int agent) {
  switch (agent) {
    case 0: return 8 * a[1] + a[2];
    case 1: return 8 * a[0] + a[2];
    default: return 8 * a[0] + a[1];
  }
}

std::array<int, 3> reduced_vars(int profile) {
  auto a = announcements_of(profile);
  return {others_index(a, 0), 64 + others_index(a, 1), 128 + others_index(a, 2)};
}

// Profiles whose constraint mentions var.
std::array<int, 8> reduced_profiles(int var) {
  const int agent = var / 64, others = var % 64;
  const int lo = others / 8, hi = others % 8;
  std::array<int, 8> out{};
  for (int own = 0; own < 8; ++own) {
    std::array<int, 3> a{};
    a[agent] = own;
    a[agent == 0 ? 1 : 0] = lo;
    a[agent == 2 ? 1 : 2] = hi;
    out[own] = profile_index(a[0], a[1], a[2]);
  }
  return out;
}

class ReducedSolver {
 public:
  explicit ReducedSolver(EfficiencyPins pins) {
    domains_.fill(0b111);
    for (const auto& p : pins_for(pins)) {
      auto vars = reduced_vars(p.profile);
      for (int k = 0; k < 3; ++k) {
        domains_[vars[k]] &= static_cast<std::uint8_t>(1u << (p.ranks[k] - 1));
        pinned_[vars[k]] = true;
      }
    }
  }

  // Generalised arc consistency over all permutation constraints.
  bool propagate(Domains& d, std::vector<Fixing>* log) {
    std::deque<int> queue;
    std::array<bool, 512> queued{};
    for (int p = 0; p < 512; ++p) {
      queue.push_back(p);
      queued[p] = true;
    }
    return drain(d, queue, queued, log);
  }

  bool propagate_from(Domains& d, int var) {
    std::deque<int> queue;
    std::array<bool, 512> queued{};
    for (int p : reduced_profiles(var)) {
      queue.push_back(p);
      queued[p] = true;
    }
    return drain(d, queue, queued, nullptr);
  }

  bool search(Domains& d, int depth) {
    cert_.depth = std::max(cert_.depth, depth);
    int best = -1, best_size = 4;
    for (int v = 0; v < kReducedVars; ++v) {
      const int s = std::popcount(d[v]);
      if (s > 1 && s < best_size) {
        best = v;
        best_size = s;
      }
    }
    if (best < 0) {
      solution_ = d;
      return true;
    }
    for (int r = 1; r <= 3; ++r) {
      if (!(d[best] & (1u << (r - 1)))) continue;
      ++cert_.nodes;
      Domains child = d;
      child[best] = static_cast<std::uint8_t>(1u << (r - 1));
      if (propagate_from(child, best) && search(child, depth + 1)) return true;
    }
    return false;
  }

  Domains& domains() { return domains_; }
  const CspCertificate& certificate() const { return cert_; }
  const std::optional<Domains>& solution() const { return solution_; }

 private:
  bool drain(Domains& d, std::deque<int>& queue, std::array<bool, 512>& queued, std::vector<Fixing>* log) {
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      queued[p] = false;
      auto vars = reduced_vars(p);
      std::array<std::uint8_t, 3> support{};
      for (const auto& perm : kPerms) {
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) ok = d[vars[k]] & (1u << (perm[k] - 1));
        if (!ok) continue;
        for (int k = 0; k < 3; ++k) support[k] |= static_cast<std::uint8_t>(1u << (perm[k] - 1));
      }
      for (int k = 0; k < 3; ++k) {
        const int v = vars[k];
        const auto next = static_cast<std::uint8_t>(d[v] & support[k]);
        if (next == d[v]) continue;
        d[v] = next;
        if (!next) return false;
        if (log && std::popcount(next) == 1 && !pinned_[v])
          log->push_back({v / 64, v % 64, std::countr_zero(next) + 1});
        for (int q : reduced_profiles(v))
          if (!queued[q]) {
            queued[q] = true;
            queue.push_back(q);
          }
      }
    }
    return true;
  }

  Domains domains_{};
  std::array<bool, kReducedVars> pinned_{};
  CspCertificate cert_{.nodes = 1};  // the root
  std::optional<Domains> solution_;
};

// Direct model -------------------------------------------------------------

using PermSet = std::uint8_t;  // bit p for kPerms[p]

struct Arc {
  int other;
  int agent;
  bool at_least;  // rank_agent(this) >= rank_agent(other); otherwise <=
};

std::vector<std::vector<Arc>> direct_arcs() {
  std::vector<std::vector<Arc>> arcs(512);
  for (int p = 0; p < 512; ++p) {
    auto a = announcements_of(p);
    for (int agent = 0; agent < 3; ++agent) {
      if (!is_transitive_announcement(a[agent])) continue;
      for (int alt = 0; alt < 8; ++alt) {
        if (alt == a[agent]) continue;
        auto b = a;
        b[agent] = alt;
        const int q = profile_index(b[0], b[1], b[2]);
        arcs[p].push_back({q, agent, true});
        arcs[q].push_back({p, agent, false});
      }
    }
  }
  return arcs;
}

class DirectSolver {
 public:
  explicit DirectSolver(EfficiencyPins pins) : arcs_(direct_arcs()) {
    domains_.assign(512, 0b111111);
    for (const auto& pin : pins_for(pins)) {
      PermSet only = 0;
      for (int p = 0; p < 6; ++p)
        if (kPerms[p] == pin.ranks) only = static_cast<PermSet>(1u << p);
      domains_[pin.profile] &= only;
    }
  }

  bool propagate(std::vector<PermSet>& d, std::deque<int> queue) {
    std::vector<char> queued(512, 0);
    for (int v : queue) queued[v] = 1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      queued[x] = 0;
      PermSet keep = d[x];
      for (const auto& arc : arcs_[x]) {
        int lo = 4, hi = 0;
        for (int p = 0; p < 6; ++p)
          if (d[arc.other] & (1u << p)) {
            lo = std::min(lo, kPerms[p][arc.agent]);
            hi = std::max(hi, kPerms[p][arc.agent]);
          }
        for (int p = 0; p < 6; ++p) {
          const int r = kPerms[p][arc.agent];
          if (arc.at_least ? r < lo : r > hi) keep &= static_cast<PermSet>(~(1u << p));
        }
      }
      if (keep == d[x]) continue;
      d[x] = keep;
      if (!keep) return false;
      for (const auto& arc : arcs_[x])
        if (!queued[arc.other]) {
          queued[arc.other] = 1;
          queue.push_back(arc.other);
        }
    }
    return true;
  }

  bool search(std::vector<PermSet>& d, int depth) {
    cert_.depth = std::max(cert_.depth, depth);
    int best = -1, best_size = 7;
    for (int v = 0; v < 512; ++v) {
      const int s = std::popcount(d[v]);
      if (s > 1 && s < best_size) {
        best = v;
        best_size = s;
      }
    }
    if (best < 0) {
      solution_ = d;
      return true;
    }
    for (int p = 0; p < 6; ++p) {
      if (!(d[best] & (1u << p))) continue;
      ++cert_.nodes;
      auto child = d;
      child[best] = static_cast<PermSet>(1u << p);
      if (propagate(child, {best}) && search(child, depth + 1)) return true;
    }
    return false;
  }

  std::vector<PermSet>& domains() { return domains_; }
  const CspCertificate& certificate() const { return cert_; }
  const std::optional<std::vector<PermSet>>& solution() const { return solution_; }

 private:
  std::vector<std::vector<Arc>> arcs_;
  std::vector<PermSet> domains_;
  CspCertificate cert_{.nodes = 1};  // the root
  std::optional<std::vector<PermSet>> solution_;
};

}  // namespace

int triangle_announcement(const std::array<int, 3>& positions) {
  int a = 0;
  for (int t = 0; t < 3; ++t)
    if (positions[kTrianglePairs[t][0]] > positions[kTrianglePairs[t][1]]) a |= 1 << t;
  return a;
}

bool is_transitive_announcement(int announcement) {
  return std::any_of(kPerms.begin(), kPerms.end(),
                     [&](const auto& pos) { return triangle_announcement(pos) == announcement; });
}

ReducedCspResult solve_reduced_triangle(EfficiencyPins pins) {
  ReducedSolver solver(pins);
  ReducedCspResult out;
  Domains d = solver.domains();
  out.satisfiable = solver.propagate(d, nullptr) && solver.search(d, 0);
  out.certificate = solver.certificate();
  if (out.satisfiable) {
    const auto& s = *solver.solution();
    out.table.assign(3, {});
    for (int v = 0; v < kReducedVars; ++v) out.table[v / 64][v % 64] = std::countr_zero(s[v]) + 1;
  }
  return out;
}

bool check_reduced_witness(const std::vector<std::array<int, 64>>& table, EfficiencyPins pins) {
  if (table.size() != 3) return false;
  auto ranks_at = [&](int profile) {
    auto a = announcements_of(profile);
    return std::array<int, 3>{table[0][others_index(a, 0)], table[1][others_index(a, 1)],
                              table[2][others_index(a, 2)]};
  };
  for (int p = 0; p < 512; ++p) {
    auto r = ranks_at(p);
    std::sort(r.begin(), r.end());
    if (r != std::array<int, 3>{1, 2, 3}) return false;
  }
  for (const auto& pin : pins_for(pins))
    if (ranks_at(pin.profile) != pin.ranks) return false;
  return true;
}

PropagationResult propagate_reduced_triangle(EfficiencyPins pins) {
  ReducedSolver solver(pins);
  PropagationResult out;
  Domains d = solver.domains();
  out.wipeout = !solver.propagate(d, &out.fixings);
  return out;
}

DirectCspResult solve_direct_triangle(EfficiencyPins pins) {
  DirectSolver solver(pins);
  DirectCspResult out;
  auto d = solver.domains();
  std::deque<int> all(512);
  for (int v = 0; v < 512; ++v) all[v] = v;
  out.satisfiable = solver.propagate(d, all) && solver.search(d, 0);
  out.certificate = solver.certificate();
  if (out.satisfiable)
    for (auto set : *solver.solution()) out.table.push_back(kPerms[std::countr_zero(set)]);
  return out;
}

bool check_direct_witness(const std::vector<std::array<int, 3>>& table, EfficiencyPins pins) {
  if (table.size() != 512) return false;
  for (const auto& r : table)
    if (std::find(kPerms.begin(), kPerms.end(), r) == kPerms.end()) return false;
  for (int p = 0; p < 512; ++p) {
    auto a = announcements_of(p);
    for (int agent = 0; agent < 3; ++agent) {
      if (!is_transitive_announcement(a[agent])) continue;
      for (int alt = 0; alt < 8; ++alt) {
        auto b = a;
        b[agent] = alt;
        if (table[profile_index(b[0], b[1], b[2])][agent] > table[p][agent]) return false;
      }
    }
  }
  for (const auto& pin : pins_for(pins))
    if (table[pin.profile] != pin.ranks) return false;
  return true;
}

}  // namespace fbr
