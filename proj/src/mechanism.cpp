#include "fbr/mechanism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fbr/enumerate.hpp"

namespace fbr {

Ranking Ranking::from_worst_to_best(std::span<const Agent> order) {
  Ranking r;
  r.rank_.assign(order.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Agent a = order[pos];
    if (a < 0 || a >= static_cast<Agent>(order.size()) || r.rank_[a] != 0)
      throw std::invalid_argument("ranking order must list every agent exactly once");
    r.rank_[a] = static_cast<int>(pos) + 1;
  }
  return r;
}

Ranking Ranking::by_index(int n) {
  std::vector<Agent> order(n);
  std::iota(order.begin(), order.end(), 0);
  return from_worst_to_best(order);
}

std::vector<Agent> Ranking::order() const {
  std::vector<Agent> out(rank_.size());
  for (std::size_t a = 0; a < rank_.size(); ++a) out[rank_[a] - 1] = static_cast<Agent>(a);
  return out;
}

int CoarseRanking::rank(Agent a) const {
  int below = 0;
  for (const auto& cls : classes) {
    if (std::find(cls.begin(), cls.end(), a) != cls.end()) return below + 1;
    below += static_cast<int>(cls.size());
  }
  throw std::invalid_argument("agent " + std::to_string(a) + " missing from coarse ranking");
}

int CoarseRanking::utility(Agent a) const { return std::max(rank(a), 2); }

const char* to_string(Rule r) {
  switch (r) {
    case Rule::none: return "none";
    case Rule::unanimous: return "unanimous";
    case Rule::majority_minus_one: return "majority-minus-one";
    case Rule::index_fallback: return "index-fallback";
    case Rule::path_override: return "path-override";
    case Rule::dictator: return "dictator";
  }
  return "?";
}

const PairDecision& MechanismTrace::decision(AgentPair p) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), p,
                             [](const PairDecision& d, const AgentPair& key) { return d.pair < key; });
  if (it == pairs.end() || it->pair != p) throw std::out_of_range("no decision for pair " + to_string(p));
  return *it;
}

namespace {

// Directed path from `from` to `to` with at least two arcs.
bool long_path(const ComparisonRelation& rel, Agent from, Agent to) {
  for (Agent u = 0; u < rel.size(); ++u) {
    if (u == to || !rel.has_arc(from, u)) continue;
    if (reachable(rel, u, to, from)) return true;
  }
  return false;
}

// Pooled relations with one observer excluded, built on demand.
class ExcludedRelations {
 public:
  explicit ExcludedRelations(const ReportProfile& reports) : reports_(reports), cache_(reports.size()) {}

  const ComparisonRelation& without(Agent k) {
    if (!cache_[k]) cache_[k] = pooled_relation(reports_, k);
    return *cache_[k];
  }

 private:
  const ReportProfile& reports_;
  std::vector<std::optional<ComparisonRelation>> cache_;
};

// Rule for pairs with at least three observers.
PairDecision majority(const ReportProfile& reports, AgentPair p) {
  PairDecision d{p, 0, Rule::none, std::nullopt};
  auto observers = reports.observability().observers(p);
  const int m = static_cast<int>(observers.size());
  int plus = 0;
  for (Agent k : observers) plus += reports.sign(k, p) > 0;
  const int minus = m - plus;
  if (plus == m || minus == m) {
    d.sign = plus == m ? 1 : -1;
    d.rule = Rule::unanimous;
  } else if (plus == m - 1 || minus == m - 1) {
    d.sign = plus == m - 1 ? 1 : -1;
    d.rule = Rule::majority_minus_one;
  } else {
    d.sign = -1;  // second > first, so second goes above
    d.rule = Rule::index_fallback;
  }
  return d;
}

// How a link seen only by its own two members is settled.
enum class SelfLinks { paths, agreement };

PairDecision decide(const ReportProfile& reports, AgentPair p, ExcludedRelations& excluded,
                    SelfLinks self_links = SelfLinks::paths) {
  auto observers = reports.observability().observers(p);
  const int m = static_cast<int>(observers.size());
  if (m >= 3) return majority(reports, p);
  PairDecision d{p, 0, Rule::none, std::nullopt};
  if (m == 0) return d;
  if (self_links == SelfLinks::agreement && m == 2 && observers[0] == p.first && observers[1] == p.second) {
    // Coarse outcome: agreement is taken as is, a conflict leaves the pair
    // unordered for the bottom class.
    const Sign a = reports.sign(p.first, p), b = reports.sign(p.second, p);
    if (a == b) {
      d.sign = a;
      d.rule = Rule::unanimous;
    }
    return d;
  }

  const Agent k = observers.back();
  const auto& rel = excluded.without(k);
  const bool up = long_path(rel, p.first, p.second);
  const bool down = long_path(rel, p.second, p.first);
  if (up != down) {
    d.sign = up ? 1 : -1;
    d.rule = Rule::path_override;
  } else {
    d.sign = reports.sign(k, p);
    d.rule = Rule::dictator;
    d.dictator = k;
  }
  return d;
}

// Aggregates all pairs, filling the trace and the aggregated relation.
ComparisonRelation aggregate_all(const ReportProfile& reports, MechanismTrace& trace, SelfLinks self_links) {
  const int n = reports.size();
  ExcludedRelations excluded(reports);
  ComparisonRelation agg(n);
  trace.pairs.reserve(pair_count(n));
  for (Agent a = 0; a < n; ++a)
    for (Agent b = a + 1; b < n; ++b) {
      auto d = decide(reports, {a, b}, excluded, self_links);
      if (d.sign > 0) agg.add_arc(a, b, static_cast<int>(d.rule));
      if (d.sign < 0) agg.add_arc(b, a, static_cast<int>(d.rule));
      trace.pairs.push_back(d);
    }
  return agg;
}

// The unique agent dictating at least two arcs of every shortest cycle.
std::optional<Agent> cycle_culprit(const MechanismTrace& trace, int n) {
  std::optional<Agent> culprit;
  for (Agent k = 0; k < n; ++k) {
    bool in_all = true;
    for (const auto& cycle : trace.cycles) {
      int dictated = 0;
      for (std::size_t s = 0; s < cycle.size(); ++s) {
        const auto& d = trace.decision(AgentPair::of(cycle[s], cycle[(s + 1) % cycle.size()]));
        if (d.rule == Rule::dictator && d.dictator == k) ++dictated;
      }
      if (dictated < 2) {
        in_all = false;
        break;
      }
    }
    if (!in_all) continue;
    if (culprit) return std::nullopt;
    culprit = k;
  }
  return culprit;
}

}  // namespace

PairDecision aggregate_pair(const ReportProfile& reports, AgentPair pair) {
  if (pair.first == pair.second) throw std::invalid_argument("aggregate_pair needs two distinct agents");
  pair = AgentPair::of(pair.first, pair.second);
  ExcludedRelations excluded(reports);
  return decide(reports, pair, excluded);
}

namespace {

MechanismOutcome run_friend_based(const ReportProfile& reports, SelfLinks self_links) {
  const int n = reports.size();
  MechanismTrace trace;
  auto agg = aggregate_all(reports, trace, self_links);
  if (auto order = try_linear_extension(agg)) return {Ranking::from_worst_to_best(*order), std::move(trace)};

  trace.cyclic = true;
  trace.cycles = shortest_cycles(agg);
  trace.punished = cycle_culprit(trace, n);
  if (!trace.punished) return {Ranking::by_index(n), std::move(trace)};
  std::vector<Agent> order{*trace.punished};
  for (Agent a = 0; a < n; ++a)
    if (a != *trace.punished) order.push_back(a);
  return {Ranking::from_worst_to_best(order), std::move(trace)};
}

}  // namespace

MechanismOutcome run_mechanism(const ReportProfile& reports, MechanismOptions options) {
  if (options.enforce_precondition) {
    auto check = all_links_supported(reports.graph());
    if (!check)
      throw InfeasibleError("no incentive-compatible efficient mechanism: link " + to_string(*check.failing) +
                                " has no common friend",
                            *check.failing);
  }
  return run_friend_based(reports, SelfLinks::paths);
}

Ranking run_bipartite_mechanism(const ReportProfile& reports) {
  const Graph& g = reports.graph();
  auto parts = is_bipartite(g);
  if (!parts.bipartite)
    throw InfeasibleError("graph is not bipartite: edge " + to_string(*parts.odd_edge) + " closes an odd cycle",
                          *parts.odd_edge);

  const auto friend_rel = pooled_relation(reports, std::nullopt, Pooling::friend_based);
  auto order_part = [&](const std::vector<Agent>& members) {
    const int k = static_cast<int>(members.size());
    ComparisonRelation local(k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (friend_rel.has_arc(members[a], members[b])) local.add_arc(a, b);
    auto order = linear_extension(drop_cyclic_arcs(local));
    for (auto& a : order) a = members[a];
    return order;
  };
  auto order = order_part(parts.part_b);
  auto top = order_part(parts.part_a);
  order.insert(order.end(), top.begin(), top.end());
  return Ranking::from_worst_to_best(order);
}

CoarseRanking run_coarse_mechanism(const ReportProfile& reports, MechanismOptions options) {
  const Graph& g = reports.graph();
  if (options.enforce_precondition) {
    auto check = is_completely_informative(g);
    if (!check)
      throw InfeasibleError("graph is not completely informative: pair " + to_string(*check.failing) +
                                " can never be compared",
                            *check.failing);
  }
  // Smallest pair observed only by its own members whose reports conflict.
  std::optional<AgentPair> bottom;
  for (const auto& e : g.edges()) {
    auto observers = reports.observability().observers(e);
    if (observers.size() != 2) continue;
    if (reports.sign(e.first, e) != reports.sign(e.second, e)) {
      bottom = e;
      break;
    }
  }
  auto standard = run_friend_based(reports, SelfLinks::agreement).ranking.order();
  CoarseRanking out;
  if (bottom) out.classes.push_back({bottom->first, bottom->second});
  for (Agent a : standard)
    if (!bottom || (a != bottom->first && a != bottom->second)) out.classes.push_back({a});
  return out;
}

Ranking run_naive_efficient(const ReportProfile& reports) {
  return Ranking::from_worst_to_best(linear_extension(drop_cyclic_arcs(pooled_relation(reports))));
}

Ranking run_index_only(const ReportProfile& reports) { return Ranking::by_index(reports.size()); }

}  // namespace fbr
