#include "fbr/verify.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <memory>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "fbr/enumerate.hpp"
#include "fbr/rng.hpp"

namespace fbr {

const char* to_string(MechanismKind k) {
  switch (k) {
    case MechanismKind::standard: return "standard";
    case MechanismKind::bipartite: return "bipartite";
    case MechanismKind::coarse: return "coarse";
    case MechanismKind::naive: return "naive";
    case MechanismKind::index: return "index";
  }
  return "?";
}

MechanismKind parse_mechanism_kind(const std::string& name) {
  for (auto k : {MechanismKind::standard, MechanismKind::bipartite, MechanismKind::coarse, MechanismKind::naive,
                 MechanismKind::index})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown mechanism '" + name + "' (standard, bipartite, coarse, naive, index)");
}

const char* to_string(Verdict v) { return v == Verdict::strict_gain ? "strict-gain" : "no-gain"; }

Evaluation evaluate(MechanismKind kind, const ReportProfile& reports, const MechanismOptions& options) {
  Evaluation ev;
  switch (kind) {
    case MechanismKind::standard:
      ev.position = run_mechanism(reports, options).ranking.ranks();
      break;
    case MechanismKind::bipartite:
      ev.position = run_bipartite_mechanism(reports).ranks();
      break;
    case MechanismKind::coarse: {
      auto cr = run_coarse_mechanism(reports, options);
      const int n = reports.size();
      ev.position.resize(n);
      ev.payoff.resize(n);
      for (Agent a = 0; a < n; ++a) {
        ev.position[a] = cr.rank(a);
        ev.payoff[a] = cr.utility(a);
      }
      return ev;
    }
    case MechanismKind::naive:
      ev.position = run_naive_efficient(reports).ranks();
      break;
    case MechanismKind::index:
      ev.position = run_index_only(reports).ranks();
      break;
  }
  ev.payoff = ev.position;
  return ev;
}

void check_precondition(const Graph& g, MechanismKind kind) {
  switch (kind) {
    case MechanismKind::standard:
      if (auto c = all_links_supported(g); !c)
        throw InfeasibleError("no incentive-compatible efficient mechanism: link " + to_string(*c.failing) +
                                  " has no common friend",
                              *c.failing);
      break;
    case MechanismKind::bipartite:
      if (auto b = is_bipartite(g); !b.bipartite)
        throw InfeasibleError("graph is not bipartite: edge " + to_string(*b.odd_edge) + " closes an odd cycle",
                              *b.odd_edge);
      break;
    case MechanismKind::coarse:
      if (auto c = is_completely_informative(g); !c)
        throw InfeasibleError("graph is not completely informative: pair " + to_string(*c.failing) +
                                  " can never be compared",
                              *c.failing);
      break;
    case MechanismKind::naive:
    case MechanismKind::index:
      break;
  }
}

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// index-th permutation of 1..n in lexicographic order.
std::vector<int> positions_at(int n, std::uint64_t index) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(n);
  for (int k = n; k >= 1; --k) {
    const std::uint64_t f = factorial(k - 1);
    out.push_back(pool[index / f]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(index / f));
    index %= f;
  }
  return out;
}

std::vector<Sign> signs_from_bits(std::uint64_t bits, std::size_t m) {
  std::vector<Sign> row(m);
  for (std::size_t t = 0; t < m; ++t) row[t] = (bits >> (m - 1 - t)) & 1 ? Sign{1} : Sign{-1};
  return row;
}

constexpr std::size_t kMaxDeviationBits = 24;

struct ChunkResult {
  std::vector<DeviationReport> violations;
  std::uint64_t profiles = 0;
  std::uint64_t deviations = 0;
};

int chunk_count(std::uint64_t items) { return static_cast<int>(std::min<std::uint64_t>(items, 64)); }

// Runs `work` over [0, count) in fixed chunks. Without list_all, chunks after
// the first one holding a violation are discarded, so the merged result does
// not depend on the worker count.
IcResult run_chunked(std::uint64_t count, const VerifyOptions& options,
                     const std::function<void(std::uint64_t, ChunkResult&)>& work) {
  const int chunks = chunk_count(count);
  std::vector<ChunkResult> parts(chunks);
  std::atomic<int> first_hit{INT_MAX};
  parallel_chunks(
      count, chunks,
      [&](int c, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t x = begin; x < end; ++x) {
          if (!options.list_all && c > first_hit.load()) return;
          work(x, parts[c]);
          if (!options.list_all && !parts[c].violations.empty()) {
            int seen = first_hit.load();
            while (c < seen && !first_hit.compare_exchange_weak(seen, c)) {
            }
            return;
          }
        }
      },
      options.jobs);
  IcResult out;
  for (int c = 0; c < chunks; ++c) {
    out.profiles += parts[c].profiles;
    out.deviations += parts[c].deviations;
    for (auto& v : parts[c].violations) out.violations.push_back(std::move(v));
    if (!options.list_all && !out.violations.empty()) {
      out.violations.erase(out.violations.begin() + 1, out.violations.end());
      break;
    }
  }
  return out;
}

DeviationReport make_report(const Graph& g, const CharacteristicProfile& theta, std::vector<Agent> coalition,
                            std::vector<std::vector<Sign>> original, std::vector<std::vector<Sign>> deviant,
                            std::vector<int> before, std::vector<int> after) {
  bool weak = true, strict = false;
  for (std::size_t m = 0; m < coalition.size(); ++m) {
    weak = weak && after[m] >= before[m];
    strict = strict || after[m] > before[m];
  }
  return DeviationReport{g,
                         theta,
                         std::move(coalition),
                         std::move(original),
                         std::move(deviant),
                         std::move(before),
                         std::move(after),
                         weak && strict ? Verdict::strict_gain : Verdict::no_gain};
}

void check_scale(const Graph& g, const VerifyOptions& options, int limit) {
  if (!options.samples && !options.theta && g.size() > limit)
    throw std::invalid_argument("exhaustive verification is limited to n <= " + std::to_string(limit) + " (got " +
                                std::to_string(g.size()) + "); use sampled mode");
}

std::uint64_t profile_count(int n, const VerifyOptions& options) {
  return options.theta ? 1 : factorial(n);
}

CharacteristicProfile profile_at(int n, std::uint64_t index, const VerifyOptions& options) {
  return options.theta ? *options.theta : CharacteristicProfile(positions_at(n, index));
}

// Preconditions are checked once up front, not on every run.
constexpr MechanismOptions kUnchecked{.enforce_precondition = false};

void validate_theta(const Graph& g, const VerifyOptions& options) {
  if (options.theta && options.theta->size() != g.size())
    throw std::invalid_argument("characteristic profile size does not match the graph");
}

}  // namespace

DeviationReport replay(const DeviationReport& report, MechanismKind kind, const MechanismOptions& options) {
  auto obs = std::make_shared<const Observability>(report.graph);
  auto truthful = truthful_reports(obs, report.theta);
  auto deviant = truthful;
  for (std::size_t m = 0; m < report.coalition.size(); ++m)
    deviant.assign_report(report.coalition[m], report.deviant[m]);
  auto before = evaluate(kind, truthful, options).payoff;
  auto after = evaluate(kind, deviant, options).payoff;
  std::vector<int> b, a;
  std::vector<std::vector<Sign>> original;
  for (Agent k : report.coalition) {
    b.push_back(before[k]);
    a.push_back(after[k]);
    auto row = truthful.report(k);
    original.emplace_back(row.begin(), row.end());
  }
  return make_report(report.graph, report.theta, report.coalition, std::move(original), report.deviant, b, a);
}

IcResult check_ex_post_ic(const Graph& g, MechanismKind kind, const VerifyOptions& options) {
  check_scale(g, options, kExhaustiveLimit);
  validate_theta(g, options);
  if (options.enforce_precondition) check_precondition(g, kind);
  const int n = g.size();
  const auto mech = kUnchecked;
  auto obs = std::make_shared<const Observability>(g);
  for (Agent i = 0; i < n; ++i)
    if (!options.samples && obs->pairs(i).size() > kMaxDeviationBits)
      throw std::invalid_argument("agent " + std::to_string(i) + " observes too many pairs for full deviation "
                                  "enumeration; use sampled mode");

  auto deviate = [&](const CharacteristicProfile& theta, const ReportProfile& truthful, const Evaluation& base,
                     ReportProfile& work, Agent i, const std::vector<Sign>& row, ChunkResult& out) {
    work.assign_report(i, row);
    auto ev = evaluate(kind, work, mech);
    ++out.deviations;
    auto t = truthful.report(i);
    work.assign_report(i, t);
    if (ev.payoff[i] > base.payoff[i])
      out.violations.push_back(make_report(g, theta, {i}, {{t.begin(), t.end()}}, {row}, {base.payoff[i]},
                                           {ev.payoff[i]}));
  };

  if (options.samples) {
    return run_chunked(*options.samples, options, [&](std::uint64_t s, ChunkResult& out) {
      auto rng = Rng::derived(options.seed, s);
      std::vector<int> pos(n);
      std::iota(pos.begin(), pos.end(), 1);
      if (!options.theta) rng.shuffle(pos);
      CharacteristicProfile theta = options.theta ? *options.theta : CharacteristicProfile(pos);
      const Agent i = static_cast<Agent>(rng.below(n));
      const std::size_t m = obs->pairs(i).size();
      std::vector<Sign> row(m);
      for (auto& x : row) x = rng.bernoulli(0.5) ? Sign{1} : Sign{-1};
      ++out.profiles;
      auto truthful = truthful_reports(obs, theta);
      auto t = truthful.report(i);
      if (std::equal(row.begin(), row.end(), t.begin(), t.end())) return;
      auto base = evaluate(kind, truthful, mech);
      auto work = truthful;
      deviate(theta, truthful, base, work, i, row, out);
    });
  }

  return run_chunked(profile_count(n, options), options, [&](std::uint64_t index, ChunkResult& out) {
    auto theta = profile_at(n, index, options);
    auto truthful = truthful_reports(obs, theta);
    auto base = evaluate(kind, truthful, mech);
    auto work = truthful;
    ++out.profiles;
    for (Agent i = 0; i < n; ++i) {
      const std::size_t m = obs->pairs(i).size();
      auto t = truthful.report(i);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
        auto row = signs_from_bits(bits, m);
        if (std::equal(row.begin(), row.end(), t.begin(), t.end())) continue;
        deviate(theta, truthful, base, work, i, row, out);
        if (!options.list_all && !out.violations.empty()) return;
      }
    }
  });
}

Pooling reference_pooling(MechanismKind kind) {
  return kind == MechanismKind::bipartite ? Pooling::friend_based : Pooling::all;
}

std::vector<EfficiencyViolation> efficiency_violations(const Graph& g, MechanismKind kind,
                                                      const CharacteristicProfile& theta,
                                                      const MechanismOptions& options) {
  auto truthful = truthful_reports(g, theta);
  auto closure = transitive_closure(pooled_relation(truthful, std::nullopt, reference_pooling(kind)));
  auto ev = evaluate(kind, truthful, options);
  std::vector<EfficiencyViolation> out;
  for (auto [a, b] : closure.arcs())
    if (ev.position[a] <= ev.position[b]) out.push_back({theta, a, b, ev.position[a], ev.position[b]});
  return out;
}

EfficiencyResult check_ex_post_efficiency(const Graph& g, MechanismKind kind, const VerifyOptions& options) {
  check_scale(g, options, kExhaustiveLimit + 1);
  validate_theta(g, options);
  if (options.enforce_precondition) check_precondition(g, kind);
  const int n = g.size();
  const std::uint64_t count = options.samples ? *options.samples : profile_count(n, options);
  const int chunks = chunk_count(count);
  std::vector<EfficiencyResult> parts(chunks);
  parallel_chunks(
      count, chunks,
      [&](int c, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t x = begin; x < end; ++x) {
          std::optional<CharacteristicProfile> theta;
          if (options.samples && !options.theta) {
            auto rng = Rng::derived(options.seed, x);
            std::vector<int> pos(n);
            std::iota(pos.begin(), pos.end(), 1);
            rng.shuffle(pos);
            theta.emplace(std::move(pos));
          } else {
            theta.emplace(profile_at(n, x, options));
          }
          auto v = efficiency_violations(g, kind, *theta, kUnchecked);
          ++parts[c].profiles;
          parts[c].violations.insert(parts[c].violations.end(), v.begin(), v.end());
        }
      },
      options.jobs);
  EfficiencyResult out;
  for (auto& p : parts) {
    out.profiles += p.profiles;
    out.violations.insert(out.violations.end(), p.violations.begin(), p.violations.end());
  }
  if (!options.list_all && out.violations.size() > 1) out.violations.erase(out.violations.begin() + 1, out.violations.end());
  return out;
}

IcResult find_group_deviation(const Graph& g, MechanismKind kind, int max_coalition, const VerifyOptions& options) {
  const int n = g.size();
  if (n > kGroupLimit && !options.theta)
    throw std::invalid_argument("group deviation search is limited to n <= " + std::to_string(kGroupLimit));
  if (max_coalition < 1 || max_coalition > n)
    throw std::invalid_argument("coalition size must lie in 1.." + std::to_string(n));
  validate_theta(g, options);
  if (options.enforce_precondition) check_precondition(g, kind);
  const auto mech = kUnchecked;
  auto obs = std::make_shared<const Observability>(g);

  // Coalitions by size, then lexicographically.
  std::vector<std::vector<Agent>> coalitions;
  for (int s = 1; s <= max_coalition; ++s) {
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + s, 1);
    do {
      std::vector<Agent> c;
      for (Agent a = 0; a < n; ++a)
        if (pick[a]) c.push_back(a);
      coalitions.push_back(std::move(c));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  for (const auto& c : coalitions) {
    std::size_t bits = 0;
    for (Agent a : c) bits += obs->pairs(a).size();
    if (bits > kMaxDeviationBits)
      throw std::invalid_argument("coalition deviation space too large for enumeration");
  }

  return run_chunked(profile_count(n, options), options, [&](std::uint64_t index, ChunkResult& out) {
    auto theta = profile_at(n, index, options);
    auto truthful = truthful_reports(obs, theta);
    auto base = evaluate(kind, truthful, mech);
    auto work = truthful;
    ++out.profiles;
    for (const auto& coalition : coalitions) {
      std::size_t total = 0;
      std::vector<std::vector<Sign>> original;
      for (Agent a : coalition) {
        auto r = truthful.report(a);
        original.emplace_back(r.begin(), r.end());
        total += r.size();
      }
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << total); ++bits) {
        auto joint = signs_from_bits(bits, total);
        std::vector<std::vector<Sign>> rows;
        std::size_t at = 0;
        bool changed = false;
        for (std::size_t m = 0; m < coalition.size(); ++m) {
          const std::size_t len = original[m].size();
          rows.emplace_back(joint.begin() + at, joint.begin() + at + len);
          changed = changed || rows.back() != original[m];
          at += len;
        }
        if (!changed) continue;
        for (std::size_t m = 0; m < coalition.size(); ++m) work.assign_report(coalition[m], rows[m]);
        auto ev = evaluate(kind, work, mech);
        for (std::size_t m = 0; m < coalition.size(); ++m) work.assign_report(coalition[m], original[m]);
        ++out.deviations;
        std::vector<int> before, after;
        for (Agent a : coalition) {
          before.push_back(base.payoff[a]);
          after.push_back(ev.payoff[a]);
        }
        auto report = make_report(g, theta, coalition, original, std::move(rows), before, after);
        if (report.verdict == Verdict::strict_gain) {
          out.violations.push_back(std::move(report));
          if (!options.list_all) return;
        }
      }
    }
  });
}

std::optional<NecessityWitness> necessity_witness(const Graph& g, MechanismKind kind) {
  const MechanismOptions mech{.enforce_precondition = false};
  auto check = all_links_supported(g);
  if (check) throw std::invalid_argument("every link is supported; no necessity witness exists");
  if (!is_connected(g)) throw std::invalid_argument("necessity witness needs a connected graph");
  const int n = g.size();
  const AgentPair link = *check.failing;
  const Agent i = link.first, j = link.second;

  std::vector<int> dist(n, -1);
  std::queue<Agent> q;
  dist[i] = 0;
  q.push(i);
  while (!q.empty()) {
    Agent u = q.front();
    q.pop();
    for (Agent v : g.neighbors(u))
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  std::vector<Agent> rest;
  for (Agent a = 0; a < n; ++a)
    if (a != i && a != j) rest.push_back(a);
  std::stable_sort(rest.begin(), rest.end(), [&](Agent a, Agent b) { return dist[a] < dist[b]; });

  auto ascending = [&](Agent lowest, Agent second) {
    std::vector<Agent> order{lowest, second};
    order.insert(order.end(), rest.begin(), rest.end());
    return CharacteristicProfile::from_ascending(order);
  };
  NecessityWitness w{link, ascending(i, j), ascending(j, i), std::nullopt, std::nullopt};

  for (const auto* theta : {&w.theta_low_first, &w.theta_low_second}) {
    auto v = efficiency_violations(g, kind, *theta, mech);
    if (!v.empty()) {
      w.inefficiency = v.front();
      return w;
    }
  }

  // Each endpoint claims to sit above the other on the shared link.
  auto obs = std::make_shared<const Observability>(g);
  auto attempt = [&](const CharacteristicProfile& theta, Agent liar, Sign claim) -> std::optional<DeviationReport> {
    auto truthful = truthful_reports(obs, theta);
    auto t = truthful.report(liar);
    std::vector<Sign> original(t.begin(), t.end());
    auto row = original;
    row[obs->slot(liar, link)] = claim;
    auto work = truthful;
    work.assign_report(liar, row);
    const int before = evaluate(kind, truthful, mech).payoff[liar];
    const int after = evaluate(kind, work, mech).payoff[liar];
    auto report = make_report(g, theta, {liar}, {original}, {row}, {before}, {after});
    if (report.verdict == Verdict::strict_gain) return report;
    return std::nullopt;
  };
  if ((w.deviation = attempt(w.theta_low_first, i, Sign{1}))) return w;
  if ((w.deviation = attempt(w.theta_low_second, j, Sign{-1}))) return w;
  return std::nullopt;
}

}  // namespace fbr
