#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fbr/catalog.hpp"
#include "fbr/enumerate.hpp"
#include "fbr/mechanism.hpp"
#include "fbr/rng.hpp"
#include "fbr/verify.hpp"

using namespace fbr;

namespace {

ReportProfile truthful(const Graph& g, std::vector<int> positions) {
  return truthful_reports(g, CharacteristicProfile(std::move(positions)));
}

std::vector<int> iota_positions(int n) {
  std::vector<int> pos(n);
  std::iota(pos.begin(), pos.end(), 1);
  return pos;
}

// One representative per isomorphism class of connected graphs on n nodes
// satisfying `keep`.
template <typename Keep>
std::vector<Graph> representatives(int n, Keep keep) {
  std::set<EdgeMask> seen;
  std::vector<Graph> out;
  for_each_graph(n, true, [&](const Graph& g) {
    if (!keep(g)) return;
    if (seen.insert(canonical_form(n, edge_mask(g))).second) out.push_back(g);
  });
  return out;
}

// Five nodes: 0 and 1 joined and both linked to 2, 3, 4; links among 2, 3, 4
// absent. Every link is supported.
Graph two_hubs() { return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}); }

}  // namespace

TEST_CASE("Ranking and CoarseRanking") {
  const std::vector<Agent> order{2, 0, 1};
  auto r = Ranking::from_worst_to_best(order);
  CHECK(r.ranks() == std::vector<int>{2, 3, 1});
  CHECK(r.order() == order);
  CHECK(Ranking::by_index(3).ranks() == std::vector<int>{1, 2, 3});
  const std::vector<Agent> bad{0, 0, 1};
  CHECK_THROWS_AS(Ranking::from_worst_to_best(bad), std::invalid_argument);

  CoarseRanking c{{{0, 3}, {1}, {2}}};
  CHECK(c.rank(0) == 1);
  CHECK(c.rank(3) == 1);
  CHECK(c.rank(1) == 3);
  CHECK(c.utility(0) == 2);
  CHECK(c.utility(2) == 4);
}

TEST_CASE("aggregate_pair") {
  SUBCASE("unanimous") {
    auto d = aggregate_pair(truthful(triangle(), {1, 2, 3}), {0, 1});
    CHECK(d.rule == Rule::unanimous);
    CHECK(d.sign == -1);
  }
  SUBCASE("one dissenter is ignored") {
    auto r = truthful(triangle(), {1, 2, 3});
    r.set(0, {0, 1}, 1);
    auto d = aggregate_pair(r, {0, 1});
    CHECK(d.rule == Rule::majority_minus_one);
    CHECK(d.sign == -1);
  }
  SUBCASE("no near-unanimity falls back to the index") {
    // K4: four observers per pair, split two against two.
    auto r = truthful(complete_graph(4), {1, 2, 3, 4});
    r.set(0, {0, 1}, 1);
    r.set(2, {0, 1}, 1);
    auto d = aggregate_pair(r, {0, 1});
    CHECK(d.rule == Rule::index_fallback);
    CHECK(d.sign == -1);
  }
  SUBCASE("sole observer dictates") {
    // Windmill: 1 and 3 sit on different sails; only the hub sees both.
    auto r = truthful(windmill(7), {7, 1, 2, 3, 4, 5, 6});
    auto d = aggregate_pair(r, {1, 3});
    CHECK(d.rule == Rule::dictator);
    CHECK(d.dictator == 0);
    CHECK(d.sign == r.sign(0, {1, 3}));
    r.set(0, {1, 3}, 1);
    CHECK(aggregate_pair(r, {1, 3}).sign == 1);
  }
  SUBCASE("paths among the others override the dictator") {
    // Truthful reports: a path that settles a pair points the true way.
    auto r = truthful(supported_chain9(), iota_positions(9));
    for (Agent a = 0; a < 9; ++a)
      for (Agent b = a + 1; b < 9; ++b) {
        auto d = aggregate_pair(r, {a, b});
        if (d.rule == Rule::path_override) CHECK(d.sign == -1);  // truth: b above a
        if (d.rule == Rule::dictator) CHECK(d.dictator == r.observability().observers({a, b}).back());
      }
  }
  SUBCASE("unobserved pair") {
    auto r = truthful(line4(), {1, 2, 3, 4});
    auto d = aggregate_pair(r, {0, 3});
    CHECK(d.rule == Rule::none);
    CHECK(d.sign == 0);
  }
}

TEST_CASE("run_mechanism: scripted scenarios") {
  SUBCASE("truthful triangle") {
    auto out = run_mechanism(truthful(triangle(), {1, 2, 3}));
    CHECK(out.ranking.ranks() == std::vector<int>{1, 2, 3});
    CHECK_FALSE(out.trace.cyclic);
    CHECK_FALSE(out.trace.punished);
  }
  SUBCASE("hub creates a cycle and is punished") {
    // Theta: 1 < 2 < 3 < 4 < 0.
    auto r = truthful(windmill(5), {5, 1, 2, 3, 4});
    r.set(0, {1, 3}, 1);
    auto out = run_mechanism(r);
    CHECK(out.trace.cyclic);
    CHECK(out.trace.cycles == std::vector<std::vector<Agent>>{{1, 3, 2}});
    CHECK(out.trace.punished == 0);
    CHECK(out.ranking.rank(0) == 1);
    CHECK(out.ranking.ranks() == std::vector<int>{1, 2, 3, 4, 5});
  }
  SUBCASE("unsupported link is rejected with the link") {
    try {
      run_mechanism(truthful(pendant4(), {2, 3, 1, 4}));
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      CHECK(e.witness() == AgentPair{0, 3});
    }
    CHECK_NOTHROW(run_mechanism(truthful(pendant4(), {2, 3, 1, 4}), {.enforce_precondition = false}));
  }
  SUBCASE("trace invariants") {
    auto r = truthful(supported_chain9(), {3, 9, 1, 7, 2, 8, 4, 6, 5});
    auto out = run_mechanism(r);
    CHECK(out.trace.pairs.size() == 36);
    for (const auto& d : out.trace.pairs) {
      auto obs = r.observability().observers(d.pair);
      if (d.rule == Rule::dictator) {
        CHECK(obs.size() <= 2);
        CHECK(d.dictator == obs.back());
      }
      CHECK((d.sign == 0) == obs.empty());
    }
  }
}

TEST_CASE("truthful rankings extend the pooled closure") {
  Rng rng(17);
  for (const Graph& g : {supported_chain9(), windmill(7), windmill(8), complete_graph(5)}) {
    for (int round = 0; round < 100; ++round) {
      auto pos = iota_positions(g.size());
      rng.shuffle(pos);
      CharacteristicProfile theta(pos);
      auto r = truthful_reports(g, theta);
      auto ranking = run_mechanism(r).ranking;
      auto closure = transitive_closure(pooled_relation(r));
      for (auto [a, b] : closure.arcs()) REQUIRE(ranking.rank(a) > ranking.rank(b));
    }
  }
}

TEST_CASE("ex post efficiency on every supported graph up to six nodes") {
  for (int n = 3; n <= 6; ++n) {
    auto graphs = representatives(n, [](const Graph& g) { return all_links_supported(g).holds; });
    for (const auto& g : graphs) {
      auto res = check_ex_post_efficiency(g, MechanismKind::standard);
      REQUIRE(res.violations.empty());
      REQUIRE(res.profiles == static_cast<std::uint64_t>(n == 3 ? 6 : n == 4 ? 24 : n == 5 ? 120 : 720));
    }
  }
}

TEST_CASE("ex post IC holds exhaustively up to four nodes") {
  for (int n = 3; n <= 4; ++n)
    for_each_graph(n, true, [](const Graph& g) {
      if (!all_links_supported(g)) return;
      auto res = check_ex_post_ic(g, MechanismKind::standard);
      REQUIRE(res.violations.empty());
    });
}

TEST_CASE("ex post IC fails for the literal mechanism at five nodes") {
  // A deviator who is not the dictator of a pair can still flip it through
  // path override, and the resulting cycle punishes a truthful agent.
  const Graph g = two_hubs();
  REQUIRE(all_links_supported(g).holds);
  const CharacteristicProfile theta({1, 2, 3, 4, 5});
  auto r = truthful_reports(g, theta);
  auto base = run_mechanism(r);
  CHECK(base.ranking.rank(0) == 1);

  auto lie = r;
  lie.set(0, {2, 3}, 1);
  lie.set(0, {2, 4}, 1);
  lie.set(0, {3, 4}, 1);
  auto out = run_mechanism(lie);
  CHECK(out.trace.decision({2, 4}).rule == Rule::path_override);
  CHECK(out.trace.decision({2, 4}).sign == 1);
  CHECK(out.trace.cycles == std::vector<std::vector<Agent>>{{2, 4, 3}});
  CHECK(out.trace.punished == 1);
  CHECK(out.ranking.rank(0) == 2);

  auto res = check_ex_post_ic(g, MechanismKind::standard);
  REQUIRE(res.violations.size() == 1);
  CHECK(res.violations[0].verdict == Verdict::strict_gain);
  CHECK(replay(res.violations[0], MechanismKind::standard) == res.violations[0]);
}

TEST_CASE("punishment under unilateral deviation") {
  // Truthful profiles are never punished. Up to four nodes the punished agent
  // is always the deviator; at five nodes path override can shift the blame.
  for (int n = 3; n <= 4; ++n)
    for_each_graph(n, true, [&](const Graph& g) {
      if (!all_links_supported(g)) return;
      auto obs = std::make_shared<const Observability>(g);
      auto pos = iota_positions(n);
      do {
        auto r = truthful_reports(obs, CharacteristicProfile(pos));
        REQUIRE_FALSE(run_mechanism(r).trace.punished);
        for (Agent i = 0; i < n; ++i) {
          const std::size_t m = obs->pairs(i).size();
          for (std::uint64_t bits = 0; bits < (1ull << m); ++bits) {
            std::vector<Sign> row(m);
            for (std::size_t t = 0; t < m; ++t) row[t] = bits >> t & 1 ? 1 : -1;
            auto lie = r.with_report(i, row);
            auto out = run_mechanism(lie);
            if (out.trace.punished) REQUIRE(*out.trace.punished == i);
          }
        }
      } while (std::next_permutation(pos.begin(), pos.end()));
    });

  auto r = truthful(two_hubs(), {1, 2, 3, 4, 5});
  r.set(0, {2, 3}, 1);
  r.set(0, {2, 4}, 1);
  r.set(0, {3, 4}, 1);
  CHECK(run_mechanism(r).trace.punished == 1);  // agent 1 reported truthfully
}

TEST_CASE("run_bipartite_mechanism") {
  SUBCASE("star: centre's part on top, leaves by theta") {
    auto ranking = run_bipartite_mechanism(truthful(star_graph(3), {1, 4, 2, 3}));
    CHECK(ranking.rank(0) == 4);
    CHECK(ranking.order() == std::vector<Agent>{2, 3, 1, 0});
  }
  SUBCASE("four-cycle") {
    auto ranking = run_bipartite_mechanism(truthful(cycle_graph(4), {4, 1, 3, 2}));
    // Parts {0,2} above {1,3}; within parts by the witnesses' reports.
    CHECK(ranking.order() == std::vector<Agent>{1, 3, 2, 0});
  }
  SUBCASE("line") {
    auto ranking = run_bipartite_mechanism(truthful(line4(), {1, 2, 3, 4}));
    CHECK(ranking.order() == std::vector<Agent>{1, 3, 0, 2});
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(run_bipartite_mechanism(truthful(triangle(), {1, 2, 3})), InfeasibleError);
    CHECK_THROWS_AS(run_bipartite_mechanism(truthful(Graph(4, {{0, 1}, {2, 3}}), {1, 2, 3, 4})),
                    std::invalid_argument);
  }
}

TEST_CASE("bipartite mechanism: own rank ignores own report") {
  const std::vector<Graph> graphs{
      cycle_graph(10), path_graph(10), star_graph(4),
      Graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {0, 5}, {2, 7}, {4, 9}}),
      Graph(7, {{0, 4}, {0, 5}, {0, 6}, {1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {3, 6}}),
      Graph(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}})};
  Rng rng(23);
  for (const auto& g : graphs) {
    REQUIRE(is_bipartite(g).bipartite);
    auto obs = std::make_shared<const Observability>(g);
    for (int round = 0; round < 4; ++round) {
      auto pos = iota_positions(g.size());
      rng.shuffle(pos);
      auto r = truthful_reports(obs, CharacteristicProfile(pos));
      const auto base = run_bipartite_mechanism(r);
      for (Agent i = 0; i < g.size(); ++i) {
        const std::size_t m = obs->pairs(i).size();
        REQUIRE(m <= 16);
        for (std::uint64_t bits = 0; bits < (1ull << m); ++bits) {
          std::vector<Sign> row(m);
          for (std::size_t t = 0; t < m; ++t) row[t] = bits >> t & 1 ? 1 : -1;
          REQUIRE(run_bipartite_mechanism(r.with_report(i, row)).rank(i) == base.rank(i));
        }
      }
    }
  }
}

TEST_CASE("run_coarse_mechanism") {
  SUBCASE("conflicting self-reports share the bottom class") {
    // The pendant link 0-3 is observed only by its two members.
    auto r = truthful(pendant4(), {2, 3, 1, 4});
    r.set(0, {0, 3}, 1);  // 0 claims to be above 3, 3 says the opposite
    auto c = run_coarse_mechanism(r);
    REQUIRE(c.classes.size() == 3);
    CHECK(c.classes[0] == std::vector<Agent>{0, 3});
    CHECK(c.utility(0) == 2);
    CHECK(c.utility(3) == 2);
    // The rest is ordered efficiently above: 1 above 2 by theta.
    CHECK(c.rank(2) == 3);
    CHECK(c.rank(1) == 4);
  }
  SUBCASE("truthful triangle is all singletons") {
    auto c = run_coarse_mechanism(truthful(triangle(), {2, 3, 1}));
    CHECK(c.classes == std::vector<std::vector<Agent>>{{2}, {0}, {1}});
  }
  SUBCASE("precondition") {
    CHECK_THROWS_AS(run_coarse_mechanism(truthful(line4(), {1, 2, 3, 4})), InfeasibleError);
  }
  SUBCASE("a self-only link is not overturned through the members' other reports") {
    // Agent 0 claims 1 and 2 above 3, which chains 0 > 1 > 3 around the
    // pendant link; the link keeps the members' agreed order.
    auto r = truthful(pendant4(), {2, 1, 3, 4});
    r.set(0, {1, 3}, 1);
    r.set(0, {2, 3}, 1);
    auto c = run_coarse_mechanism(r);
    CHECK(c.rank(3) > c.rank(0));
    CHECK(c.utility(0) == 2);
  }
  SUBCASE("no profitable deviation on completely informative graphs up to four nodes") {
    int classes = 0;
    for (int n = 3; n <= 4; ++n) {
      std::set<EdgeMask> seen;
      for_each_graph(n, true, [&](const Graph& g) {
        if (!is_completely_informative(g) || !seen.insert(canonical_form(n, edge_mask(g))).second) return;
        ++classes;
        CHECK(check_ex_post_ic(g, MechanismKind::coarse).violations.empty());
      });
    }
    CHECK(classes == 7);
  }
  SUBCASE("five nodes: an outvoted lie still feeds a path override") {
    // Same defect as the standard mechanism at this size: agent 1's report
    // 2 > 0 loses the vote on (0,2) but still chains 2 > 0 > 4, which
    // settles (2,4) and (1,4) in its favour.
    const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}});
    auto r = check_ex_post_ic(g, MechanismKind::coarse);
    REQUIRE(r.violations.size() == 1);
    const auto& v = r.violations[0];
    CHECK(v.theta == CharacteristicProfile({4, 2, 1, 5, 3}));
    CHECK(v.coalition == std::vector<Agent>{1});
    CHECK(v.before[0] == 2);
    CHECK(v.after[0] == 3);
    CHECK(replay(v, MechanismKind::coarse) == v);
  }
}

TEST_CASE("strawmen") {
  auto r = truthful(pendant4(), {2, 3, 1, 4});
  CHECK(run_naive_efficient(r).ranks() == std::vector<int>{2, 3, 1, 4});
  CHECK(run_index_only(r).ranks() == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("mechanism runs are deterministic") {
  auto r = truthful(supported_chain9(), {9, 1, 8, 2, 7, 3, 6, 4, 5});
  r.set(3, {0, 4}, 1);
  r.set(5, {4, 6}, -1);
  auto a = run_mechanism(r);
  auto b = run_mechanism(r);
  CHECK(a.ranking == b.ranking);
  CHECK(a.trace == b.trace);
}
