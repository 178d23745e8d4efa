// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fbr/catalog.hpp"
#include "fbr/csp.hpp"
#include "fbr/enumerate.hpp"
#include "fbr/homophily.hpp"
#include "fbr/netstats.hpp"
#include "fbr/verify.hpp"
#include "oracles.hpp"

#ifndef FBR_CLI_PATH
#error "FBR_CLI_PATH must name the command-line binary"
#endif

using namespace fbr;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  failed: " << what << "\n";
    }
  }
};

// Isomorphism representatives of connected graphs on n nodes.
void for_each_class(int n, const std::function<void(const Graph&)>& fn) {
  std::set<EdgeMask> seen;
  for_each_graph(n, true, [&](const Graph& g) {
    if (seen.insert(canonical_form(n, edge_mask(g))).second) fn(g);
  });
}

std::string edges_of(const Graph& g) {
  std::string s;
  for (const auto& e : g.edges()) s += std::to_string(e.first) + "-" + std::to_string(e.second) + " ";
  if (!s.empty()) s.pop_back();
  return s;
}

// 1. Complete informativeness matches the brute-force closure over all
// characteristic profiles.
void informative_oracle(Outcome& out) {
  std::uint64_t graphs = 0, profiles = 0;
  for (int n = 2; n <= 6; ++n)
    for_each_graph(n, true, [&](const Graph& g) {
      ++graphs;
      std::vector<int> pos(n);
      std::iota(pos.begin(), pos.end(), 1);
      bool total_always = true;
      do {
        ++profiles;
        if (!oracle::truthful_closure_total(g, pos)) {
          total_always = false;
          break;
        }
      } while (std::next_permutation(pos.begin(), pos.end()));
      if (is_completely_informative(g).holds != total_always) out.require(false, "disagreement on " + edges_of(g));
    });
  out.detail << "  " << graphs << " labelled connected graphs, " << profiles << " profiles closed\n";
}

// 2. Incentive compatibility and efficiency of the friend-based mechanism on
// graphs with every link supported.
void sufficiency(Outcome& out) {
  int graphs = 0, ic_failures = 0;
  std::uint64_t deviations = 0, violations = 0, efficiency_failures = 0;
  std::string example;
  VerifyOptions all;
  all.list_all = true;
  for (int n = 3; n <= 5; ++n)
    for_each_graph(n, true, [&](const Graph& g) {
      if (!all_links_supported(g).holds) return;
      ++graphs;
      auto ic = check_ex_post_ic(g, MechanismKind::standard, all);
      deviations += ic.deviations;
      violations += ic.violations.size();
      if (!ic.violations.empty()) {
        ++ic_failures;
        if (example.empty()) {
          const auto& v = ic.violations.front();
          std::ostringstream s;
          s << "graph " << edges_of(g) << ", theta";
          for (int p : v.theta.positions()) s << ' ' << p;
          s << ", agent " << v.coalition[0] << " rank " << v.before[0] << " -> " << v.after[0];
          example = s.str();
        }
      }
      efficiency_failures += check_ex_post_efficiency(g, MechanismKind::standard).violations.size();
    });
  out.require(efficiency_failures == 0, "ex post efficiency");
  out.require(ic_failures == 0, std::to_string(ic_failures) + " of " + std::to_string(graphs) +
                                    " graphs admit a profitable unilateral deviation");
  out.detail << "  " << graphs << " labelled connected graphs with all links supported, " << deviations
             << " deviations, " << violations << " profitable\n";
  out.detail << "  efficiency violations: " << efficiency_failures << "\n";
  if (!example.empty()) out.detail << "  first counterexample: " << example << "\n";
}

// 3. Every graph with an unsupported link defeats each mechanism family.
void necessity(Outcome& out) {
  int graphs = 0;
  std::array<int, 3> witnessed{};
  const std::array<MechanismKind, 3> kinds{MechanismKind::standard, MechanismKind::naive, MechanismKind::index};
  for (int n = 2; n <= 5; ++n)
    for_each_graph(n, true, [&](const Graph& g) {
      if (all_links_supported(g).holds) return;
      ++graphs;
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        auto w = necessity_witness(g, kinds[k]);
        if (w && (w->inefficiency || w->deviation)) ++witnessed[k];
        else out.require(false, std::string("no witness for ") + to_string(kinds[k]) + " on " + edges_of(g));
      }
    });
  out.detail << "  " << graphs << " labelled connected graphs with an unsupported link; witnesses (standard, naive, "
             << "index): " << witnessed[0] << ", " << witnessed[1] << ", " << witnessed[2] << "\n";
}

// 4. Fewest edges giving every pair a common friend, and the unique minimizer.
void minimality(Outcome& out) {
  for (int n = 3; n <= 7; ++n) {
    auto r = min_edges_for_all_pairs_supported(n);
    const int expected = n % 2 ? 3 * (n - 1) / 2 : 3 * n / 2 - 1;
    const auto windmill_form = canonical_form(n, edge_mask(windmill(n)));
    out.require(r.min_edges == expected, "n=" + std::to_string(n) + " minimum " + std::to_string(r.min_edges));
    out.require(r.canonical_forms.size() == 1 && r.canonical_forms[0] == windmill_form,
                "n=" + std::to_string(n) + " minimizer is not the windmill alone");
    out.detail << "  n=" << n << ": " << r.min_edges << " edges, " << r.canonical_forms.size() << " class, "
               << r.labelled_minimizers << " labelled, " << r.graphs_scanned << " graphs scanned\n";
  }
}

// 5. The comparison network is connected exactly when g is not bipartite.
void comparison_connectivity(Outcome& out) {
  std::uint64_t graphs = 0;
  for (int n = 2; n <= 6; ++n)
    for_each_graph(n, true, [&](const Graph& g) {
      ++graphs;
      std::vector<std::pair<Agent, Agent>> edges;
      for (const auto& e : comparison_network(g).edges) edges.emplace_back(e.first, e.second);
      const auto d = oracle::bfs(Graph(n, edges), 0);
      const bool h_connected = std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
      if (h_connected == is_bipartite(g).bipartite) out.require(false, "mismatch on " + edges_of(g));
    });
  out.detail << "  " << graphs << " labelled connected graphs\n";
}

// 6. No strategy-proof efficient mechanism on the triangle.
void triangle_sp(Outcome& out) {
  auto reduced = solve_reduced_triangle(EfficiencyPins::all_truthful);
  auto direct = solve_direct_triangle(EfficiencyPins::all_truthful);
  auto reduced_free = solve_reduced_triangle(EfficiencyPins::none);
  auto direct_free = solve_direct_triangle(EfficiencyPins::none);
  out.require(!reduced.satisfiable, "reduced model satisfiable with efficiency");
  out.require(!direct.satisfiable, "direct model satisfiable with efficiency");
  out.require(reduced.certificate.nodes >= 1 && direct.certificate.nodes >= 1, "missing search certificate");
  out.require(reduced_free.satisfiable && check_reduced_witness(reduced_free.table, EfficiencyPins::none),
              "relaxed reduced model");
  out.require(direct_free.satisfiable && check_direct_witness(direct_free.table, EfficiencyPins::none),
              "relaxed direct model");
  out.detail << "  reduced: UNSAT, " << reduced.certificate.nodes << " nodes, depth " << reduced.certificate.depth
             << "; relaxed SAT after " << reduced_free.certificate.nodes << " nodes\n";
  out.detail << "  direct: UNSAT, " << direct.certificate.nodes << " nodes, depth " << direct.certificate.depth
             << "; relaxed SAT after " << direct_free.certificate.nodes << " nodes\n";
}

// 7. The triangle's two-agent deviation; the two-sided mechanism on
// bipartite graphs up to eight nodes.
void group_and_bipartite(Outcome& out) {
  VerifyOptions o;
  o.theta = CharacteristicProfile({1, 2, 3});
  o.list_all = true;
  auto group = find_group_deviation(triangle(), MechanismKind::standard, 2, o);
  const std::vector<Sign> lie{-1, 1, 1};  // 1 > 0 > 2 on (0,1), (0,2), (1,2)
  auto it = std::find_if(group.violations.begin(), group.violations.end(), [&](const DeviationReport& d) {
    return d.coalition == std::vector<Agent>{0, 1} && d.deviant[0] == lie && d.deviant[1] == lie;
  });
  out.require(it != group.violations.end(), "triangle coalition deviation not found");
  if (it != group.violations.end()) {
    out.require(it->before == std::vector<int>{1, 2} && it->after == std::vector<int>{2, 3},
                "triangle coalition payoffs");
    out.detail << "  triangle, theta 1 2 3: agents 0 and 1 both report 1 > 0 > 2, ranks 1,2 -> 2,3\n";
  }

  std::uint64_t deviations = 0, violations = 0;
  int classes = 0;
  for (int n = 2; n <= 6; ++n)
    for_each_class(n, [&](const Graph& g) {
      if (!is_bipartite(g).bipartite) return;
      ++classes;
      auto r = check_ex_post_ic(g, MechanismKind::bipartite);
      deviations += r.deviations;
      violations += r.violations.size();
    });
  out.detail << "  bipartite classes n<=6: " << classes << ", " << deviations << " deviations\n";
  const std::vector<std::pair<std::string, Graph>> larger{
      {"path 7", path_graph(7)},
      {"spider 7", Graph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}})},
      {"path 8", path_graph(8)},
      {"cycle 8", cycle_graph(8)},
      {"ladder 2x4", Graph(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}})},
  };
  for (const auto& [name, g] : larger) {
    auto r = check_ex_post_ic(g, MechanismKind::bipartite);
    deviations += r.deviations;
    violations += r.violations.size();
    out.detail << "  " << name << ": " << r.deviations << " deviations, " << r.violations.size() << " violations\n";
  }
  out.require(violations == 0, std::to_string(violations) + " bipartite violations");
}

// 8. Homophily curve and Monte Carlo reproducibility.
void homophily(Outcome& out) {
  const auto etas = linear_grid(0, 0.1485, 298);
  const auto rows = homophily_curve(0.15, 200, etas);
  auto best = std::max_element(rows.begin(), rows.end(),
                               [](const CurveRow& a, const CurveRow& b) { return a.pr_closed < b.pr_closed; });
  out.require(best->eta > 0.05 && best->eta < 0.12, "maximum outside (0.05, 0.12)");
  out.require(std::abs(rows.front().pr_closed - 0.11) <= 0.01, "value at eta = 0");
  out.require(rows.back().eta == 0.1485 && rows.back().pr_closed < 1e-6, "value at eta = 0.1485");
  out.detail << "  argmax eta " << best->eta << " (" << best->pr_closed << "), eta=0: " << rows.front().pr_closed
             << ", eta=0.1485: " << rows.back().pr_closed << "\n";

  const IslandsModel m{20, 0.3, 0.3};
  auto a = mc_complete_ranking(m, 100000, 2024, 1);
  auto again = mc_complete_ranking(m, 100000, 2024, 3);
  auto other = mc_complete_ranking(m, 100000, 987654321, 1);
  out.require(a.successes == again.successes && a.estimate == again.estimate, "MC not reproducible");
  const double se = std::sqrt(a.standard_error * a.standard_error + other.standard_error * other.standard_error);
  out.require(std::abs(a.estimate - other.estimate) <= 3 * se, "disjoint seeds disagree");
  out.detail << "  MC n=20 p=0.3, 1e5 trials: " << a.estimate << " (seed 2024, twice), " << other.estimate
             << " (disjoint seed), 3 SE = " << 3 * se << "\n";
}

// 9. Clique arithmetic.
void clique(Outcome& out) {
  const Graph k7 = complete_graph(7);
  const auto obs = comparison_observations(k7);
  const auto unique = comparison_network(k7).edges.size();
  const auto repeated = repeated_observation_count(k7);
  out.require(obs == 105 && unique == 21 && repeated == 84, "K7 counts");
  out.detail << "  K7: " << obs << " observations, " << unique << " unique, " << repeated << " repeated\n";
}

std::string run(const std::string& args, int& status) {
  const std::string cmd = std::string(FBR_CLI_PATH) + " " + args + " 2>&1";
  std::string text;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return text;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), got);
  status = pclose(pipe);
  return text;
}

// 10. Byte-identical CLI output across runs and worker counts.
void determinism(Outcome& out) {
  struct Case {
    std::string args;
    bool jobs;
  };
  const std::vector<Case> cases{
      {"analyze --graph social7 --graph chain9 --graph windmill9 --format json", true},
      {"analyze --graph complete7 --format csv", true},
      {"check --graph pendant4", false},
      {"mechanism --graph windmill5 --seed 7", false},
      {"mechanism --graph pendant4 --theta 2,3,1,4 --kind naive --deviate 0:1>2 --deviate 0:2>3 "
       "--deviate 0:1>3 --deviate 0:0>3",
       false},
      {"verify --mode ic --graph windmill5 --list-all", true},
      {"verify --mode ic --graph windmill7 --samples 3000 --seed 11 --list-all", true},
      {"verify --mode group --graph triangle --list-all", true},
      {"verify --mode sp-triangle --pins none", false},
      {"homophily --eta-grid 0:0.1485:12 --trials 3000 --seed 5", true},
      {"windmill --n 9", false},
  };
  for (const auto& c : cases) {
    int s1 = 0, s2 = 0, s3 = 0;
    // Arguments contain '>' so they go through a quoted word list.
    std::string args;
    std::istringstream words(c.args);
    for (std::string w; words >> w;) args += "'" + w + "' ";
    const std::string first = run(args, s1);
    const std::string second = run(args, s2);
    bool same = first == second && s1 == s2;
    if (c.jobs) same = same && run(args + "--jobs 3", s3) == first && s3 == s1;
    out.require(same, "output differs: fbr " + c.args);
    out.require(!first.empty(), "no output: fbr " + c.args);
    out.detail << "  " << (same ? "same" : "DIFFERENT") << " (" << first.size() << " bytes, exit "
               << (s1 >> 8) << (c.jobs ? ", jobs 1 and 3" : "") << "): fbr " << c.args << "\n";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"complete informativeness matches the closure oracle (n <= 6)", informative_oracle},
      {"friend-based mechanism is ex post IC and efficient with all links supported (n <= 5)", sufficiency},
      {"every graph with an unsupported link has a failure witness (n <= 5)", necessity},
      {"windmill is the unique sparsest all-pairs-supported graph (n = 3..7)", minimality},
      {"comparison network connected iff graph not bipartite (n <= 6)", comparison_connectivity},
      {"no strategy-proof efficient mechanism on the triangle", triangle_sp},
      {"triangle group deviation; two-sided mechanism IC on bipartite graphs (n <= 8)", group_and_bipartite},
      {"homophily curve shape and Monte Carlo reproducibility", homophily},
      {"K7 comparison arithmetic", clique},
      {"CLI output is byte-identical across runs and --jobs", determinism},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[c].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !out.pass;
    char head[64];
    std::snprintf(head, sizeof head, "%s %2zu (%.1fs) ", out.pass ? "PASS" : "FAIL", c + 1, secs);
    std::cout << head << criteria[c].first << "\n" << out.detail.str() << std::flush;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
