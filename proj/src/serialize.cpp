#include "fbr/serialize.hpp"

#include <stdexcept>
#include <string>

namespace fbr {

Json to_json(const ReportProfile& reports) {
  Json list = Json::array();
  for (Agent i = 0; i < reports.size(); ++i) {
    Json pairs = Json::array();
    auto obs = reports.observability().pairs(i);
    auto signs = reports.report(i);
    for (std::size_t s = 0; s < obs.size(); ++s) pairs.push_back({obs[s].first, obs[s].second, int{signs[s]}});
    list.push_back({{"agent", i}, {"pairs", std::move(pairs)}});
  }
  return {{"n", reports.size()}, {"reports", std::move(list)}};
}

ReportProfile reports_from_json(const Json& doc, std::shared_ptr<const Observability> obs) {
  const int n = obs->size();
  if (doc.at("n").get<int>() != n)
    throw std::invalid_argument("report profile is for " + std::to_string(doc.at("n").get<int>()) +
                                " agents, graph has " + std::to_string(n));
  std::vector<std::vector<Sign>> signs(n);
  std::vector<char> seen(n, 0);
  for (const auto& entry : doc.at("reports")) {
    const Agent i = entry.at("agent").get<Agent>();
    if (i < 0 || i >= n || seen[i]) throw std::invalid_argument("bad or repeated agent in report profile");
    seen[i] = 1;
    signs[i].assign(obs->pairs(i).size(), 0);
    for (const auto& t : entry.at("pairs")) {
      const Agent j = t.at(0).get<Agent>(), k = t.at(1).get<Agent>();
      const int s = t.at(2).get<int>();
      if (j >= k) throw std::invalid_argument("report pairs must satisfy j < k");
      const int slot = j >= 0 && k < n ? obs->slot(i, {j, k}) : -1;
      if (slot < 0)
        throw std::invalid_argument("agent " + std::to_string(i) + " cannot observe pair " + to_string({j, k}));
      if (signs[i][slot] != 0) throw std::invalid_argument("duplicate pair in agent " + std::to_string(i) + "'s report");
      if (s != 1 && s != -1) throw std::invalid_argument("report signs must be +1 or -1");
      signs[i][slot] = static_cast<Sign>(s);
    }
    for (Sign s : signs[i])
      if (s == 0) throw std::invalid_argument("agent " + std::to_string(i) + " leaves an observable pair unreported");
  }
  for (Agent i = 0; i < n; ++i)
    if (!seen[i]) throw std::invalid_argument("agent " + std::to_string(i) + " has no report");
  return ReportProfile(std::move(obs), std::move(signs));
}

Json to_json(const Ranking& r) { return {{"ranks", r.ranks()}, {"worst_to_best", r.order()}}; }

Json to_json(const CoarseRanking& r) {
  const int n = [&] {
    int k = 0;
    for (const auto& c : r.classes) k += static_cast<int>(c.size());
    return k;
  }();
  Json ranks = Json::array(), utility = Json::array();
  for (Agent a = 0; a < n; ++a) {
    ranks.push_back(r.rank(a));
    utility.push_back(r.utility(a));
  }
  return {{"classes_worst_to_best", r.classes}, {"ranks", ranks}, {"utility", utility}};
}

Json to_json(const MechanismTrace& t) {
  Json pairs = Json::array();
  for (const auto& d : t.pairs) {
    Json p = {{"i", d.pair.first}, {"j", d.pair.second}, {"sign", int{d.sign}}, {"rule", to_string(d.rule)}};
    if (d.dictator) p["dictator"] = *d.dictator;
    pairs.push_back(std::move(p));
  }
  Json out = {{"pairs", std::move(pairs)}, {"cyclic", t.cyclic}, {"cycles", t.cycles}};
  out["punished"] = t.punished ? Json(*t.punished) : Json(nullptr);
  return out;
}

Json to_json(const CharacteristicProfile& theta) { return theta.positions(); }

Json to_json(const DeviationReport& d) {
  Json edges = Json::array();
  for (const auto& e : d.graph.edges()) edges.push_back({e.first, e.second});
  Json members = Json::array();
  for (std::size_t m = 0; m < d.coalition.size(); ++m) {
    Json orig = Json::array(), dev = Json::array();
    for (Sign s : d.original[m]) orig.push_back(int{s});
    for (Sign s : d.deviant[m]) dev.push_back(int{s});
    members.push_back({{"agent", d.coalition[m]},
                       {"original", std::move(orig)},
                       {"deviant", std::move(dev)},
                       {"before", d.before[m]},
                       {"after", d.after[m]}});
  }
  return {{"graph", {{"n", d.graph.size()}, {"edges", std::move(edges)}}},
          {"theta", to_json(d.theta)},
          {"coalition", std::move(members)},
          {"verdict", to_string(d.verdict)}};
}

Json to_json(const EfficiencyViolation& v) {
  return {{"theta", to_json(v.theta)},
          {"higher", v.higher},
          {"lower", v.lower},
          {"position_higher", v.position_higher},
          {"position_lower", v.position_lower}};
}

Json to_json(const NetworkSummary& s) {
  return {{"households", s.households},         {"giant_share", s.giant_share},
          {"average_degree", s.average_degree}, {"density", s.density},
          {"average_clustering", s.average_clustering}, {"average_distance", s.average_distance},
          {"information", s.information},       {"transitivity", s.transitivity}};
}

Json to_json(const InformationDecomposition& d) {
  return {{"total", d.total}, {"within", d.within}, {"across", d.across}, {"remainder", d.remainder}};
}

Json to_json(const CspCertificate& c) { return {{"nodes", c.nodes}, {"depth", c.depth}}; }

Json to_json(const McEstimate& m) {
  return {{"estimate", m.estimate},
          {"standard_error", m.standard_error},
          {"trials", m.trials},
          {"successes", m.successes},
          {"seed", m.seed}};
}

Json verifier_report(const IcResult& r) {
  Json v = Json::array();
  for (const auto& d : r.violations) v.push_back(to_json(d));
  return {{"checked", {{"profiles", r.profiles}, {"deviations", r.deviations}}},
          {"violations", std::move(v)},
          {"certificate", nullptr}};
}

Json verifier_report(const EfficiencyResult& r) {
  Json v = Json::array();
  for (const auto& d : r.violations) v.push_back(to_json(d));
  return {{"checked", {{"profiles", r.profiles}}}, {"violations", std::move(v)}, {"certificate", nullptr}};
}

}  // namespace fbr
