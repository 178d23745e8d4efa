#include "fbr/netstats.hpp"

#include <cstdio>
#include <queue>
#include <vector>

namespace fbr {

namespace {

bool share_neighbour(const Graph& g, Agent i, Agent j) {
  for (Agent k : g.neighbors(i))
    if (k != j && g.adjacent(j, k)) return true;
  return false;
}

double pairs_of(double k) { return k * (k - 1) / 2; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

NetworkSummary summarize(const Graph& g) {
  const int n = g.size();
  NetworkSummary s;
  s.households = n;
  s.average_degree = 2.0 * static_cast<double>(g.edge_count()) / n;
  s.density = n > 1 ? static_cast<double>(g.edge_count()) / pairs_of(n) : 0.0;

  double local_sum = 0, closed = 0, triples = 0;
  for (Agent i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    const double d = static_cast<double>(nb.size());
    if (nb.size() < 2) continue;
    int links = 0;
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) links += g.adjacent(nb[a], nb[b]);
    local_sum += links / pairs_of(d);
    closed += links;
    triples += pairs_of(d);
  }
  s.average_clustering = local_sum / n;
  s.transitivity = triples > 0 ? closed / triples : 0.0;

  auto giant = giant_component(g);
  const Graph& gc = giant.graph;
  const int k = gc.size();
  s.giant_share = static_cast<double>(k) / n;
  if (k > 1) {
    double total = 0;
    std::vector<int> dist(k);
    for (Agent src = 0; src < k; ++src) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[src] = 0;
      std::queue<Agent> q;
      q.push(src);
      while (!q.empty()) {
        Agent u = q.front();
        q.pop();
        for (Agent v : gc.neighbors(u))
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            q.push(v);
          }
      }
      for (Agent dst = src + 1; dst < k; ++dst) total += dist[dst];
    }
    s.average_distance = total / pairs_of(k);
    s.information = static_cast<double>(comparison_network(gc).edges.size()) / pairs_of(k);
  }
  return s;
}

Graph supported_subgraph(const Graph& g, bool fixed_point) {
  Graph current = g;
  while (true) {
    std::vector<std::pair<Agent, Agent>> kept;
    for (const auto& e : current.edges())
      if (share_neighbour(current, e.first, e.second)) kept.emplace_back(e.first, e.second);
    Graph next(current.size(), kept);
    const bool stable = next.edge_count() == current.edge_count();
    current = std::move(next);
    if (!fixed_point || stable) return current;
  }
}

InformationDecomposition decompose_information(const Graph& g) {
  const Graph s = supported_subgraph(g);
  InformationDecomposition d;
  for (const auto& e : comparison_network(g).edges) {
    ++d.total;
    const bool common = share_neighbour(s, e.first, e.second);
    if (common && s.adjacent(e.first, e.second)) ++d.within;
    else if (common) ++d.across;
    else ++d.remainder;
  }
  return d;
}

std::uint64_t comparison_observations(const Graph& g) {
  std::uint64_t total = 0;
  for (Agent i = 0; i < g.size(); ++i) {
    const std::uint64_t d = g.degree(i);
    total += d > 1 ? d * (d - 1) / 2 : 0;
  }
  return total;
}

std::uint64_t repeated_observation_count(const Graph& g) {
  return comparison_observations(g) - comparison_network(g).edges.size();
}

std::string summary_csv_header() {
  return "network,households,giant_share,average_degree,density,average_clustering,average_distance,information,"
         "transitivity,comparisons,within,across,remainder,repeated";
}

std::string summary_csv_row(const std::string& name, const NetworkSummary& s, const InformationDecomposition& d,
                            std::uint64_t repeated) {
  return name + "," + std::to_string(s.households) + "," + fmt(s.giant_share) + "," + fmt(s.average_degree) + "," +
         fmt(s.density) + "," + fmt(s.average_clustering) + "," + fmt(s.average_distance) + "," +
         fmt(s.information) + "," + fmt(s.transitivity) + "," + std::to_string(d.total) + "," +
         std::to_string(d.within) + "," + std::to_string(d.across) + "," + std::to_string(d.remainder) + "," +
         std::to_string(repeated);
}

}  // namespace fbr
