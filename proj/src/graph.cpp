#include "fbr/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "fbr/enumerate.hpp"

namespace fbr {

std::string to_string(const AgentPair& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

Graph::Graph(int n, std::span<const std::pair<Agent, Agent>> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one agent, got n=" + std::to_string(n));
  matrix_.assign(static_cast<std::size_t>(n) * n, 0);
  adjacency_.resize(n);
  for (auto [a, b] : edges) {
    const std::string pair = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge " + pair + " out of range for n=" + std::to_string(n));
    if (a == b) throw std::invalid_argument("self-loop " + pair);
    if (adjacent(a, b)) continue;
    matrix_[static_cast<std::size_t>(a) * n + b] = 1;
    matrix_[static_cast<std::size_t>(b) * n + a] = 1;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    edges_.push_back(AgentPair::of(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

Graph::Graph(int n, std::initializer_list<std::pair<Agent, Agent>> edges)
    : Graph(n, std::span<const std::pair<Agent, Agent>>(edges.begin(), edges.size())) {}

Graph Graph::relabeled(std::span<const Agent> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::pair<Agent, Agent>> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.emplace_back(perm[e.first], perm[e.second]);
  return Graph(n_, out);
}

Graph build_graph(int n, std::span<const std::pair<Agent, Agent>> edges) { return Graph(n, edges); }

std::vector<Agent> common_friends(const Graph& g, Agent i, Agent j) {
  if (i == j) throw std::invalid_argument("common_friends needs two distinct agents, got " + std::to_string(i) + " twice");
  std::vector<Agent> out;
  for (Agent k : g.neighbors(i))
    if (k != j && g.adjacent(j, k)) out.push_back(k);
  return out;
}

namespace {

bool has_common_friend(const Graph& g, Agent i, Agent j) {
  const Agent small = g.degree(i) <= g.degree(j) ? i : j;
  const Agent other = small == i ? j : i;
  for (Agent k : g.neighbors(small))
    if (k != other && g.adjacent(other, k)) return true;
  return false;
}

template <class Pred>
PairCheck scan_pairs(const Graph& g, Pred ok) {
  for (Agent i = 0; i < g.size(); ++i)
    for (Agent j = i + 1; j < g.size(); ++j)
      if (!ok(i, j)) return {false, AgentPair{i, j}};
  return {};
}

}  // namespace

PairCheck is_completely_informative(const Graph& g) {
  return scan_pairs(g, [&](Agent i, Agent j) { return g.adjacent(i, j) || has_common_friend(g, i, j); });
}

PairCheck all_pairs_supported(const Graph& g) {
  return scan_pairs(g, [&](Agent i, Agent j) { return has_common_friend(g, i, j); });
}

PairCheck all_links_supported(const Graph& g) {
  for (const auto& e : g.edges())
    if (!has_common_friend(g, e.first, e.second)) return {false, e};
  return {};
}

Graph ComparisonNetwork::as_graph() const {
  std::vector<std::pair<Agent, Agent>> list;
  list.reserve(edges.size());
  for (const auto& e : edges) list.emplace_back(e.first, e.second);
  return Graph(n, list);
}

ComparisonNetwork comparison_network(const Graph& g) {
  const int n = g.size();
  ComparisonNetwork h;
  h.n = n;
  // Each agent k witnesses every pair of its neighbours.
  std::vector<std::vector<Agent>> witness(static_cast<std::size_t>(n) * n);
  for (Agent k = 0; k < n; ++k) {
    auto nb = g.neighbors(k);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        witness[static_cast<std::size_t>(nb[a]) * n + nb[b]].push_back(k);
  }
  for (Agent i = 0; i < n; ++i)
    for (Agent j = i + 1; j < n; ++j) {
      auto& w = witness[static_cast<std::size_t>(i) * n + j];
      if (w.empty()) continue;
      h.edges.push_back({i, j});
      h.witnesses.push_back(std::move(w));
    }
  return h;
}

std::vector<int> component_labels(const Graph& g) {
  std::vector<int> label(g.size(), -1);
  int next = 0;
  for (Agent s = 0; s < g.size(); ++s) {
    if (label[s] >= 0) continue;
    std::queue<Agent> q;
    q.push(s);
    label[s] = next;
    while (!q.empty()) {
      Agent u = q.front();
      q.pop();
      for (Agent v : g.neighbors(u))
        if (label[v] < 0) {
          label[v] = next;
          q.push(v);
        }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

Bipartition is_bipartite(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("bipartiteness test requires a connected graph");
  std::vector<int> colour(g.size(), -1);
  std::queue<Agent> q;
  colour[0] = 0;
  q.push(0);
  Bipartition out;
  out.bipartite = true;
  while (!q.empty()) {
    Agent u = q.front();
    q.pop();
    for (Agent v : g.neighbors(u)) {
      if (colour[v] < 0) {
        colour[v] = 1 - colour[u];
        q.push(v);
      } else if (colour[v] == colour[u] && out.bipartite) {
        out.bipartite = false;
        out.odd_edge = AgentPair::of(u, v);
      }
    }
  }
  if (!out.bipartite) return out;
  for (Agent a = 0; a < g.size(); ++a) (colour[a] == 0 ? out.part_a : out.part_b).push_back(a);
  return out;
}

Component induced_subgraph(const Graph& g, std::span<const Agent> members) {
  std::vector<Agent> remap(g.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) remap[members[i]] = static_cast<Agent>(i);
  std::vector<std::pair<Agent, Agent>> edges;
  for (const auto& e : g.edges())
    if (remap[e.first] >= 0 && remap[e.second] >= 0) edges.emplace_back(remap[e.first], remap[e.second]);
  return {Graph(static_cast<int>(members.size()), edges), {members.begin(), members.end()}};
}

Component giant_component(const Graph& g) {
  auto labels = component_labels(g);
  const int count = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<int> sizes(count, 0);
  for (int l : labels) ++sizes[l];
  // Labels follow the smallest member, so the first maximum wins ties.
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<Agent> members;
  for (Agent a = 0; a < g.size(); ++a)
    if (labels[a] == best) members.push_back(a);
  return induced_subgraph(g, members);
}

Graph windmill(int n) {
  if (n < 3) throw std::invalid_argument("windmill needs n >= 3, got " + std::to_string(n));
  std::vector<std::pair<Agent, Agent>> edges;
  for (Agent a = 1; a < n; ++a) edges.emplace_back(0, a);
  const int paired = (n % 2 == 1) ? n - 1 : n - 4;  // nodes 1..paired form two-node sails
  for (Agent a = 1; a + 1 <= paired; a += 2) edges.emplace_back(a, a + 1);
  if (n % 2 == 0) {
    edges.emplace_back(n - 3, n - 2);
    edges.emplace_back(n - 2, n - 1);
  }
  return Graph(n, edges);
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d(g.size());
  for (Agent a = 0; a < g.size(); ++a) d[a] = g.degree(a);
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

MinimalSupportedGraphs min_edges_for_all_pairs_supported(int n, int jobs) {
  if (n < 3 || n > 7)
    throw std::invalid_argument("exhaustive search is limited to 3 <= n <= 7 (2^" +
                                std::to_string(pair_count(std::max(n, 0))) + " graphs otherwise); got n=" +
                                std::to_string(n));
  const int pairs = pair_count(n);
  const std::uint64_t total = std::uint64_t{1} << pairs;

  struct Partial {
    int best = 1 << 30;
    std::vector<EdgeMask> minimizers;
  };
  constexpr int chunks = 16;
  std::vector<Partial> partial(chunks);

  parallel_chunks(total, chunks, [&](int chunk, std::uint64_t begin, std::uint64_t end) {
    Partial& out = partial[chunk];
    std::vector<std::uint32_t> nb(n);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      const int edges = __builtin_popcountll(mask);
      if (edges > out.best) continue;
      std::fill(nb.begin(), nb.end(), 0u);
      for (int p = 0; p < pairs; ++p)
        if (mask >> p & 1) {
          auto e = pair_at(p);
          nb[e.first] |= 1u << e.second;
          nb[e.second] |= 1u << e.first;
        }
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n; ++j)
          if ((nb[i] & nb[j]) == 0) {
            ok = false;
            break;
          }
      if (!ok) continue;
      if (edges < out.best) {
        out.best = edges;
        out.minimizers.clear();
      }
      out.minimizers.push_back(mask);
    }
  }, jobs);

  MinimalSupportedGraphs result;
  result.n = n;
  result.graphs_scanned = total;
  int best = 1 << 30;
  for (const auto& p : partial) best = std::min(best, p.best);
  result.min_edges = best;
  std::set<EdgeMask> forms;
  for (const auto& p : partial) {
    if (p.best != best) continue;
    result.labelled_minimizers += p.minimizers.size();
    for (EdgeMask m : p.minimizers) forms.insert(canonical_form(n, m));
  }
  result.canonical_forms.assign(forms.begin(), forms.end());
  return result;
}

}  // namespace fbr
