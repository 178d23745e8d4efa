#include "fbr/enumerate.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace fbr {

AgentPair pair_at(int index) {
  int j = 1;
  while ((j + 1) * j / 2 <= index) ++j;
  return {index - j * (j - 1) / 2, j};
}

Graph graph_from_mask(int n, EdgeMask mask) {
  std::vector<std::pair<Agent, Agent>> edges;
  for (int p = 0; p < pair_count(n); ++p)
    if (mask >> p & 1) {
      auto e = pair_at(p);
      edges.emplace_back(e.first, e.second);
    }
  return Graph(n, edges);
}

EdgeMask edge_mask(const Graph& g) {
  if (pair_count(g.size()) > 64) throw std::invalid_argument("graph too large for an edge mask");
  EdgeMask m = 0;
  for (const auto& e : g.edges()) m |= EdgeMask{1} << pair_index(e.first, e.second);
  return m;
}

std::vector<std::uint32_t> neighbour_masks(int n, EdgeMask mask) {
  std::vector<std::uint32_t> nb(n, 0);
  for (int p = 0; p < pair_count(n); ++p)
    if (mask >> p & 1) {
      auto e = pair_at(p);
      nb[e.first] |= 1u << e.second;
      nb[e.second] |= 1u << e.first;
    }
  return nb;
}

bool mask_connected(int n, EdgeMask mask) {
  auto nb = neighbour_masks(n, mask);
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (int a = 0; a < n; ++a)
      if (frontier >> a & 1) next |= nb[a];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (n == 32 ? ~0u : (1u << n) - 1);
}

EdgeMask canonical_form(int n, EdgeMask mask) {
  if (n > 8) throw std::invalid_argument("canonical_form enumerates n! permutations; n <= 8 only");
  std::vector<AgentPair> edges;
  for (int p = 0; p < pair_count(n); ++p)
    if (mask >> p & 1) edges.push_back(pair_at(p));
  std::vector<Agent> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  EdgeMask best = mask;
  do {
    EdgeMask m = 0;
    for (const auto& e : edges) m |= EdgeMask{1} << pair_index(perm[e.first], perm[e.second]);
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void for_each_graph(int n, bool connected_only, const std::function<void(const Graph&)>& fn) {
  if (n < 1 || n > 8) throw std::invalid_argument("for_each_graph supports 1 <= n <= 8");
  const EdgeMask total = EdgeMask{1} << pair_count(n);
  for (EdgeMask m = 0; m < total; ++m) {
    if (connected_only && !mask_connected(n, m)) continue;
    fn(graph_from_mask(n, m));
  }
}

void parallel_chunks(std::uint64_t count, int chunks,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& body, int workers) {
  chunks = std::max(1, chunks);
  auto bounds = [&](int c) { return count * static_cast<std::uint64_t>(c) / static_cast<std::uint64_t>(chunks); };
  workers = std::clamp(workers, 1, chunks);
  if (workers == 1) {
    for (int c = 0; c < chunks; ++c) body(c, bounds(c), bounds(c + 1));
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int c = w; c < chunks; c += workers) body(c, bounds(c), bounds(c + 1));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fbr
