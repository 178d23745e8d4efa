#include "fbr/relation.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace fbr {

ComparisonRelation::ComparisonRelation(int n)
    : n_(n), arc_(static_cast<std::size_t>(n) * n, 0), tag_(static_cast<std::size_t>(n) * n, -1) {
  if (n < 0) throw std::invalid_argument("negative relation size");
}

void ComparisonRelation::add_arc(Agent above, Agent below, int tag) {
  if (above == below) throw std::invalid_argument("self-arc on agent " + std::to_string(above));
  if (above < 0 || below < 0 || above >= n_ || below >= n_) throw std::invalid_argument("arc endpoint out of range");
  if (has_arc(below, above))
    throw std::invalid_argument("arc " + std::to_string(above) + ">" + std::to_string(below) +
                                " conflicts with the reverse arc");
  if (!has_arc(above, below)) ++arcs_;
  arc_[index(above, below)] = 1;
  tag_[index(above, below)] = static_cast<std::int8_t>(tag);
}

void ComparisonRelation::remove_arc(Agent above, Agent below) {
  if (!has_arc(above, below)) return;
  --arcs_;
  arc_[index(above, below)] = 0;
  tag_[index(above, below)] = -1;
}

std::vector<std::pair<Agent, Agent>> ComparisonRelation::arcs() const {
  std::vector<std::pair<Agent, Agent>> out;
  out.reserve(arcs_);
  for (Agent a = 0; a < n_; ++a)
    for (Agent b = 0; b < n_; ++b)
      if (has_arc(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<Agent> ComparisonRelation::below(Agent a) const {
  std::vector<Agent> out;
  for (Agent b = 0; b < n_; ++b)
    if (has_arc(a, b)) out.push_back(b);
  return out;
}

namespace {

std::string describe(const std::vector<Agent>& cycle) {
  std::string s = "relation contains a cycle:";
  for (Agent a : cycle) s += " " + std::to_string(a) + " >";
  if (!cycle.empty()) s += " " + std::to_string(cycle.front());
  return s;
}

// reach[a*n+b] != 0 iff b is reachable from a by >= 1 arc.
std::vector<std::uint8_t> reachability(const ComparisonRelation& rel) {
  const int n = rel.size();
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(n) * n, 0);
  for (Agent a = 0; a < n; ++a)
    for (Agent b = 0; b < n; ++b) reach[static_cast<std::size_t>(a) * n + b] = rel.has_arc(a, b);
  for (Agent k = 0; k < n; ++k)
    for (Agent a = 0; a < n; ++a) {
      if (!reach[static_cast<std::size_t>(a) * n + k]) continue;
      for (Agent b = 0; b < n; ++b)
        if (reach[static_cast<std::size_t>(k) * n + b]) reach[static_cast<std::size_t>(a) * n + b] = 1;
    }
  return reach;
}

}  // namespace

CycleError::CycleError(std::vector<Agent> cycle) : std::invalid_argument(describe(cycle)), cycle_(std::move(cycle)) {}

const char* to_string(Order o) {
  switch (o) {
    case Order::above: return "above";
    case Order::below: return "below";
    case Order::incomparable: return "incomparable";
  }
  return "?";
}

ComparisonRelation transitive_closure(const ComparisonRelation& rel) {
  const int n = rel.size();
  auto reach = reachability(rel);
  for (Agent a = 0; a < n; ++a)
    if (reach[static_cast<std::size_t>(a) * n + a]) throw CycleError(*find_cycle(rel));
  ComparisonRelation out(n);
  for (Agent a = 0; a < n; ++a)
    for (Agent b = 0; b < n; ++b)
      if (reach[static_cast<std::size_t>(a) * n + b]) out.add_arc(a, b, rel.has_arc(a, b) ? rel.tag(a, b) : -1);
  return out;
}

bool reachable(const ComparisonRelation& rel, Agent from, Agent to, Agent avoid) {
  const int n = rel.size();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Agent> stack{from};
  while (!stack.empty()) {
    Agent u = stack.back();
    stack.pop_back();
    for (Agent v = 0; v < n; ++v) {
      if (!rel.has_arc(u, v) || v == avoid || seen[v]) continue;
      if (v == to) return true;
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  return false;
}

Order comparable(const ComparisonRelation& rel, Agent i, Agent j) {
  if (i == j) return Order::incomparable;
  const bool up = reachable(rel, i, j);
  const bool down = reachable(rel, j, i);
  if (up && down) throw CycleError(*find_cycle(rel));
  if (up) return Order::above;
  if (down) return Order::below;
  return Order::incomparable;
}

std::optional<std::vector<Agent>> find_cycle(const ComparisonRelation& rel) {
  const int n = rel.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<Agent> path;
  std::optional<std::vector<Agent>> found;
  std::function<bool(Agent)> dfs = [&](Agent u) {
    state[u] = 1;
    path.push_back(u);
    for (Agent v = 0; v < n; ++v) {
      if (!rel.has_arc(u, v)) continue;
      if (state[v] == 1) {
        auto start = std::find(path.begin(), path.end(), v);
        found = std::vector<Agent>(start, path.end());
        return true;
      }
      if (state[v] == 0 && dfs(v)) return true;
    }
    path.pop_back();
    state[u] = 2;
    return false;
  };
  for (Agent s = 0; s < n && !found; ++s)
    if (state[s] == 0) dfs(s);
  return found;
}

std::vector<std::vector<Agent>> shortest_cycles(const ComparisonRelation& rel) {
  const int n = rel.size();
  constexpr int kInf = 1 << 29;

  // Shortest cycle length: BFS from each s, close with an arc back into s.
  int best = kInf;
  std::vector<int> dist(n);
  for (Agent s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[s] = 0;
    std::queue<Agent> q;
    q.push(s);
    while (!q.empty()) {
      Agent u = q.front();
      q.pop();
      if (rel.has_arc(u, s)) best = std::min(best, dist[u] + 1);
      for (Agent v = 0; v < n; ++v)
        if (rel.has_arc(u, v) && dist[v] == kInf) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
  }
  std::vector<std::vector<Agent>> out;
  if (best == kInf) return out;

  // Enumerate cycles of length `best` whose smallest node is s, walking only
  // through nodes > s. to_s[v] bounds the remaining distance back to s.
  std::vector<int> to_s(n);
  std::vector<Agent> path;
  std::vector<std::uint8_t> used(n, 0);
  for (Agent s = 0; s < n; ++s) {
    std::fill(to_s.begin(), to_s.end(), kInf);
    to_s[s] = 0;
    std::queue<Agent> q;
    q.push(s);
    while (!q.empty()) {
      Agent v = q.front();
      q.pop();
      for (Agent u = s + 1; u < n; ++u)
        if (rel.has_arc(u, v) && to_s[u] == kInf) {
          to_s[u] = to_s[v] + 1;
          q.push(u);
        }
    }
    path.assign(1, s);
    std::function<void(Agent)> extend = [&](Agent u) {
      const int len = static_cast<int>(path.size());
      if (len == best) {
        if (rel.has_arc(u, s)) out.push_back(path);
        return;
      }
      for (Agent v = s + 1; v < n; ++v) {
        if (used[v] || !rel.has_arc(u, v) || to_s[v] > best - len) continue;
        used[v] = 1;
        path.push_back(v);
        extend(v);
        path.pop_back();
        used[v] = 0;
      }
    };
    extend(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<Agent>> has_cycle(const ComparisonRelation& rel) {
  auto cycles = shortest_cycles(rel);
  if (cycles.empty()) return std::nullopt;
  return cycles.front();
}

std::vector<Agent> linear_extension(const ComparisonRelation& rel) {
  auto order = try_linear_extension(rel);
  if (!order) throw CycleError(*find_cycle(rel));
  return *std::move(order);
}

std::optional<std::vector<Agent>> try_linear_extension(const ComparisonRelation& rel) {
  const int n = rel.size();
  std::vector<int> remaining_below(n, 0);
  for (Agent a = 0; a < n; ++a)
    for (Agent b = 0; b < n; ++b) remaining_below[a] += rel.has_arc(a, b);
  std::vector<std::uint8_t> placed(n, 0);
  std::vector<Agent> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    Agent pick = -1;
    for (Agent a = 0; a < n; ++a)
      if (!placed[a] && remaining_below[a] == 0) {
        pick = a;
        break;
      }
    if (pick < 0) return std::nullopt;
    placed[pick] = 1;
    order.push_back(pick);
    for (Agent a = 0; a < n; ++a)
      if (rel.has_arc(a, pick)) --remaining_below[a];
  }
  return order;
}

ComparisonRelation drop_cyclic_arcs(const ComparisonRelation& rel) {
  const int n = rel.size();
  auto reach = reachability(rel);
  ComparisonRelation out(n);
  for (Agent a = 0; a < n; ++a)
    for (Agent b = 0; b < n; ++b)
      if (rel.has_arc(a, b) && !reach[static_cast<std::size_t>(b) * n + a]) out.add_arc(a, b, rel.tag(a, b));
  return out;
}

}  // namespace fbr
