#include "fbr/reports.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fbr/enumerate.hpp"

namespace fbr {

CharacteristicProfile::CharacteristicProfile(std::vector<int> positions) : position_(std::move(positions)) {
  const int n = size();
  std::vector<char> seen(n + 1, 0);
  for (int p : position_) {
    if (p < 1 || p > n || seen[p])
      throw std::invalid_argument("characteristic positions must be a permutation of 1.." + std::to_string(n));
    seen[p] = 1;
  }
}

CharacteristicProfile CharacteristicProfile::from_ascending(std::span<const Agent> order) {
  std::vector<int> pos(order.size(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (order[r] < 0 || order[r] >= static_cast<Agent>(order.size()))
      throw std::invalid_argument("agent out of range in characteristic order");
    pos[order[r]] = static_cast<int>(r) + 1;
  }
  return CharacteristicProfile(std::move(pos));
}

Observability::Observability(Graph g) : graph_(std::move(g)) {
  const int n = graph_.size();
  pairs_.resize(n);
  observers_.resize(pair_count(n));
  for (Agent i = 0; i < n; ++i) {
    auto nb = graph_.neighbors(i);
    auto& out = pairs_[i];
    for (Agent j : nb) out.push_back(AgentPair::of(i, j));
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) out.push_back(AgentPair::of(nb[a], nb[b]));
    std::sort(out.begin(), out.end());
    for (const auto& p : out) observers_[pair_index(p.first, p.second)].push_back(i);
  }
}

int Observability::slot(Agent i, AgentPair p) const {
  const auto& list = pairs_[i];
  auto it = std::lower_bound(list.begin(), list.end(), p);
  if (it == list.end() || *it != p) return -1;
  return static_cast<int>(it - list.begin());
}

std::span<const Agent> Observability::observers(AgentPair p) const {
  return observers_[pair_index(p.first, p.second)];
}

std::vector<AgentPair> observable_pairs(const Graph& g, Agent i) {
  Observability obs(g);
  auto p = obs.pairs(i);
  return {p.begin(), p.end()};
}

ReportProfile::ReportProfile(std::shared_ptr<const Observability> observability, std::vector<std::vector<Sign>> signs)
    : observability_(std::move(observability)), signs_(std::move(signs)) {
  if (!observability_) throw std::invalid_argument("report profile needs an observability table");
  if (static_cast<int>(signs_.size()) != size())
    throw std::invalid_argument("report profile has " + std::to_string(signs_.size()) + " agents, graph has " +
                                std::to_string(size()));
  for (Agent i = 0; i < size(); ++i) {
    if (signs_[i].size() != observability_->pairs(i).size())
      throw std::invalid_argument("agent " + std::to_string(i) + " must report on exactly its " +
                                  std::to_string(observability_->pairs(i).size()) + " observable pairs");
    for (Sign s : signs_[i])
      if (s != 1 && s != -1) throw std::invalid_argument("report entries must be +1 or -1");
  }
}

Sign ReportProfile::sign(Agent reporter, AgentPair p) const {
  const int s = observability_->slot(reporter, p);
  return s < 0 ? Sign{0} : signs_[reporter][s];
}

ReportProfile ReportProfile::with_report(Agent i, std::vector<Sign> signs) const {
  auto copy = signs_;
  copy[i] = std::move(signs);
  return ReportProfile(observability_, std::move(copy));
}

void ReportProfile::assign_report(Agent i, std::span<const Sign> signs) {
  if (signs.size() != signs_[i].size())
    throw std::invalid_argument("agent " + std::to_string(i) + " must report on exactly its " +
                                std::to_string(signs_[i].size()) + " observable pairs");
  for (Sign s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("report entries must be +1 or -1");
  std::copy(signs.begin(), signs.end(), signs_[i].begin());
}

void ReportProfile::set(Agent i, AgentPair p, Sign s) {
  const int slot = observability_->slot(i, p);
  if (slot < 0) throw std::invalid_argument("agent " + std::to_string(i) + " does not observe pair " + to_string(p));
  if (s != 1 && s != -1) throw std::invalid_argument("report entries must be +1 or -1");
  signs_[i][slot] = s;
}

bool ReportProfile::operator==(const ReportProfile& other) const {
  return graph() == other.graph() && signs_ == other.signs_;
}

ReportProfile truthful_reports(std::shared_ptr<const Observability> obs, const CharacteristicProfile& theta) {
  if (theta.size() != obs->size()) throw std::invalid_argument("characteristic profile size does not match graph");
  std::vector<std::vector<Sign>> signs(obs->size());
  for (Agent i = 0; i < obs->size(); ++i) {
    auto pairs = obs->pairs(i);
    signs[i].reserve(pairs.size());
    for (const auto& p : pairs) signs[i].push_back(theta.sign(p));
  }
  return ReportProfile(std::move(obs), std::move(signs));
}

ReportProfile truthful_reports(const Graph& g, const CharacteristicProfile& theta) {
  return truthful_reports(std::make_shared<const Observability>(g), theta);
}

ComparisonRelation pooled_relation(const ReportProfile& reports, std::optional<Agent> exclude, Pooling pooling) {
  const int n = reports.size();
  const auto& obs = reports.observability();
  ComparisonRelation rel(n);
  for (Agent b = 1; b < n; ++b)
    for (Agent a = 0; a < b; ++a) {
      const AgentPair p{a, b};
      int agreed = 0;
      bool conflict = false;
      for (Agent k : obs.observers(p)) {
        if (exclude && k == *exclude) continue;
        if (pooling == Pooling::friend_based && Observability::is_self_comparison(k, p)) continue;
        const Sign s = reports.sign(k, p);
        if (agreed == 0) {
          agreed = s;
        } else if (agreed != s) {
          conflict = true;
          break;
        }
      }
      if (conflict || agreed == 0) continue;
      if (agreed > 0)
        rel.add_arc(a, b);
      else
        rel.add_arc(b, a);
    }
  return rel;
}

}  // namespace fbr
