#include "fbr/homophily.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "fbr/enumerate.hpp"
#include "fbr/rng.hpp"

namespace fbr {

namespace {

constexpr double kSnap = 1e-12;

double snap(double x) {
  if (std::abs(x) < kSnap) return 0.0;
  if (std::abs(x - 1.0) < kSnap) return 1.0;
  return x;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

void IslandsModel::validate() const {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("islands model needs an even n >= 4, got " + std::to_string(n));
  if (!(p_within >= 0 && p_within <= 1) || !(p_across >= 0 && p_across <= 1))
    throw std::invalid_argument("link probabilities must lie in [0, 1]");
}

double pr_within_pair(const IslandsModel& m) {
  m.validate();
  const double miss = std::pow(1 - m.p_within * m.p_within, m.n / 2 - 2) * std::pow(1 - m.p_across * m.p_across, m.n / 2);
  return 1 - miss;
}

double pr_across_pair(const IslandsModel& m) {
  m.validate();
  return 1 - std::pow(1 - m.p_within * m.p_across, m.n - 2);
}

double pr_complete_ranking(const IslandsModel& m) {
  return std::pow(pr_within_pair(m), m.n - 2) * pr_across_pair(m);
}

std::pair<double, double> admissible_eta(double p, int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("islands model needs an even n >= 4, got " + std::to_string(n));
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("base probability must lie in [0, 1]");
  const double shrink = static_cast<double>(n - 2) / n;
  return {std::max(-p, (p - 1) * shrink), std::min(1 - p, p * shrink)};
}

LinkProbabilities eta_parameterization(double p, double eta, int n) {
  auto [lo, hi] = admissible_eta(p, n);
  if (eta < lo - kSnap || eta > hi + kSnap)
    throw std::invalid_argument("eta " + fmt(eta) + " outside the admissible interval [" + fmt(lo) + ", " + fmt(hi) +
                                "] for p=" + fmt(p) + ", n=" + std::to_string(n));
  const double pw = snap(p + eta);
  const double pa = snap(p - eta * n / (n - 2));
  return {std::clamp(pw, 0.0, 1.0), std::clamp(pa, 0.0, 1.0)};
}

McEstimate mc_complete_ranking(const IslandsModel& m, std::uint64_t trials, std::uint64_t seed, int jobs) {
  m.validate();
  if (trials < 1) throw std::invalid_argument("Monte Carlo needs at least one trial");
  const int n = m.n, half = n / 2;
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  const std::uint64_t blocks = (trials + kMcBlock - 1) / kMcBlock;
  std::vector<std::uint64_t> hits(blocks, 0);

  parallel_chunks(
      blocks, static_cast<int>(std::min<std::uint64_t>(blocks, 256)),
      [&](int, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> rows(words * n);
        for (std::uint64_t b = begin; b < end; ++b) {
          auto rng = Rng::derived(seed, b);
          const std::uint64_t count = std::min(kMcBlock, trials - b * kMcBlock);
          for (std::uint64_t t = 0; t < count; ++t) {
            std::fill(rows.begin(), rows.end(), 0);
            for (int i = 0; i < n; ++i)
              for (int j = i + 1; j < n; ++j) {
                const double p = (i < half) == (j < half) ? m.p_within : m.p_across;
                if (!rng.bernoulli(p)) continue;
                rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
                rows[j * words + i / 64] |= std::uint64_t{1} << (i % 64);
              }
            bool all = true;
            for (int i = 0; i + 1 < n && all; ++i) {
              bool shared = false;
              for (std::size_t w = 0; w < words && !shared; ++w) shared = rows[i * words + w] & rows[(i + 1) * words + w];
              all = shared;
            }
            hits[b] += all;
          }
        }
      },
      jobs);

  McEstimate out;
  out.trials = trials;
  out.seed = seed;
  for (auto h : hits) out.successes += h;
  out.estimate = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.standard_error = std::sqrt(out.estimate * (1 - out.estimate) / static_cast<double>(trials));
  return out;
}

std::vector<CurveRow> homophily_curve(double p, int n, std::span<const double> etas, std::uint64_t trials,
                                      std::uint64_t seed, int jobs) {
  std::vector<CurveRow> rows;
  for (std::size_t r = 0; r < etas.size(); ++r) {
    CurveRow row;
    row.eta = etas[r];
    row.probabilities = eta_parameterization(p, etas[r], n);
    IslandsModel m{n, row.probabilities.p_within, row.probabilities.p_across};
    row.pr_closed = pr_complete_ranking(m);
    if (trials > 0) row.mc = mc_complete_ranking(m, trials, seed + r, jobs);
    rows.push_back(row);
  }
  return rows;
}

std::string curve_csv(std::span<const CurveRow> rows) {
  std::string out = "eta,p_w,p_a,pr_closed,pr_mc,se\n";
  for (const auto& r : rows) {
    out += fmt(r.eta) + "," + fmt(r.probabilities.p_within) + "," + fmt(r.probabilities.p_across) + "," +
           fmt(r.pr_closed) + ",";
    if (r.mc) out += fmt(r.mc->estimate) + "," + fmt(r.mc->standard_error);
    else out += ",";
    out += "\n";
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  for (int k = 0; k < points; ++k) out[k] = k + 1 == points ? hi : lo + (hi - lo) * k / (points - 1);
  return out;
}

}  // namespace fbr
