#include "leachsim/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "leachsim/errors.h"

namespace leachsim {

SimSummary summarize(std::span<const RoundRecord> records, double p, int initial_alive) {
  if (records.empty()) throw DomainError("cannot summarize an empty trace");

  SimSummary out;
  out.p = p;
  for (const auto& rec : records) {
    if (!out.first_dead_round && rec.alive < initial_alive) out.first_dead_round = rec.r;
    if (!out.last_dead_round && rec.alive == 0) out.last_dead_round = rec.r;
    out.total_packets_to_bs += rec.packets_to_bs;
    out.total_packets_to_ch += rec.packets_to_ch;
  }
  if (out.first_dead_round && out.last_dead_round) {
    out.ratio_x = ratio_x(*out.first_dead_round, *out.last_dead_round);
    out.k1 = estimate_k1(p, *out.first_dead_round, *out.last_dead_round);
  }
  out.k2 = estimate_k2(p, out.total_packets_to_bs, out.total_packets_to_ch);
  return out;
}

double ratio_x(Round first_dead, Round last_dead) {
  if (first_dead < 1 || first_dead > last_dead) {
    throw DomainError("ratio_x requires 1 <= first_dead <= last_dead");
  }
  return static_cast<double>(first_dead) / static_cast<double>(last_dead);
}

double estimate_k1(double p, Round first_dead, Round last_dead) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (last_dead == 0) throw DomainError("k1 undefined for last_dead = 0");
  return p * ratio_x(first_dead, last_dead);
}

std::optional<double> estimate_k2(double p, std::int64_t pkts_bs, std::int64_t pkts_ch) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (pkts_bs < 0 || pkts_ch < 0) throw DomainError("packet counts must be non-negative");
  if (pkts_bs == 0) return std::nullopt;
  return p * static_cast<double>(pkts_ch) / static_cast<double>(pkts_bs);
}

namespace {

/// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& v, bool& has_ties) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });

  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    if (j > i) has_ties = true;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const std::pair<double, double>> series) {
  const std::size_t n = series.size();
  if (n < 2) return 0.0;
  std::vector<double> xs, ys;
  for (const auto& [x, y] : series) {
    xs.push_back(x);
    ys.push_back(y);
  }
  bool ties = false;
  const auto rx = average_ranks(xs, ties);
  const auto ry = average_ranks(ys, ties);

  if (!ties) {
    // Integer ranks: the classic formula is exact.
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
  }

  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

TrendResult trend_check(std::span<const std::pair<double, double>> series, Trend expected) {
  if (series.size() < 3) throw DomainError("trend_check needs at least 3 points");
  std::vector<double> xs;
  for (const auto& pt : series) xs.push_back(pt.first);
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw DomainError("trend_check needs distinct parameter values");
  }

  TrendResult out;
  out.spearman = spearman(series);
  out.pass = expected == Trend::increasing ? out.spearman == 1.0 : out.spearman == -1.0;
  return out;
}

}  // namespace leachsim
