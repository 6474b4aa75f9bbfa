#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "leachsim/model.h"

namespace leachsim {

/// Per-round trace entry.
struct RoundRecord {
  Round r = 0;
  int alive = 0;
  int ch_count = 0;
  std::int64_t packets_to_ch = 0;
  std::int64_t packets_to_bs = 0;
  double energy_remaining = 0.0;
  // Diagnostics kept in memory only; the trace CSV does not carry them.
  double energy_spent = 0.0;
  int clustered_members = 0;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct SimSummary {
  double p = 0.0;
  std::optional<Round> first_dead_round;  // none: no node died
  std::optional<Round> last_dead_round;   // none: censored at the last simulated round
  std::int64_t total_packets_to_bs = 0;
  std::int64_t total_packets_to_ch = 0;
  std::optional<double> ratio_x;  // defined for completed runs only
  std::optional<double> k1;
  std::optional<double> k2;  // none when nothing reached the base station

  bool censored() const noexcept { return !last_dead_round.has_value(); }

  friend bool operator==(const SimSummary&, const SimSummary&) = default;
};

/// Folds a trace into the tabulated quantities. `initial_alive` is the node
/// count before round 1. Throws DomainError on an empty trace.
SimSummary summarize(std::span<const RoundRecord> records, double p, int initial_alive);

/// first_dead / last_dead. Requires 1 <= first_dead <= last_dead.
double ratio_x(Round first_dead, Round last_dead);

/// p * first_dead / last_dead, the constant k1 in p = k1 * last / first.
double estimate_k1(double p, Round first_dead, Round last_dead);

/// p * pkts_ch / pkts_bs, the constant k2 in p = k2 * bs / ch. None when
/// pkts_bs is zero.
std::optional<double> estimate_k2(double p, std::int64_t pkts_bs, std::int64_t pkts_ch);

enum class Trend { increasing, decreasing };

struct TrendResult {
  bool pass = false;
  double spearman = 0.0;
};

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either coordinate is constant.
double spearman(std::span<const std::pair<double, double>> series);

/// Strict monotonicity test: passes only at a coefficient of exactly +1 or -1.
/// Requires at least three points with distinct parameter values.
TrendResult trend_check(std::span<const std::pair<double, double>> series, Trend expected);

}  // namespace leachsim
