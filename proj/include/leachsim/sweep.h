#pragma once

#include <cstdint>
#include <string>
#include <optional>
#include <vector>

#include "leachsim/config.h"
#include "leachsim/metrics.h"

namespace leachsim {

struct SweepRow {
  double p = 0.0;
  double h = 0.0;
  double s = 0.0;
  SinkPosition sink{};
  std::uint64_t seed = 0;
  SimSummary summary{};

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Rows in lexicographic (p, h, s, sink, seed) order.
struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Config of one sweep cell and seed.
NetworkConfig cell_config(const SweepSpec& spec, double p, double h, double s,
                          const SinkPosition& sink, std::uint64_t seed);

/// Runs every cell for every seed on up to `workers` threads (0: hardware
/// concurrency). Each run is single-threaded and results are merged by index,
/// so the output does not depend on the worker count.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1);

enum class Aggregate { mean, median };

/// Seed-aggregated view of one (p, h, s, sink) cell. Death rounds and the
/// derived ratios aggregate only over runs where they are defined.
struct CellStats {
  double p = 0.0;
  double h = 0.0;
  double s = 0.0;
  SinkPosition sink{};
  int runs = 0;
  int completed = 0;  // runs in which every node died before max_rounds
  std::optional<double> first_dead_round;
  std::optional<double> last_dead_round;
  double packets_to_bs = 0.0;
  double packets_to_ch = 0.0;
  std::optional<double> ratio_x;
  std::optional<double> k1;
  std::optional<double> k2;
};

std::vector<CellStats> aggregate_cells(const SweepResult& result, Aggregate how = Aggregate::mean);

/// Picks one metric out of CellStats by CSV column name
/// (first_dead_round, last_dead_round, packets_to_bs, packets_to_ch, ratio_x, k1, k2).
std::optional<double> cell_metric(const CellStats& cell, const std::string& metric);

}  // namespace leachsim
