#include "leachsim/sweep.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "leachsim/errors.h"
#include "leachsim/protocol.h"

namespace leachsim {

NetworkConfig cell_config(const SweepSpec& spec, double p, double h, double s,
                          const SinkPosition& sink, std::uint64_t seed) {
  NetworkConfig c = spec.base;
  c.protocol.p = p;
  c.protocol.h = h;
  c.protocol.s = s;
  c.sink = sink;
  c.seed = seed;
  return c;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
  validate(spec);

  SweepResult result;
  result.rows.reserve(spec.run_count());
  for (double p : spec.p_values)
    for (double h : spec.h_values)
      for (double s : spec.s_values)
        for (const auto& sink : spec.sinks)
          for (std::uint64_t seed : spec.seeds) result.rows.push_back({p, h, s, sink, seed, {}});

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, result.rows.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.rows.size()) return;
      auto& row = result.rows[i];
      try {
        const auto config = cell_config(spec, row.p, row.h, row.s, row.sink, row.seed);
        row.summary = run_simulation(config).summary;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(result.rows.size());
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

namespace {

double combine(std::vector<double> values, Aggregate how) {
  if (how == Aggregate::mean) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::optional<double> combine_defined(const std::vector<double>& values, Aggregate how) {
  if (values.empty()) return std::nullopt;
  return combine(values, how);
}

bool same_cell(const SweepRow& a, const SweepRow& b) {
  return a.p == b.p && a.h == b.h && a.s == b.s && a.sink == b.sink;
}

}  // namespace

std::vector<CellStats> aggregate_cells(const SweepResult& result, Aggregate how) {
  std::vector<CellStats> cells;
  const auto& rows = result.rows;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j < rows.size() && same_cell(rows[i], rows[j])) ++j;

    CellStats cell;
    cell.p = rows[i].p;
    cell.h = rows[i].h;
    cell.s = rows[i].s;
    cell.sink = rows[i].sink;
    std::vector<double> first, last, bs, ch, x, k1, k2;
    for (std::size_t k = i; k < j; ++k) {
      const auto& sum = rows[k].summary;
      cell.runs += 1;
      if (!sum.censored()) cell.completed += 1;
      if (sum.first_dead_round) first.push_back(static_cast<double>(*sum.first_dead_round));
      if (sum.last_dead_round) last.push_back(static_cast<double>(*sum.last_dead_round));
      bs.push_back(static_cast<double>(sum.total_packets_to_bs));
      ch.push_back(static_cast<double>(sum.total_packets_to_ch));
      if (sum.ratio_x) x.push_back(*sum.ratio_x);
      if (sum.k1) k1.push_back(*sum.k1);
      if (sum.k2) k2.push_back(*sum.k2);
    }
    cell.first_dead_round = combine_defined(first, how);
    cell.last_dead_round = combine_defined(last, how);
    cell.packets_to_bs = combine(bs, how);
    cell.packets_to_ch = combine(ch, how);
    cell.ratio_x = combine_defined(x, how);
    cell.k1 = combine_defined(k1, how);
    cell.k2 = combine_defined(k2, how);
    cells.push_back(std::move(cell));
    i = j;
  }
  return cells;
}

std::optional<double> cell_metric(const CellStats& cell, const std::string& metric) {
  if (metric == "first_dead_round") return cell.first_dead_round;
  if (metric == "last_dead_round") return cell.last_dead_round;
  if (metric == "packets_to_bs") return cell.packets_to_bs;
  if (metric == "packets_to_ch") return cell.packets_to_ch;
  if (metric == "ratio_x") return cell.ratio_x;
  if (metric == "k1") return cell.k1;
  if (metric == "k2") return cell.k2;
  throw ConfigError("unknown sweep metric '" + metric + "'", "metric");
}

}  // namespace leachsim
