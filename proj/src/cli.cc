#include "leachsim/cli.h"

#include <filesystem>
#include <map>
#include <ostream>
#include <tuple>

#include <CLI11.hpp>

#include "leachsim/acceptance.h"
#include "leachsim/config.h"
#include "leachsim/csv.h"
#include "leachsim/errors.h"
#include "leachsim/plot.h"
#include "leachsim/protocol.h"
#include "leachsim/sweep.h"

namespace leachsim {

namespace {

std::string opt_text(const std::optional<Round>& v) {
  return v ? std::to_string(*v) : std::string("none");
}

std::string opt_text(const std::optional<double>& v) {
  if (!v) return "none";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", *v);
  return buf;
}

void print_summary(std::ostream& out, const SimSummary& s, Round rounds) {
  out << "rounds simulated:   " << rounds << '\n'
      << "first dead round:   " << opt_text(s.first_dead_round) << '\n'
      << "last dead round:    " << (s.censored() ? "censored" : opt_text(s.last_dead_round)) << '\n'
      << "packets to BS:      " << s.total_packets_to_bs << '\n'
      << "packets to CH:      " << s.total_packets_to_ch << '\n'
      << "ratio x:            " << opt_text(s.ratio_x) << '\n'
      << "k1:                 " << opt_text(s.k1) << '\n'
      << "k2:                 " << opt_text(s.k2) << '\n';
}

double trace_value(const RoundRecord& rec, const std::string& metric) {
  if (metric == "alive") return rec.alive;
  if (metric == "cluster_heads") return rec.ch_count;
  if (metric == "packets_to_ch") return static_cast<double>(rec.packets_to_ch);
  if (metric == "packets_to_bs") return static_cast<double>(rec.packets_to_bs);
  if (metric == "energy_remaining_j") return rec.energy_remaining;
  throw ConfigError("unknown trace metric '" + metric + "'", "metric");
}

Series trace_series(const std::string& path, const std::string& metric, bool cumulative) {
  const auto records = parse_trace_csv(read_text_file(path));
  Series s{std::filesystem::path(path).stem().string(), {}};
  double running = 0.0;
  for (const auto& rec : records) {
    double v = trace_value(rec, metric);
    if (cumulative) v = running += v;
    s.points.emplace_back(static_cast<double>(rec.r), v);
  }
  return s;
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

/// One series per combination of the parameters not on the x axis.
std::vector<Series> sweep_series(const std::string& path, const std::string& metric,
                                 const std::string& by, Aggregate how) {
  const auto cells = aggregate_cells(parse_sweep_csv(read_text_file(path)), how);
  std::map<std::tuple<double, double, std::string>, Series> groups;
  for (const auto& c : cells) {
    double x = 0.0;
    std::tuple<double, double, std::string> key;
    std::string name;
    if (by == "p") {
      x = c.p;
      key = {c.h, c.s, to_string(c.sink)};
      name = "h=" + fmt_g(c.h) + " s=" + fmt_g(c.s);
    } else if (by == "h") {
      x = c.h;
      key = {c.p, c.s, to_string(c.sink)};
      name = "p=" + fmt_g(c.p) + " s=" + fmt_g(c.s);
    } else {
      x = c.s;
      key = {c.p, c.h, to_string(c.sink)};
      name = "p=" + fmt_g(c.p) + " h=" + fmt_g(c.h);
    }
    name += " " + to_string(c.sink);
    auto& series = groups[key];
    series.name = name;
    if (const auto y = cell_metric(c, metric)) series.points.emplace_back(x, *y);
  }
  std::vector<Series> out;
  for (auto& [key, s] : groups) {
    if (!s.points.empty()) out.push_back(std::move(s));
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::optional<std::uint64_t>& seed,
            const std::string& trace_path, std::ostream& out) {
  NetworkConfig config =
      config_path.empty() ? NetworkConfig{} : parse_network_config(read_text_file(config_path));
  if (seed) config.seed = *seed;
  validate(config);

  const auto result = run_simulation(config);
  if (!trace_path.empty()) write_csv(result.records, trace_path);
  print_summary(out, result.summary, static_cast<Round>(result.records.size()));
  if (!trace_path.empty()) out << "trace written to " << trace_path << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& output, unsigned workers,
              const std::string& cells_path, const std::string& aggregate, std::ostream& out) {
  const SweepSpec spec = parse_sweep_spec(read_text_file(spec_path));
  out << "sweep: " << spec.cell_count() << " cells x " << spec.seeds.size()
      << " seeds = " << spec.run_count() << " runs\n";
  const auto result = run_sweep(spec, workers);
  write_csv(result, output);
  out << "sweep written to " << output << '\n';
  if (!cells_path.empty()) {
    const auto cells =
        aggregate_cells(result, aggregate == "median" ? Aggregate::median : Aggregate::mean);
    write_text_file(cells_path, format_cells_csv(cells));
    out << "cell " << aggregate << "s written to " << cells_path << '\n';
  }
  return kExitOk;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& metric,
             const std::string& output, const std::string& title, bool cumulative,
             const std::string& by, const std::string& aggregate, std::ostream& out) {
  std::vector<Series> series;
  std::string x_label;
  for (const auto& path : inputs) {
    const std::string text = read_text_file(path);
    const std::string header = text.substr(0, text.find('\n'));
    if (header == kTraceHeader) {
      series.push_back(trace_series(path, metric, cumulative));
      x_label = "round";
    } else if (header == kSweepHeader) {
      auto more =
          sweep_series(path, metric, by, aggregate == "median" ? Aggregate::median : Aggregate::mean);
      series.insert(series.end(), more.begin(), more.end());
      x_label = by;
    } else {
      throw ConfigError("not a trace or sweep CSV: " + path, "input");
    }
  }
  emit_plot(series, PlotKind::line, output,
            {title, x_label, cumulative ? "cumulative " + metric : metric});
  out << "plot written to " << output << '\n';
  return kExitOk;
}

int cmd_check(int seeds, unsigned workers, std::ostream& out) {
  bool all = true;
  for (const auto& r : run_acceptance({seeds, workers})) {
    out << format_result_line(r) << '\n';
    all = all && r.passed;
  }
  out << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  return all ? kExitOk : kExitConfig;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Round-based LEACH / MODLEACH / iMODLEACH network simulator", "leachsim"};
  app.require_subcommand(1);

  std::string config_path, trace_path;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Simulate one network and optionally write its trace");
  run->add_option("-c,--config", config_path, "JSON config document (defaults when omitted)");
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("-o,--trace", trace_path, "Trace CSV output path");

  std::string spec_path, sweep_out, cells_path, aggregate = "mean";
  unsigned workers = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("-s,--spec", spec_path, "JSON sweep spec")->required();
  sweep->add_option("-o,--output", sweep_out, "Sweep CSV output path")->required();
  sweep->add_option("-j,--workers", workers, "Parallel workers (0: one per core)");
  sweep->add_option("--cells", cells_path, "Also write seed-aggregated cells to this CSV");
  sweep->add_option("--aggregate", aggregate, "Seed aggregate for --cells")
      ->check(CLI::IsMember({"mean", "median"}));

  std::vector<std::string> inputs;
  std::string metric, plot_out, title, by = "p", plot_aggregate = "mean";
  bool cumulative = false;
  auto* plot = app.add_subcommand("plot", "Render trace or sweep CSV columns as an SVG chart");
  plot->add_option("-i,--input", inputs, "Trace or sweep CSV (repeatable)")->required();
  plot->add_option("-m,--metric", metric, "Column to plot")->required();
  plot->add_option("-o,--output", plot_out, "SVG output path")->required();
  plot->add_option("--title", title, "Chart title");
  plot->add_flag("--cumulative", cumulative, "Plot running totals (trace input)");
  plot->add_option("--by", by, "Sweep x axis")->check(CLI::IsMember({"p", "h", "s"}));
  plot->add_option("--aggregate", plot_aggregate, "Seed aggregate (sweep input)")
      ->check(CLI::IsMember({"mean", "median"}));

  int check_seeds = 10;
  unsigned check_workers = 0;
  auto* check = app.add_subcommand("check", "Run the built-in acceptance suite");
  check->add_option("--seeds", check_seeds, "Seeds per sweep cell")->check(CLI::PositiveNumber);
  check->add_option("-j,--workers", check_workers, "Parallel workers (0: one per core)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, seed, trace_path, out);
    if (*sweep) return cmd_sweep(spec_path, sweep_out, workers, cells_path, aggregate, out);
    if (*plot) return cmd_plot(inputs, metric, plot_out, title, cumulative, by, plot_aggregate, out);
    if (*check) return cmd_check(check_seeds, check_workers, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  err << app.help();
  return kExitConfig;
}

}  // namespace leachsim
