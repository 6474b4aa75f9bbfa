#include "leachsim/csv.h"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "leachsim/errors.h"

namespace leachsim {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt_int(long long v) { return std::to_string(v); }

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

std::string fmt_opt_round(const std::optional<Round>& v) { return v ? fmt_int(*v) : std::string(); }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

/// Non-empty lines after checking the header.
std::vector<std::string_view> body_lines(std::string_view text, std::string_view header) {
  auto lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  if (lines.empty() || lines.front() != header) {
    throw ConfigError("unexpected CSV header", "csv");
  }
  lines.erase(lines.begin());
  return lines;
}

template <typename T>
T parse_number(std::string_view field, const char* column) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value '" + std::string(field) + "'", column);
  }
  return value;
}

template <typename T>
std::optional<T> parse_optional(std::string_view field, const char* column) {
  if (field.empty()) return std::nullopt;
  return parse_number<T>(field, column);
}

}  // namespace

std::string format_trace_csv(std::span<const RoundRecord> records) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& rec : records) {
    out += fmt_int(rec.r) + ',' + fmt_int(rec.alive) + ',' + fmt_int(rec.ch_count) + ',' +
           fmt_int(rec.packets_to_ch) + ',' + fmt_int(rec.packets_to_bs) + ',' +
           fmt_double(rec.energy_remaining) + '\n';
  }
  return out;
}

std::string format_sweep_csv(const SweepResult& result) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& row : result.rows) {
    const auto& s = row.summary;
    out += fmt_double(row.p) + ',' + fmt_double(row.h) + ',' + fmt_double(row.s) + ',' +
           to_string(row.sink) + ',' + std::to_string(row.seed) + ',' +
           fmt_opt_round(s.first_dead_round) + ',' + fmt_opt_round(s.last_dead_round) + ',' +
           fmt_int(s.total_packets_to_bs) + ',' + fmt_int(s.total_packets_to_ch) + ',' +
           fmt_opt(s.ratio_x) + ',' + fmt_opt(s.k1) + ',' + fmt_opt(s.k2) + '\n';
  }
  return out;
}

std::string format_cells_csv(std::span<const CellStats> cells) {
  std::string out(kCellHeader);
  out += '\n';
  for (const auto& c : cells) {
    out += fmt_double(c.p) + ',' + fmt_double(c.h) + ',' + fmt_double(c.s) + ',' +
           to_string(c.sink) + ',' + fmt_int(c.runs) + ',' + fmt_int(c.completed) + ',' +
           fmt_opt(c.first_dead_round) + ',' + fmt_opt(c.last_dead_round) + ',' +
           fmt_double(c.packets_to_bs) + ',' + fmt_double(c.packets_to_ch) + ',' +
           fmt_opt(c.ratio_x) + ',' + fmt_opt(c.k1) + ',' + fmt_opt(c.k2) + '\n';
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing", path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("write failed", path);
}

void write_csv(std::span<const RoundRecord> records, const std::string& path) {
  write_text_file(path, format_trace_csv(records));
}

void write_csv(const SweepResult& result, const std::string& path) {
  write_text_file(path, format_sweep_csv(result));
}

std::vector<RoundRecord> parse_trace_csv(std::string_view text) {
  std::vector<RoundRecord> records;
  for (auto line : body_lines(text, kTraceHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 6) throw ConfigError("expected 6 fields per trace row", "csv");
    RoundRecord rec;
    rec.r = parse_number<Round>(f[0], "round");
    rec.alive = parse_number<int>(f[1], "alive");
    rec.ch_count = parse_number<int>(f[2], "cluster_heads");
    rec.packets_to_ch = parse_number<std::int64_t>(f[3], "packets_to_ch");
    rec.packets_to_bs = parse_number<std::int64_t>(f[4], "packets_to_bs");
    rec.energy_remaining = parse_number<double>(f[5], "energy_remaining_j");
    records.push_back(rec);
  }
  return records;
}

SweepResult parse_sweep_csv(std::string_view text) {
  SweepResult result;
  for (auto line : body_lines(text, kSweepHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 12) throw ConfigError("expected 12 fields per sweep row", "csv");
    SweepRow row;
    row.p = parse_number<double>(f[0], "p");
    row.h = parse_number<double>(f[1], "h");
    row.s = parse_number<double>(f[2], "s");
    row.sink = parse_sink(std::string(f[3]));
    row.seed = parse_number<std::uint64_t>(f[4], "seed");
    auto& s = row.summary;
    s.p = row.p;
    s.first_dead_round = parse_optional<Round>(f[5], "first_dead_round");
    s.last_dead_round = parse_optional<Round>(f[6], "last_dead_round");
    s.total_packets_to_bs = parse_number<std::int64_t>(f[7], "packets_to_bs");
    s.total_packets_to_ch = parse_number<std::int64_t>(f[8], "packets_to_ch");
    s.ratio_x = parse_optional<double>(f[9], "ratio_x");
    s.k1 = parse_optional<double>(f[10], "k1");
    s.k2 = parse_optional<double>(f[11], "k2");
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace leachsim
