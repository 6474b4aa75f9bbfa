#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "leachsim/model.h"

namespace leachsim {

/// Cross product of parameter axes, each cell run once per seed.
struct SweepSpec {
  NetworkConfig base{};
  std::vector<double> p_values;
  std::vector<double> h_values;
  std::vector<double> s_values;
  std::vector<SinkPosition> sinks;
  std::vector<std::uint64_t> seeds;

  std::size_t cell_count() const noexcept;
  std::size_t run_count() const noexcept { return cell_count() * seeds.size(); }
};

/// Parses a flat JSON object into a NetworkConfig. Missing keys keep their
/// defaults; an empty or whitespace-only document yields the default config.
/// Throws ConfigError naming the key for unknown keys, wrong types and
/// violated invariants.
NetworkConfig parse_network_config(std::string_view document);

/// Like parse_network_config, but `p`, `h`, `s` and `sink` may be arrays and
/// `seeds` lists the seeds (or gives a count n for seeds 1..n; default 10).
SweepSpec parse_sweep_spec(std::string_view document);

using ConfigDocument = std::variant<NetworkConfig, SweepSpec>;

/// A document is a sweep spec when it has `seeds` or any array-valued axis.
ConfigDocument parse_config(std::string_view document);

/// Sorts the axes, rejects empty axes and duplicates, and validates every cell.
void validate(const SweepSpec& spec);

/// Whole-file read. Throws IoError.
std::string read_text_file(const std::string& path);

/// "origin", "center", ..., or "custom(x;y)" as produced by to_string().
SinkPosition parse_sink(const std::string& text);

/// Strict weak order used for sink axes: tag, then coordinates.
bool sink_less(const SinkPosition& a, const SinkPosition& b) noexcept;

}  // namespace leachsim
