#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leachsim/metrics.h"
#include "leachsim/sweep.h"

namespace leachsim {

inline constexpr std::string_view kTraceHeader =
    "round,alive,cluster_heads,packets_to_ch,packets_to_bs,energy_remaining_j";
inline constexpr std::string_view kSweepHeader =
    "p,h,s,sink,seed,first_dead_round,last_dead_round,packets_to_bs,packets_to_ch,ratio_x,k1,k2";
inline constexpr std::string_view kCellHeader =
    "p,h,s,sink,runs,completed,first_dead_round,last_dead_round,packets_to_bs,packets_to_ch,"
    "ratio_x,k1,k2";

// Floating-point fields use 9 significant digits, missing values are empty
// fields, and every line ends with '\n'.
std::string format_trace_csv(std::span<const RoundRecord> records);
std::string format_sweep_csv(const SweepResult& result);
std::string format_cells_csv(std::span<const CellStats> cells);

/// Throws IoError carrying the path.
void write_text_file(const std::string& path, std::string_view contents);

void write_csv(std::span<const RoundRecord> records, const std::string& path);
void write_csv(const SweepResult& result, const std::string& path);

/// Inverse of format_trace_csv. Throws ConfigError on malformed input.
std::vector<RoundRecord> parse_trace_csv(std::string_view text);

/// Inverse of format_sweep_csv; floating fields come back as printed.
SweepResult parse_sweep_csv(std::string_view text);

}  // namespace leachsim
