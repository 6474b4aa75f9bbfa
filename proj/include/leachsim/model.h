#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace leachsim {

using Round = std::int64_t;
using NodeId = int;

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(Position a, Position b) noexcept;

enum class Variant { leach, modleach, imodleach };

std::string to_string(Variant v);
std::optional<Variant> parse_variant(const std::string& name);

/// First-order radio constants. Defaults follow the reference deployment:
/// 50 nJ/bit electronics, 5 nJ/bit/report aggregation, 10 pJ/bit/m^2 free
/// space, 0.0013 pJ/bit/m^4 multipath, intra-cluster amplifiers scaled by 1/10.
struct RadioParams {
  double e_elec = 50e-9;
  double e_da = 5e-9;
  double eps_fs = 10e-12;
  double eps_mp = 0.0013e-12;
  double intra_divisor = 10.0;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

struct ProtocolParams {
  Variant variant = Variant::imodleach;
  double p = 0.1;    // cluster-head probability
  double s = 2.0;    // soft threshold
  double h = 100.0;  // hard threshold
  // A previous-round CH keeps the role while residual >= fraction * energy at
  // election. Values above 1 effectively disable retention.
  double retention_fraction = 1.0;

  /// Rotation epoch, round(1/p) rounds (half-up), at least 1.
  Round epoch_length() const noexcept;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

/// Fixed parameter values of the MODLEACH baseline.
inline constexpr double kModleachP = 0.1;
inline constexpr double kModleachS = 2.0;
inline constexpr double kModleachH = 100.0;

enum class SinkTag { origin, x_axis_midpoint, y_axis_midpoint, center, custom };

struct SinkPosition {
  SinkTag tag = SinkTag::center;
  Position custom{};  // used only when tag == custom

  friend bool operator==(const SinkPosition&, const SinkPosition&) = default;
};

/// "origin", "center", ... or "custom(x;y)".
std::string to_string(const SinkPosition& sink);
std::optional<SinkTag> parse_sink_tag(const std::string& name);

struct NetworkConfig {
  double field_width = 400.0;
  double field_height = 400.0;
  int node_count = 100;
  double initial_energy = 0.5;  // J
  double packet_bits = 4000.0;
  Round max_rounds = 5000;
  SinkPosition sink{};
  double sensed_min = 0.0;
  double sensed_max = 1000.0;
  RadioParams radio{};
  ProtocolParams protocol{};
  std::uint64_t seed = 1;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// Throws ConfigError naming the first violated setting.
void validate(const NetworkConfig& config);

struct NodeState {
  NodeId id = 0;
  Position pos{};
  double energy = 0.0;
  bool alive = true;
  bool is_ch = false;
  std::optional<Round> last_ch_round;  // round of the most recent CH service
  double energy_at_election = 0.0;
  std::optional<double> last_reported_value;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Mutable state of one run. Owned by a single simulation; never shared.
struct SimState {
  std::vector<NodeState> nodes;
  Round round = 0;  // rounds completed so far
  Position sink{};
  std::uint64_t seed = 0;

  int alive_count() const noexcept;
  double total_energy() const noexcept;
};

SimState build_network(const NetworkConfig& config);

Position sink_coordinates(const SinkPosition& sink, const NetworkConfig& config);

}  // namespace leachsim
