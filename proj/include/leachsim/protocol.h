#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leachsim/metrics.h"
#include "leachsim/model.h"

namespace leachsim {

/// How a node takes part in the current round's steady-state frame.
struct Link {
  enum class Kind { inactive, cluster_head, member, direct_to_bs };

  Kind kind = Kind::inactive;  // inactive: dead at setup time
  NodeId cluster_head = -1;    // valid only for members

  friend bool operator==(const Link&, const Link&) = default;
};

struct ClusterAssignment {
  std::vector<NodeId> ch_ids;  // ascending
  std::vector<Link> links;     // indexed by node id

  /// Alive non-CH nodes attached to some cluster head.
  int clustered_members() const noexcept;
};

struct FrameOutcome {
  std::int64_t packets_to_ch = 0;
  std::int64_t packets_to_bs = 0;
  double energy_spent = 0.0;  // J actually drawn from batteries
};

/// LEACH rotation threshold: p / (1 - p (r mod E)), E = epoch_length(), or 0 when the
/// node already served as cluster head in the current epoch.
double election_threshold(const ProtocolParams& params, Round r, const NodeState& node);

/// Previous-round cluster heads that keep the role without an election
/// (MODLEACH replacement scheme). Always empty for the leach variant.
std::vector<NodeId> retain_cluster_heads(const SimState& state, const ProtocolParams& params);

/// Runs the setup-phase election for round `state.round`. Retained heads join
/// without a draw; every other alive node draws against its threshold. Updates
/// is_ch, last_ch_round and energy_at_election. Returns the full CH set.
std::vector<NodeId> elect_cluster_heads(SimState& state, const ProtocolParams& params,
                                        const std::vector<NodeId>& retained = {});

/// Nearest-CH cluster formation, ties to the lowest id. With no cluster heads
/// every alive node reports straight to the base station.
ClusterAssignment form_clusters(const SimState& state, const std::vector<NodeId>& chs);

/// Sensor reading of `node` in round `r`; uniform over [sensed_min, sensed_max].
double sense(const NodeState& node, const NetworkConfig& config, std::uint64_t seed, Round r);

/// Hard/soft threshold gate. Records the value as last reported on success.
bool should_report(double value, NodeState& node, const ProtocolParams& params);

/// One TDMA frame: member reports, aggregation and the CH uplinks. Nodes
/// whose battery is exhausted are marked dead when the frame ends.
FrameOutcome steady_state_frame(SimState& state, const ClusterAssignment& assignment,
                                const NetworkConfig& config);

/// Setup plus one steady-state frame. Returns nullopt once every node is dead.
std::optional<RoundRecord> simulate_round(SimState& state, const NetworkConfig& config);

struct RunResult {
  std::vector<RoundRecord> records;
  SimSummary summary;
};

/// Rounds until all nodes die or max_rounds is reached.
RunResult run_simulation(const NetworkConfig& config);

}  // namespace leachsim
