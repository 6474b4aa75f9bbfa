#include "leachsim/protocol.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leachsim/radio.h"
#include "leachsim/rng.h"

namespace leachsim {

int ClusterAssignment::clustered_members() const noexcept {
  return static_cast<int>(std::count_if(links.begin(), links.end(), [](const Link& l) {
    return l.kind == Link::Kind::member;
  }));
}

double election_threshold(const ProtocolParams& params, Round r, const NodeState& node) {
  const Round epoch = params.epoch_length();
  const Round phase = r % epoch;
  const Round epoch_start = r - phase;
  if (node.last_ch_round && *node.last_ch_round >= epoch_start) return 0.0;

  const double denom = 1.0 - params.p * static_cast<double>(phase);
  if (denom <= 0.0) return 1.0;
  return std::min(1.0, params.p / denom);
}

std::vector<NodeId> retain_cluster_heads(const SimState& state, const ProtocolParams& params) {
  std::vector<NodeId> kept;
  if (params.variant == Variant::leach) return kept;
  for (const auto& node : state.nodes) {
    if (node.is_ch && node.alive &&
        node.energy >= params.retention_fraction * node.energy_at_election) {
      kept.push_back(node.id);
    }
  }
  return kept;
}

std::vector<NodeId> elect_cluster_heads(SimState& state, const ProtocolParams& params,
                                        const std::vector<NodeId>& retained) {
  const Round r = state.round;
  for (auto& node : state.nodes) node.is_ch = false;
  for (NodeId id : retained) {
    auto& node = state.nodes.at(static_cast<std::size_t>(id));
    if (!node.alive) continue;
    node.is_ch = true;
    node.last_ch_round = r;
  }

  std::vector<NodeId> chs;
  for (auto& node : state.nodes) {
    if (!node.alive) continue;
    if (node.is_ch) {
      chs.push_back(node.id);
      continue;
    }
    const double threshold = election_threshold(params, r, node);
    if (threshold <= 0.0) continue;
    const double draw =
        to_unit(keyed_bits(state.seed, Stream::election, static_cast<std::uint64_t>(node.id),
                           static_cast<std::uint64_t>(r)));
    if (draw < threshold) {
      node.is_ch = true;
      node.last_ch_round = r;
      node.energy_at_election = node.energy;
      chs.push_back(node.id);
    }
  }
  return chs;
}

ClusterAssignment form_clusters(const SimState& state, const std::vector<NodeId>& chs) {
  ClusterAssignment out;
  out.links.resize(state.nodes.size());

  for (NodeId id : chs) {
    const auto& node = state.nodes.at(static_cast<std::size_t>(id));
    if (node.alive) out.ch_ids.push_back(id);
  }
  std::sort(out.ch_ids.begin(), out.ch_ids.end());
  out.ch_ids.erase(std::unique(out.ch_ids.begin(), out.ch_ids.end()), out.ch_ids.end());
  for (NodeId id : out.ch_ids) out.links[static_cast<std::size_t>(id)].kind = Link::Kind::cluster_head;

  for (const auto& node : state.nodes) {
    auto& link = out.links[static_cast<std::size_t>(node.id)];
    if (!node.alive || link.kind == Link::Kind::cluster_head) continue;
    if (out.ch_ids.empty()) {
      link.kind = Link::Kind::direct_to_bs;
      continue;
    }
    // Squared distances keep exact ties exact; strict < keeps the lowest id.
    double best = INFINITY;
    for (NodeId ch : out.ch_ids) {
      const Position c = state.nodes[static_cast<std::size_t>(ch)].pos;
      const double dx = node.pos.x - c.x;
      const double dy = node.pos.y - c.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        link.cluster_head = ch;
      }
    }
    link.kind = Link::Kind::member;
  }
  return out;
}

double sense(const NodeState& node, const NetworkConfig& config, std::uint64_t seed, Round r) {
  const double u = to_unit(keyed_bits(seed, Stream::sensing, static_cast<std::uint64_t>(node.id),
                                      static_cast<std::uint64_t>(r)));
  return config.sensed_min + u * (config.sensed_max - config.sensed_min);
}

bool should_report(double value, NodeState& node, const ProtocolParams& params) {
  bool report = true;
  if (params.variant != Variant::leach) {
    report = value >= params.h &&
             (!node.last_reported_value || std::abs(value - *node.last_reported_value) >= params.s);
  }
  if (report) node.last_reported_value = value;
  return report;
}

FrameOutcome steady_state_frame(SimState& state, const ClusterAssignment& assignment,
                                const NetworkConfig& config) {
  const RadioParams& radio = config.radio;
  const double bits = config.packet_bits;
  const Round r = state.round;
  const std::size_t n = state.nodes.size();

  FrameOutcome out;
  std::vector<double> debit(n, 0.0);
  std::vector<int> reports(n, 0);

  for (auto& node : state.nodes) {
    const Link link = assignment.links[static_cast<std::size_t>(node.id)];
    if (link.kind != Link::Kind::member && link.kind != Link::Kind::direct_to_bs) continue;
    const double value = sense(node, config, state.seed, r);
    if (!should_report(value, node, config.protocol)) continue;

    auto& own = debit[static_cast<std::size_t>(node.id)];
    if (link.kind == Link::Kind::member) {
      const auto ch = static_cast<std::size_t>(link.cluster_head);
      own += tx_energy(radio, bits, distance(node.pos, state.nodes[ch].pos),
                       PowerLevel::intra_cluster)
                 .joules;
      debit[ch] += rx_energy(radio, bits).joules;
      reports[ch] += 1;
      out.packets_to_ch += 1;
    } else {
      own += tx_energy(radio, bits, distance(node.pos, state.sink), PowerLevel::to_base_station)
                 .joules;
      out.packets_to_bs += 1;
    }
  }

  for (NodeId id : assignment.ch_ids) {
    const auto i = static_cast<std::size_t>(id);
    auto& ch = state.nodes[i];
    const double value = sense(ch, config, state.seed, r);
    if (should_report(value, ch, config.protocol)) reports[i] += 1;
    if (reports[i] == 0) continue;
    debit[i] += agg_energy(radio, bits, reports[i]).joules;
    debit[i] += tx_energy(radio, bits, distance(ch.pos, state.sink), PowerLevel::to_base_station)
                    .joules;
    out.packets_to_bs += 1;
  }

  for (auto& node : state.nodes) {
    const double want = debit[static_cast<std::size_t>(node.id)];
    if (want <= 0.0 || !node.alive) continue;
    const double drawn = std::min(want, node.energy);
    node.energy -= drawn;
    out.energy_spent += drawn;
    if (node.energy <= 0.0) {
      node.energy = 0.0;
      node.alive = false;
      node.is_ch = false;
    }
  }
  return out;
}

std::optional<RoundRecord> simulate_round(SimState& state, const NetworkConfig& config) {
  if (state.alive_count() == 0) return std::nullopt;
  if (state.round >= config.max_rounds) {
    throw std::logic_error("simulate_round called past max_rounds");
  }

  const auto retained = retain_cluster_heads(state, config.protocol);
  const auto chs = elect_cluster_heads(state, config.protocol, retained);
  const ClusterAssignment assignment = form_clusters(state, chs);
  const FrameOutcome frame = steady_state_frame(state, assignment, config);
  state.round += 1;

  RoundRecord rec;
  rec.r = state.round;
  rec.alive = state.alive_count();
  rec.ch_count = static_cast<int>(assignment.ch_ids.size());
  rec.packets_to_ch = frame.packets_to_ch;
  rec.packets_to_bs = frame.packets_to_bs;
  rec.energy_remaining = state.total_energy();
  rec.energy_spent = frame.energy_spent;
  rec.clustered_members = assignment.clustered_members();
  return rec;
}

RunResult run_simulation(const NetworkConfig& config) {
  SimState state = build_network(config);
  RunResult result;
  while (state.round < config.max_rounds) {
    auto rec = simulate_round(state, config);
    if (!rec) break;
    result.records.push_back(*rec);
    if (rec->alive == 0) break;
  }
  result.summary = summarize(result.records, config.protocol.p, config.node_count);
  return result;
}

}  // namespace leachsim
