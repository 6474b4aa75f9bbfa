#include "leachsim/model.h"

#include <cmath>
#include <cstdio>
#include <random>

#include "leachsim/errors.h"
#include "leachsim/rng.h"

namespace leachsim {

double distance(Position a, Position b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::leach:
      return "leach";
    case Variant::modleach:
      return "modleach";
    case Variant::imodleach:
      return "imodleach";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "leach") return Variant::leach;
  if (name == "modleach") return Variant::modleach;
  if (name == "imodleach") return Variant::imodleach;
  return std::nullopt;
}

Round ProtocolParams::epoch_length() const noexcept {
  // Half-up rounding of 1/p; the epsilon absorbs representation noise such as
  // 1/0.4 evaluating just under 2.5.
  const auto len = static_cast<Round>(std::floor(1.0 / p + 0.5 + 1e-9));
  return len < 1 ? 1 : len;
}

namespace {

std::string format_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(what, key);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string to_string(const SinkPosition& sink) {
  switch (sink.tag) {
    case SinkTag::origin:
      return "origin";
    case SinkTag::x_axis_midpoint:
      return "x_axis_midpoint";
    case SinkTag::y_axis_midpoint:
      return "y_axis_midpoint";
    case SinkTag::center:
      return "center";
    case SinkTag::custom:
      return "custom(" + format_coord(sink.custom.x) + ";" + format_coord(sink.custom.y) + ")";
  }
  return "unknown";
}

std::optional<SinkTag> parse_sink_tag(const std::string& name) {
  if (name == "origin") return SinkTag::origin;
  if (name == "x_axis_midpoint") return SinkTag::x_axis_midpoint;
  if (name == "y_axis_midpoint") return SinkTag::y_axis_midpoint;
  if (name == "center") return SinkTag::center;
  return std::nullopt;
}

void validate(const NetworkConfig& c) {
  require(finite_positive(c.field_width), "field_width", "must be a positive number");
  require(finite_positive(c.field_height), "field_height", "must be a positive number");
  require(c.node_count >= 1, "node_count", "must be at least 1");
  require(finite_positive(c.initial_energy), "initial_energy", "must be a positive number");
  require(finite_positive(c.packet_bits), "packet_bits", "must be a positive number");
  require(c.max_rounds >= 1, "max_rounds", "must be at least 1");
  require(std::isfinite(c.sensed_min), "sensed_min", "must be finite");
  require(std::isfinite(c.sensed_max), "sensed_max", "must be finite");
  require(c.sensed_min < c.sensed_max, "sensed_max", "must exceed sensed_min");

  require(finite_positive(c.radio.e_elec), "e_elec", "must be a positive number");
  require(finite_positive(c.radio.e_da), "e_da", "must be a positive number");
  require(finite_positive(c.radio.eps_fs), "eps_fs", "must be a positive number");
  require(finite_positive(c.radio.eps_mp), "eps_mp", "must be a positive number");
  require(finite_positive(c.radio.intra_divisor), "intra_divisor", "must be a positive number");

  const auto& pr = c.protocol;
  require(std::isfinite(pr.p) && pr.p > 0.0 && pr.p <= 1.0, "p", "must lie in (0, 1]");
  require(finite_non_negative(pr.s), "s", "must be a non-negative number");
  require(finite_non_negative(pr.h), "h", "must be a non-negative number");
  require(finite_non_negative(pr.retention_fraction), "retention_fraction",
          "must be a non-negative number");
  if (pr.variant == Variant::modleach) {
    require(pr.p == kModleachP, "p", "modleach runs with the fixed value 0.1");
    require(pr.s == kModleachS, "s", "modleach runs with the fixed value 2");
    require(pr.h == kModleachH, "h", "modleach runs with the fixed value 100");
  }

  if (c.sink.tag == SinkTag::custom) {
    const Position s = c.sink.custom;
    require(std::isfinite(s.x) && std::isfinite(s.y) && s.x >= 0.0 && s.y >= 0.0 &&
                s.x <= c.field_width && s.y <= c.field_height,
            "sink", "custom position lies outside the field");
  }
}

int SimState::alive_count() const noexcept {
  int n = 0;
  for (const auto& node : nodes) n += node.alive ? 1 : 0;
  return n;
}

double SimState::total_energy() const noexcept {
  double sum = 0.0;
  for (const auto& node : nodes) sum += node.energy;
  return sum;
}

Position sink_coordinates(const SinkPosition& sink, const NetworkConfig& config) {
  const double w = config.field_width;
  const double h = config.field_height;
  switch (sink.tag) {
    case SinkTag::origin:
      return {0.0, 0.0};
    case SinkTag::x_axis_midpoint:
      return {w / 2.0, 0.0};
    case SinkTag::y_axis_midpoint:
      return {0.0, h / 2.0};
    case SinkTag::center:
      return {w / 2.0, h / 2.0};
    case SinkTag::custom: {
      const Position s = sink.custom;
      if (!(s.x >= 0.0 && s.y >= 0.0 && s.x <= w && s.y <= h)) {
        throw ConfigError("custom position lies outside the field", "sink");
      }
      return s;
    }
  }
  throw ConfigError("unknown sink tag", "sink");
}

SimState build_network(const NetworkConfig& config) {
  validate(config);

  SimState state;
  state.seed = config.seed;
  state.sink = sink_coordinates(config.sink, config);
  state.nodes.reserve(static_cast<std::size_t>(config.node_count));

  // mt19937_64 output is fixed by the standard; the unit mapping is ours, so
  // placement is identical across standard libraries.
  std::mt19937_64 gen(keyed_bits(config.seed, Stream::placement));
  for (NodeId id = 0; id < config.node_count; ++id) {
    NodeState node;
    node.id = id;
    node.pos.x = to_unit(gen()) * config.field_width;
    node.pos.y = to_unit(gen()) * config.field_height;
    node.energy = config.initial_energy;
    node.energy_at_election = config.initial_energy;
    state.nodes.push_back(node);
  }
  return state;
}

}  // namespace leachsim
