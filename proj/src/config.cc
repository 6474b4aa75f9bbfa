#include "leachsim/config.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "leachsim/errors.h"

namespace leachsim {

using nlohmann::json;

namespace {

json parse_document(std::string_view document) {
  const bool blank = std::all_of(document.begin(), document.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) return json::object();
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("document must be a JSON object");
  return doc;
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("expected a number", key);
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("expected an integer", key);
  return v.get<std::int64_t>();
}

std::uint64_t as_seed(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ConfigError("expected a non-negative integer", key);
}

SinkPosition as_sink(const json& v) {
  if (v.is_string()) return parse_sink(v.get<std::string>());
  if (v.is_array() && v.size() == 2) {
    return {SinkTag::custom, {as_number(v[0], "sink"), as_number(v[1], "sink")}};
  }
  if (v.is_object() && v.size() == 2 && v.contains("x") && v.contains("y")) {
    return {SinkTag::custom, {as_number(v["x"], "sink"), as_number(v["y"], "sink")}};
  }
  throw ConfigError("expected a sink tag, [x, y] or {\"x\": .., \"y\": ..}", "sink");
}

/// Applies one scalar key. Returns false when the key is unknown.
bool apply_key(NetworkConfig& c, const std::string& key, const json& v) {
  if (key == "field_width") c.field_width = as_number(v, key);
  else if (key == "field_height") c.field_height = as_number(v, key);
  else if (key == "node_count") {
    const auto n = as_integer(v, key);
    if (n < 1 || n > 10'000'000) throw ConfigError("must be between 1 and 10000000", key);
    c.node_count = static_cast<int>(n);
  } else if (key == "initial_energy") c.initial_energy = as_number(v, key);
  else if (key == "packet_bits") c.packet_bits = as_number(v, key);
  else if (key == "max_rounds") c.max_rounds = as_integer(v, key);
  else if (key == "sink") c.sink = as_sink(v);
  else if (key == "sensed_min") c.sensed_min = as_number(v, key);
  else if (key == "sensed_max") c.sensed_max = as_number(v, key);
  else if (key == "e_elec") c.radio.e_elec = as_number(v, key);
  else if (key == "e_da") c.radio.e_da = as_number(v, key);
  else if (key == "eps_fs") c.radio.eps_fs = as_number(v, key);
  else if (key == "eps_mp") c.radio.eps_mp = as_number(v, key);
  else if (key == "intra_divisor") c.radio.intra_divisor = as_number(v, key);
  else if (key == "variant") {
    if (!v.is_string()) throw ConfigError("expected leach, modleach or imodleach", key);
    const auto variant = parse_variant(v.get<std::string>());
    if (!variant) throw ConfigError("expected leach, modleach or imodleach", key);
    c.protocol.variant = *variant;
  } else if (key == "p") c.protocol.p = as_number(v, key);
  else if (key == "s") c.protocol.s = as_number(v, key);
  else if (key == "h") c.protocol.h = as_number(v, key);
  else if (key == "retention_fraction") c.protocol.retention_fraction = as_number(v, key);
  else if (key == "seed") c.seed = as_seed(v, key);
  else return false;
  return true;
}

bool is_axis(const std::string& key) {
  return key == "p" || key == "h" || key == "s" || key == "sink";
}

/// Sink values are arrays themselves, so only an array of values is an axis.
bool is_axis_list(const std::string& key, const json& v) {
  if (!v.is_array()) return false;
  if (key != "sink") return true;
  return v.empty() || !v[0].is_number();
}

template <typename T, typename Less>
void sort_axis(std::vector<T>& values, const char* key, Less less) {
  if (values.empty()) throw ConfigError("axis must not be empty", key);
  std::sort(values.begin(), values.end(), less);
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!less(values[i - 1], values[i])) throw ConfigError("duplicate axis value", key);
  }
}

}  // namespace

std::size_t SweepSpec::cell_count() const noexcept {
  return p_values.size() * h_values.size() * s_values.size() * sinks.size();
}

SinkPosition parse_sink(const std::string& text) {
  if (const auto tag = parse_sink_tag(text)) return {*tag, {}};
  double x = 0.0, y = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "custom(%lf;%lf%c", &x, &y, &tail) == 3 && tail == ')') {
    return {SinkTag::custom, {x, y}};
  }
  throw ConfigError("unknown sink '" + text + "'", "sink");
}

bool sink_less(const SinkPosition& a, const SinkPosition& b) noexcept {
  if (a.tag != b.tag) return a.tag < b.tag;
  if (a.tag != SinkTag::custom) return false;
  if (a.custom.x != b.custom.x) return a.custom.x < b.custom.x;
  return a.custom.y < b.custom.y;
}

NetworkConfig parse_network_config(std::string_view document) {
  const json doc = parse_document(document);
  NetworkConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (!apply_key(config, key, value)) throw ConfigError("unknown key", key);
  }
  validate(config);
  return config;
}

SweepSpec parse_sweep_spec(std::string_view document) {
  const json doc = parse_document(document);
  SweepSpec spec;
  bool have_seeds = false;

  for (const auto& [key, value] : doc.items()) {
    if (key == "seeds") {
      have_seeds = true;
      if (value.is_array()) {
        for (const auto& s : value) spec.seeds.push_back(as_seed(s, key));
      } else {
        const auto n = as_integer(value, key);
        if (n < 1) throw ConfigError("seed count must be at least 1", key);
        for (std::int64_t i = 1; i <= n; ++i) spec.seeds.push_back(static_cast<std::uint64_t>(i));
      }
      continue;
    }
    if (is_axis(key) && is_axis_list(key, value)) {
      for (const auto& item : value) {
        if (key == "sink") {
          spec.sinks.push_back(as_sink(item));
        } else {
          const double x = as_number(item, key);
          (key == "p" ? spec.p_values : key == "h" ? spec.h_values : spec.s_values).push_back(x);
        }
      }
      if (value.empty()) throw ConfigError("axis must not be empty", key);
      continue;
    }
    if (!apply_key(spec.base, key, value)) throw ConfigError("unknown key", key);
  }

  if (spec.p_values.empty()) spec.p_values = {spec.base.protocol.p};
  if (spec.h_values.empty()) spec.h_values = {spec.base.protocol.h};
  if (spec.s_values.empty()) spec.s_values = {spec.base.protocol.s};
  if (spec.sinks.empty()) spec.sinks = {spec.base.sink};
  if (!have_seeds) {
    if (doc.contains("seed")) {
      spec.seeds = {spec.base.seed};
    } else {
      for (std::uint64_t i = 1; i <= 10; ++i) spec.seeds.push_back(i);
    }
  }

  sort_axis(spec.p_values, "p", std::less<double>{});
  sort_axis(spec.h_values, "h", std::less<double>{});
  sort_axis(spec.s_values, "s", std::less<double>{});
  sort_axis(spec.sinks, "sink", sink_less);
  sort_axis(spec.seeds, "seeds", std::less<std::uint64_t>{});
  validate(spec);
  return spec;
}

ConfigDocument parse_config(std::string_view document) {
  const json doc = parse_document(document);
  bool sweep = doc.contains("seeds");
  for (const auto& [key, value] : doc.items()) {
    if (is_axis(key) && is_axis_list(key, value)) sweep = true;
  }
  if (sweep) return parse_sweep_spec(document);
  return parse_network_config(document);
}

void validate(const SweepSpec& spec) {
  auto check_sorted = [](const auto& values, const char* key, auto less) {
    if (values.empty()) throw ConfigError("axis must not be empty", key);
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!less(values[i - 1], values[i])) {
        throw ConfigError("axis must be strictly ascending without duplicates", key);
      }
    }
  };
  check_sorted(spec.p_values, "p", std::less<double>{});
  check_sorted(spec.h_values, "h", std::less<double>{});
  check_sorted(spec.s_values, "s", std::less<double>{});
  check_sorted(spec.sinks, "sink", sink_less);
  check_sorted(spec.seeds, "seeds", std::less<std::uint64_t>{});

  for (double p : spec.p_values)
    for (double h : spec.h_values)
      for (double s : spec.s_values)
        for (const auto& sink : spec.sinks) {
          NetworkConfig cell = spec.base;
          cell.protocol.p = p;
          cell.protocol.h = h;
          cell.protocol.s = s;
          cell.sink = sink;
          try {
            validate(cell);
          } catch (const ConfigError& e) {
            char where[160];
            std::snprintf(where, sizeof where, "cell (p=%.9g, h=%.9g, s=%.9g, sink=%s): ", p, h, s,
                          to_string(sink).c_str());
            throw ConfigError(where + e.detail(), e.key());
          }
        }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed", path);
  return buf.str();
}

}  // namespace leachsim
