#pragma once

#include "leachsim/model.h"

namespace leachsim {

/// Amplifier set used for a transmission. Intra-cluster links use the
/// base-station amplifiers divided by RadioParams::intra_divisor.
enum class PowerLevel { to_base_station, intra_cluster };

struct EnergyCost {
  double joules = 0.0;

  EnergyCost& operator+=(EnergyCost other) noexcept {
    joules += other.joules;
    return *this;
  }
  friend EnergyCost operator+(EnergyCost a, EnergyCost b) noexcept { return a += b; }
  friend bool operator==(EnergyCost, EnergyCost) = default;
};

/// Distance at which the free-space (d^2) and multipath (d^4) costs coincide.
double crossover_distance(const RadioParams& radio, PowerLevel level) noexcept;

/// Cost of sending `bits` over `meters`. Free-space law below the crossover,
/// multipath law at or beyond it. Throws DomainError on negative input.
EnergyCost tx_energy(const RadioParams& radio, double bits, double meters, PowerLevel level);

EnergyCost rx_energy(const RadioParams& radio, double bits);

EnergyCost agg_energy(const RadioParams& radio, double bits, double reports);

}  // namespace leachsim
