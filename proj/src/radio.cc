#include "leachsim/radio.h"

#include <cmath>

#include "leachsim/errors.h"

namespace leachsim {

namespace {

struct Amplifiers {
  double free_space;
  double multipath;
};

Amplifiers amplifiers(const RadioParams& radio, PowerLevel level) noexcept {
  if (level == PowerLevel::intra_cluster) {
    return {radio.eps_fs / radio.intra_divisor, radio.eps_mp / radio.intra_divisor};
  }
  return {radio.eps_fs, radio.eps_mp};
}

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0)) throw DomainError(std::string(what) + " must be non-negative");
}

}  // namespace

double crossover_distance(const RadioParams& radio, PowerLevel level) noexcept {
  const Amplifiers amp = amplifiers(radio, level);
  return std::sqrt(amp.free_space / amp.multipath);
}

EnergyCost tx_energy(const RadioParams& radio, double bits, double meters, PowerLevel level) {
  require_non_negative(bits, "bit count");
  require_non_negative(meters, "distance");

  const Amplifiers amp = amplifiers(radio, level);
  const double d2 = meters * meters;
  const double electronics = radio.e_elec * bits;
  if (meters < crossover_distance(radio, level)) {
    return {electronics + amp.free_space * bits * d2};
  }
  return {electronics + amp.multipath * bits * (d2 * d2)};
}

EnergyCost rx_energy(const RadioParams& radio, double bits) {
  require_non_negative(bits, "bit count");
  return {radio.e_elec * bits};
}

EnergyCost agg_energy(const RadioParams& radio, double bits, double reports) {
  require_non_negative(bits, "bit count");
  require_non_negative(reports, "report count");
  return {radio.e_da * bits * reports};
}

}  // namespace leachsim
