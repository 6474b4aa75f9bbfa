#pragma once

#include <cstdint>

namespace leachsim {

/// Independent random substreams derived from one master seed.
enum class Stream : std::uint64_t {
  placement = 1,
  election = 2,
  sensing = 3,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based draw keyed by (seed, stream, a, b). Pure: the same key always
/// yields the same bits, so draws do not depend on evaluation order.
constexpr std::uint64_t keyed_bits(std::uint64_t seed, Stream stream, std::uint64_t a = 0,
                                   std::uint64_t b = 0) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  h = mix64(h ^ a);
  return mix64(h ^ b);
}

/// Top 53 bits mapped onto [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace leachsim
