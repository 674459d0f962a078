#pragma once

#include <array>
#include <cstdint>

namespace qosp {

/// Philox 4x64 counter-based generator, 10 rounds. Stateless: every 256-bit
/// counter/key pair maps to 256 bits of output, so any slot of a simulation
/// can be evaluated independently and in any order. Output matches the
/// reference implementation (verified against independently generated
/// known-answer vectors).
struct Philox4x64 {
  static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> counter,
                                            std::array<std::uint64_t, 2> key) {
    round(counter, key);
    for (int r = 1; r < 10; ++r) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
      round(counter, key);
    }
    return counter;
  }

private:
  static void round(std::array<std::uint64_t, 4>& c, const std::array<std::uint64_t, 2>& k) {
    const auto p0 = static_cast<unsigned __int128>(kMult0) * c[0];
    const auto p1 = static_cast<unsigned __int128>(kMult1) * c[2];
    const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const auto lo0 = static_cast<std::uint64_t>(p0);
    const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const auto lo1 = static_cast<std::uint64_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Map a 64-bit word to a double in [0, 1) with 53 random bits.
inline double u64_to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

} // namespace qosp
