#pragma once

#include <cstdint>

namespace erws::sim {

// Philox4x64-10 counter-based generator. Each walker owns an independent
// stream keyed by (master_seed, walker_index); the 256-bit counter enumerates
// blocks from zero, so parallel scheduling can never reorder a stream.
// The block function is the canonical one: it reproduces the reference
// known-answer block for ctr = 0 / key = 0 and matches numpy's
// np.random.Philox word-for-word at equal counters (numpy starts emitting
// at counter 1 due to its internal pre-increment).
inline void philox4x64_block(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2,
                             std::uint64_t c3, std::uint64_t k0, std::uint64_t k1,
                             std::uint64_t out[4]) {
  constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
  constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
  constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
  constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;
  for (int round = 0; round < 10; ++round) {
    const unsigned __int128 p0 = static_cast<unsigned __int128>(kM0) * c0;
    const unsigned __int128 p1 = static_cast<unsigned __int128>(kM1) * c2;
    const std::uint64_t hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const std::uint64_t lo0 = static_cast<std::uint64_t>(p0);
    const std::uint64_t hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const std::uint64_t lo1 = static_cast<std::uint64_t>(p1);
    const std::uint64_t n0 = hi1 ^ c1 ^ k0;
    const std::uint64_t n2 = hi0 ^ c3 ^ k1;
    c0 = n0;
    c1 = lo1;
    c2 = n2;
    c3 = lo0;
    k0 += kW0;
    k1 += kW1;
  }
  out[0] = c0;
  out[1] = c1;
  out[2] = c2;
  out[3] = c3;
}

struct RngStream {
  std::uint64_t key0 = 0;
  std::uint64_t key1 = 0;
  std::uint64_t ctr0 = 0;
  std::uint64_t ctr1 = 0;
  std::uint64_t buf[4] = {};
  int pos = 4;

  RngStream() = default;
  RngStream(std::uint64_t master_seed, std::uint64_t walker_index)
      : key0(master_seed), key1(walker_index) {}

  inline std::uint64_t next_u64() {
    if (pos == 4) {
      philox4x64_block(ctr0, ctr1, 0, 0, key0, key1, buf);
      if (++ctr0 == 0) ++ctr1;
      pos = 0;
    }
    return buf[pos++];
  }

  // Uniform in [0, 1) with 53 random bits.
  inline double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

}  // namespace erws::sim
