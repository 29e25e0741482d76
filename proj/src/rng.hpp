// Counter-based deterministic random number generator.
//
// The generator is the SplitMix64 finalizer used in counter mode.  A stream
// is identified by a 64-bit key; the i-th output (i = 1, 2, ...) is
//
//     out_i = mix64(key + i * 0x9E3779B97F4A7C15)
//
// where mix64 is the SplitMix64 finalizer.  Substream `tag` of a stream with
// key `k` has key
//
//     mix64(k ^ (0xD2B74407B1CE6E93 + tag * 0x9E3779B97F4A7C15)).
//
// Integers below a bound are drawn by rejection: draw a 64-bit r, accept
// when r < 2^64 - (2^64 mod m), return r mod m.  These formulas are the
// whole reproducibility contract; any implementation following them yields
// bit-identical streams.
#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace parrep {

inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

struct CounterRng {
  uint64_t key = 0;
  uint64_t counter = 0;

  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr uint64_t kSubstreamSalt = 0xD2B74407B1CE6E93ull;

  explicit CounterRng(uint64_t k = 0) : key(k) {}

  uint64_t next() {
    counter++;
    return mix64(key + counter * kGamma);
  }

  CounterRng substream(uint64_t tag) const {
    return CounterRng(mix64(key ^ (kSubstreamSalt + tag * kGamma)));
  }

  // Unbiased uniform draw from {0, ..., m-1}, m >= 1.
  uint64_t below(uint64_t m) {
    if (m <= 1) return 0;
    uint64_t rem = (0 - m) % m;  // 2^64 mod m
    for (;;) {
      uint64_t r = next();
      if (rem == 0 || r < 0 - rem) return r % m;
    }
  }

  bool coin(uint64_t num, uint64_t den) { return below(den) < num; }

  // Uniform draw from {0, ..., m-1} for arbitrary-precision m, by drawing
  // 64-bit words most-significant-first and rejecting out-of-range values.
  mpz_class below_mpz(const mpz_class& m) {
    if (m <= 1) return 0;
    std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
    uint64_t top_mask = top_bits >= 64 ? ~0ull : ((1ull << top_bits) - 1);
    for (;;) {
      mpz_class r = 0;
      for (std::size_t w = 0; w < words; w++) {
        uint64_t word = next();
        if (w == 0) word &= top_mask;
        mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
        mpz_class word_z;
        mpz_import(word_z.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
        r += word_z;
      }
      if (r < m) return r;
    }
  }
};

}  // namespace parrep
