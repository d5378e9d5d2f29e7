#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ksub {

// SplitMix64 step. Used both as a sequential generator and as the final
// mixer for keyed hashing.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 64-bit keyed hash: FNV-1a over the bytes, folded through splitmix64.
inline uint64_t hash_bytes(uint64_t seed, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 14695981039346656037ULL ^ seed;
  for (size_t i = 0; i < len; ++i) {
    h = (h ^ p[i]) * 1099511628211ULL;
  }
  return splitmix64(h);
}

inline uint64_t hash_bytes(uint64_t seed, const std::vector<uint8_t>& bytes) {
  return hash_bytes(seed, bytes.data(), bytes.size());
}

// Independent named stream from a base seed, e.g. derive_seed(s, "noise").
inline uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t extra = 0) {
  uint64_t h = hash_bytes(base, tag.data(), tag.size());
  uint64_t s = h ^ (extra * 0x9e3779b97f4a7c15ULL);
  return splitmix64(s);
}

// Uniform double in [0, 1) from 64 random bits.
inline double unit_from_bits(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Small deterministic generator. Identical output on every platform, unlike
// std::uniform_int_distribution and friends.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  double next_unit() { return unit_from_bits(next_u64()); }

  // Uniform in [0, bound), bound > 0.
  uint64_t next_below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Uniform in [lo, hi] inclusive.
  int next_int(int lo, int hi) {
    return lo + static_cast<int>(next_below(static_cast<uint64_t>(hi - lo) + 1));
  }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace ksub
