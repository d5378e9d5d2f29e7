#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ksub {

// Fixed-capacity bitset sized at runtime.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int capacity)
      : words_(static_cast<size_t>((capacity + 63) / 64), 0) {}

  void set(int i) { words_[static_cast<size_t>(i) >> 6] |= 1ULL << (i & 63); }

  bool test(int i) const {
    return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1ULL;
  }

  Bits& operator|=(const Bits& other) {
    for (size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  // Sum of weights over the set bits.
  double weighted_count(const std::vector<double>& weights) const {
    double total = 0.0;
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        int b = std::countr_zero(w);
        total += weights[(wi << 6) + static_cast<size_t>(b)];
        w &= w - 1;
      }
    }
    return total;
  }

  bool operator==(const Bits&) const = default;

 private:
  std::vector<uint64_t> words_;
};

}  // namespace ksub
