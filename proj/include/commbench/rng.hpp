#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace commbench {

// splitmix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random source. Every sampling operation in the library goes
// through this wrapper so a seed fixes all outputs bit-for-bit; the std::
// distribution adaptors are avoided because their mapping from engine output
// is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return eng_(); }

  // Unbiased integer in [0, n) via masked rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> countl_zero_(n - 1);
    for (;;) {
      std::uint64_t r = eng_() & mask;
      if (r < n) return r;
    }
  }

  // Inclusive integer range.
  int int_in(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi) - lo + 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double real_in(double lo, double hi) { return lo + (hi - lo) * real01(); }

  bool bernoulli(double p) { return real01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent stream derived from this rng's seed and a tag; pipeline
  // stages and retry attempts each get their own stream.
  Rng child(std::uint64_t tag) const { return Rng(mix64(seed_ ^ mix64(tag))); }

 private:
  static int countl_zero_(std::uint64_t x) {
    int c = 0;
    for (std::uint64_t probe = std::uint64_t{1} << 63; probe && !(x & probe); probe >>= 1) ++c;
    return c;
  }

  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace commbench
