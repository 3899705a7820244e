#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace verum {

// splitmix64, used to derive independent stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for a sub-stream identified by up to two indices (e.g. sweep point,
// replicate). Stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(master ^ a * 0x9E3779B97F4A7C15ULL) ^ b * 0xD1B54A32D192ED03ULL);
}

// mt19937_64 plus hand-rolled draw helpers. std::uniform_int_distribution and
// friends are not bit-stable across standard libraries; these are, which keeps
// generated scenarios byte-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, n), rejection sampling to avoid modulo bias
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::next_below: n must be positive");
    const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (rem != n - 1 && x > std::numeric_limits<std::uint64_t>::max() - rem - 1);
    return x % n;
  }

  // uniform integer in [lo, hi] inclusive
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::next_int: empty range");
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // uniform double in [0, 1), 53 mantissa bits
  double next_real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_real(); }

  bool next_bool(double p_true) { return next_real() < p_true; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n), in random order
  std::vector<int> sample_indices(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("Rng::sample_indices: bad k");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    // partial Fisher-Yates: first k slots end up holding the sample
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace verum
