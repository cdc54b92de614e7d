#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ctsbench {

// SplitMix64 (Steele, Lea, Flood 2014). Used to expand a 64-bit seed into
// generator state and to derive independent child seeds.
//   z = (s += 0x9e3779b97f4a7c15)
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
std::uint64_t splitmix64(std::uint64_t& state);

// Child seed for stream `index` of `root`; stable across platforms.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

// xoshiro256** 1.0 (Blackman, Vigna), state filled by four SplitMix64 draws
// from the seed. All derived draws below are defined in terms of next() only,
// so sequences are bit-identical on every platform and standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform integer in [0, bound) by rejection on the top of the range; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform integer in [lo, hi] inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  // (next() >> 11) * 2^-53, in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  bool bernoulli(double p);
  // Box-Muller using two uniform() draws; the second variate is discarded.
  double normal(double mean, double stddev);

 private:
  std::array<std::uint64_t, 4> s_;
};

// Fisher-Yates from the back: for i = n-1 .. 1, swap(v[i], v[below(i+1)]).
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace ctsbench
