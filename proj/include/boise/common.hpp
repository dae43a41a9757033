#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace boise {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

// -------- seed derivation --------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

template <class... Rest>
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt, Rest... rest) {
  return mix_seed(mix_seed(seed, salt), rest...);
}

// -------- random numbers --------

// Thin wrapper over mt19937_64 producing uniforms via the 53-bit mantissa
// trick, so draws depend only on the engine state and not on any
// library-specific distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(raw() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, bound) without modulo bias.
  int uniform_below(int bound) {
    using u128 = unsigned __int128;
    return static_cast<int>((u128(raw()) * u128(bound)) >> 64);
  }

  // Draw an index proportional to exp(log_weights[k]); stable under large
  // negative magnitudes via max-shift.
  int categorical_log(std::span<const double> log_weights);

 private:
  std::mt19937_64 engine_;
};

// -------- numerics --------

inline double log_sum_exp(std::span<const double> logs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : logs) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - mx);
  return mx + std::log(acc);
}

inline double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// -------- parallelism --------

// Runs fn(0..n-1) on up to `threads` workers. Results must be written to
// per-index slots; reductions happen after the join, in index order.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace boise
