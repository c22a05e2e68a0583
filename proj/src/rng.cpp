#include "ssnmf/rng.hpp"

#include <cmath>
#include <numbers>

namespace ssnmf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t poisson_inversion(Engine& engine, double mean) {
  double p = std::exp(-mean);
  double u = uniform01(engine);
  std::uint64_t k = 0;
  // The tail beyond ~mean + 40 sd carries no probability mass at double precision.
  const auto cap = static_cast<std::uint64_t>(mean + 40.0 * std::sqrt(mean) + 40.0);
  while (u > p && k < cap) {
    u -= p;
    ++k;
    p *= mean / static_cast<double>(k);
  }
  return k;
}

std::uint64_t poisson_ptrs(Engine& engine, double mean) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  while (true) {
    const double u = uniform01(engine) - 0.5;
    const double v = uniform01(engine);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * log_mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index) noexcept {
  // FNV-1a over the stream name, then mix with seed and index.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed ^ h) + index);
}

Engine make_engine(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return Engine(derive_seed(seed, stream, index));
}

double standard_normal(Engine& engine) {
  // Box-Muller, one output per call so the stream position is a pure
  // function of the number of draws.
  const double u1 = 1.0 - uniform01(engine); // (0, 1]
  const double u2 = uniform01(engine);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t poisson(Engine& engine, double mean) {
  if (!(mean > 0.0)) return 0;
  return mean < 30.0 ? poisson_inversion(engine, mean) : poisson_ptrs(engine, mean);
}

} // namespace ssnmf
