#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ssnmf {

using Engine = std::mt19937_64;

/// Expands a top-level seed into an independent named sub-stream, so e.g. the
/// "init" draws of a run do not move when the "split" stream changes.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index = 0) noexcept;

Engine make_engine(std::uint64_t seed, std::string_view stream,
                   std::uint64_t index = 0);

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& engine, double lo, double hi) {
  return lo + (hi - lo) * uniform01(engine);
}

double standard_normal(Engine& engine);

/// Poisson draw. Sequential-search inversion below mean 30, Hörmann's
/// transformed rejection (PTRS) at and above.
std::uint64_t poisson(Engine& engine, double mean);

} // namespace ssnmf
