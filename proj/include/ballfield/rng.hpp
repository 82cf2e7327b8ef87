// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace ballfield {

/// Counter-based Philox4x64-10 block cipher. Pure function of (counter, key),
/// so draws indexed by (seed, sample, position) are reproducible and
/// parallelizable with no order dependence.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

/// Disjoint stream salts (second key word) for independent consumers.
enum class RngStream : std::uint64_t
{
    Normals = 0x6e6f726d616c7331ull,
    Bootstrap = 0x626f6f7473747231ull,
    BallGen = 0x62616c6c67656e31ull,
    Functionals = 0x66756e6374696f31ull
};

/// Map a 64-bit word to the open interval (0, 1).
double to_unit_interval(std::uint64_t x);

/// Fill `out` with standard normals for a given (seed, stream, index) triple.
/// Blocks of four are produced by Philox with counter {index, block, 0, 0}
/// and converted in Box-Muller pairs; deterministic per element.
void fill_standard_normals(std::span<double> out, std::uint64_t seed, RngStream stream,
                           std::uint64_t index);

/// Sequential convenience generator over a Philox stream.
class CounterRng
{
  public:
    CounterRng(std::uint64_t seed, RngStream stream, std::uint64_t substream = 0)
        : key_{seed, static_cast<std::uint64_t>(stream)}, counter_{substream, 0, 0, 0}
    {
    }

    std::uint64_t next_u64();
    double next_unit() { return to_unit_interval(next_u64()); }
    /// Uniform on [0, n); n must be far below 2^64 (modulo bias negligible).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
    double next_normal();

  private:
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 4> buffer_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ballfield
