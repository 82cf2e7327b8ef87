// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/rng.hpp"

#include <cmath>
#include <numbers>

namespace ballfield {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo)
{
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key)
{
    std::array<std::uint64_t, 4> x = counter;
    std::uint64_t k0 = key[0];
    std::uint64_t k1 = key[1];
    for (int round = 0; round < 10; ++round)
    {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMult0, x[0], hi0, lo0);
        mulhilo(kMult1, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return x;
}

double to_unit_interval(std::uint64_t x)
{
    return static_cast<double>(x >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

void fill_standard_normals(std::span<double> out, std::uint64_t seed, RngStream stream,
                           std::uint64_t index)
{
    const std::array<std::uint64_t, 2> key{seed, static_cast<std::uint64_t>(stream)};
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::size_t written = 0;
    std::uint64_t block = 0;
    while (written < out.size())
    {
        const auto words = philox4x64({index, block++, 0, 0}, key);
        for (int p = 0; p < 2 && written < out.size(); ++p)
        {
            const double u1 = to_unit_interval(words[2 * p]);
            const double u2 = to_unit_interval(words[2 * p + 1]);
            const double mag = std::sqrt(-2.0 * std::log(u1));
            out[written++] = mag * std::cos(two_pi * u2);
            if (written < out.size())
                out[written++] = mag * std::sin(two_pi * u2);
        }
    }
}

std::uint64_t CounterRng::next_u64()
{
    if (buffered_ == 0)
    {
        buffer_ = philox4x64(counter_, key_);
        buffered_ = 4;
        if (++counter_[1] == 0)
            ++counter_[2];
    }
    return buffer_[4 - buffered_--];
}

double CounterRng::next_normal()
{
    if (have_spare_)
    {
        have_spare_ = false;
        return spare_normal_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_normal_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ballfield
