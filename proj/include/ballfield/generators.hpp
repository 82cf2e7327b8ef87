// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "ballfield/functionals.hpp"
#include "ballfield/geometry.hpp"
#include "ballfield/rng.hpp"

namespace ballfield {

/// Seeded configuration generators used by the experiment driver and tests.
/// All draws come from dedicated Philox streams, so a (seed, parameters)
/// pair pins the output exactly.

/// Balls with centers uniform in [box_lo, box_hi]^d and radii uniform in
/// [r_min, r_max].
std::vector<Ball> random_balls(std::uint64_t seed, int count, int d, double box_lo, double box_hi,
                               double r_min, double r_max);

/// Balls inside the half-space {t > 0}: radii in [r_min, r_max], time
/// coordinate in [r + margin, r + margin + t_span], remaining coordinates in
/// [box_lo, box_hi].
std::vector<Ball> random_balls_positive_time(std::uint64_t seed, int count, int d, double box_lo,
                                             double box_hi, double r_min, double r_max,
                                             double margin = 0.05, double t_span = 1.0);

/// Haar-like random rotations (QR of a Gaussian matrix with sign-fixed
/// diagonal) combined with Gaussian translations of the given scale.
std::vector<EuclideanMotion> random_motions(std::uint64_t seed, int count, int d,
                                            double translation_scale = 1.0);

/// Random functionals with `terms` coefficients each, weights uniform in
/// [-w, w], ball indices below n_balls.
std::vector<Functional> random_functionals(std::uint64_t seed, int count, int n_balls, int terms,
                                           double w = 1.0);

}  // namespace ballfield
