// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace ballfield {

/// Bessel function of the first kind J_{nu}(x) for nu = twice_nu/2, x >= 0.
///
/// Half-integer orders (odd twice_nu, down to nu = -1/2) use the closed
/// trigonometric forms with a power-series fallback near zero where the
/// closed forms cancel. Integer orders go through std::cyl_bessel_j.
double bessel_j_half(int twice_nu, double x);

/// Regularized incomplete beta function I_x(a, b).
double regularized_beta(double a, double b, double x);

}  // namespace ballfield
