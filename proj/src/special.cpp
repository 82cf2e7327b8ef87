// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace ballfield {

namespace {

// Ascending series J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (-x^2/4)^k / (k! (nu+1)_k).
// Only used for small x, where a handful of terms reaches machine precision.
double bessel_j_series(double nu, double x)
{
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 12; ++k)
    {
        term *= q / (k * (nu + k));
        sum += term;
        if (std::abs(term) < 1e-19 * std::abs(sum))
            break;
    }
    return std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0) * sum;
}

}  // namespace

double bessel_j_half(int twice_nu, double x)
{
    if (twice_nu < -1)
        throw std::invalid_argument("bessel_j_half: order below -1/2 not supported");
    if (x < 0)
        throw std::invalid_argument("bessel_j_half: negative argument");

    if (twice_nu % 2 == 0)
    {
        if (x == 0.0)
            return twice_nu == 0 ? 1.0 : 0.0;
        return std::cyl_bessel_j(static_cast<double>(twice_nu / 2), x);
    }

    // Half-integer orders: spherical closed forms.
    const double nu = 0.5 * twice_nu;
    if (twice_nu == -1)
    {
        // J_{-1/2} blows up at 0 like x^{-1/2}; the closed form is stable everywhere.
        return std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x);
    }
    if (x < 0.5 && twice_nu >= 3)
        return bessel_j_series(nu, x);  // closed forms cancel near zero
    if (x == 0.0)
        return 0.0;

    const double scale = std::sqrt(2.0 / (std::numbers::pi * x));
    const double s = std::sin(x);
    const double c = std::cos(x);
    switch (twice_nu)
    {
        case 1:
            return scale * s;
        case 3:
            return scale * (s / x - c);
        case 5:
            return scale * ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x);
        case 7:
            return scale * ((15.0 / (x * x * x) - 6.0 / x) * s - (15.0 / (x * x) - 1.0) * c);
        default:
            break;
    }
    // Higher half-integer orders via upward recurrence J_{nu+1} = (2nu/x) J_nu - J_{nu-1};
    // fine here because the order stays far below the argument range we use.
    double jm = bessel_j_half(5, x);
    double j = bessel_j_half(7, x);
    for (int t = 7; t < twice_nu; t += 2)
    {
        const double next = (static_cast<double>(t) / x) * j - jm;
        jm = j;
        j = next;
    }
    return j;
}

double regularized_beta(double a, double b, double x)
{
    if (!(a > 0) || !(b > 0))
        throw std::invalid_argument("regularized_beta: parameters must be positive");
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("regularized_beta: x outside [0, 1]");
    return boost::math::ibeta(a, b, x);
}

}  // namespace ballfield
