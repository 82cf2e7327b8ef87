// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace ballfield {

struct QuadratureConfig
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 20000;
    /// Hard cap on the truncation radius of the oscillatory radial integrals.
    double max_truncation_radius = 5e6;

    void validate() const;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;      // estimated quadrature error (absolute)
    double tail_bound = 0.0; // bound on the discarded tail, when truncated
    long evaluations = 0;
    int panels = 0;
    bool converged = false;

    double total_error() const { return error + tail_bound; }
};

/// Error raised when an integral cannot be resolved to the requested
/// tolerance; carries the achieved error estimate.
struct NumericalError : std::runtime_error
{
    double achieved_error;
    explicit NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved)
    {
    }
};

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature over [a, b].
///
/// The interval is pre-split into `initial_panels` equal panels (so that
/// oscillatory integrands start resolved) and the worst panel is bisected
/// until the summed error estimate meets max(abs_tol, rel_tol * |value|)
/// or the subdivision budget runs out. Deterministic for given inputs;
/// the final sum runs over panels ordered by position.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg, int initial_panels = 1);

}  // namespace ballfield
