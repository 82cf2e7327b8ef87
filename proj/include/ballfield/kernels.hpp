// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>

#include "ballfield/covariance.hpp"
#include "ballfield/geometry.hpp"
#include "ballfield/quadrature.hpp"

namespace ballfield {

enum class KernelFamily
{
    W,          // plain intersection volume (ball-indexed Brownian sheet)
    White,      // v_r v_s vol(b1 cap b2), mollified white noise
    FreeField,  // (-Laplace + mass^2)^{-1}, mollified free field
    Spectral    // general radial multiplier
};

/// Radial spectral multiplier m(rho) = constant + decaying(rho).
///
/// The decaying part must come with a tail bound decaying(rho) <=
/// tail_amplitude * rho^{-tail_power} (tail_power > 1) so the Fourier
/// integrals can be truncated with a certified remainder. lower/upper_bound
/// are the operator bounds c <= m <= K used by the sandwich tests.
struct SpectralMultiplier
{
    double constant = 0.0;
    std::function<double(double)> decaying;
    double tail_amplitude = 0.0;
    double tail_power = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    std::string name = "spectral";
};

struct KernelSpec
{
    KernelFamily family = KernelFamily::W;
    double mass = 1.0;            // FreeField only
    SpectralMultiplier spectral;  // Spectral only

    static KernelSpec brownian_sheet() { return {KernelFamily::W, 1.0, {}}; }
    static KernelSpec white_noise() { return {KernelFamily::White, 1.0, {}}; }
    static KernelSpec free_field(double mass = 1.0);
    static KernelSpec with_multiplier(SpectralMultiplier m);

    bool needs_quadrature() const;
    std::string name() const;
    void validate() const;
};

struct KernelValue
{
    double value = 0.0;
    double error = 0.0;  // quadrature error estimate + truncation tail bound
};

/// Covariance kernel K(b1, b2) = <v_r 1_{b1}, A v_s 1_{b2}> for the chosen
/// operator A (with v = 1 for the W family). FreeField/Spectral evaluate a
/// one-dimensional radial Fourier integral by adaptive quadrature.
/// Throws NumericalError when the integral fails to converge.
double eval_kernel(const KernelSpec& spec, const Ball& b1, const Ball& b2,
                   const QuadratureConfig& cfg = {});

KernelValue eval_kernel_detailed(const KernelSpec& spec, const Ball& b1, const Ball& b2,
                                 const QuadratureConfig& cfg = {});

/// Canonical pseudo-metric sqrt(max(0, K11 + K22 - 2 K12)).
double pseudo_metric(const KernelSpec& spec, const Ball& b1, const Ball& b2,
                     const QuadratureConfig& cfg = {});

/// Symmetric kernel matrix over a configuration: entries for i <= j are
/// computed (in parallel; each entry independent, so the result is bitwise
/// identical for any thread count) and mirrored.
CovarianceMatrix kernel_matrix(const KernelSpec& spec, std::span<const Ball> balls,
                               const QuadratureConfig& cfg = {});

/// Serial reference implementation of kernel_matrix; identical output.
CovarianceMatrix kernel_matrix_serial(const KernelSpec& spec, std::span<const Ball> balls,
                                      const QuadratureConfig& cfg = {});

/// Kernel view K(psi(b1), psi(b2)) for an index map psi (covariance of the
/// pushforward field).
class PushforwardKernel
{
  public:
    PushforwardKernel(KernelSpec spec, std::function<Ball(const Ball&)> map)
        : spec_(std::move(spec)), map_(std::move(map))
    {
    }

    double eval(const Ball& b1, const Ball& b2, const QuadratureConfig& cfg = {}) const;
    CovarianceMatrix matrix(std::span<const Ball> balls, const QuadratureConfig& cfg = {}) const;

    const KernelSpec& spec() const { return spec_; }

  private:
    KernelSpec spec_;
    std::function<Ball(const Ball&)> map_;
};

PushforwardKernel pushforward_kernel(KernelSpec spec, std::function<Ball(const Ball&)> map);

}  // namespace ballfield
