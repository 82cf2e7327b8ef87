// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/kernels.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "ballfield/special.hpp"

namespace ballfield {

namespace {
constexpr double kPi = std::numbers::pi;
}

KernelSpec KernelSpec::free_field(double mass)
{
    KernelSpec s;
    s.family = KernelFamily::FreeField;
    s.mass = mass;
    s.validate();
    return s;
}

KernelSpec KernelSpec::with_multiplier(SpectralMultiplier m)
{
    KernelSpec s;
    s.family = KernelFamily::Spectral;
    s.spectral = std::move(m);
    s.validate();
    return s;
}

bool KernelSpec::needs_quadrature() const
{
    switch (family)
    {
        case KernelFamily::W:
        case KernelFamily::White:
            return false;
        case KernelFamily::FreeField:
            return true;
        case KernelFamily::Spectral:
            return static_cast<bool>(spectral.decaying);
    }
    return false;
}

std::string KernelSpec::name() const
{
    switch (family)
    {
        case KernelFamily::W:
            return "w";
        case KernelFamily::White:
            return "white";
        case KernelFamily::FreeField:
            return "free_field";
        case KernelFamily::Spectral:
            return spectral.name;
    }
    return "unknown";
}

void KernelSpec::validate() const
{
    if (family == KernelFamily::FreeField && !(mass > 0.0))
        throw std::invalid_argument("KernelSpec: free-field mass must be positive");
    if (family == KernelFamily::Spectral)
    {
        const auto& m = spectral;
        if (m.constant < 0.0)
            throw std::invalid_argument("KernelSpec: spectral constant must be >= 0");
        if (!m.decaying && m.constant == 0.0)
            throw std::invalid_argument("KernelSpec: spectral multiplier is identically zero");
        if (m.decaying)
        {
            if (!(m.tail_power > 1.0) || !(m.tail_amplitude > 0.0))
                throw std::invalid_argument(
                    "KernelSpec: decaying multiplier needs a tail bound amp*rho^-p, p > 1");
        }
        if (!(m.lower_bound >= 0.0) || m.upper_bound < m.lower_bound)
            throw std::invalid_argument("KernelSpec: invalid multiplier bounds");
    }
}

namespace {

// Reciprocal ball volume v_r from the kernel normalization.
double recip_volume(int d, double r)
{
    return 1.0 / ball_volume(d, r);
}

struct RadialIntegral
{
    double prefactor = 0.0;
    std::function<double(double)> integrand;
    double truncation = 0.0;  // R
    double tail_bound = 0.0;  // bound on prefactor * int_R^inf integrand
    int initial_panels = 1;
};

// One-dimensional reduction of
//   v_r v_s (2pi)^{-d} \int m(|k|) Fhat_r(|k|) Fhat_s(|k|) cos(k.(x-y)) dk,
// with Fhat_r(rho) = (2pi)^{d/2} r^{d/2} J_{d/2}(r rho) / rho^{d/2}:
//
//   dist > 0:  P = v_r v_s (2pi)^{d/2} (rs)^{d/2} dist^{1 - d/2},
//              I(rho) = m(rho) J_{d/2}(r rho) J_{d/2}(s rho)
//                       J_{(d-2)/2}(dist rho) rho^{-d/2}
//   dist = 0:  P = v_r v_s (2 pi^{d/2} / Gamma(d/2)) (rs)^{d/2},
//              I(rho) = m(rho) J_{d/2}(r rho) J_{d/2}(s rho) / rho
//
// The truncation radius R is chosen from the Bessel envelope
// |J_nu(x)| <= min(1, sqrt(2/(pi x))) and the declared multiplier tail
// m(rho) <= amp * rho^{-p}, so that the discarded mass is certified.
RadialIntegral make_radial_integral(const KernelSpec& spec, int d, double r, double s,
                                    double dist, const QuadratureConfig& cfg)
{
    double tail_amp;
    double tail_pow;
    std::function<double(double)> mult;
    if (spec.family == KernelFamily::FreeField)
    {
        const double m2 = spec.mass * spec.mass;
        mult = [m2](double rho) { return 1.0 / (rho * rho + m2); };
        tail_amp = 1.0;
        tail_pow = 2.0;
    }
    else
    {
        mult = spec.spectral.decaying;
        tail_amp = spec.spectral.tail_amplitude;
        tail_pow = spec.spectral.tail_power;
    }

    RadialIntegral out;
    const int twice_nu_ball = d;      // J_{d/2}
    const int twice_nu_ang = d - 2;   // J_{(d-2)/2}

    if (dist > 0.0)
    {
        out.prefactor = recip_volume(d, r) * recip_volume(d, s) *
                        std::pow(2.0 * kPi, 0.5 * d) * std::pow(r * s, 0.5 * d) *
                        std::pow(dist, 1.0 - 0.5 * d);
        out.integrand = [=](double rho) {
            return mult(rho) * bessel_j_half(twice_nu_ball, r * rho) *
                   bessel_j_half(twice_nu_ball, s * rho) *
                   bessel_j_half(twice_nu_ang, dist * rho) * std::pow(rho, -0.5 * d);
        };
    }
    else
    {
        out.prefactor = recip_volume(d, r) * recip_volume(d, s) *
                        (2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d)) *
                        std::pow(r * s, 0.5 * d);
        out.integrand = [=](double rho) {
            return mult(rho) * bessel_j_half(twice_nu_ball, r * rho) *
                   bessel_j_half(twice_nu_ball, s * rho) / rho;
        };
    }

    // Envelope beyond R: C * rho^{-q}; tail(R) = |P| C R^{1-q} / (q-1).
    double env_c;
    double q;
    if (dist > 0.0)
    {
        env_c = tail_amp * std::pow(2.0 / kPi, 1.5) / std::sqrt(r * s * dist);
        q = tail_pow + 1.5 + 0.5 * d;
    }
    else
    {
        env_c = tail_amp * (2.0 / kPi) / std::sqrt(r * s);
        q = tail_pow + 2.0;
    }
    const double tail_target = 0.5 * cfg.abs_tol;
    double radius =
        std::pow(std::abs(out.prefactor) * env_c / ((q - 1.0) * tail_target), 1.0 / (q - 1.0));
    // keep the sqrt envelope regime valid and cover the main lobe of every factor
    const double min_scale = std::min({r, s, dist > 0.0 ? dist : r});
    radius = std::max({radius, 10.0, 8.0 / min_scale});
    radius = std::min(radius, cfg.max_truncation_radius);
    out.truncation = radius;
    out.tail_bound =
        std::abs(out.prefactor) * env_c * std::pow(radius, 1.0 - q) / (q - 1.0);

    // Pre-split so each starting panel holds roughly two oscillation periods.
    const double omega = r + s + dist;
    out.initial_panels = static_cast<int>(
        std::clamp(std::ceil(radius * omega / (4.0 * kPi)), 8.0, 65536.0));
    return out;
}

KernelValue eval_quadrature_kernel(const KernelSpec& spec, const Ball& b1, const Ball& b2,
                                   const QuadratureConfig& cfg)
{
    const int d = b1.dim();
    const double r = b1.radius;
    const double s = b2.radius;
    const double dist = (b1.center - b2.center).norm();

    double base = 0.0;  // constant part of the multiplier acts as scaled white noise
    if (spec.family == KernelFamily::Spectral && spec.spectral.constant > 0.0)
        base = spec.spectral.constant * recip_volume(d, r) * recip_volume(d, s) *
               intersection_volume(b1, b2);
    if (!spec.needs_quadrature())
        return {base, 0.0};

    const RadialIntegral ri = make_radial_integral(spec, d, r, s, dist, cfg);

    QuadratureConfig inner = cfg;
    inner.abs_tol = 0.5 * cfg.abs_tol;
    const auto f = [&](double rho) { return ri.prefactor * ri.integrand(rho); };
    const QuadratureResult qr =
        integrate_adaptive(f, 0.0, ri.truncation, inner, ri.initial_panels);

    const double total_err = qr.error + ri.tail_bound;
    const double value = base + qr.value;
    if (!qr.converged && total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)))
        throw NumericalError("eval_kernel: radial quadrature did not converge (error estimate " +
                                 std::to_string(total_err) + ")",
                             total_err);
    return {value, total_err};
}

}  // namespace

KernelValue eval_kernel_detailed(const KernelSpec& spec, const Ball& b1, const Ball& b2,
                                 const QuadratureConfig& cfg)
{
    if (b1.dim() != b2.dim())
        throw std::invalid_argument("eval_kernel: dimension mismatch");
    spec.validate();

    switch (spec.family)
    {
        case KernelFamily::W:
            return {intersection_volume(b1, b2), 0.0};
        case KernelFamily::White:
            return {recip_volume(b1.dim(), b1.radius) * recip_volume(b2.dim(), b2.radius) *
                        intersection_volume(b1, b2),
                    0.0};
        case KernelFamily::FreeField:
        case KernelFamily::Spectral:
            return eval_quadrature_kernel(spec, b1, b2, cfg);
    }
    throw std::logic_error("eval_kernel: unknown family");
}

double eval_kernel(const KernelSpec& spec, const Ball& b1, const Ball& b2,
                   const QuadratureConfig& cfg)
{
    return eval_kernel_detailed(spec, b1, b2, cfg).value;
}

double pseudo_metric(const KernelSpec& spec, const Ball& b1, const Ball& b2,
                     const QuadratureConfig& cfg)
{
    const double k11 = eval_kernel(spec, b1, b1, cfg);
    const double k22 = eval_kernel(spec, b2, b2, cfg);
    const double k12 = eval_kernel(spec, b1, b2, cfg);
    return std::sqrt(std::max(0.0, k11 + k22 - 2.0 * k12));
}

namespace {

template <bool Parallel>
CovarianceMatrix assemble_matrix(const KernelSpec& spec, std::span<const Ball> balls,
                                 const QuadratureConfig& cfg)
{
    if (balls.empty())
        throw std::invalid_argument("kernel_matrix: empty ball configuration");
    const int n = static_cast<int>(balls.size());
    const int d = balls[0].dim();
    for (const Ball& b : balls)
        if (b.dim() != d)
            throw std::invalid_argument("kernel_matrix: mixed dimensions in configuration");

    // flatten the upper triangle so the parallel loop is one dimensional
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            pairs.emplace_back(i, j);

    std::vector<KernelValue> vals(pairs.size());
    std::exception_ptr failure;
    if constexpr (Parallel)
    {
#pragma omp parallel for schedule(dynamic, 1)
        for (long k = 0; k < static_cast<long>(pairs.size()); ++k)
        {
            try
            {
                const auto [i, j] = pairs[k];
                vals[k] = eval_kernel_detailed(spec, balls[i], balls[j], cfg);
            }
            catch (...)
            {
#pragma omp critical
                if (!failure)
                    failure = std::current_exception();
            }
        }
    }
    else
    {
        for (std::size_t k = 0; k < pairs.size(); ++k)
        {
            const auto [i, j] = pairs[k];
            vals[k] = eval_kernel_detailed(spec, balls[i], balls[j], cfg);
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    CovarianceMatrix c;
    c.n = n;
    c.d = d;
    c.entries.resize(n, n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
    {
        const auto [i, j] = pairs[k];
        c.entries(i, j) = vals[k].value;
        c.entries(j, i) = vals[k].value;
        c.max_entry_error = std::max(c.max_entry_error, vals[k].error);
    }
    return c;
}

}  // namespace

CovarianceMatrix kernel_matrix(const KernelSpec& spec, std::span<const Ball> balls,
                               const QuadratureConfig& cfg)
{
    return assemble_matrix<true>(spec, balls, cfg);
}

CovarianceMatrix kernel_matrix_serial(const KernelSpec& spec, std::span<const Ball> balls,
                                      const QuadratureConfig& cfg)
{
    return assemble_matrix<false>(spec, balls, cfg);
}

double PushforwardKernel::eval(const Ball& b1, const Ball& b2, const QuadratureConfig& cfg) const
{
    return eval_kernel(spec_, map_(b1), map_(b2), cfg);
}

CovarianceMatrix PushforwardKernel::matrix(std::span<const Ball> balls,
                                           const QuadratureConfig& cfg) const
{
    std::vector<Ball> mapped;
    mapped.reserve(balls.size());
    for (const Ball& b : balls)
        mapped.push_back(map_(b));
    return kernel_matrix(spec_, mapped, cfg);
}

PushforwardKernel pushforward_kernel(KernelSpec spec, std::function<Ball(const Ball&)> map)
{
    return PushforwardKernel(std::move(spec), std::move(map));
}

}  // namespace ballfield
