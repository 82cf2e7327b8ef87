// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace ballfield {

namespace {

void require_positive_time(std::span<const Ball> balls, bool strict, const char* who)
{
    for (std::size_t i = 0; i < balls.size(); ++i)
    {
        const double margin = balls[i].time() - balls[i].radius;
        const bool ok = strict ? margin > 0.0 : margin >= 0.0;
        if (!ok)
            throw PreconditionError(std::string(who) + ": ball " + std::to_string(i) +
                                    " does not lie in the positive-time half-space (t - r = " +
                                    std::to_string(margin) + ")");
    }
}

RPReport finish_symmetric_report(RPKind kind, Eigen::MatrixXd s, double tolerance)
{
    RPReport rep;
    rep.kind = kind;
    rep.n = static_cast<int>(s.rows());
    rep.tolerance = tolerance;
    Eigen::VectorXd vec;
    rep.min_eigenvalue = min_eigenvalue_symmetric(s, &vec);
    rep.pass = rep.min_eigenvalue >= -tolerance;
    if (!rep.pass)
        rep.witness = vec.cast<std::complex<double>>();
    rep.matrix = s.cast<std::complex<double>>();
    return rep;
}

}  // namespace

std::vector<Ball> reflected_configuration(std::span<const Ball> balls)
{
    std::vector<Ball> doubled(balls.begin(), balls.end());
    if (balls.empty())
        return doubled;
    const EuclideanMotion theta = time_reflection(balls[0].dim());
    for (const Ball& b : balls)
        doubled.push_back(apply_motion(theta, b));
    return doubled;
}

RPReport rp_kernel_check(const KernelSpec& spec, std::span<const Ball> balls,
                         const QuadratureConfig& cfg)
{
    if (balls.empty())
        throw std::invalid_argument("rp_kernel_check: empty configuration");
    require_positive_time(balls, /*strict=*/false, "rp_kernel_check");

    const int n = static_cast<int>(balls.size());
    const EuclideanMotion theta = time_reflection(balls[0].dim());
    std::vector<Ball> reflected;
    reflected.reserve(balls.size());
    for (const Ball& b : balls)
        reflected.push_back(apply_motion(theta, b));

    // Entries K(b_i, theta b_j); the matrix is symmetric because the kernel is
    // invariant under the reflection isometry.
    Eigen::MatrixXd s(n, n);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            pairs.emplace_back(i, j);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < static_cast<long>(pairs.size()); ++k)
    {
        try
        {
            const auto [i, j] = pairs[k];
            const double v = eval_kernel(spec, balls[i], reflected[j], cfg);
            s(i, j) = v;
            s(j, i) = v;
        }
        catch (...)
        {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    const double tol = spec.needs_quadrature() ? 1e-8 * std::abs(s.trace()) / n : 1e-10;
    return finish_symmetric_report(RPKind::KernelTheta, std::move(s), tol);
}

RPReport rp_gaussian_check(const KernelSpec& spec, std::span<const Ball> balls,
                           std::span<const Functional> functionals, const QuadratureConfig& cfg)
{
    if (functionals.empty())
        throw std::invalid_argument("rp_gaussian_check: no functionals");
    require_positive_time(balls, /*strict=*/true, "rp_gaussian_check");
    const int n = static_cast<int>(balls.size());
    for (const Functional& f : functionals)
        if (f.max_index() >= n)
            throw std::invalid_argument("rp_gaussian_check: functional index out of range");

    const std::vector<Ball> doubled = reflected_configuration(balls);
    const CovarianceMatrix c = kernel_matrix(spec, doubled, cfg);
    const auto block_a = c.entries.topLeftCorner(n, n);
    const auto block_b = c.entries.topRightCorner(n, n);  // K(b_k, theta b_l)

    const int nf = static_cast<int>(functionals.size());
    const auto weights = [&](const Functional& f) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
        for (const auto& [idx, lam] : f.coefficients)
            w[idx] += lam;
        return w;
    };
    std::vector<Eigen::VectorXd> lam(functionals.size());
    for (int i = 0; i < nf; ++i)
        lam[i] = weights(functionals[i]);

    std::vector<double> quad(nf);
    for (int i = 0; i < nf; ++i)
        quad[i] = lam[i].dot(block_a * lam[i]);

    // Var(F_i - theta F_j) = q_i + q_j - 2 lam_i^T B lam_j; computed for
    // i <= j and mirrored so S is exactly symmetric.
    Eigen::MatrixXd s(nf, nf);
    for (int i = 0; i < nf; ++i)
    {
        for (int j = i; j < nf; ++j)
        {
            const double cross = lam[i].dot(block_b * lam[j]);
            const double variance = quad[i] + quad[j] - 2.0 * cross;
            const double v = std::exp(-0.5 * variance);
            s(i, j) = v;
            s(j, i) = v;
        }
    }

    const double tol = 1e-8 * std::abs(s.trace()) / nf;
    return finish_symmetric_report(RPKind::GaussianClosedForm, std::move(s), tol);
}

RPReport rp_monte_carlo_check(const SampleBatch& batch, std::span<const Functional> functionals,
                              int bootstrap_resamples, std::uint64_t bootstrap_seed)
{
    if (batch.n_samples() < 1000)
        throw PreconditionError("rp_monte_carlo_check: need at least 10^3 samples");
    if (batch.n() % 2 != 0)
        throw PreconditionError(
            "rp_monte_carlo_check: batch must cover the doubled configuration");
    const int half = batch.n() / 2;
    for (const Functional& f : functionals)
        if (f.max_index() >= half)
            throw std::invalid_argument("rp_monte_carlo_check: functional index out of range");
    if (functionals.empty())
        throw std::invalid_argument("rp_monte_carlo_check: no functionals");

    const int nf = static_cast<int>(functionals.size());
    const std::int64_t m = batch.n_samples();
    const int blocks = static_cast<int>(std::min<std::int64_t>(1000, m));

    // Per-block sums of the rank-one contributions u w^H with
    // u_i = exp(i F_i(X)), w_j = exp(i (theta F_j)(X)).
    std::vector<Eigen::MatrixXcd> block_sum(blocks, Eigen::MatrixXcd::Zero(nf, nf));
    std::vector<std::int64_t> block_count(blocks, 0);
#pragma omp parallel
    {
        std::vector<Eigen::MatrixXcd> local(blocks, Eigen::MatrixXcd::Zero(nf, nf));
        std::vector<std::int64_t> local_count(blocks, 0);
        Eigen::VectorXcd u(nf), w(nf);
#pragma omp for schedule(static)
        for (std::int64_t s = 0; s < m; ++s)
        {
            const auto row = batch.values.row(s);
            for (int i = 0; i < nf; ++i)
            {
                const double fi = functionals[i].evaluate(row);
                const double fj = functionals[i].shifted(half).evaluate(row);
                u[i] = std::complex<double>(std::cos(fi), std::sin(fi));
                w[i] = std::complex<double>(std::cos(fj), std::sin(fj));
            }
            const int blk = static_cast<int>(s * blocks / m);
            local[blk].noalias() += u * w.adjoint();
            ++local_count[blk];
        }
#pragma omp critical
        for (int b = 0; b < blocks; ++b)
        {
            block_sum[b] += local[b];
            block_count[b] += local_count[b];
        }
    }

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(nf, nf);
    for (const auto& bsum : block_sum)
        total += bsum;
    Eigen::MatrixXcd s_hat = total / static_cast<double>(m);
    s_hat = 0.5 * (s_hat + s_hat.adjoint()).eval();  // exact Hermitian symmetry

    RPReport rep;
    rep.kind = RPKind::MonteCarlo;
    rep.n = nf;
    rep.seed = bootstrap_seed;
    Eigen::VectorXcd vec;
    rep.min_eigenvalue = min_eigenvalue_hermitian(s_hat, &vec);
    rep.matrix = s_hat;

    // Block bootstrap: resample the fixed blocks with replacement, track the
    // dispersion of both the smallest eigenvalue and every entry.
    double eig_mean = 0.0, eig_m2 = 0.0;
    Eigen::MatrixXcd entry_mean = Eigen::MatrixXcd::Zero(nf, nf);
    Eigen::MatrixXd entry_m2 = Eigen::MatrixXd::Zero(nf, nf);
    CounterRng rng(bootstrap_seed, RngStream::Bootstrap, 0);
    for (int r = 0; r < bootstrap_resamples; ++r)
    {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(nf, nf);
        std::int64_t cnt = 0;
        for (int b = 0; b < blocks; ++b)
        {
            const int pick = static_cast<int>(rng.next_below(blocks));
            acc += block_sum[pick];
            cnt += block_count[pick];
        }
        Eigen::MatrixXcd sr = acc / static_cast<double>(cnt);
        sr = 0.5 * (sr + sr.adjoint()).eval();
        const double ev = min_eigenvalue_hermitian(sr);
        const double delta = ev - eig_mean;
        eig_mean += delta / (r + 1);
        eig_m2 += delta * (ev - eig_mean);
        const Eigen::MatrixXcd dmat = sr - entry_mean;
        entry_mean += dmat / (r + 1);
        entry_m2 += (dmat.array().conjugate() * (sr - entry_mean).array()).real().matrix();
    }
    rep.min_eig_std_error =
        bootstrap_resamples > 1 ? std::sqrt(eig_m2 / (bootstrap_resamples - 1)) : 0.0;
    rep.entry_se = bootstrap_resamples > 1
                       ? (entry_m2 / (bootstrap_resamples - 1)).cwiseSqrt()
                       : Eigen::MatrixXd::Zero(nf, nf);
    rep.entry_std_error = rep.entry_se.maxCoeff();

    // Reflection positivity holds exactly in theory; the tolerance is pure
    // statistics plus an eigensolver roundoff floor for degenerate cases.
    const double floor = 1e-12 * std::max(1.0, s_hat.cwiseAbs().maxCoeff()) * nf;
    rep.tolerance = 3.0 * rep.min_eig_std_error + floor;
    rep.pass = rep.min_eigenvalue >= -rep.tolerance;
    if (!rep.pass)
        rep.witness = vec;
    return rep;
}

double invariance_check(const KernelSpec& spec, std::span<const EuclideanMotion> motions,
                        std::span<const Ball> balls, const QuadratureConfig& cfg)
{
    const int n = static_cast<int>(balls.size());
    std::vector<double> base(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            base[i * n + j] = eval_kernel(spec, balls[i], balls[j], cfg);

    double worst = 0.0;
    for (const EuclideanMotion& g : motions)
    {
        std::vector<Ball> moved;
        moved.reserve(balls.size());
        for (const Ball& b : balls)
            moved.push_back(apply_motion(g, b));
#pragma omp parallel for schedule(dynamic, 1) reduction(max : worst)
        for (int i = 0; i < n; ++i)
        {
            for (int j = i; j < n; ++j)
            {
                const double v = eval_kernel(spec, moved[i], moved[j], cfg);
                worst = std::max(worst, std::abs(v - base[i * n + j]));
            }
        }
    }
    return worst;
}

MonotonicityReport index_monotonicity_check(const Region& v1, const Region& v2,
                                            std::span<const Ball> pool,
                                            std::span<const EuclideanMotion> motions)
{
    MonotonicityReport rep;
    rep.subset_certified = region_subset(v1, v2);
    if (!rep.subset_certified)
        throw UnsupportedRegionQuery(
            "index_monotonicity_check: V1 is not a certified subset of V2");

    std::vector<char> in1(pool.size()), in2(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        in1[i] = region_contains_ball(v1, pool[i]);
        in2[i] = region_contains_ball(v2, pool[i]);
    }
    rep.index_sets_nested = true;
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        if (in1[i] && !in2[i])
            rep.index_sets_nested = false;
        rep.n_inner += in1[i] ? 1 : 0;
        rep.n_outer += in2[i] ? 1 : 0;
    }

    // Covariance of the index sets: selecting in V then moving must match
    // moving the pool and selecting in g V, ball for ball.
    for (const EuclideanMotion& g : motions)
    {
        const std::optional<Region> gv = transform_region(g, v1);
        if (!gv)
            continue;
        ++rep.motions_checked;
        for (std::size_t i = 0; i < pool.size(); ++i)
        {
            const Ball moved = apply_motion(g, pool[i]);
            const bool selected_then_moved = static_cast<bool>(in1[i]);
            const bool moved_then_selected = region_contains_ball(*gv, moved);
            if (selected_then_moved != moved_then_selected)
                rep.equivariant = false;
        }
    }
    rep.pass = rep.index_sets_nested && rep.equivariant;
    return rep;
}

}  // namespace ballfield
