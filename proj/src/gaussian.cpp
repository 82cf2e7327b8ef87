// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace ballfield {

namespace {

template <bool Parallel>
SampleBatch draw_samples(const KernelSpec& spec, std::span<const Ball> balls,
                         std::int64_t n_samples, std::uint64_t seed, const QuadratureConfig& cfg,
                         const JitterPolicy& policy)
{
    if (n_samples < 1)
        throw std::invalid_argument("sample: n_samples must be >= 1");
    CovarianceMatrix c = factorize(kernel_matrix(spec, balls, cfg), policy);
    const int n = c.n;
    const Eigen::MatrixXd& l = *c.factor;

    SampleBatch batch;
    batch.balls.assign(balls.begin(), balls.end());
    batch.values.resize(n_samples, n);
    batch.seed = seed;
    batch.kernel_name = spec.name();
    batch.jitter = c.jitter;

    const auto draw_row = [&](std::int64_t s) {
        Eigen::VectorXd z(n);
        fill_standard_normals({z.data(), static_cast<std::size_t>(n)}, seed, RngStream::Normals,
                              static_cast<std::uint64_t>(s));
        batch.values.row(s) = (l * z).transpose();
    };

    if constexpr (Parallel)
    {
#pragma omp parallel for schedule(static)
        for (std::int64_t s = 0; s < n_samples; ++s)
            draw_row(s);
    }
    else
    {
        for (std::int64_t s = 0; s < n_samples; ++s)
            draw_row(s);
    }
    return batch;
}

template <bool Parallel>
CovarianceMatrix second_moment(const SampleBatch& batch)
{
    if (batch.n_samples() < 2)
        throw std::invalid_argument("empirical_covariance: need at least 2 samples");
    const int n = batch.n();
    const std::int64_t m = batch.n_samples();

    CovarianceMatrix c;
    c.n = n;
    c.d = batch.balls.empty() ? 0 : batch.balls[0].dim();
    c.entries.resize(n, n);

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            pairs.emplace_back(i, j);

    // Entries are independent; the per-entry sum runs in sample order so the
    // result does not depend on the thread count.
    const auto entry = [&](int i, int j) {
        double acc = 0.0;
        for (std::int64_t s = 0; s < m; ++s)
            acc += batch.values(s, i) * batch.values(s, j);
        return acc / static_cast<double>(m);
    };

    if constexpr (Parallel)
    {
#pragma omp parallel for schedule(static)
        for (long k = 0; k < static_cast<long>(pairs.size()); ++k)
        {
            const auto [i, j] = pairs[k];
            const double v = entry(i, j);
            c.entries(i, j) = v;
            c.entries(j, i) = v;
        }
    }
    else
    {
        for (const auto& [i, j] : pairs)
        {
            const double v = entry(i, j);
            c.entries(i, j) = v;
            c.entries(j, i) = v;
        }
    }
    return c;
}

}  // namespace

SampleBatch sample(const KernelSpec& spec, std::span<const Ball> balls, std::int64_t n_samples,
                   std::uint64_t seed, const QuadratureConfig& cfg, const JitterPolicy& policy)
{
    return draw_samples<true>(spec, balls, n_samples, seed, cfg, policy);
}

SampleBatch sample_serial(const KernelSpec& spec, std::span<const Ball> balls,
                          std::int64_t n_samples, std::uint64_t seed, const QuadratureConfig& cfg,
                          const JitterPolicy& policy)
{
    return draw_samples<false>(spec, balls, n_samples, seed, cfg, policy);
}

CovarianceMatrix empirical_covariance(const SampleBatch& batch)
{
    return second_moment<true>(batch);
}

CovarianceMatrix empirical_covariance_serial(const SampleBatch& batch)
{
    return second_moment<false>(batch);
}

ConsistencyReport marginal_consistency(const KernelSpec& spec, std::span<const Ball> balls,
                                       std::span<const int> subset, std::int64_t n_samples,
                                       std::uint64_t seed, const QuadratureConfig& cfg)
{
    if (subset.empty())
        throw std::invalid_argument("marginal_consistency: subset must be nonempty");
    const int n = static_cast<int>(balls.size());
    for (int idx : subset)
        if (idx < 0 || idx >= n)
            throw std::invalid_argument("marginal_consistency: subset index out of range");

    std::vector<Ball> sub_balls;
    for (int idx : subset)
        sub_balls.push_back(balls[idx]);

    const CovarianceMatrix full = kernel_matrix(spec, balls, cfg);
    const CovarianceMatrix sub = kernel_matrix(spec, sub_balls, cfg);

    ConsistencyReport rep;
    rep.n_full = n;
    rep.n_subset = static_cast<int>(subset.size());

    rep.submatrix_exact = true;
    for (int a = 0; a < rep.n_subset; ++a)
        for (int b = 0; b < rep.n_subset; ++b)
            if (sub.entries(a, b) != full.entries(subset[a], subset[b]))
                rep.submatrix_exact = false;

    // Independent draws for the two routes; agreement is judged in CLT sigmas
    // of the difference of two independent second-moment estimators.
    const SampleBatch batch_full = sample(spec, balls, n_samples, seed, cfg);
    const SampleBatch batch_sub = sample(spec, sub_balls, n_samples, seed ^ 0x9e3779b97f4a7c15ull, cfg);
    const CovarianceMatrix emp_full = empirical_covariance(batch_full);
    const CovarianceMatrix emp_sub = empirical_covariance(batch_sub);

    double worst = 0.0;
    for (int a = 0; a < rep.n_subset; ++a)
    {
        for (int b = 0; b < rep.n_subset; ++b)
        {
            const double cii = sub.entries(a, a);
            const double cjj = sub.entries(b, b);
            const double cij = sub.entries(a, b);
            const double var_one = (cii * cjj + cij * cij) / static_cast<double>(n_samples);
            const double sigma = std::sqrt(2.0 * var_one);
            const double diff =
                std::abs(emp_sub.entries(a, b) - emp_full.entries(subset[a], subset[b]));
            if (sigma > 0.0)
                worst = std::max(worst, diff / sigma);
            else if (diff != 0.0)
                worst = std::numeric_limits<double>::infinity();
        }
    }
    rep.max_empirical_sigma = worst;
    rep.pass = rep.submatrix_exact && worst <= rep.sigma_bound;
    return rep;
}

}  // namespace ballfield
