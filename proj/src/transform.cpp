// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ballfield {

Transform Transform::identity()
{
    return Transform{};
}

Transform Transform::tanh()
{
    Transform t;
    t.kind_ = Kind::Tanh;
    t.name_ = "tanh";
    return t;
}

Transform Transform::power(int odd_exponent)
{
    if (odd_exponent < 1 || odd_exponent % 2 == 0)
        throw std::invalid_argument("Transform::power: exponent must be odd and positive");
    Transform t;
    t.kind_ = Kind::Power;
    t.exponent_ = odd_exponent;
    t.name_ = "power" + std::to_string(odd_exponent);
    return t;
}

Transform Transform::clip(double bound)
{
    if (bound < 0.0 || !std::isfinite(bound))
        throw std::invalid_argument("Transform::clip: bound must be finite and >= 0");
    Transform t;
    t.kind_ = Kind::Clip;
    t.bound_ = bound;
    t.name_ = "clip";
    return t;
}

Transform Transform::piecewise_linear(std::vector<double> knots_x, std::vector<double> knots_y)
{
    if (knots_x.size() != knots_y.size() || knots_x.size() < 2)
        throw std::invalid_argument("Transform::piecewise_linear: need >= 2 matching knots");
    for (std::size_t i = 0; i < knots_x.size(); ++i)
    {
        if (!std::isfinite(knots_x[i]) || !std::isfinite(knots_y[i]))
            throw std::invalid_argument("Transform::piecewise_linear: knots must be finite");
        if (i > 0 && !(knots_x[i] > knots_x[i - 1]))
            throw std::invalid_argument("Transform::piecewise_linear: knots must be increasing");
    }
    Transform t;
    t.kind_ = Kind::Table;
    t.xs_ = std::move(knots_x);
    t.ys_ = std::move(knots_y);
    t.name_ = "table";
    return t;
}

double Transform::operator()(double x) const
{
    switch (kind_)
    {
        case Kind::Identity:
            return x;
        case Kind::Tanh:
            return std::tanh(x);
        case Kind::Power:
        {
            double y = 1.0;
            for (int k = 0; k < exponent_; ++k)
                y *= x;
            return y;
        }
        case Kind::Clip:
            return std::clamp(x, -bound_, bound_);
        case Kind::Table:
        {
            // segment lookup with linear extrapolation from the end slopes
            std::size_t hi = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
            hi = std::clamp<std::size_t>(hi, 1, xs_.size() - 1);
            const std::size_t lo = hi - 1;
            const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
            return ys_[lo] + t * (ys_[hi] - ys_[lo]);
        }
    }
    return x;
}

bool Transform::extrapolates_at(double x) const
{
    return kind_ == Kind::Table && (x < xs_.front() || x > xs_.back());
}

SampleBatch apply_transform(const Transform& phi, SampleBatch batch)
{
    bool extrapolated = false;
    double* data = batch.values.data();
    const std::int64_t total = batch.values.size();
#pragma omp parallel for schedule(static) reduction(|| : extrapolated)
    for (std::int64_t k = 0; k < total; ++k)
    {
        extrapolated = extrapolated || phi.extrapolates_at(data[k]);
        data[k] = phi(data[k]);
    }
    batch.extrapolated = batch.extrapolated || extrapolated;
    batch.transform_chain.push_back(phi.name());
    return batch;
}

SampleBatch sample_transformed(const KernelSpec& spec, const Transform& phi,
                               std::span<const Ball> balls, std::int64_t n_samples,
                               std::uint64_t seed, const QuadratureConfig& cfg)
{
    return apply_transform(phi, sample(spec, balls, n_samples, seed, cfg));
}

CharFunctionalResult empirical_char_functional(const SampleBatch& batch,
                                               std::span<const Functional> functionals,
                                               int bootstrap_resamples,
                                               std::uint64_t bootstrap_seed)
{
    const std::int64_t m = batch.n_samples();
    if (m < 1000)
        throw std::invalid_argument("empirical_char_functional: need at least 10^3 samples");
    for (const Functional& f : functionals)
        if (f.max_index() >= batch.n())
            throw std::invalid_argument("empirical_char_functional: functional index out of range");

    const int nf = static_cast<int>(functionals.size());
    const int blocks = static_cast<int>(std::min<std::int64_t>(1000, m));

    CharFunctionalResult res;
    res.values.resize(nf);
    res.std_errors.resize(nf);

#pragma omp parallel for schedule(dynamic, 1)
    for (int q = 0; q < nf; ++q)
    {
        // fixed block partition; bootstrap resamples blocks, not samples
        std::vector<std::complex<double>> block_sum(blocks, 0.0);
        std::vector<std::int64_t> block_count(blocks, 0);
        for (std::int64_t s = 0; s < m; ++s)
        {
            const double f = functionals[q].evaluate(batch.values.row(s));
            const int blk = static_cast<int>(s * blocks / m);
            block_sum[blk] += std::complex<double>(std::cos(f), std::sin(f));
            ++block_count[blk];
        }
        std::complex<double> total = 0.0;
        for (const auto& v : block_sum)
            total += v;
        const std::complex<double> mean = total / static_cast<double>(m);
        res.values[q] = mean;

        CounterRng rng(bootstrap_seed, RngStream::Bootstrap, static_cast<std::uint64_t>(q));
        double var_acc = 0.0;
        for (int r = 0; r < bootstrap_resamples; ++r)
        {
            std::complex<double> acc = 0.0;
            std::int64_t cnt = 0;
            for (int b = 0; b < blocks; ++b)
            {
                const int pick = static_cast<int>(rng.next_below(blocks));
                acc += block_sum[pick];
                cnt += block_count[pick];
            }
            const std::complex<double> re_mean = acc / static_cast<double>(cnt);
            var_acc += std::norm(re_mean - mean);
        }
        res.std_errors[q] = std::sqrt(var_acc / bootstrap_resamples);
    }
    return res;
}

}  // namespace ballfield
