// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/generators.hpp"

#include <Eigen/QR>

namespace ballfield {

std::vector<Ball> random_balls(std::uint64_t seed, int count, int d, double box_lo, double box_hi,
                               double r_min, double r_max)
{
    if (count < 1 || d < 1 || !(r_min > 0.0) || r_max < r_min || box_hi < box_lo)
        throw std::invalid_argument("random_balls: bad generator parameters");
    CounterRng rng(seed, RngStream::BallGen, 0);
    std::vector<Ball> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
    {
        Eigen::VectorXd c(d);
        for (int i = 0; i < d; ++i)
            c[i] = rng.next_uniform(box_lo, box_hi);
        out.emplace_back(std::move(c), rng.next_uniform(r_min, r_max));
    }
    return out;
}

std::vector<Ball> random_balls_positive_time(std::uint64_t seed, int count, int d, double box_lo,
                                             double box_hi, double r_min, double r_max,
                                             double margin, double t_span)
{
    if (count < 1 || d < 1 || !(r_min > 0.0) || r_max < r_min)
        throw std::invalid_argument("random_balls_positive_time: bad generator parameters");
    CounterRng rng(seed, RngStream::BallGen, 1);
    std::vector<Ball> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
    {
        const double r = rng.next_uniform(r_min, r_max);
        Eigen::VectorXd c(d);
        c[0] = r + margin + rng.next_uniform(0.0, t_span);
        for (int i = 1; i < d; ++i)
            c[i] = rng.next_uniform(box_lo, box_hi);
        out.emplace_back(std::move(c), r);
    }
    return out;
}

std::vector<EuclideanMotion> random_motions(std::uint64_t seed, int count, int d,
                                            double translation_scale)
{
    CounterRng rng(seed, RngStream::BallGen, 2);
    std::vector<EuclideanMotion> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
    {
        Eigen::MatrixXd g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                g(i, j) = rng.next_normal();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        Eigen::MatrixXd q = qr.householderQ();
        const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < d; ++j)
            if (r(j, j) < 0.0)
                q.col(j) = -q.col(j);
        Eigen::VectorXd t(d);
        for (int i = 0; i < d; ++i)
            t[i] = translation_scale * rng.next_normal();
        out.push_back({std::move(q), std::move(t)});
    }
    return out;
}

std::vector<Functional> random_functionals(std::uint64_t seed, int count, int n_balls, int terms,
                                           double w)
{
    if (count < 1 || n_balls < 1 || terms < 1)
        throw std::invalid_argument("random_functionals: bad generator parameters");
    CounterRng rng(seed, RngStream::Functionals, 0);
    std::vector<Functional> out(count);
    for (Functional& f : out)
    {
        for (int t = 0; t < terms; ++t)
        {
            const int idx = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_balls)));
            f.coefficients.emplace_back(idx, rng.next_uniform(-w, w));
        }
    }
    return out;
}

}  // namespace ballfield
