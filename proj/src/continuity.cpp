// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ballfield {

namespace {

template <bool Parallel>
MetricTable metric_table(const KernelSpec& spec, std::span<const Ball> grid,
                         const QuadratureConfig& cfg)
{
    if (grid.empty())
        throw std::invalid_argument("pseudo_metric_table: empty grid");
    const int n = static_cast<int>(grid.size());

    MetricTable t;
    t.balls.assign(grid.begin(), grid.end());
    t.dist = Eigen::MatrixXd::Zero(n, n);

    // diagonal kernel values once, cross terms per pair
    std::vector<double> diag(n);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);

    std::exception_ptr failure;
    const auto work_diag = [&](int i) { diag[i] = eval_kernel(spec, grid[i], grid[i], cfg); };
    const auto work_pair = [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const double cross = eval_kernel(spec, grid[i], grid[j], cfg);
        const double sq = diag[i] + diag[j] - 2.0 * cross;
        const double dist = std::sqrt(std::max(0.0, sq));
        t.dist(i, j) = dist;
        t.dist(j, i) = dist;
    };

    if constexpr (Parallel)
    {
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < n; ++i)
        {
            try
            {
                work_diag(i);
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
#pragma omp parallel for schedule(dynamic, 4)
        for (long k = 0; k < static_cast<long>(pairs.size()); ++k)
        {
            try
            {
                work_pair(static_cast<std::size_t>(k));
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
    }
    else
    {
        for (int i = 0; i < n; ++i)
            work_diag(i);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            work_pair(k);
    }

    t.diameter = t.dist.maxCoeff();
    return t;
}

}  // namespace

MetricTable pseudo_metric_table(const KernelSpec& spec, std::span<const Ball> grid,
                                const QuadratureConfig& cfg)
{
    return metric_table<true>(spec, grid, cfg);
}

MetricTable pseudo_metric_table_serial(const KernelSpec& spec, std::span<const Ball> grid,
                                       const QuadratureConfig& cfg)
{
    return metric_table<false>(spec, grid, cfg);
}

FarthestPointOrder farthest_point_order(const MetricTable& table)
{
    const int n = table.size();
    FarthestPointOrder fp;
    fp.order.reserve(n);
    fp.cover_radius.reserve(n);

    std::vector<double> dist_to_centers(n, std::numeric_limits<double>::infinity());
    int next = 0;  // deterministic start at the first grid point
    for (int k = 0; k < n; ++k)
    {
        fp.order.push_back(next);
        double far = 0.0;
        int far_idx = next;
        for (int i = 0; i < n; ++i)
        {
            dist_to_centers[i] = std::min(dist_to_centers[i], table.dist(next, i));
            if (dist_to_centers[i] > far)  // strict: ties keep the smaller index
            {
                far = dist_to_centers[i];
                far_idx = i;
            }
        }
        fp.cover_radius.push_back(far);
        next = far_idx;
    }
    return fp;
}

int covering_number(const MetricTable& table, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("covering_number: eps must be positive");
    const FarthestPointOrder fp = farthest_point_order(table);
    for (int k = 0; k < table.size(); ++k)
        if (fp.cover_radius[k] <= eps)
            return k + 1;
    return table.size();
}

int covering_number(const KernelSpec& spec, std::span<const Ball> grid, double eps,
                    const QuadratureConfig& cfg)
{
    return covering_number(pseudo_metric_table(spec, grid, cfg), eps);
}

EntropyReport entropy_integral(const MetricTable& table, std::span<const double> schedule)
{
    for (std::size_t i = 0; i < schedule.size(); ++i)
    {
        if (!(schedule[i] > 0.0))
            throw std::invalid_argument("entropy_integral: schedule must be positive");
        if (i > 0 && !(schedule[i] < schedule[i - 1]))
            throw std::invalid_argument("entropy_integral: schedule must be strictly decreasing");
    }

    EntropyReport rep;
    rep.diameter = table.diameter;

    // Evaluate from the empirical diameter down to the smallest schedule point.
    rep.schedule.push_back(table.diameter);
    for (double eps : schedule)
        if (eps < table.diameter)
            rep.schedule.push_back(eps);

    const FarthestPointOrder fp = farthest_point_order(table);
    const auto cover = [&](double eps) {
        for (int k = 0; k < table.size(); ++k)
            if (fp.cover_radius[k] <= eps)
                return k + 1;
        return table.size();
    };

    rep.monotone = true;
    int prev = 0;
    for (double eps : rep.schedule)
    {
        const int nc = cover(eps);
        if (!rep.covering.empty() && nc < prev)
            rep.monotone = false;  // cannot happen with the prefix construction
        rep.covering.push_back(nc);
        prev = nc;
    }

    double j = 0.0;
    for (std::size_t k = 0; k + 1 < rep.schedule.size(); ++k)
    {
        const double f0 = std::sqrt(std::log(static_cast<double>(rep.covering[k])));
        const double f1 = std::sqrt(std::log(static_cast<double>(rep.covering[k + 1])));
        j += 0.5 * (f0 + f1) * (rep.schedule[k] - rep.schedule[k + 1]);
    }
    rep.integral = j;
    rep.truncation_epsilon = rep.schedule.back();
    return rep;
}

EntropyReport entropy_integral(const KernelSpec& spec, std::span<const Ball> grid,
                               std::span<const double> schedule, const QuadratureConfig& cfg)
{
    return entropy_integral(pseudo_metric_table(spec, grid, cfg), schedule);
}

PathModulusReport path_modulus(const SampleBatch& batch, const MetricTable& table,
                               std::size_t pair_budget, double k)
{
    if (batch.n() != table.size())
        throw std::invalid_argument("path_modulus: batch and metric table disagree");
    const int n = table.size();

    struct PairRec
    {
        int i, j;
        double d;
    };
    std::vector<PairRec> pairs;
    std::size_t zero_excluded = 0;
    for (int i = 0; i < n; ++i)
    {
        for (int j = i + 1; j < n; ++j)
        {
            if (table.dist(i, j) > 0.0)
                pairs.push_back({i, j, table.dist(i, j)});
            else
                ++zero_excluded;
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const PairRec& a, const PairRec& b) { return a.d < b.d; });
    if (pairs.size() > pair_budget)
        pairs.resize(pair_budget);

    PathModulusReport rep;
    rep.pairs_used = pairs.size();
    rep.excluded_zero_distance = zero_excluded;
    rep.n_samples = static_cast<std::size_t>(batch.n_samples());
    if (pairs.empty())
        return rep;

    rep.threshold_factor =
        k * std::sqrt(2.0 * std::log(static_cast<double>(std::max<std::size_t>(pairs.size(), 2))));

    const std::int64_t m = batch.n_samples();
    std::size_t flagged = 0;
    double max_ratio = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : flagged) reduction(max : max_ratio)
    for (std::int64_t s = 0; s < m; ++s)
    {
        bool flag = false;
        for (const PairRec& p : pairs)
        {
            const double inc = std::abs(batch.values(s, p.i) - batch.values(s, p.j));
            max_ratio = std::max(max_ratio, inc / p.d);
            if (inc > rep.threshold_factor * p.d)
                flag = true;
        }
        flagged += flag ? 1 : 0;
    }
    rep.flagged_samples = flagged;
    rep.max_ratio = max_ratio;

    rep.pair_distance.reserve(pairs.size());
    rep.pair_empirical_variance.reserve(pairs.size());
    for (const PairRec& p : pairs)
    {
        double acc = 0.0;
        for (std::int64_t s = 0; s < m; ++s)
        {
            const double inc = batch.values(s, p.i) - batch.values(s, p.j);
            acc += inc * inc;
        }
        rep.pair_distance.push_back(p.d);
        rep.pair_empirical_variance.push_back(acc / static_cast<double>(m));
    }
    return rep;
}

}  // namespace ballfield
