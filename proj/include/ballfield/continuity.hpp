// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ballfield/gaussian.hpp"
#include "ballfield/kernels.hpp"

namespace ballfield {

/// Pairwise canonical pseudo-metric over a finite grid of balls.
struct MetricTable
{
    std::vector<Ball> balls;
    Eigen::MatrixXd dist;
    double diameter = 0.0;

    int size() const { return static_cast<int>(balls.size()); }
};

MetricTable pseudo_metric_table(const KernelSpec& spec, std::span<const Ball> grid,
                                const QuadratureConfig& cfg = {});
MetricTable pseudo_metric_table_serial(const KernelSpec& spec, std::span<const Ball> grid,
                                       const QuadratureConfig& cfg = {});

/// Farthest-point (Gonzalez) traversal of the grid: order[k] is the k-th
/// center, cover_radius[k] the distance of the farthest grid point from the
/// first k+1 centers. Deterministic: starts at index 0, ties to the smaller
/// index. The prefix length needed to cover at radius eps is nonincreasing in
/// eps by construction, and sits between the true covering numbers
/// N(eps) <= greedy(eps) <= N(eps/2) (the standard packing relation).
struct FarthestPointOrder
{
    std::vector<int> order;
    std::vector<double> cover_radius;
};

FarthestPointOrder farthest_point_order(const MetricTable& table);

/// Size of the greedy cover of the grid by closed pseudo-metric balls of
/// radius eps.
int covering_number(const MetricTable& table, double eps);
int covering_number(const KernelSpec& spec, std::span<const Ball> grid, double eps,
                    const QuadratureConfig& cfg = {});

struct EntropyReport
{
    std::string region;
    double grid_step = 0.0;
    double diameter = 0.0;
    std::vector<double> schedule;  // evaluated epsilons, decreasing from the diameter
    std::vector<int> covering;     // N(eps) along the schedule
    double integral = 0.0;         // trapezoid of sqrt(log N) over the schedule
    double truncation_epsilon = 0.0;
    bool monotone = false;
};

/// Entropy integral estimate: trapezoid quadrature of sqrt(log N(eps)) from
/// the empirical diameter down to the smallest schedule point (the integral
/// is truncated there, never extended to zero).
EntropyReport entropy_integral(const KernelSpec& spec, std::span<const Ball> grid,
                               std::span<const double> schedule, const QuadratureConfig& cfg = {});
EntropyReport entropy_integral(const MetricTable& table, std::span<const double> schedule);

struct PathModulusReport
{
    std::size_t pairs_used = 0;
    std::size_t excluded_zero_distance = 0;
    std::size_t n_samples = 0;
    std::size_t flagged_samples = 0;  // some increment above k d sqrt(2 log pairs)
    double threshold_factor = 0.0;    // k sqrt(2 log pairs)
    double max_ratio = 0.0;           // max |X_b - X_b'| / d(b, b') observed
    std::vector<double> pair_distance;
    std::vector<double> pair_empirical_variance;  // of the increments X_b - X_b'
};

/// Empirical modulus diagnostics over the closest `pair_budget` positive-
/// distance pairs of the grid.
PathModulusReport path_modulus(const SampleBatch& batch, const MetricTable& table,
                               std::size_t pair_budget, double k = 3.0);

}  // namespace ballfield
