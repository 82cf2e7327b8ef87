// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ballfield/covariance.hpp"
#include "ballfield/kernels.hpp"
#include "ballfield/rng.hpp"

namespace ballfield {

/// Seeded Monte Carlo draws of field values at a ball configuration.
/// Replaying (seed, configuration, kernel) reproduces `values` bitwise.
struct SampleBatch
{
    std::vector<Ball> balls;
    Eigen::MatrixXd values;  // n_samples x n, one draw per row
    std::uint64_t seed = 0;
    std::string rng_algorithm = "philox4x64-10+box-muller";
    std::string kernel_name;
    double jitter = 0.0;
    std::vector<std::string> transform_chain;
    bool extrapolated = false;  // a table transform was evaluated outside its knots

    int n() const { return static_cast<int>(balls.size()); }
    std::int64_t n_samples() const { return values.rows(); }
};

/// Draws = L z with z i.i.d. standard normal from per-sample Philox streams;
/// parallel over samples, bitwise identical for any thread count.
SampleBatch sample(const KernelSpec& spec, std::span<const Ball> balls, std::int64_t n_samples,
                   std::uint64_t seed, const QuadratureConfig& cfg = {},
                   const JitterPolicy& policy = JitterPolicy::relative());

/// Serial reference implementation of sample; identical output.
SampleBatch sample_serial(const KernelSpec& spec, std::span<const Ball> balls,
                          std::int64_t n_samples, std::uint64_t seed,
                          const QuadratureConfig& cfg = {},
                          const JitterPolicy& policy = JitterPolicy::relative());

/// Second-moment matrix (1/N) sum v v^T. No mean subtraction: the field is
/// centered by construction.
CovarianceMatrix empirical_covariance(const SampleBatch& batch);

/// Serial reference implementation; identical output.
CovarianceMatrix empirical_covariance_serial(const SampleBatch& batch);

struct ConsistencyReport
{
    bool submatrix_exact = false;    // kernel matrix over the subset == submatrix
    double max_empirical_sigma = 0;  // worst |Chat_sub - Chat_proj| in CLT sigmas
    double sigma_bound = 5.0;
    bool pass = false;
    int n_full = 0;
    int n_subset = 0;
};

/// Finite-marginal consistency: the kernel matrix over a subset must equal
/// the corresponding submatrix exactly, and independently sampled empirical
/// covariances (subset-sampled vs full-sampled-then-projected) must agree
/// within `sigma_bound` CLT standard errors.
ConsistencyReport marginal_consistency(const KernelSpec& spec, std::span<const Ball> balls,
                                       std::span<const int> subset, std::int64_t n_samples,
                                       std::uint64_t seed, const QuadratureConfig& cfg = {});

}  // namespace ballfield
