// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ballfield/functionals.hpp"
#include "ballfield/gaussian.hpp"
#include "ballfield/kernels.hpp"

namespace ballfield {

enum class RPKind
{
    KernelTheta,         // reflection matrix K(b_i, theta b_j)
    GaussianClosedForm,  // S_ij = exp(-1/2 Var(F_i - theta F_j))
    MonteCarlo           // S_ij estimated from samples of exp(i F_i - i theta F_j)
};

/// Eigenvalue summary certifying (or refuting, with witness) positive
/// semidefiniteness of a reflection matrix.
struct RPReport
{
    RPKind kind = RPKind::KernelTheta;
    int n = 0;
    double min_eigenvalue = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    Eigen::VectorXcd witness;        // eigenvector of the smallest eigenvalue when failing
    Eigen::MatrixXcd matrix;         // the checked matrix (real-valued for non-MC kinds)
    double entry_std_error = 0.0;    // MC only: worst bootstrap SE among entries
    Eigen::MatrixXd entry_se;        // MC only: per-entry bootstrap SE
    double min_eig_std_error = 0.0;  // MC only: bootstrap SE of the smallest eigenvalue
    std::uint64_t seed = 0;          // MC only: bootstrap seed
};

struct PreconditionError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

/// Configuration doubled with its time reflections: {b_1..b_n, theta b_1..theta b_n}.
std::vector<Ball> reflected_configuration(std::span<const Ball> balls);

/// Kernel-level reflection positivity: assembles the matrix with entries
/// K(b_i, theta b_j) over balls contained in the half-space {t > 0}
/// (x_t >= r; tangency to the boundary is allowed) and reports its smallest
/// eigenvalue. Tolerance: 1e-10 for the closed-form W/White kernels, and
/// 1e-8 * (trace/n) for the quadrature-limited families.
RPReport rp_kernel_check(const KernelSpec& spec, std::span<const Ball> balls,
                         const QuadratureConfig& cfg = {});

/// Gaussian-measure reflection positivity in closed form:
/// S_ij = exp(-1/2 Var(F_i - theta F_j)) with the variance expanded through
/// the kernel matrix of the doubled configuration. Functionals must reference
/// balls whose closed balls lie in {t > 0} (x_t > r strictly).
RPReport rp_gaussian_check(const KernelSpec& spec, std::span<const Ball> balls,
                           std::span<const Functional> functionals,
                           const QuadratureConfig& cfg = {});

/// Monte Carlo reflection positivity for (possibly transformed) fields:
/// S_ij = mean over samples of exp(i F_i - i theta F_j), Hermitized by
/// averaging with its adjoint; passes when the smallest eigenvalue is above
/// -(3 bootstrap SE + solver floor). The batch must cover the doubled
/// configuration and hold at least 10^3 samples.
RPReport rp_monte_carlo_check(const SampleBatch& batch, std::span<const Functional> functionals,
                              int bootstrap_resamples = 1000,
                              std::uint64_t bootstrap_seed = 0x52505f4d43ull);

/// max over motions g and index pairs of |K(g b_i, g b_j) - K(b_i, b_j)|.
double invariance_check(const KernelSpec& spec, std::span<const EuclideanMotion> motions,
                        std::span<const Ball> balls, const QuadratureConfig& cfg = {});

struct MonotonicityReport
{
    bool subset_certified = false;   // V1 subseteq V2 established by the region algebra
    bool index_sets_nested = false;  // selected index sets satisfy B(V1) subseteq B(V2)
    std::size_t n_inner = 0;
    std::size_t n_outer = 0;
    std::size_t motions_checked = 0;  // motions with a representable image region
    bool equivariant = true;          // g . B(V) == B(g V) elementwise for those motions
    bool pass = false;
};

/// Index-set monotonicity B_d(V1) subseteq B_d(V2) for certified V1 subseteq V2,
/// plus covariance g . B_d(V1) = B_d(g V1) for motions whose image region is
/// representable. Throws UnsupportedRegionQuery when V1 vs V2 cannot be
/// certified.
MonotonicityReport index_monotonicity_check(const Region& v1, const Region& v2,
                                            std::span<const Ball> pool,
                                            std::span<const EuclideanMotion> motions = {});

}  // namespace ballfield
