// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace ballfield {

/// Symmetric covariance matrix over a finite ball configuration, together
/// with its (optional) Cholesky factor and the jitter that made it factor.
struct CovarianceMatrix
{
    int n = 0;
    int d = 0;
    Eigen::MatrixXd entries;
    std::optional<Eigen::MatrixXd> factor;  // lower triangular L, L L^T = entries + jitter I
    double jitter = 0.0;
    double max_entry_error = 0.0;  // worst quadrature error among entries

    double trace_over_n() const { return n > 0 ? entries.trace() / n : 0.0; }
};

struct JitterPolicy
{
    enum class Kind
    {
        None,
        Relative
    };
    Kind kind = Kind::Relative;
    double epsilon = 1e-12;

    static JitterPolicy none() { return {Kind::None, 0.0}; }
    static JitterPolicy relative(double eps = 1e-12) { return {Kind::Relative, eps}; }
};

struct FactorizationError : std::runtime_error
{
    int leading_minor;  // 1-based index of the first non-positive pivot
    FactorizationError(const std::string& what, int minor)
        : std::runtime_error(what), leading_minor(minor)
    {
    }
};

/// Cholesky factorization of entries + jitter I. With the relative policy the
/// jitter escalates eps*(trace/n)*10^k, k = 0..6, starting from zero, until a
/// factorization succeeds; the applied jitter is recorded on the result.
CovarianceMatrix factorize(CovarianceMatrix c, const JitterPolicy& policy);

/// Smallest eigenvalue of a symmetric real matrix, with eigenvector.
double min_eigenvalue_symmetric(const Eigen::MatrixXd& m, Eigen::VectorXd* eigenvector = nullptr);

/// Smallest eigenvalue of a Hermitian complex matrix, with eigenvector.
double min_eigenvalue_hermitian(const Eigen::MatrixXcd& m, Eigen::VectorXcd* eigenvector = nullptr);

}  // namespace ballfield
