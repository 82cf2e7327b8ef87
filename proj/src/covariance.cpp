// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/covariance.hpp"

#include <cmath>
#include <string>

namespace ballfield {

namespace {

// Plain lower Cholesky; returns the 1-based index of the first non-positive
// leading minor on failure, 0 on success.
int try_cholesky(const Eigen::MatrixXd& a, double jitter, Eigen::MatrixXd& l)
{
    const int n = static_cast<int>(a.rows());
    l = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
    {
        double diag = a(j, j) + jitter - l.row(j).head(j).squaredNorm();
        if (!(diag > 0.0) || !std::isfinite(diag))
            return j + 1;
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i)
            l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
    return 0;
}

}  // namespace

CovarianceMatrix factorize(CovarianceMatrix c, const JitterPolicy& policy)
{
    if (c.entries.rows() != c.entries.cols() || c.entries.rows() != c.n)
        throw std::invalid_argument("factorize: matrix shape does not match order");

    Eigen::MatrixXd l;
    int minor = try_cholesky(c.entries, 0.0, l);
    if (minor == 0)
    {
        c.factor = std::move(l);
        c.jitter = 0.0;
        return c;
    }
    if (policy.kind == JitterPolicy::Kind::None)
        throw FactorizationError(
            "factorize: matrix is not positive definite (leading minor " +
                std::to_string(minor) + ") and jitter is disabled",
            minor);

    const double base = policy.epsilon * c.trace_over_n();
    for (int k = 0; k <= 6; ++k)
    {
        const double jitter = base * std::pow(10.0, k);
        minor = try_cholesky(c.entries, jitter, l);
        if (minor == 0)
        {
            c.factor = std::move(l);
            c.jitter = jitter;
            return c;
        }
    }
    throw FactorizationError(
        "factorize: failed at maximum jitter (leading minor " + std::to_string(minor) + ")",
        minor);
}

double min_eigenvalue_symmetric(const Eigen::MatrixXd& m, Eigen::VectorXd* eigenvector)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("min_eigenvalue_symmetric: eigensolver failed");
    if (eigenvector)
        *eigenvector = solver.eigenvectors().col(0);
    return solver.eigenvalues()(0);
}

double min_eigenvalue_hermitian(const Eigen::MatrixXcd& m, Eigen::VectorXcd* eigenvector)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("min_eigenvalue_hermitian: eigensolver failed");
    if (eigenvector)
        *eigenvector = solver.eigenvectors().col(0);
    return solver.eigenvalues()(0);
}

}  // namespace ballfield
