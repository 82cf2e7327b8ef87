// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ballfield/functionals.hpp"
#include "ballfield/gaussian.hpp"

namespace ballfield {

/// Pointwise continuous map R -> R from a validated catalogue: identity,
/// tanh, odd powers, clipping, and piecewise-linear tables (extrapolated
/// linearly outside the knot range, with a flag raised on the batch).
class Transform
{
  public:
    static Transform identity();
    static Transform tanh();
    static Transform power(int odd_exponent);
    static Transform clip(double bound);
    static Transform piecewise_linear(std::vector<double> knots_x, std::vector<double> knots_y);

    double operator()(double x) const;
    /// True when x falls outside a table's knot range (always false for the
    /// closed-form members of the catalogue).
    bool extrapolates_at(double x) const;
    const std::string& name() const { return name_; }

  private:
    enum class Kind
    {
        Identity,
        Tanh,
        Power,
        Clip,
        Table
    };
    Kind kind_ = Kind::Identity;
    int exponent_ = 1;
    double bound_ = 0.0;
    std::vector<double> xs_, ys_;
    std::string name_ = "identity";
};

/// Apply phi to every stored value; metadata records the transform chain.
SampleBatch apply_transform(const Transform& phi, SampleBatch batch);

/// Finite marginals of the transformed field: sample, then post-compose phi.
SampleBatch sample_transformed(const KernelSpec& spec, const Transform& phi,
                               std::span<const Ball> balls, std::int64_t n_samples,
                               std::uint64_t seed, const QuadratureConfig& cfg = {});

struct CharFunctionalResult
{
    std::vector<std::complex<double>> values;  // mean of exp(i F) per functional
    std::vector<double> std_errors;            // bootstrap standard errors (modulus scale)
};

/// Empirical characteristic functional E[exp(i F)] for each functional, with
/// block-bootstrap standard errors. Requires at least 1000 samples.
CharFunctionalResult empirical_char_functional(const SampleBatch& batch,
                                               std::span<const Functional> functionals,
                                               int bootstrap_resamples = 1000,
                                               std::uint64_t bootstrap_seed = 0x626f6f74ull);

}  // namespace ballfield
