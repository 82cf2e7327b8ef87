// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

namespace ballfield {

/// Finite linear combination F = sum_k lambda_k X_{b_k}, referencing balls of
/// a configuration by index.
struct Functional
{
    std::vector<std::pair<int, double>> coefficients;  // (ball index, weight)

    /// Evaluate F on one sample row (field values per configuration slot).
    template <typename Row>
    double evaluate(const Row& row) const
    {
        double v = 0.0;
        for (const auto& [idx, w] : coefficients)
            v += w * row[idx];
        return v;
    }

    /// Same weights applied at shifted slots (e.g. the reflected copies that
    /// occupy indices offset..offset+n-1 of a doubled configuration).
    Functional shifted(int offset) const
    {
        Functional f;
        f.coefficients.reserve(coefficients.size());
        for (const auto& [idx, w] : coefficients)
            f.coefficients.emplace_back(idx + offset, w);
        return f;
    }

    int max_index() const
    {
        int m = -1;
        for (const auto& [idx, w] : coefficients)
            m = std::max(m, idx);
        return m;
    }
};

}  // namespace ballfield
