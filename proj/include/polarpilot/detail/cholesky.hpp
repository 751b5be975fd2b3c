// SPDX-License-Identifier: Apache-2.0
//
// Small dense symmetric positive-definite factorization, packed
// lower-triangular row-major storage: entry (i,j) at i*(i+1)/2 + j.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polarpilot::detail {

inline std::vector<double> cholesky_lower(const std::vector<double>& packed, int n) {
    std::vector<double> chol(packed.size());
    auto at = [](const std::vector<double>& m, int i, int j) -> double {
        return m[static_cast<size_t>(i) * (i + 1) / 2 + j];
    };
    auto ref = [](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<size_t>(i) * (i + 1) / 2 + j];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = at(packed, i, j);
            for (int k = 0; k < j; ++k) sum -= at(chol, i, k) * at(chol, j, k);
            if (i == j) {
                if (sum <= 0.0)
                    throw std::runtime_error("cholesky_lower: matrix not positive definite");
                ref(chol, i, j) = std::sqrt(sum);
            } else {
                ref(chol, i, j) = sum / at(chol, j, j);
            }
        }
    }
    return chol;
}

/// Solve L y = b, then L^T x = y, in place.
inline void cholesky_solve(const std::vector<double>& chol, int n, std::vector<double>& b) {
    auto at = [&](int i, int j) -> double { return chol[static_cast<size_t>(i) * (i + 1) / 2 + j]; };
    for (int i = 0; i < n; ++i) {
        double sum = b[static_cast<size_t>(i)];
        for (int k = 0; k < i; ++k) sum -= at(i, k) * b[static_cast<size_t>(k)];
        b[static_cast<size_t>(i)] = sum / at(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = b[static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k) sum -= at(k, i) * b[static_cast<size_t>(k)];
        b[static_cast<size_t>(i)] = sum / at(i, i);
    }
}

}  // namespace polarpilot::detail
