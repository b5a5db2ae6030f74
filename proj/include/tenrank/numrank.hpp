#pragma once

#include "tenrank/tensor.hpp"

#include <optional>
#include <vector>

namespace tenrank {

struct RankResult {
    std::size_t rank = 0;
    std::vector<double> singular_values;  ///< descending
    double tolerance_used = 0.0;
};

/// Default cutoff: max(rows, cols) * eps * sigma_max.
double default_tolerance(std::size_t rows, std::size_t cols, double sigma_max);

/// Singular values of `m`, descending. Throws NumericalError on non-finite
/// input or SVD failure.
std::vector<double> singular_values(const Matrix& m);

/// Numerical rank: count of singular values strictly above the tolerance.
/// `tol` must be positive when given. A zero matrix has rank 0.
RankResult matrix_rank(const Matrix& m, std::optional<double> tol = std::nullopt);

/// Sylvester lower bound on rank(ABC) for A (. x M), B (M x P), C (P x .):
/// rA + rB + rC - M - P. May be negative.
long long sylvester_bound(long long rank_a, long long rank_b, long long rank_c, long long m,
                          long long p);

}  // namespace tenrank
