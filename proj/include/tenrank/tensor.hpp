#pragma once

// Dense tensor storage and the multilinear products used to build and
// flatten CP models.
//
// Every array in this library is linearized first-index-fastest: the
// zero-based multi-index (i_1, ..., i_N) of a tensor with extents
// (I_1, ..., I_N) lives at offset i_1 + I_1 * (i_2 + I_2 * (i_3 + ...)).
// Matrices are the N = 2 case (column-major). Under this convention the
// n-unfolding is a pure reshape of the flat data.

#include <cstddef>
#include <span>
#include <vector>

namespace tenrank {

using Dims = std::vector<std::size_t>;

/// Product of all extents. Throws ShapeError on 64-bit overflow.
std::size_t dims_product(std::span<const std::size_t> dims);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);
    /// Diagonal matrix with `diag` on the main diagonal.
    static Matrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r + rows_ * c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r + rows_ * c]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> column(std::size_t c) const noexcept {
        return std::span<const double>(data_).subspan(c * rows_, rows_);
    }

    Matrix transpose() const;
    double frobenius_norm() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// N-way dense array, N >= 1, every extent >= 1.
class DenseTensor {
public:
    DenseTensor() = default;
    explicit DenseTensor(Dims dims, double fill = 0.0);
    DenseTensor(Dims dims, std::vector<double> data);

    const Dims& dims() const noexcept { return dims_; }
    std::size_t order() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    /// Element access by one-based multi-index; range-checked.
    double at(std::span<const std::size_t> index) const;
    double& at(std::span<const std::size_t> index);

    friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

private:
    Dims dims_;
    std::vector<double> data_;
};

DenseTensor operator*(double scale, const DenseTensor& t);

/// Bijection on modes, stored zero-based: result mode j is source mode perm[j].
class ModePermutation {
public:
    explicit ModePermutation(std::vector<std::size_t> perm);
    static ModePermutation identity(std::size_t order);
    /// Builds from one-based mode numbers as written by users.
    static ModePermutation from_one_based(std::span<const std::size_t> modes);

    std::size_t order() const noexcept { return perm_.size(); }
    std::size_t operator[](std::size_t j) const noexcept { return perm_[j]; }
    const std::vector<std::size_t>& indices() const noexcept { return perm_; }
    ModePermutation inverse() const;

    friend bool operator==(const ModePermutation&, const ModePermutation&) = default;

private:
    std::vector<std::size_t> perm_;
};

/// Weighted CP model: sum_r weights[r] * a_r^(1) o a_r^(2) o ... o a_r^(N).
/// The diagonal core is carried only as the weight vector.
class CpdModel {
public:
    CpdModel(std::vector<double> weights, std::vector<Matrix> factors);
    /// Unit weights.
    explicit CpdModel(std::vector<Matrix> factors);

    std::size_t rank() const noexcept { return weights_.size(); }
    std::size_t order() const noexcept { return factors_.size(); }
    Dims dims() const;

    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<Matrix>& factors() const noexcept { return factors_; }
    const Matrix& factor(std::size_t n) const { return factors_.at(n); }

    /// Same model with its factor list reordered by `p`.
    CpdModel permuted(const ModePermutation& p) const;

private:
    void validate() const;

    std::vector<double> weights_;
    std::vector<Matrix> factors_;
};

/// Offset of a one-based multi-index. Throws IndexError naming the bad mode.
std::size_t linearize(std::span<const std::size_t> index, std::span<const std::size_t> dims);

/// One-based multi-index of `offset`; inverse of linearize.
std::vector<std::size_t> delinearize(std::size_t offset, std::span<const std::size_t> dims);

/// n-unfolding: rows index modes 1..n, columns modes n+1..N. Requires 1 <= n < N.
Matrix unfold(const DenseTensor& t, std::size_t n);

DenseTensor permute_modes(const DenseTensor& t, const ModePermutation& p);

/// Standard Kronecker product: entry (i*J + j, k*L + l) = a(i,k) * b(j,l).
Matrix kronecker(const Matrix& a, const Matrix& b);

/// Column-wise Kronecker product. Row i*J + j of column r is a(i,r) * b(j,r),
/// so `b` varies fastest. With first-index-fastest unfolding this makes
/// unfold(X, n) = (A_n (.) ... (.) A_1) D (A_N (.) ... (.) A_{n+1})^T exact.
Matrix khatri_rao(const Matrix& a, const Matrix& b);

/// Khatri-Rao product of a list, folded left to right: ms[0] (.) ms[1] (.) ...
Matrix khatri_rao(std::span<const Matrix> ms);

/// Dense tensor of a CP model; O(R * prod(dims)).
DenseTensor cpd_synthesize(const CpdModel& m);

struct UnfoldingFactors {
    Matrix left;     ///< A_n (.) ... (.) A_1
    Matrix weights;  ///< diag(lambda)
    Matrix right;    ///< A_N (.) ... (.) A_{n+1}

    /// left * weights * right^T
    Matrix product() const;
};

/// Factors of the n-unfolding of a CP model. Requires 1 <= n < N.
UnfoldingFactors cpd_unfolding_factors(const CpdModel& m, std::size_t n);

}  // namespace tenrank
