#include "tenrank/tensor.hpp"

#include "tenrank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tenrank {

IndexError::IndexError(std::size_t mode, std::size_t index, std::size_t extent)
    : Error("index " + std::to_string(index) + " out of range [1, " + std::to_string(extent) +
            "] in mode " + std::to_string(mode)),
      mode_(mode) {}

NumericalError::NumericalError(const std::string& what, std::size_t rows, std::size_t cols)
    : Error(what + " (matrix " + std::to_string(rows) + "x" + std::to_string(cols) + ")"),
      rows_(rows),
      cols_(cols) {}

FormatError::FormatError(const std::string& what, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

LengthError::LengthError(std::size_t expected, std::size_t actual, std::size_t line)
    : FormatError("expected " + std::to_string(expected) + " values, found " +
                      std::to_string(actual),
                  line),
      expected_(expected),
      actual_(actual) {}

std::size_t dims_product(std::span<const std::size_t> dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) {
        if (d != 0 && p > std::numeric_limits<std::size_t>::max() / d)
            throw ShapeError("dimension product overflows 64 bits");
        p *= d;
    }
    return p;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols)
        throw ShapeError("matrix data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r) t(c, r) = (*this)(r, c);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("cannot multiply " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    Matrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double bkj = b(k, j);
            if (bkj == 0.0) continue;
            for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
        }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix shapes differ");
    Matrix c = a;
    auto out = c.data();
    auto rhs = b.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
    return c;
}

// ----------------------------------------------------------- DenseTensor

namespace {

void check_dims(const Dims& dims) {
    if (dims.empty()) throw ShapeError("tensor order must be at least 1");
    for (std::size_t n = 0; n < dims.size(); ++n)
        if (dims[n] == 0)
            throw ShapeError("extent of mode " + std::to_string(n + 1) + " must be positive");
}

}  // namespace

DenseTensor::DenseTensor(Dims dims, double fill) : dims_(std::move(dims)) {
    check_dims(dims_);
    data_.assign(dims_product(dims_), fill);
}

DenseTensor::DenseTensor(Dims dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    check_dims(dims_);
    const std::size_t expected = dims_product(dims_);
    if (data_.size() != expected)
        throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                         " != product of dims " + std::to_string(expected));
}

double DenseTensor::at(std::span<const std::size_t> index) const {
    return data_[linearize(index, dims_)];
}

double& DenseTensor::at(std::span<const std::size_t> index) {
    return data_[linearize(index, dims_)];
}

DenseTensor operator*(double scale, const DenseTensor& t) {
    std::vector<double> data(t.data().begin(), t.data().end());
    for (double& v : data) v *= scale;
    return DenseTensor(t.dims(), std::move(data));
}

// ------------------------------------------------------- ModePermutation

ModePermutation::ModePermutation(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (std::size_t p : perm_) {
        if (p >= perm_.size() || seen[p])
            throw ArityError("not a permutation of " + std::to_string(perm_.size()) + " modes");
        seen[p] = true;
    }
}

ModePermutation ModePermutation::identity(std::size_t order) {
    std::vector<std::size_t> p(order);
    for (std::size_t i = 0; i < order; ++i) p[i] = i;
    return ModePermutation(std::move(p));
}

ModePermutation ModePermutation::from_one_based(std::span<const std::size_t> modes) {
    std::vector<std::size_t> p;
    p.reserve(modes.size());
    for (std::size_t m : modes) {
        if (m == 0) throw ArityError("mode numbers are one-based");
        p.push_back(m - 1);
    }
    return ModePermutation(std::move(p));
}

ModePermutation ModePermutation::inverse() const {
    std::vector<std::size_t> inv(perm_.size());
    for (std::size_t j = 0; j < perm_.size(); ++j) inv[perm_[j]] = j;
    return ModePermutation(std::move(inv));
}

// -------------------------------------------------------------- CpdModel

CpdModel::CpdModel(std::vector<double> weights, std::vector<Matrix> factors)
    : weights_(std::move(weights)), factors_(std::move(factors)) {
    validate();
}

CpdModel::CpdModel(std::vector<Matrix> factors) : factors_(std::move(factors)) {
    weights_.assign(factors_.empty() ? 0 : factors_.front().cols(), 1.0);
    validate();
}

void CpdModel::validate() const {
    if (factors_.empty()) throw ShapeError("CP model needs at least one factor");
    if (weights_.empty()) throw ShapeError("CP model rank must be at least 1");
    for (std::size_t n = 0; n < factors_.size(); ++n) {
        if (factors_[n].cols() != weights_.size())
            throw ShapeError("factor " + std::to_string(n + 1) + " has " +
                             std::to_string(factors_[n].cols()) + " columns, expected " +
                             std::to_string(weights_.size()));
        if (factors_[n].rows() == 0)
            throw ShapeError("factor " + std::to_string(n + 1) + " has no rows");
    }
}

Dims CpdModel::dims() const {
    Dims d;
    d.reserve(factors_.size());
    for (const auto& f : factors_) d.push_back(f.rows());
    return d;
}

CpdModel CpdModel::permuted(const ModePermutation& p) const {
    if (p.order() != order())
        throw ArityError("permutation of " + std::to_string(p.order()) + " modes applied to order-" +
                         std::to_string(order()) + " model");
    std::vector<Matrix> fs;
    fs.reserve(order());
    for (std::size_t j = 0; j < order(); ++j) fs.push_back(factors_[p[j]]);
    return CpdModel(weights_, std::move(fs));
}

// ------------------------------------------------------------ operations

std::size_t linearize(std::span<const std::size_t> index, std::span<const std::size_t> dims) {
    if (index.size() != dims.size())
        throw ArityError("multi-index has " + std::to_string(index.size()) + " components, tensor has " +
                         std::to_string(dims.size()) + " modes");
    std::size_t offset = 0;
    std::size_t stride = 1;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (index[j] < 1 || index[j] > dims[j]) throw IndexError(j + 1, index[j], dims[j]);
        offset += (index[j] - 1) * stride;
        stride *= dims[j];
    }
    return offset;
}

std::vector<std::size_t> delinearize(std::size_t offset, std::span<const std::size_t> dims) {
    std::vector<std::size_t> index(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) {
        index[j] = offset % dims[j] + 1;
        offset /= dims[j];
    }
    if (offset != 0) throw IndexError(dims.size(), offset, 0);
    return index;
}

Matrix unfold(const DenseTensor& t, std::size_t n) {
    const std::size_t order = t.order();
    if (n < 1 || n >= order)
        throw InvalidSplitError("split point " + std::to_string(n) + " outside [1, " +
                                std::to_string(order == 0 ? 0 : order - 1) + "] for order-" +
                                std::to_string(order) + " tensor");
    const auto& d = t.dims();
    const std::size_t rows = dims_product(std::span(d).first(n));
    const std::size_t cols = t.size() / rows;
    return Matrix(rows, cols, std::vector<double>(t.data().begin(), t.data().end()));
}

DenseTensor permute_modes(const DenseTensor& t, const ModePermutation& p) {
    const std::size_t order = t.order();
    if (p.order() != order)
        throw ArityError("permutation of " + std::to_string(p.order()) + " modes applied to order-" +
                         std::to_string(order) + " tensor");
    const auto& src_dims = t.dims();

    std::vector<std::size_t> src_stride(order);
    for (std::size_t j = 0, s = 1; j < order; ++j) {
        src_stride[j] = s;
        s *= src_dims[j];
    }
    Dims dst_dims(order);
    std::vector<std::size_t> step(order);  // source stride of each destination mode
    for (std::size_t j = 0; j < order; ++j) {
        dst_dims[j] = src_dims[p[j]];
        step[j] = src_stride[p[j]];
    }

    std::vector<double> out(t.size());
    auto src = t.data();
    std::vector<std::size_t> idx(order, 0);
    std::size_t src_off = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = src[src_off];
        for (std::size_t j = 0; j < order; ++j) {
            if (++idx[j] < dst_dims[j]) {
                src_off += step[j];
                break;
            }
            src_off -= (dst_dims[j] - 1) * step[j];
            idx[j] = 0;
        }
    }
    return DenseTensor(std::move(dst_dims), std::move(out));
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    const std::size_t br = b.rows(), bc = b.cols();
    Matrix k(a.rows() * br, a.cols() * bc);
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
        for (std::size_t ar = 0; ar < a.rows(); ++ar) {
            const double s = a(ar, ac);
            for (std::size_t c = 0; c < bc; ++c)
                for (std::size_t r = 0; r < br; ++r) k(ar * br + r, ac * bc + c) = s * b(r, c);
        }
    return k;
}

Matrix khatri_rao(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw ShapeError("Khatri-Rao operands have " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.cols()) + " columns");
    const std::size_t br = b.rows();
    Matrix k(a.rows() * br, a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const double s = a(i, c);
            for (std::size_t j = 0; j < br; ++j) k(i * br + j, c) = s * b(j, c);
        }
    return k;
}

Matrix khatri_rao(std::span<const Matrix> ms) {
    if (ms.empty()) throw ShapeError("Khatri-Rao product of an empty list");
    Matrix acc = ms.front();
    for (std::size_t i = 1; i < ms.size(); ++i) acc = khatri_rao(acc, ms[i]);
    return acc;
}

DenseTensor cpd_synthesize(const CpdModel& m) {
    const Dims dims = m.dims();
    const std::size_t total = dims_product(dims);
    std::vector<double> out(total, 0.0);
    std::vector<double> term;
    std::vector<double> next;
    term.reserve(total);
    next.reserve(total);

    // Expand lambda_r * a^(1) o ... o a^(N) one mode at a time; each new mode
    // becomes the slowest-varying index.
    for (std::size_t r = 0; r < m.rank(); ++r) {
        const auto first = m.factor(0).column(r);
        term.assign(first.begin(), first.end());
        for (double& v : term) v *= m.weights()[r];
        for (std::size_t n = 1; n < m.order(); ++n) {
            const auto col = m.factor(n).column(r);
            next.clear();
            for (double s : col)
                for (double v : term) next.push_back(s * v);
            term.swap(next);
        }
        for (std::size_t k = 0; k < total; ++k) out[k] += term[k];
    }
    return DenseTensor(dims, std::move(out));
}

Matrix UnfoldingFactors::product() const { return left * weights * right.transpose(); }

UnfoldingFactors cpd_unfolding_factors(const CpdModel& m, std::size_t n) {
    const std::size_t order = m.order();
    if (n < 1 || n >= order)
        throw InvalidSplitError("split point " + std::to_string(n) + " outside [1, " +
                                std::to_string(order - 1) + "]");
    const auto& fs = m.factors();
    std::vector<Matrix> lhs(fs.rbegin() + static_cast<std::ptrdiff_t>(order - n), fs.rend());
    std::vector<Matrix> rhs(fs.rbegin(), fs.rbegin() + static_cast<std::ptrdiff_t>(order - n));
    return {khatri_rao(lhs), Matrix::diagonal(m.weights()), khatri_rao(rhs)};
}

}  // namespace tenrank
