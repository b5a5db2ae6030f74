#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tenrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A multi-index component lies outside its mode's extent.
class IndexError : public Error {
public:
    IndexError(std::size_t mode, std::size_t index, std::size_t extent);
    std::size_t mode() const noexcept { return mode_; }

private:
    std::size_t mode_;
};

/// Split point outside [1, N-1], or no bipartition exists (N < 2).
class InvalidSplitError : public Error {
public:
    using Error::Error;
};

/// Non-conforming matrix/tensor shapes.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Permutation or index list has the wrong length for the tensor order.
class ArityError : public Error {
public:
    using Error::Error;
};

/// Exhaustive search refused because the problem is too large.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// Invalid user-supplied parameter (rank < 1, non-positive tolerance, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// SVD failed or the input contains non-finite values.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, std::size_t rows, std::size_t cols);
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
};

/// Malformed tensor file: missing header lines, bad tokens, wrong value count.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Payload value count does not match the product of dims.
class LengthError : public FormatError {
public:
    LengthError(std::size_t expected, std::size_t actual, std::size_t line);
    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

}  // namespace tenrank
