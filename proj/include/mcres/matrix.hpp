#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mcres/tolerances.hpp"

namespace mcres {

/// Dense row-major real matrix. Small by intent (n <= 64); all operations
/// return new values.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> values);
    /// n x n matrix whose every row is `row`.
    static DenseMatrix repeated_row(std::span<const double> row);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
    std::span<const double> data() const noexcept { return entries_; }

    DenseMatrix transpose() const;
    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;
    /// Largest absolute entry; 0 for an empty matrix.
    double max_abs() const noexcept;
    bool all_finite() const noexcept;

    DenseMatrix& operator+=(const DenseMatrix& rhs);
    DenseMatrix& operator-=(const DenseMatrix& rhs);
    DenseMatrix& operator*=(double s);

    friend DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
    friend DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
    friend DenseMatrix operator*(DenseMatrix lhs, double s) { return lhs *= s; }
    friend DenseMatrix operator*(double s, DenseMatrix rhs) { return rhs *= s; }
    friend DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs);

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

/// max_ij |a_ij - b_ij|. Shapes must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Row vector times matrix.
std::vector<double> left_multiply(std::span<const double> x, const DenseMatrix& a);

/// Solves A X = B by LU with partial pivoting.
/// Throws SingularMatrix when a pivot falls below `tol.pivot`.
DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b,
                     const Tolerances& tol = default_tolerances());

DenseMatrix inverse(const DenseMatrix& a, const Tolerances& tol = default_tolerances());

/// A^m by repeated squaring; A^0 = I.
DenseMatrix matrix_power(const DenseMatrix& a, unsigned m);

double trace(const DenseMatrix& a);

/// Eigenvalues ordered by descending modulus, ties broken by descending real
/// part then descending imaginary part. Complex pairs are exact conjugates.
using ComplexSpectrum = std::vector<std::complex<double>>;

/// Hessenberg reduction + shifted QR. Throws NoConvergence when the budget of
/// `tol.eigen_sweeps_per_dim * n` iterations is exhausted.
ComplexSpectrum eigenvalues(const DenseMatrix& a, const Tolerances& tol = default_tolerances());

}  // namespace mcres
