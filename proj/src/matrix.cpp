#include "mcres/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mcres/error.hpp"

namespace mcres {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::ShapeMismatch,
                    std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

void require_square(const DenseMatrix& a, const char* op) {
    if (!a.is_square()) {
        throw Error(ErrorKind::NotSquare, std::string(op) + " needs a square matrix, got " +
                                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw Error(ErrorKind::ShapeMismatch, "entry count " + std::to_string(entries_.size()) +
                                                  " does not match " + std::to_string(rows_) + "x" +
                                                  std::to_string(cols_));
    }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged initializer list");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
    DenseMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

DenseMatrix DenseMatrix::repeated_row(std::span<const double> row) {
    const std::size_t n = row.size();
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) std::copy(row.begin(), row.end(), m.row(i).begin());
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> DenseMatrix::row_sums() const {
    std::vector<double> s(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (double v : row(i)) s[i] += v;
    return s;
}

std::vector<double> DenseMatrix::col_sums() const {
    std::vector<double> s(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s[j] += (*this)(i, j);
    return s;
}

double DenseMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::abs(v));
    return m;
}

bool DenseMatrix::all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
    require_same_shape(*this, rhs, "operator+");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
    require_same_shape(*this, rhs, "operator-");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
    for (double& v : entries_) v *= s;
    return *this;
}

DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "operator*: inner dimensions " + std::to_string(lhs.cols()) +
                                                  " and " + std::to_string(rhs.rows()));
    }
    DenseMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

std::vector<double> left_multiply(std::span<const double> x, const DenseMatrix& a) {
    if (x.size() != a.rows()) throw Error(ErrorKind::ShapeMismatch, "left_multiply: length mismatch");
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += x[i] * a(i, j);
    return out;
}

DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b, const Tolerances& tol) {
    require_square(a, "lu_solve");
    if (b.rows() != a.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "lu_solve: right-hand side has " + std::to_string(b.rows()) +
                                                  " rows, expected " + std::to_string(a.rows()));
    }
    const std::size_t n = a.rows();
    DenseMatrix lu = a;
    DenseMatrix x = b;

    // Doolittle elimination applied to the right-hand side as we go.
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
        if (std::abs(lu(p, k)) < tol.pivot) {
            throw Error(ErrorKind::SingularMatrix, "pivot " + std::to_string(lu(p, k)) + " in column " +
                                                       std::to_string(k));
        }
        if (p != k) {
            std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
            std::swap_ranges(x.row(k).begin(), x.row(k).end(), x.row(p).begin());
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = lu(i, k) / lu(k, k);
            if (factor == 0.0) continue;
            lu(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
            for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= factor * x(k, j);
        }
    }

    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double s = x(kk, j);
            for (std::size_t c = kk + 1; c < n; ++c) s -= lu(kk, c) * x(c, j);
            x(kk, j) = s / lu(kk, kk);
        }
    }
    return x;
}

DenseMatrix inverse(const DenseMatrix& a, const Tolerances& tol) {
    require_square(a, "inverse");
    return lu_solve(a, DenseMatrix::identity(a.rows()), tol);
}

DenseMatrix matrix_power(const DenseMatrix& a, unsigned m) {
    require_square(a, "matrix_power");
    DenseMatrix result = DenseMatrix::identity(a.rows());
    DenseMatrix base = a;
    while (m > 0) {
        if (m & 1u) result = result * base;
        m >>= 1u;
        if (m > 0) base = base * base;
    }
    return result;
}

double trace(const DenseMatrix& a) {
    require_square(a, "trace");
    double t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

}  // namespace mcres
