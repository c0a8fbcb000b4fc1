#include "abslin/core.hpp"

#include <algorithm>
#include <cmath>

namespace abslin {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) throw DimensionError("DenseMatrix: dimensions must be at least 1x1");
    cols_ = rows.begin()->size();
    if (cols_ == 0) throw DimensionError("DenseMatrix: dimensions must be at least 1x1");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double& DenseMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw IndexError("DenseMatrix::at: index out of range");
    return data_[i * cols_ + j];
}

const double& DenseMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw IndexError("DenseMatrix::at: index out of range");
    return data_[i * cols_ + j];
}

DenseVector DenseMatrix::row(std::size_t i) const {
    if (i >= rows_) throw IndexError("DenseMatrix::row: index out of range");
    return DenseVector(row_data(i), row_data(i) + cols_);
}

void DenseMatrix::swap_rows(std::size_t i, std::size_t k) {
    if (i >= rows_ || k >= rows_) throw IndexError("swap_rows: index out of range");
    if (i == k) return;
    std::swap_ranges(row_data(i), row_data(i) + cols_, row_data(k));
}

void DenseMatrix::swap_cols(std::size_t j, std::size_t k) {
    if (j >= cols_ || k >= cols_) throw IndexError("swap_cols: index out of range");
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
}

double DenseMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

double DenseMatrix::inf_norm() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += std::fabs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

Permutation::Permutation(std::size_t n) : map_(n) {
    for (std::size_t i = 0; i < n; ++i) map_[i] = i;
}

void Permutation::swap(std::size_t i, std::size_t k) {
    if (i >= map_.size() || k >= map_.size())
        throw IndexError("Permutation::swap: index out of range");
    std::swap(map_[i], map_[k]);
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] != i) return false;
    return true;
}

DenseVector Permutation::apply_inverse(const DenseVector& v) const {
    if (v.size() != map_.size())
        throw DimensionError("Permutation::apply_inverse: length mismatch");
    DenseVector out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[map_[j]] = v[j];
    return out;
}

DenseMatrix permuted_cols(const DenseMatrix& a, const Permutation& perm) {
    if (perm.size() != a.cols()) throw DimensionError("permuted_cols: size mismatch");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, perm[j]);
    return out;
}

DenseMatrix permuted_rows(const DenseMatrix& a, const Permutation& perm) {
    if (perm.size() != a.rows()) throw DimensionError("permuted_rows: size mismatch");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(perm[i], j);
    return out;
}

DenseVector matvec(const DenseMatrix& a, const DenseVector& x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: dimension mismatch");
    DenseVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.row_data(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

double dot(const DenseVector& u, const DenseVector& v) {
    if (u.size() != v.size()) throw DimensionError("dot: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc;
}

double norm2(const DenseVector& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double norm_inf(const DenseVector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace abslin
