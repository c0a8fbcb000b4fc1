#pragma once

// Dense matrix/vector primitives and the permutation bookkeeping shared by
// every solver in the library. Storage is row-major double precision; all
// indexing is 0-based.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace abslin {

using DenseVector = std::vector<double>;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Thrown when a parameter choice yields a (numerically) zero denominator
/// in the projection update on a row that is not dependent.
struct DegenerateUpdate : std::runtime_error {
    std::size_t row;
    DegenerateUpdate(const std::string& msg, std::size_t row_index)
        : std::runtime_error(msg), row(row_index) {}
};

struct DegenerateStep : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(const std::string& msg, std::size_t line_number)
        : std::runtime_error(msg), line(line_number) {}
};

/// Row-major dense matrix, double precision.
class DenseMatrix {
  public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0)
            throw DimensionError("DenseMatrix: dimensions must be at least 1x1");
    }

    /// Construct from nested braces; every row must have the same length.
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    /// Bounds-checked access; throws IndexError.
    double& at(std::size_t i, std::size_t j);
    const double& at(std::size_t i, std::size_t j) const;

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    double* row_data(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const double* row_data(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    /// Copy of row i as a vector.
    DenseVector row(std::size_t i) const;

    void swap_rows(std::size_t i, std::size_t k);
    void swap_cols(std::size_t j, std::size_t k);

    /// Largest absolute entry.
    double max_abs() const noexcept;
    /// Operator infinity norm (maximum absolute row sum).
    double inf_norm() const noexcept;

    bool operator==(const DenseMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Index map tracking row or column interchanges. Slot j holds the original
/// position of whatever currently sits at position j.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::size_t n);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t slot) const noexcept { return map_[slot]; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }

    void swap(std::size_t i, std::size_t k);
    bool is_identity() const noexcept;

    /// Restore components to original ordering: out[map[j]] = v[j].
    DenseVector apply_inverse(const DenseVector& v) const;

    bool operator==(const Permutation&) const = default;

  private:
    std::vector<std::size_t> map_;
};

/// Matrix with columns reordered: result(:, j) = a(:, perm[j]).
DenseMatrix permuted_cols(const DenseMatrix& a, const Permutation& perm);

/// Matrix with rows reordered: result(j, :) = a(perm[j], :).
DenseMatrix permuted_rows(const DenseMatrix& a, const Permutation& perm);

/// y = A x. Fixed left-to-right summation per row.
DenseVector matvec(const DenseMatrix& a, const DenseVector& x);

/// Inner product with fixed left-to-right summation.
double dot(const DenseVector& u, const DenseVector& v);

double norm2(const DenseVector& v);
double norm_inf(const DenseVector& v);

}  // namespace abslin
