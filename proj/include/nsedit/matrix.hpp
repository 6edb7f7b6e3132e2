#ifndef NSEDIT_MATRIX_HPP
#define NSEDIT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nsedit {

/// Dense real matrix, column-major, 64-bit elements.
///
/// This is the universal carrier for weights, keys, values, projectors and
/// perturbations. Invariants enforced at construction: rows >= 1, all
/// elements finite. Zero-column matrices are permitted so that empty key
/// sets and empty edit histories are representable as values.
///
/// Matrices are immutable in spirit: every operation returns a new value,
/// and shared instances are safe to read concurrently. Mutable element
/// access exists for construction-time fills only.
class Matrix {
public:
    /// Zero matrix of the given shape.
    Matrix(std::size_t rows, std::size_t cols);

    /// From column-major data; length must equal rows*cols, entries finite.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    /// From row-major initializer, e.g. Matrix{{1,2},{3,4}}.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return cols_ == 0; }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[j * rows_ + i];
    }
    double& operator()(std::size_t i, std::size_t j) noexcept {
        return data_[j * rows_ + i];
    }

    /// Column-major storage.
    std::span<const double> data() const noexcept { return data_; }
    std::span<double> mutable_data() noexcept { return data_; }

    Matrix transposed() const;
    Matrix column(std::size_t j) const;

    /// Columns [first, first+count) as a rows() x count matrix.
    Matrix columns(std::size_t first, std::size_t count) const;

    /// Horizontal concatenation [*this | other].
    Matrix hcat(const Matrix& other) const;

    bool all_finite() const noexcept;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(double s, const Matrix& m);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// sqrt of the sum of squared elements; 0 for empty matrices.
double frobenius_norm(const Matrix& m);

/// Largest absolute element; 0 for empty matrices.
double max_abs(const Matrix& m);

double trace(const Matrix& m);

/// ||a - b||_F without materializing the difference.
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Relative Frobenius error ||a - b||_F / ||b||_F, falling back to the
/// absolute distance when b is zero.
double relative_error(const Matrix& a, const Matrix& b);

} // namespace nsedit

#endif
