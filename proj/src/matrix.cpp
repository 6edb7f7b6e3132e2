#include "nsedit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nsedit/errors.hpp"

namespace nsedit {

namespace {

void check_shape(std::size_t rows, std::size_t /*cols*/) {
    if (rows < 1) {
        throw DimensionError("matrix must have at least one row");
    }
}

void check_finite(const std::vector<double>& data) {
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw NonFiniteError("matrix element is not finite");
        }
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    check_shape(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_shape(rows, cols);
    if (data_.size() != rows * cols) {
        throw DimensionError("data length does not match rows*cols");
    }
    check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_shape(rows_, cols_);
    data_.assign(rows_ * cols_, 0.0);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("ragged initializer rows");
        }
        std::size_t j = 0;
        for (double v : r) {
            (*this)(i, j++) = v;
        }
        ++i;
    }
    check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    check_finite(m.data_);
    return m;
}

Matrix Matrix::transposed() const {
    if (cols_ == 0) {
        // d x 0 transposes to a 0-row matrix, which we cannot represent;
        // callers never transpose empty matrices, so reject loudly.
        throw DimensionError("cannot transpose a zero-column matrix");
    }
    Matrix out(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t i = 0; i < rows_; ++i) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

Matrix Matrix::column(std::size_t j) const {
    return columns(j, 1);
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) {
        throw DimensionError("column range out of bounds");
    }
    std::vector<double> data(data_.begin() + static_cast<std::ptrdiff_t>(first * rows_),
                             data_.begin() + static_cast<std::ptrdiff_t>((first + count) * rows_));
    return Matrix(rows_, count, std::move(data));
}

Matrix Matrix::hcat(const Matrix& other) const {
    if (other.rows_ != rows_) {
        throw DimensionError("hcat row mismatch");
    }
    std::vector<double> data = data_;
    data.insert(data.end(), other.data_.begin(), other.data_.end());
    return Matrix(rows_, cols_ + other.cols_, std::move(data));
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw DimensionError("addition shape mismatch");
    }
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) {
        out.data_[k] += b.data_[k];
    }
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw DimensionError("subtraction shape mismatch");
    }
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) {
        out.data_[k] -= b.data_[k];
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionError("multiplication inner dimension mismatch");
    }
    Matrix out(a.rows_, b.cols_);
    // j/k/i loop order keeps the inner loop contiguous in column-major data.
    for (std::size_t j = 0; j < b.cols_; ++j) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double bkj = b(k, j);
            if (bkj == 0.0) {
                continue;
            }
            const double* acol = a.data_.data() + k * a.rows_;
            double* ocol = out.data_.data() + j * out.rows_;
            for (std::size_t i = 0; i < a.rows_; ++i) {
                ocol[i] += acol[i] * bkj;
            }
        }
    }
    return out;
}

Matrix operator*(double s, const Matrix& m) {
    Matrix out = m;
    for (double& v : out.data_) {
        v *= s;
    }
    return out;
}

double frobenius_norm(const Matrix& m) {
    double sum = 0.0;
    for (double v : m.data()) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

double max_abs(const Matrix& m) {
    double best = 0.0;
    for (double v : m.data()) {
        best = std::max(best, std::fabs(v));
    }
    return best;
}

double trace(const Matrix& m) {
    const std::size_t n = std::min(m.rows(), m.cols());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += m(i, i);
    }
    return sum;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius_distance shape mismatch");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a.data()[k] - b.data()[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double relative_error(const Matrix& a, const Matrix& b) {
    const double denom = frobenius_norm(b);
    const double num = frobenius_distance(a, b);
    return denom > 0.0 ? num / denom : num;
}

} // namespace nsedit
