#include "nsedit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "nsedit/errors.hpp"

namespace nsedit {

Matrix EigenDecomposition::reconstruct() const {
    const std::size_t n = eigenvectors.rows();
    Matrix scaled = eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, j) *= eigenvalues[j];
        }
    }
    return scaled * eigenvectors.transposed();
}

EigenDecomposition eig_symmetric(const Matrix& m, double symmetry_tol) {
    if (m.rows() != m.cols()) {
        throw DimensionError("eig_symmetric requires a square matrix");
    }
    const std::size_t n = m.rows();
    const double norm = frobenius_norm(m);

    double asym = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double d = m(i, j) - m(j, i);
            asym += 2.0 * d * d;
        }
    }
    asym = std::sqrt(asym);
    if (asym > symmetry_tol * std::max(norm, 1e-300)) {
        throw AsymmetryError("matrix deviates from symmetry beyond tolerance", asym);
    }

    // Work on the symmetrized copy.
    Matrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            a(i, j) = 0.5 * (m(i, j) + m(j, i));
        }
    }
    Matrix u = Matrix::identity(n);

    // Cyclic Jacobi. Each sweep annihilates every off-diagonal pair once;
    // convergence is quadratic once the off-diagonal mass is small.
    const double stop = 1e-300;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                off += a(i, j) * a(i, j);
            }
        }
        if (off <= std::max(stop, norm * norm * 1e-32)) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-18 * (std::fabs(a(p, p)) + std::fabs(a(q, q)) + stop)) {
                    continue;
                }
                const double theta = 0.5 * std::atan2(2.0 * apq, a(q, q) - a(p, p));
                const double c = std::cos(theta);
                const double s = std::sin(theta);

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double ukp = u(k, p);
                    const double ukq = u(k, q);
                    u(k, p) = c * ukp - s * ukq;
                    u(k, q) = s * ukp + c * ukq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

    EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = diag[order[j]];
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, j) = u(i, order[j]);
        }
    }
    return out;
}

LuFactorization::LuFactorization(const Matrix& a)
    : n_(a.rows()), lu_(a), perm_(a.rows()) {
    if (a.rows() != a.cols()) {
        throw DimensionError("LU factorization requires a square matrix");
    }
    const double norm = frobenius_norm(a);
    const double pivot_floor = 1e-12 * norm;

    norm1_a_ = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            col += std::fabs(a(i, j));
        }
        norm1_a_ = std::max(norm1_a_, col);
    }

    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    smallest_pivot_ = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t piv = k;
        double best = std::fabs(lu_(k, k));
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double v = std::fabs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= pivot_floor) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "numerically singular system: pivot magnitude %.3e below threshold %.3e",
                          best, pivot_floor);
            throw SingularityError(msg, best);
        }
        if (piv != k) {
            std::swap(perm_[piv], perm_[k]);
            for (std::size_t j = 0; j < n_; ++j) {
                std::swap(lu_(piv, j), lu_(k, j));
            }
        }
        smallest_pivot_ = std::min(smallest_pivot_, best);
        const double inv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double f = lu_(i, k) * inv;
            lu_(i, k) = f;
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = k + 1; j < n_; ++j) {
                lu_(i, j) -= f * lu_(k, j);
            }
        }
    }
}

Matrix LuFactorization::solve(const Matrix& b) const {
    if (b.rows() != n_) {
        throw DimensionError("solve right-hand side row mismatch");
    }
    Matrix x(n_, b.cols());
    for (std::size_t col = 0; col < b.cols(); ++col) {
        // Forward substitution on the permuted RHS.
        for (std::size_t i = 0; i < n_; ++i) {
            double sum = b(perm_[i], col);
            for (std::size_t j = 0; j < i; ++j) {
                sum -= lu_(i, j) * x(j, col);
            }
            x(i, col) = sum;
        }
        // Back substitution.
        for (std::size_t ii = n_; ii-- > 0;) {
            double sum = x(ii, col);
            for (std::size_t j = ii + 1; j < n_; ++j) {
                sum -= lu_(ii, j) * x(j, col);
            }
            x(ii, col) = sum / lu_(ii, ii);
        }
    }
    return x;
}

Matrix LuFactorization::solve_transposed(const Matrix& b) const {
    if (b.rows() != n_) {
        throw DimensionError("solve right-hand side row mismatch");
    }
    // A = P^T L U, so A^T = U^T L^T P. Solve U^T y = b, L^T z = y, x = P^T z.
    Matrix x(n_, b.cols());
    std::vector<double> z(n_);
    for (std::size_t col = 0; col < b.cols(); ++col) {
        for (std::size_t i = 0; i < n_; ++i) {
            double sum = b(i, col);
            for (std::size_t j = 0; j < i; ++j) {
                sum -= lu_(j, i) * z[j];
            }
            z[i] = sum / lu_(i, i);
        }
        for (std::size_t ii = n_; ii-- > 0;) {
            double sum = z[ii];
            for (std::size_t j = ii + 1; j < n_; ++j) {
                sum -= lu_(j, ii) * z[j];
            }
            z[ii] = sum;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            x(perm_[i], col) = z[i];
        }
    }
    return x;
}

double LuFactorization::condition_estimate() const {
    // Hager's 1-norm estimator for ||A^{-1}||_1.
    Matrix x(n_, 1);
    for (std::size_t i = 0; i < n_; ++i) {
        x(i, 0) = 1.0 / static_cast<double>(n_);
    }
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        Matrix y = solve(x);
        double norm1_y = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            norm1_y += std::fabs(y(i, 0));
        }
        Matrix xi(n_, 1);
        for (std::size_t i = 0; i < n_; ++i) {
            xi(i, 0) = y(i, 0) >= 0.0 ? 1.0 : -1.0;
        }
        Matrix w = solve_transposed(xi);
        std::size_t best = 0;
        double best_abs = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (std::fabs(w(i, 0)) > best_abs) {
                best_abs = std::fabs(w(i, 0));
                best = i;
            }
        }
        double dot = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            dot += w(i, 0) * x(i, 0);
        }
        if (norm1_y <= est || best_abs <= dot + 1e-300) {
            est = std::max(est, norm1_y);
            break;
        }
        est = norm1_y;
        x = Matrix(n_, 1);
        x(best, 0) = 1.0;
    }
    return norm1_a_ * est;
}

Matrix solve_general(const Matrix& a, const Matrix& b) {
    return LuFactorization(a).solve(b);
}

Matrix orthonormalize_columns(const Matrix& m) {
    Matrix q = m;
    const std::size_t rows = q.rows();
    const std::size_t cols = q.cols();
    for (std::size_t k = 0; k < cols; ++k) {
        // Two MGS passes for reliable orthogonality.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                double dot = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    dot += q(i, j) * q(i, k);
                }
                for (std::size_t i = 0; i < rows; ++i) {
                    q(i, k) -= dot * q(i, j);
                }
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            norm += q(i, k) * q(i, k);
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            throw SingularityError("column collapsed during orthonormalization", norm);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            q(i, k) /= norm;
        }
    }
    return q;
}

} // namespace nsedit
