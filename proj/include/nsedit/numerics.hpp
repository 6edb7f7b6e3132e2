#ifndef NSEDIT_NUMERICS_HPP
#define NSEDIT_NUMERICS_HPP

#include <cstddef>
#include <vector>

#include "nsedit/matrix.hpp"

namespace nsedit {

/// Spectral factorization A = U diag(lambda) U^T of a symmetric matrix.
///
/// Eigenvalues are sorted descending; column i of `eigenvectors` pairs with
/// `eigenvalues[i]`. Columns are orthonormal to roughly machine precision.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;

    /// U diag(lambda) U^T, for reconstruction checks.
    Matrix reconstruct() const;
};

/// Symmetric eigendecomposition via cyclic Jacobi rotations.
///
/// The input is symmetrized as (m + m^T)/2 before decomposition. A deviation
/// ||m - m^T||_F > symmetry_tol * ||m||_F is rejected as an AsymmetryError;
/// non-square input raises DimensionError.
///
/// For a symmetric positive semidefinite input this coincides with the SVD,
/// which is why callers that conceptually want an SVD of a Gram matrix use
/// this cheaper routine.
EigenDecomposition eig_symmetric(const Matrix& m, double symmetry_tol = 1e-8);

/// LU factorization with partial pivoting, reusable for repeated solves.
///
/// Any pivot with magnitude below 1e-12 * ||a||_F triggers a
/// SingularityError carrying the offending pivot magnitude.
class LuFactorization {
public:
    explicit LuFactorization(const Matrix& a);

    std::size_t dim() const noexcept { return n_; }
    double smallest_pivot() const noexcept { return smallest_pivot_; }

    /// Solve A x = b for each column of b.
    Matrix solve(const Matrix& b) const;

    /// Solve A^T x = b for each column of b (same factorization).
    Matrix solve_transposed(const Matrix& b) const;

    /// 1-norm condition estimate ||A||_1 * est(||A^{-1}||_1) via Hager's
    /// power-style estimator. Cheap (a handful of solves), never exact.
    double condition_estimate() const;

private:
    std::size_t n_;
    Matrix lu_;
    std::vector<std::size_t> perm_;
    double smallest_pivot_;
    double norm1_a_;
};

/// Solve the general (not necessarily symmetric) system a x = b.
///
/// Post: ||a x - b||_F <= 1e-8 * (||a||_F ||x||_F + ||b||_F).
Matrix solve_general(const Matrix& a, const Matrix& b);

/// Orthonormalize the columns of m in place (modified Gram-Schmidt).
/// Columns that cancel to zero raise SingularityError.
Matrix orthonormalize_columns(const Matrix& m);

} // namespace nsedit

#endif
