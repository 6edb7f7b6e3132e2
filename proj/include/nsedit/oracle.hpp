#ifndef NSEDIT_ORACLE_HPP
#define NSEDIT_ORACLE_HPP

#include <cstddef>
#include <optional>

#include "nsedit/matrix.hpp"

namespace nsedit {

/// The four editing objectives, as plain sums of squares in delta.
///
/// naive:                ||(W+D)K1 - V1||^2
/// regularized:          ||(W+D)K1 - V1||^2 + lambda ||(W+D)K0 - V0||^2
///                                          + ||D Kp||^2   (prior term optional)
/// projected_single:     ||(W+DP)K1 - V1||^2 + ||DP||^2
/// projected_sequential: ||(W+DP)K1 - V1||^2 + alpha ||DP||^2 + ||DP Kp||^2
enum class ObjectiveKind {
    naive,
    regularized,
    projected_single,
    projected_sequential,
};

/// An objective kind plus the matrices it binds. Optional members are
/// required exactly when the kind uses them; validate() enforces this and
/// dimensional consistency.
struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::naive;
    Matrix w;  // d1 x d0
    Matrix k1; // d0 x u
    Matrix v1; // d1 x u
    std::optional<Matrix> k0;         // regularized
    std::optional<Matrix> v0;         // regularized
    std::optional<Matrix> projector;  // projected kinds
    std::optional<Matrix> prior_gram; // sequential terms (Kp Kp^T)
    double lambda = 1.0;
    double alpha = 1.0;

    static ObjectiveSpec make_naive(Matrix w, Matrix k1, Matrix v1);
    static ObjectiveSpec make_regularized(Matrix w, Matrix k1, Matrix v1, Matrix k0, Matrix v0,
                                          double lambda,
                                          std::optional<Matrix> prior_gram = std::nullopt);
    static ObjectiveSpec make_projected_single(Matrix w, Matrix k1, Matrix v1, Matrix projector);
    static ObjectiveSpec make_projected_sequential(Matrix w, Matrix k1, Matrix v1, Matrix projector,
                                                   Matrix prior_gram, double alpha);

    void validate() const;
};

struct OracleResult {
    Matrix delta;
    double objective_value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double final_gradient_norm = 0.0;
};

/// Exact objective value at delta.
double evaluate_objective(const ObjectiveSpec& spec, const Matrix& delta);

/// Analytic gradient of the objective at delta (d1 x d0). For projected
/// kinds the simplifications P = P^T = P^2 are used, matching the
/// projector contract.
Matrix objective_gradient(const ObjectiveSpec& spec, const Matrix& delta);

/// Reasonable step for gradient descent on this objective's curvature.
double default_step(const ObjectiveSpec& spec);

inline constexpr std::size_t kDefaultMaxIters = 50000;
inline constexpr double kDefaultGradTol = 1e-10;

/// Plain gradient descent from delta = 0, halving the step whenever a trial
/// increases the objective, so accepted objective values are non-increasing.
/// Converged means the gradient norm fell below grad_tol times the initial
/// objective value. A non-finite objective raises DivergenceError.
///
/// Deliberately shares no factorization code with the closed-form solvers;
/// for projected kinds the minimizer is only identified up to components
/// annihilated by P, so compare delta * P, never raw delta.
OracleResult minimize(const ObjectiveSpec& spec, double step,
                      std::size_t max_iters = kDefaultMaxIters,
                      double grad_tol = kDefaultGradTol);

} // namespace nsedit

#endif
