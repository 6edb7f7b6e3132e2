#include "nsedit/oracle.hpp"

#include <cmath>
#include <utility>

#include "nsedit/errors.hpp"

namespace nsedit {

namespace {

double sum_squares(const Matrix& m) {
    double s = 0.0;
    for (double v : m.data()) {
        s += v * v;
    }
    return s;
}

// tr(m * gram * m^T) for symmetric PSD gram, i.e. ||m K||^2 when
// gram = K K^T, without needing K itself.
double gram_quadratic(const Matrix& m, const Matrix& gram) {
    const Matrix mg = m * gram;
    double s = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        s += mg.data()[k] * m.data()[k];
    }
    return s;
}

void require(bool ok, const char* what) {
    if (!ok) {
        throw DimensionError(what);
    }
}

} // namespace

ObjectiveSpec ObjectiveSpec::make_naive(Matrix w, Matrix k1, Matrix v1) {
    ObjectiveSpec s;
    s.kind = ObjectiveKind::naive;
    s.w = std::move(w);
    s.k1 = std::move(k1);
    s.v1 = std::move(v1);
    s.validate();
    return s;
}

ObjectiveSpec ObjectiveSpec::make_regularized(Matrix w, Matrix k1, Matrix v1, Matrix k0, Matrix v0,
                                              double lambda, std::optional<Matrix> prior_gram) {
    ObjectiveSpec s;
    s.kind = ObjectiveKind::regularized;
    s.w = std::move(w);
    s.k1 = std::move(k1);
    s.v1 = std::move(v1);
    s.k0 = std::move(k0);
    s.v0 = std::move(v0);
    s.lambda = lambda;
    s.prior_gram = std::move(prior_gram);
    s.validate();
    return s;
}

ObjectiveSpec ObjectiveSpec::make_projected_single(Matrix w, Matrix k1, Matrix v1,
                                                   Matrix projector) {
    ObjectiveSpec s;
    s.kind = ObjectiveKind::projected_single;
    s.w = std::move(w);
    s.k1 = std::move(k1);
    s.v1 = std::move(v1);
    s.projector = std::move(projector);
    s.validate();
    return s;
}

ObjectiveSpec ObjectiveSpec::make_projected_sequential(Matrix w, Matrix k1, Matrix v1,
                                                       Matrix projector, Matrix prior_gram,
                                                       double alpha) {
    ObjectiveSpec s;
    s.kind = ObjectiveKind::projected_sequential;
    s.w = std::move(w);
    s.k1 = std::move(k1);
    s.v1 = std::move(v1);
    s.projector = std::move(projector);
    s.prior_gram = std::move(prior_gram);
    s.alpha = alpha;
    s.validate();
    return s;
}

void ObjectiveSpec::validate() const {
    const std::size_t d1 = w.rows();
    const std::size_t d0 = w.cols();
    require(k1.rows() == d0, "k1 rows must equal d0");
    require(v1.rows() == d1, "v1 rows must equal d1");
    require(k1.cols() == v1.cols(), "k1/v1 column mismatch");

    const bool is_projected =
        kind == ObjectiveKind::projected_single || kind == ObjectiveKind::projected_sequential;
    if (is_projected) {
        require(projector.has_value(), "projected objective requires a projector");
        require(projector->rows() == d0 && projector->cols() == d0,
                "projector must be d0 x d0");
    }
    if (kind == ObjectiveKind::regularized) {
        require(k0.has_value() && v0.has_value(), "regularized objective requires k0/v0");
        require(k0->rows() == d0 && v0->rows() == d1 && k0->cols() == v0->cols(),
                "k0/v0 shape mismatch");
    }
    if (prior_gram.has_value()) {
        require(prior_gram->rows() == d0 && prior_gram->cols() == d0,
                "prior gram must be d0 x d0");
    }
    if (kind == ObjectiveKind::projected_sequential) {
        require(prior_gram.has_value(), "sequential objective requires the prior gram");
    }
}

double evaluate_objective(const ObjectiveSpec& spec, const Matrix& delta) {
    require(delta.rows() == spec.w.rows() && delta.cols() == spec.w.cols(),
            "delta shape must match w");

    switch (spec.kind) {
    case ObjectiveKind::naive: {
        return sum_squares((spec.w + delta) * spec.k1 - spec.v1);
    }
    case ObjectiveKind::regularized: {
        double j = sum_squares((spec.w + delta) * spec.k1 - spec.v1);
        j += spec.lambda * sum_squares((spec.w + delta) * (*spec.k0) - *spec.v0);
        if (spec.prior_gram) {
            j += gram_quadratic(delta, *spec.prior_gram);
        }
        return j;
    }
    case ObjectiveKind::projected_single: {
        const Matrix dp = delta * (*spec.projector);
        return sum_squares((spec.w + dp) * spec.k1 - spec.v1) + sum_squares(dp);
    }
    case ObjectiveKind::projected_sequential: {
        const Matrix dp = delta * (*spec.projector);
        double j = sum_squares((spec.w + dp) * spec.k1 - spec.v1);
        j += spec.alpha * sum_squares(dp);
        j += gram_quadratic(dp, *spec.prior_gram);
        return j;
    }
    }
    throw Error("unreachable objective kind");
}

Matrix objective_gradient(const ObjectiveSpec& spec, const Matrix& delta) {
    require(delta.rows() == spec.w.rows() && delta.cols() == spec.w.cols(),
            "delta shape must match w");
    const Matrix k1t = spec.k1.cols() > 0 ? spec.k1.transposed() : Matrix(1, 0);

    auto fit_term = [&](const Matrix& d) {
        // 2 ((W+D)K1 - V1) K1^T
        if (spec.k1.cols() == 0) {
            return Matrix(spec.w.rows(), spec.w.cols());
        }
        return 2.0 * (((spec.w + d) * spec.k1 - spec.v1) * k1t);
    };

    switch (spec.kind) {
    case ObjectiveKind::naive: {
        return fit_term(delta);
    }
    case ObjectiveKind::regularized: {
        Matrix g = fit_term(delta);
        if (spec.k0->cols() > 0) {
            g = g + (2.0 * spec.lambda) *
                        (((spec.w + delta) * (*spec.k0) - *spec.v0) * spec.k0->transposed());
        }
        if (spec.prior_gram) {
            g = g + 2.0 * (delta * (*spec.prior_gram));
        }
        return g;
    }
    case ObjectiveKind::projected_single: {
        const Matrix& p = *spec.projector;
        const Matrix dp = delta * p;
        return fit_term(dp) * p + 2.0 * dp;
    }
    case ObjectiveKind::projected_sequential: {
        const Matrix& p = *spec.projector;
        const Matrix dp = delta * p;
        Matrix g = fit_term(dp) * p + (2.0 * spec.alpha) * dp;
        g = g + 2.0 * ((dp * (*spec.prior_gram)) * p);
        return g;
    }
    }
    throw Error("unreachable objective kind");
}

double default_step(const ObjectiveSpec& spec) {
    const double curvature =
        spec.k1.cols() > 0 ? frobenius_norm(spec.k1 * spec.k1.transposed()) : 0.0;
    return 1e-2 / std::max(curvature, 1.0);
}

OracleResult minimize(const ObjectiveSpec& spec, double step, std::size_t max_iters,
                      double grad_tol) {
    spec.validate();
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConfigError("step", "must be finite and > 0");
    }

    Matrix delta(spec.w.rows(), spec.w.cols());
    double value = evaluate_objective(spec, delta);
    const double scale = std::max(value, 1e-300);

    std::size_t iter = 0;
    bool converged = false;
    Matrix grad = objective_gradient(spec, delta);
    double gnorm = frobenius_norm(grad);
    while (iter < max_iters) {
        if (gnorm <= grad_tol * scale) {
            converged = true;
            break;
        }
        const Matrix trial = delta - step * grad;
        const double trial_value = evaluate_objective(spec, trial);
        if (!std::isfinite(trial_value)) {
            throw DivergenceError("objective became non-finite during descent");
        }
        ++iter;
        if (trial_value > value) {
            step *= 0.5;
            continue;
        }
        delta = trial;
        value = trial_value;
        grad = objective_gradient(spec, delta);
        gnorm = frobenius_norm(grad);
    }
    if (!converged && gnorm <= grad_tol * scale) {
        converged = true;
    }

    return OracleResult{std::move(delta), value, iter, converged, gnorm};
}

} // namespace nsedit
