#include "nsedit/editors.hpp"

#include <array>
#include <cmath>

#include "nsedit/errors.hpp"
#include "nsedit/numerics.hpp"

namespace nsedit {

namespace {

const std::array<std::string, 4> kMethodNames = {"naive", "memit", "alphaedit",
                                                 "projected-memit"};

void check_batch(const AssociativeMemory& memory, const KnowledgeSet& batch) {
    if (batch.keys.rows() != memory.d_in() || batch.values.rows() != memory.d_out() ||
        batch.keys.cols() != batch.values.cols()) {
        throw DimensionError("batch dimensions do not match memory");
    }
}

void check_square_symmetric(const Matrix& g, std::size_t dim, const char* what) {
    if (g.rows() != dim || g.cols() != dim) {
        throw DimensionError(std::string(what) + " has wrong shape");
    }
    double asym = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double d = g(i, j) - g(j, i);
            asym += 2.0 * d * d;
        }
    }
    const double norm = frobenius_norm(g);
    if (std::sqrt(asym) > 1e-8 * std::max(norm, 1e-300)) {
        throw AsymmetryError(std::string(what) + " is not symmetric", std::sqrt(asym));
    }
}

Matrix residual_matrix(const AssociativeMemory& memory, const KnowledgeSet& batch) {
    return batch.values - memory.weights * batch.keys;
}

EditSolution zero_solution(const AssociativeMemory& memory, EditMethod method) {
    return EditSolution{Matrix(memory.d_out(), memory.d_in()), method, 0.0, 1.0};
}

// Solve delta * A = B through the transposed system A^T delta^T = B^T.
// Returns delta along with the factorization's condition estimate.
std::pair<Matrix, double> solve_right(const Matrix& a, const Matrix& b) {
    LuFactorization lu(a);
    Matrix delta_t = lu.solve_transposed(b.transposed());
    return {delta_t.transposed(), lu.condition_estimate()};
}

} // namespace

const std::string& method_name(EditMethod m) {
    return kMethodNames[static_cast<std::size_t>(m)];
}

EditMethod method_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kMethodNames.size(); ++i) {
        if (kMethodNames[i] == name) {
            return static_cast<EditMethod>(i);
        }
    }
    throw ConfigError("methods", "unknown method '" + name + "'");
}

void SolverConfig::validate() const {
    if (!(preserved_weight > 0.0) || !std::isfinite(preserved_weight)) {
        throw ConfigError("lambda", "must be finite and > 0");
    }
    if (!(ridge_scale > 0.0) || !std::isfinite(ridge_scale)) {
        throw ConfigError("alpha", "must be finite and > 0");
    }
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw ConfigError("threshold", "must be finite and > 0");
    }
}

EditSolution solve_naive(const AssociativeMemory& memory, const KnowledgeSet& batch) {
    check_batch(memory, batch);
    if (batch.count() == 0) {
        return zero_solution(memory, EditMethod::naive);
    }
    const Matrix r = residual_matrix(memory, batch);
    const Matrix k1t = batch.keys.transposed();
    Matrix gram = batch.keys * k1t;

    // Relative ridge keeps the solve nonsingular for rank-deficient batches
    // and selects the minimum-norm solution in the limit.
    const double ridge = 1e-10 * std::max(frobenius_norm(gram), 1e-30);
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        gram(i, i) += ridge;
    }

    auto [delta, cond] = solve_right(gram, r * k1t);

    const Matrix stat = (delta * batch.keys - r) * k1t + ridge * delta;
    return EditSolution{std::move(delta), EditMethod::naive, frobenius_norm(stat), cond};
}

EditSolution solve_memit(const AssociativeMemory& memory, const KnowledgeSet& batch,
                         const Matrix& preserved_gram, const EditHistory& history,
                         const SolverConfig& config) {
    check_batch(memory, batch);
    config.validate();
    check_square_symmetric(preserved_gram, memory.d_in(), "preserved_gram");
    if (history.gram.rows() != memory.d_in()) {
        throw DimensionError("history dimension does not match memory");
    }
    if (batch.count() == 0) {
        return zero_solution(memory, EditMethod::memit);
    }

    const Matrix r = residual_matrix(memory, batch);
    const Matrix k1t = batch.keys.transposed();
    const Matrix batch_gram = batch.keys * k1t;
    const Matrix system =
        history.gram + batch_gram + config.preserved_weight * preserved_gram;

    if (frobenius_norm(r) == 0.0) {
        return zero_solution(memory, EditMethod::memit);
    }
    auto [delta, cond] = solve_right(system, r * k1t);

    const Matrix stat = (delta * batch.keys - r) * k1t +
                        config.preserved_weight * (delta * preserved_gram) +
                        delta * history.gram;
    return EditSolution{std::move(delta), EditMethod::memit, frobenius_norm(stat), cond};
}

EditSolution solve_alphaedit(const AssociativeMemory& memory, const KnowledgeSet& batch,
                             const NullSpaceProjector& proj, const EditHistory& history,
                             const SolverConfig& config) {
    return detail::solve_alphaedit_with_fault(memory, batch, proj, history, config,
                                              detail::AlphaEditFault::none);
}

EditSolution detail::solve_alphaedit_with_fault(const AssociativeMemory& memory,
                                                const KnowledgeSet& batch,
                                                const NullSpaceProjector& proj,
                                                const EditHistory& history,
                                                const SolverConfig& config,
                                                detail::AlphaEditFault fault) {
    check_batch(memory, batch);
    config.validate();
    if (proj.source_dim != memory.d_in()) {
        throw DimensionError("projector dimension does not match memory");
    }
    if (history.gram.rows() != memory.d_in()) {
        throw DimensionError("history dimension does not match memory");
    }
    if (batch.count() == 0) {
        return zero_solution(memory, EditMethod::alphaedit);
    }

    Matrix r = residual_matrix(memory, batch);
    if (fault == detail::AlphaEditFault::flipped_residual_sign) {
        r = -1.0 * r;
    }
    if (frobenius_norm(r) == 0.0) {
        return zero_solution(memory, EditMethod::alphaedit);
    }

    const Matrix k1t = batch.keys.transposed();
    const Matrix batch_gram = batch.keys * k1t;

    // Bracket (Kp Kp^T P + K1 K1^T P + alpha I): non-symmetric, so the solve
    // goes through the general factorization of the bracket itself.
    Matrix system = (history.gram + batch_gram) * proj.p;
    for (std::size_t i = 0; i < system.rows(); ++i) {
        system(i, i) += config.ridge_scale;
    }

    auto [delta, cond] = solve_right(system, (r * k1t) * proj.p);

    // Stationarity residual of the projected objective, evaluated on
    // delta P explicitly (the objective only sees delta through P).
    const Matrix dp = delta * proj.p;
    const Matrix stat = ((dp * batch.keys - r) * k1t) * proj.p + config.ridge_scale * dp +
                        (dp * history.gram) * proj.p;
    return EditSolution{std::move(delta), EditMethod::alphaedit, frobenius_norm(stat), cond};
}

EditSolution solve_projected_baseline(const AssociativeMemory& memory, const KnowledgeSet& batch,
                                      const NullSpaceProjector& proj, const Matrix& preserved_gram,
                                      const EditHistory& history, const SolverConfig& config) {
    EditSolution inner = solve_memit(memory, batch, preserved_gram, history, config);
    return EditSolution{project_right(inner.delta, proj), EditMethod::projected_memit,
                        inner.normal_eq_residual, inner.system_condition_estimate};
}

AssociativeMemory apply_edit(const AssociativeMemory& memory, const EditSolution& solution) {
    if (solution.delta.rows() != memory.d_out() || solution.delta.cols() != memory.d_in()) {
        throw DimensionError("delta dimensions do not match memory");
    }
    return AssociativeMemory{memory.weights + solution.delta};
}

} // namespace nsedit
