#ifndef NSEDIT_EDITORS_HPP
#define NSEDIT_EDITORS_HPP

#include <string>

#include "nsedit/knowledge.hpp"
#include "nsedit/matrix.hpp"
#include "nsedit/projector.hpp"

namespace nsedit {

enum class EditMethod {
    naive,
    memit,
    alphaedit,
    projected_memit,
};

const std::string& method_name(EditMethod m);
EditMethod method_from_name(const std::string& name);

/// A computed perturbation plus solve diagnostics. `normal_eq_residual` is
/// the Frobenius residual of the stationarity condition the solver claims
/// to satisfy; `system_condition_estimate` is a 1-norm condition estimate
/// of the solved system (1 when no system was solved).
struct EditSolution {
    Matrix delta; // d_out x d_in
    EditMethod method = EditMethod::naive;
    double normal_eq_residual = 0.0;
    double system_condition_estimate = 1.0;
};

/// Solver hyperparameters.
///
/// preserved_weight is the weight on the preserved-knowledge error in the
/// regularized solve (default 1, the literal sequential closed form; the
/// large-scale editing presets in configs/ use values in the tens of
/// thousands). ridge_scale is the identity coefficient in the projected
/// solve's bracket (default 1). threshold is forwarded to projector
/// construction by the harness.
struct SolverConfig {
    double preserved_weight = 1.0;
    double ridge_scale = 1.0;
    double threshold = kDefaultThreshold;
    ThresholdMode threshold_mode = ThresholdMode::absolute;

    void validate() const;
};

/// Minimum-Frobenius-norm fit of the batch alone: delta = R K1^+ realized
/// through the Gram system with a small relative ridge. No protection of
/// anything else.
EditSolution solve_naive(const AssociativeMemory& memory, const KnowledgeSet& batch);

/// Regularized closed form: delta = R K1^T (Kp Kp^T + K1 K1^T + lambda K0 K0^T)^{-1},
/// the standard sequential-editing solution. preserved_gram is K0 K0^T.
/// With empty history this is the single-edit normal-equation solution.
EditSolution solve_memit(const AssociativeMemory& memory, const KnowledgeSet& batch,
                         const Matrix& preserved_gram, const EditHistory& history,
                         const SolverConfig& config);

/// Null-space-constrained closed form:
/// delta = R K1^T P (Kp Kp^T P + K1 K1^T P + alpha I)^{-1}.
/// The returned delta is already projected (delta P == delta up to solve
/// tolerance). The bracket is non-symmetric and is solved as the transposed
/// system A^T x = (R K1^T P)^T by a general factorization.
EditSolution solve_alphaedit(const AssociativeMemory& memory, const KnowledgeSet& batch,
                             const NullSpaceProjector& proj, const EditHistory& history,
                             const SolverConfig& config);

/// The one-line integration of projection into the standard solver: compute
/// the solve_memit delta, then right-multiply by P. Diagnostics report the
/// inner (unprojected) solve.
EditSolution solve_projected_baseline(const AssociativeMemory& memory, const KnowledgeSet& batch,
                                      const NullSpaceProjector& proj, const Matrix& preserved_gram,
                                      const EditHistory& history, const SolverConfig& config);

/// W + delta as a new memory; the input is untouched.
AssociativeMemory apply_edit(const AssociativeMemory& memory, const EditSolution& solution);

namespace detail {

/// Test-only fault injection for the verification suite's mutation canary.
enum class AlphaEditFault {
    none,
    flipped_residual_sign,
};

EditSolution solve_alphaedit_with_fault(const AssociativeMemory& memory, const KnowledgeSet& batch,
                                        const NullSpaceProjector& proj, const EditHistory& history,
                                        const SolverConfig& config, AlphaEditFault fault);

} // namespace detail

} // namespace nsedit

#endif
