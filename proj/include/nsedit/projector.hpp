#ifndef NSEDIT_PROJECTOR_HPP
#define NSEDIT_PROJECTOR_HPP

#include <vector>

#include "nsedit/matrix.hpp"

namespace nsedit {

/// How the eigenvalue cutoff is interpreted when building a projector.
enum class ThresholdMode {
    absolute, // retain eigenvalues <= threshold
    relative, // retain eigenvalues <= threshold * leading eigenvalue
};

/// Orthogonal projector onto the small-eigenvalue eigenspace of the
/// preserved-key Gram matrix K0 K0^T.
///
/// p = retained_basis * retained_basis^T is symmetric and idempotent with
/// eigenvalues in {0, 1}; right-multiplying a perturbation by p confines its
/// action to directions the preserved keys (numerically) do not occupy.
struct NullSpaceProjector {
    Matrix p;              // d0 x d0
    Matrix retained_basis; // d0 x retained_dim (may have zero columns)
    double threshold = 1e-2;
    ThresholdMode mode = ThresholdMode::absolute;
    double effective_cutoff = 1e-2; // resolved absolute cutoff actually applied
    std::size_t retained_dim = 0;
    std::size_t source_dim = 0;
    std::vector<double> spectrum; // Gram eigenvalues, descending
};

/// Default cutoff: eigenvalues of the Gram matrix at or below 1e-2 count as
/// numerically zero and their eigenvectors span the retained null space.
inline constexpr double kDefaultThreshold = 1e-2;

/// Build the projector from preserved keys (d0 x n, n may be 0).
///
/// Computes G = K0 K0^T, eigendecomposes, and retains eigenvectors whose
/// eigenvalue is <= the cutoff (inclusive, for deterministic ties). With no
/// qualifying eigenvalue the projector is the zero matrix; with all
/// qualifying (e.g. zero keys) it is the identity.
NullSpaceProjector build_projector(const Matrix& preserved_keys,
                                   double threshold = kDefaultThreshold,
                                   ThresholdMode mode = ThresholdMode::absolute);

/// Delta * P, the null-space-confined perturbation.
Matrix project_right(const Matrix& delta, const NullSpaceProjector& proj);

} // namespace nsedit

#endif
