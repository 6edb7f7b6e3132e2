#include "nsedit/projector.hpp"

#include <cmath>

#include "nsedit/errors.hpp"
#include "nsedit/numerics.hpp"

namespace nsedit {

NullSpaceProjector build_projector(const Matrix& preserved_keys, double threshold,
                                   ThresholdMode mode) {
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw ConfigError("threshold", "must be finite and > 0");
    }
    if (!preserved_keys.all_finite()) {
        throw NonFiniteError("preserved keys contain non-finite entries");
    }
    const std::size_t d0 = preserved_keys.rows();

    Matrix gram(d0, d0);
    if (preserved_keys.cols() > 0) {
        gram = preserved_keys * preserved_keys.transposed();
    }
    EigenDecomposition eig = eig_symmetric(gram);

    double cutoff = threshold;
    if (mode == ThresholdMode::relative) {
        const double leading = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
        cutoff = threshold * std::max(leading, 0.0);
    }

    // Eigenvalues are descending, so the retained block is a suffix.
    std::size_t first_retained = d0;
    for (std::size_t i = 0; i < d0; ++i) {
        if (eig.eigenvalues[i] <= cutoff) {
            first_retained = i;
            break;
        }
    }
    const std::size_t m = d0 - first_retained;

    NullSpaceProjector proj;
    proj.threshold = threshold;
    proj.mode = mode;
    proj.effective_cutoff = cutoff;
    proj.retained_dim = m;
    proj.source_dim = d0;
    proj.spectrum = eig.eigenvalues;
    proj.retained_basis = m > 0 ? eig.eigenvectors.columns(first_retained, m) : Matrix(d0, 0);
    proj.p = m > 0 ? proj.retained_basis * proj.retained_basis.transposed() : Matrix(d0, d0);
    return proj;
}

Matrix project_right(const Matrix& delta, const NullSpaceProjector& proj) {
    if (delta.cols() != proj.source_dim) {
        throw DimensionError("delta column count does not match projector dimension");
    }
    return delta * proj.p;
}

} // namespace nsedit
