#include "nsedit/knowledge.hpp"

#include <cmath>

#include "nsedit/errors.hpp"
#include "nsedit/numerics.hpp"
#include "nsedit/rng.hpp"

namespace nsedit {

namespace {

// Stream tags for deriving independent generators from one spec seed.
constexpr std::uint64_t kBasisStream = 0;
constexpr std::uint64_t kWeightStream = 1;
constexpr std::uint64_t kKeyStream = 2;

Matrix random_matrix(std::size_t rows, std::size_t cols, NormalSampler& rng) {
    Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, j) = rng();
        }
    }
    return m;
}

// The shared key basis B (d_in x r), derived from spec.seed only, so the
// preserved keys and every edit batch sample from the same key subspace.
Matrix key_basis(const SyntheticSpec& spec) {
    NormalSampler rng(derive_seed(spec.seed, kBasisStream));
    Matrix g = random_matrix(spec.d_in, spec.effective_rank, rng);
    return orthonormalize_columns(g);
}

Matrix sample_keys(const SyntheticSpec& spec, const Matrix& basis, std::size_t count,
                   NormalSampler& rng) {
    Matrix z = random_matrix(spec.effective_rank, count, rng);
    Matrix keys = basis * z;
    if (spec.key_noise > 0.0) {
        for (std::size_t j = 0; j < count; ++j) {
            for (std::size_t i = 0; i < spec.d_in; ++i) {
                keys(i, j) += spec.key_noise * rng();
            }
        }
    }
    return keys;
}

} // namespace

void SyntheticSpec::validate() const {
    if (d_in < 1) {
        throw ConfigError("d_in", "must be >= 1");
    }
    if (d_out < 1) {
        throw ConfigError("d_out", "must be >= 1");
    }
    if (effective_rank < 1 || effective_rank > d_in) {
        throw ConfigError("effective_rank", "must satisfy 1 <= effective_rank <= d_in");
    }
    if (preserved_count < effective_rank) {
        throw ConfigError("preserved_count", "must be >= effective_rank");
    }
    if (!(key_noise >= 0.0) || !std::isfinite(key_noise)) {
        throw ConfigError("key_noise", "must be finite and >= 0");
    }
}

EditHistory EditHistory::empty(std::size_t d_in, std::size_t d_out) {
    return EditHistory{Matrix(d_in, 0), Matrix(d_out, 0), Matrix(d_in, d_in)};
}

std::pair<AssociativeMemory, KnowledgeSet> generate_world(const SyntheticSpec& spec) {
    spec.validate();

    NormalSampler wrng(derive_seed(spec.seed, kWeightStream));
    Matrix w = random_matrix(spec.d_out, spec.d_in, wrng);
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.d_in));
    w = scale * w;

    const Matrix basis = key_basis(spec);
    NormalSampler krng(derive_seed(spec.seed, kKeyStream));
    Matrix keys = sample_keys(spec, basis, spec.preserved_count, krng);
    Matrix values = w * keys;

    return {AssociativeMemory{std::move(w)}, KnowledgeSet{std::move(keys), std::move(values)}};
}

KnowledgeSet generate_edit_batch(const SyntheticSpec& spec, const AssociativeMemory& memory,
                                 std::size_t batch_size, std::uint64_t seed) {
    spec.validate();
    if (memory.d_in() != spec.d_in || memory.d_out() != spec.d_out) {
        throw DimensionError("memory dimensions do not match spec");
    }
    if (batch_size == 0) {
        return KnowledgeSet{Matrix(spec.d_in, 0), Matrix(spec.d_out, 0)};
    }

    const Matrix basis = key_basis(spec);
    NormalSampler rng(seed);
    Matrix keys = sample_keys(spec, basis, batch_size, rng);

    // Independent targets, per-column rescaled to the magnitude of the
    // current association W k so edits are neither vanishing nor huge.
    Matrix values = random_matrix(spec.d_out, batch_size, rng);
    Matrix current = memory.weights * keys;
    for (std::size_t j = 0; j < batch_size; ++j) {
        double cur = 0.0;
        double raw = 0.0;
        for (std::size_t i = 0; i < spec.d_out; ++i) {
            cur += current(i, j) * current(i, j);
            raw += values(i, j) * values(i, j);
        }
        cur = std::sqrt(cur);
        raw = std::sqrt(raw);
        if (raw > 0.0 && cur > 0.0) {
            const double s = cur / raw;
            for (std::size_t i = 0; i < spec.d_out; ++i) {
                values(i, j) *= s;
            }
        }
    }
    return KnowledgeSet{std::move(keys), std::move(values)};
}

EditHistory history_extend(const EditHistory& h, const KnowledgeSet& batch) {
    if (batch.keys.rows() != h.prior_keys.rows() ||
        batch.values.rows() != h.prior_values.rows() ||
        batch.keys.cols() != batch.values.cols()) {
        throw DimensionError("history extension dimension mismatch");
    }
    if (batch.count() == 0) {
        return h;
    }
    Matrix gram = h.gram + batch.keys * batch.keys.transposed();
    return EditHistory{h.prior_keys.hcat(batch.keys), h.prior_values.hcat(batch.values),
                       std::move(gram)};
}

} // namespace nsedit
