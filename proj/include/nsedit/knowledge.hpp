#ifndef NSEDIT_KNOWLEDGE_HPP
#define NSEDIT_KNOWLEDGE_HPP

#include <cstdint>
#include <utility>

#include "nsedit/matrix.hpp"

namespace nsedit {

/// An editable linear associative memory: a weight matrix W (d_out x d_in)
/// read as v = W k for key k.
struct AssociativeMemory {
    Matrix weights;

    std::size_t d_in() const noexcept { return weights.cols(); }
    std::size_t d_out() const noexcept { return weights.rows(); }
};

/// Paired key/value matrices: keys (d_in x n), values (d_out x n).
/// The same type serves preserved knowledge and to-be-updated batches;
/// the role is distinguished by usage.
struct KnowledgeSet {
    Matrix keys;
    Matrix values;

    std::size_t count() const noexcept { return keys.cols(); }
};

/// Keys/values installed by earlier edits in a sequential run, plus the
/// running Gram matrix of the keys. The Gram alone is what solvers need;
/// the explicit keys/values feed retention metrics.
struct EditHistory {
    Matrix prior_keys;   // d_in x p
    Matrix prior_values; // d_out x p
    Matrix gram;         // d_in x d_in, prior_keys * prior_keys^T

    static EditHistory empty(std::size_t d_in, std::size_t d_out);

    std::size_t count() const noexcept { return prior_keys.cols(); }
};

/// Parameters of the synthetic world generator. The low-rank-plus-noise key
/// model (effective_rank r, key_noise sigma) is what makes the preserved-key
/// Gram matrix have a nontrivial small-eigenvalue subspace to project onto.
struct SyntheticSpec {
    std::size_t d_in = 64;
    std::size_t d_out = 32;
    std::size_t preserved_count = 200;
    std::size_t effective_rank = 40;
    double key_noise = 0.0;
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Build a random memory and its preserved knowledge set.
///
/// W has i.i.d. standard-normal entries scaled by 1/sqrt(d_in). Preserved
/// keys are B z + sigma eps with B a random d_in x r orthonormal basis and
/// z, eps standard normal. Values are defined as V0 := W K0 exactly, so the
/// premise "the memory already stores the preserved associations" holds by
/// construction. Deterministic given spec.seed.
std::pair<AssociativeMemory, KnowledgeSet> generate_world(const SyntheticSpec& spec);

/// Draw a batch of edits: keys from the same low-rank-plus-noise
/// distribution as the preserved keys (same basis B, derived from
/// spec.seed), target values drawn independently and scaled per column to
/// match ||W k||, so that generically V1 != W K1. Deterministic given seed.
KnowledgeSet generate_edit_batch(const SyntheticSpec& spec, const AssociativeMemory& memory,
                                 std::size_t batch_size, std::uint64_t seed);

/// Append a batch to the history: column-concatenate keys/values and add
/// the batch Gram K1 K1^T to the running Gram.
EditHistory history_extend(const EditHistory& h, const KnowledgeSet& batch);

} // namespace nsedit

#endif
