#pragma once

#include "killingweb/invariants.hpp"
#include "killingweb/killing_ops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kw {

enum class KvKind { TRANSLATIONAL, ROTATIONAL, HELICOIDAL };

struct KvClass {
    KvKind kind;
    /// sign of Δ2; nonzero only for helicoidal vectors (handedness).
    int handedness = 0;
};

enum class WebClass {
    CARTESIAN,
    CIRCULAR_CYLINDRICAL,
    PARABOLIC_CYLINDRICAL,
    ELLIPTIC_HYPERBOLIC,
    SPHERICAL,
    PROLATE_SPHEROIDAL,
    OBLATE_SPHEROIDAL,
    PARABOLIC,
    CONICAL,
    PARABOLOIDAL,
    ELLIPSOIDAL,
};

const char* web_name(WebClass w);
std::optional<WebClass> web_from_name(const std::string& name);

/// Which aligned subspace a symmetric-path classification produced.
enum class AlignedForm { NONE, TRANSLATIONAL, ROTATIONAL };

struct ClassificationReport {
    WebClass web;
    /// Maps the input frame to the normal-form frame (x_in = λ·x̃ + δ);
    /// identity for the asymmetric path and for constant tensors.
    IsometryD aligning_isometry;
    AlignedForm form = AlignedForm::NONE;
    /// apply_isometry(K, aligning_isometry), in the aligned frame.
    KTParamsD aligned;
    std::vector<KVParams> symmetry_basis;

    // Invariants consulted along the way.
    std::array<Rational, 15> full_deltas;
    std::array<Rational, 6> xi;
    std::optional<std::pair<double, double>> translational_deltas;
    std::optional<std::array<double, 4>> rotational_deltas;
};

/// Killing vector isometry class from (Δ1, Δ2) = (C·C, A·C):
/// both zero → translational; Δ1 ≠ 0, Δ2 = 0 → rotational; both ≠ 0 → helicoidal.
KvClass classify_kv(const KVParams& v);

/// Basis of {V : ℒ_V K = 0}, exact and deterministically ordered (RREF-derived
/// over the parameter order a1,a2,a3,c1,c2,c3).
std::vector<KVParams> symmetry_basis(const KTParams& k);

/// Isometry h such that apply_isometry_kv(V, h) is the canonical
/// ã3·X̃3 (translational), c̃3·R̃3 (rotational) or ã3·X̃3 + c̃3·R̃3 (helicoidal).
IsometryD canonicalize_kv(const KVParams& v);

/// Full web classification. Preconditions (normal eigenvectors, distinct
/// eigenvalues) are enforced exactly; violations throw std::domain_error.
/// Branch decisions are exact on the asymmetric path; on the symmetric paths
/// the aligned parameters are floating and zero tests use the relative
/// tolerance tau_class against the largest aligned parameter magnitude.
ClassificationReport classify_web(const KTParams& k, double tau_class = 1e-9);

/// Classification entry for callers that have already verified the CKT
/// preconditions exactly (the pipeline filters do); skips the re-check.
ClassificationReport classify_web_verified(const KTParams& k, double tau_class = 1e-9);

}  // namespace kw
