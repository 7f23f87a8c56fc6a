#pragma once

#include "killingweb/isometry.hpp"
#include "killingweb/poly.hpp"
#include "killingweb/smallmat.hpp"

#include <array>
#include <span>

namespace kw {

/// Valence-two Killing tensor of Euclidean 3-space in the 21-parameter
/// representation: K = A^{ij} X_i⊙X_j + 2 B^{ij} X_i⊙R_j + C^{ij} R_i⊙R_j
/// with A, C symmetric and B general. Only the differences of B's diagonal
/// entries are geometrically meaningful; `normalized()` fixes the trace-free
/// representative, and equality compares normalized forms.
template <class S>
struct KTParamsT {
    Mat3<S> A, B, C;

    static KTParamsT zero() {
        KTParamsT k;
        k.A = Mat3<S>::filled(S(0));
        k.B = Mat3<S>::filled(S(0));
        k.C = Mat3<S>::filled(S(0));
        return k;
    }

    Vec3<S> beta() const {
        return {{B[1][1] - B[2][2], B[2][2] - B[0][0], B[0][0] - B[1][1]}};
    }

    bool symmetric_ok() const {
        return A[0][1] == A[1][0] && A[0][2] == A[2][0] && A[1][2] == A[2][1] &&
               C[0][1] == C[1][0] && C[0][2] == C[2][0] && C[1][2] == C[2][1];
    }
};

using KTParams = KTParamsT<Rational>;
using KTParamsD = KTParamsT<double>;

/// Killing vector V = A^i X_i + C^i R_i.
template <class S>
struct KVParamsT {
    Vec3<S> A, C;

    bool is_zero() const {
        return A[0] == S(0) && A[1] == S(0) && A[2] == S(0) &&
               C[0] == S(0) && C[1] == S(0) && C[2] == S(0);
    }
};

using KVParams = KVParamsT<Rational>;
using KVParamsD = KVParamsT<double>;

/// The canonical ordering of the 21 Killing tensor parameters:
/// a1,a2,a3, α1,α2,α3, b11,b22,b33, b23,b31,b12, b32,b13,b21, c1,c2,c3, γ1,γ2,γ3.
inline constexpr size_t kNumKtParams = 21;
extern const std::array<const char*, kNumKtParams> kKtParamNames;

template <class S>
std::array<S, kNumKtParams> kt_to_vec(const KTParamsT<S>& k) {
    const auto& A = k.A;
    const auto& B = k.B;
    const auto& C = k.C;
    return {A[0][0], A[1][1], A[2][2], A[1][2], A[0][2], A[0][1],
            B[0][0], B[1][1], B[2][2], B[1][2], B[2][0], B[0][1],
            B[2][1], B[0][2], B[1][0], C[0][0], C[1][1], C[2][2],
            C[1][2], C[0][2], C[0][1]};
}

template <class S>
KTParamsT<S> kt_from_vec(std::span<const S> v) {
    KTParamsT<S> k = KTParamsT<S>::zero();
    k.A[0][0] = v[0];  k.A[1][1] = v[1];  k.A[2][2] = v[2];
    k.A[1][2] = k.A[2][1] = v[3];
    k.A[0][2] = k.A[2][0] = v[4];
    k.A[0][1] = k.A[1][0] = v[5];
    k.B[0][0] = v[6];  k.B[1][1] = v[7];  k.B[2][2] = v[8];
    k.B[1][2] = v[9];  k.B[2][0] = v[10]; k.B[0][1] = v[11];
    k.B[2][1] = v[12]; k.B[0][2] = v[13]; k.B[1][0] = v[14];
    k.C[0][0] = v[15]; k.C[1][1] = v[16]; k.C[2][2] = v[17];
    k.C[1][2] = k.C[2][1] = v[18];
    k.C[0][2] = k.C[2][0] = v[19];
    k.C[0][1] = k.C[1][0] = v[20];
    return k;
}

/// b_ii from the betas: the unique diagonal with b11+b22+b33 = 0 reproducing
/// the given differences. Rejects β1+β2+β3 ≠ 0.
Vec3<Rational> extract_bii(const Vec3<Rational>& beta);

/// Trace-free-B-diagonal representative of the same Killing tensor.
KTParams kt_normalized(const KTParams& k);
KTParamsD kt_normalized(const KTParamsD& k);

bool operator==(const KTParams& a, const KTParams& b);
inline bool operator!=(const KTParams& a, const KTParams& b) { return !(a == b); }

/// Shared (x, y, z) variable list used for spatial component polynomials.
const VarsPtr& xyz_vars();

/// The six independent components K^{ij}(x,y,z), degree ≤ 2 polynomials.
Mat3<Poly> kt_components(const KTParams& k);

/// Components with coefficients drawn from an arbitrary polynomial ring:
/// params holds the 21 parameter values as polynomials over `ring`, and
/// xyz gives the positions of x, y, z in that ring.
Mat3<Poly> kt_components_generic(std::span<const Poly> params, const VarsPtr& ring,
                                 const std::array<size_t, 3>& xyz);

/// Killing vector components (degree ≤ 1): V = (a1−c2·z+c3·y, a2−c3·x+c1·z, a3−c1·y+c2·x).
Vec3<Poly> kv_components(const KVParams& v);
Vec3<Poly> kv_components_generic(std::span<const Poly> params6, const VarsPtr& ring,
                                 const std::array<size_t, 3>& xyz);

/// Parameter transformation under a proper isometry:
///   Ã = λᵀAλ + (λᵀBμ + (λᵀBμ)ᵀ) + μᵀCμ,  B̃ = λᵀBλ + μᵀCλ,  C̃ = λᵀCλ,
/// with μ = W(δ)λ. The exact variant validates λ ∈ SO(3) exactly.
template <class S>
KTParamsT<S> apply_isometry(const KTParamsT<S>& k, const IsometryT<S>& h) {
    require_proper_rotation(h);
    Mat3<S> lt = h.lambda.transpose();
    Mat3<S> mu = h.mu();
    Mat3<S> mt = mu.transpose();
    KTParamsT<S> r;
    Mat3<S> lb = lt * (k.B * mu);
    r.A = lt * (k.A * h.lambda) + lb + lb.transpose() + mt * (k.C * mu);
    r.B = lt * (k.B * h.lambda) + mt * (k.C * h.lambda);
    r.C = lt * (k.C * h.lambda);
    return r;
}

template <class S>
KVParamsT<S> apply_isometry_kv(const KVParamsT<S>& v, const IsometryT<S>& h) {
    require_proper_rotation(h);
    Mat3<S> lt = h.lambda.transpose();
    KVParamsT<S> r;
    r.A = lt * (v.A - cross(v.C, h.delta));
    r.C = lt * v.C;
    return r;
}

inline KTParamsD to_double(const KTParams& k) {
    KTParamsD d;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            d.A[i][j] = k.A[i][j].to_double();
            d.B[i][j] = k.B[i][j].to_double();
            d.C[i][j] = k.C[i][j].to_double();
        }
    return d;
}

inline KVParamsD to_double(const KVParams& v) {
    KVParamsD d;
    for (size_t i = 0; i < 3; ++i) {
        d.A[i] = v.A[i].to_double();
        d.C[i] = v.C[i].to_double();
    }
    return d;
}

/// Largest parameter magnitude; the scale against which floating zero tests
/// are normalized.
double kt_scale(const KTParamsD& k);

}  // namespace kw
