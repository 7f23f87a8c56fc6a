#pragma once

#include "killingweb/ktparams.hpp"

#include <array>
#include <utility>

namespace kw {

/// Ring adapters so the invariant expressions are transcribed exactly once and
/// evaluated over Rational (exact path), double (aligned floating path) or
/// Poly (symbolic 21-parameter form for the generator-annihilation checks).
inline Rational ring_scale(const Rational& x, long c) { return x * Rational(c); }
inline double ring_scale(const double& x, long c) { return x * static_cast<double>(c); }
inline Poly ring_scale(const Poly& x, long c) { return x.scaled(Rational(c)); }
inline Rational ring_half(const Rational& x) { return x * Rational(1, 2); }
inline double ring_half(const double& x) { return x * 0.5; }
inline Poly ring_half(const Poly& x) { return x.scaled(Rational(1, 2)); }

/// The fifteen fundamental isometry invariants of the full Killing tensor
/// parameter space, evaluated from the (trace-free normalized) A, B, C blocks.
template <class R>
std::array<R, 15> deltas_from_matrices(const Mat3<R>& A, const Mat3<R>& B, const Mat3<R>& C);

extern template std::array<Rational, 15> deltas_from_matrices(const Mat3<Rational>&,
                                                              const Mat3<Rational>&,
                                                              const Mat3<Rational>&);
extern template std::array<double, 15> deltas_from_matrices(const Mat3<double>&,
                                                            const Mat3<double>&,
                                                            const Mat3<double>&);
extern template std::array<Poly, 15> deltas_from_matrices(const Mat3<Poly>&, const Mat3<Poly>&,
                                                          const Mat3<Poly>&);

/// Δ1..Δ15 on a Killing tensor; the B diagonal is replaced by its trace-free
/// representative before evaluation.
std::array<Rational, 15> full_invariants(const KTParams& k);
std::array<double, 15> full_invariants(const KTParamsD& k);

/// The fifteen Δ's as polynomials over the 21-parameter ring.
const std::array<Poly, 15>& symbolic_deltas();

/// Killing vector invariants (Δ1, Δ2) = (C·C, A·C).
std::pair<Rational, Rational> kv_invariants(const KVParams& v);
std::pair<double, double> kv_invariants(const KVParamsD& v);

/// Normal-form membership tests. The floating variants take an absolute
/// tolerance (already scaled by the caller).
bool is_translational_form(const KTParams& k);
bool is_translational_form(const KTParamsD& k, double tol);
bool is_rotational_form(const KTParams& k);
bool is_rotational_form(const KTParamsD& k, double tol);

/// Planar invariants (Δ1, Δ2) of a tensor in the translational normal form:
/// Δ1 = c3, Δ2 = [b13² − b23² + c3(a2−a1)]² + 4(b13·b23 − α3·c3)².
std::pair<Rational, Rational> translational_invariants(const KTParams& k);
std::pair<double, double> translational_invariants(const KTParamsD& k, double tol);

/// Axial invariants (Δ1..Δ4) of a tensor in the rotational normal form:
/// Δ1 = c2, Δ2 = b12² + c2(a3−a1), Δ3 = a3, Δ4 = c3.
std::array<Rational, 4> rotational_invariants(const KTParams& k);
std::array<double, 4> rotational_invariants(const KTParamsD& k, double tol);

/// Auxiliary invariants driving the asymmetric-web decision tree:
/// Ξ1 = Δ2²−Δ4, Ξ2 = Δ2³−Δ7, Ξ3 = 3Δ4−Δ2², Ξ4 = Δ2Δ5−3Δ8−2Δ10,
/// Ξ5 = Δ2Δ10+Δ4Δ5−Δ11, Ξ6 = Δ2[2Δ2(10Δ2Δ5+24Δ8−3Δ10)−72Δ11+Δ12]
///                            −48Δ4Δ8−20Δ5Δ7+16Δ15.
template <class R>
std::array<R, 6> xi_invariants(const std::array<R, 15>& d) {
    const R& d2 = d[1];
    std::array<R, 6> xi = {
        d2 * d2 - d[3],
        d2 * d2 * d2 - d[6],
        ring_scale(d[3], 3) - d2 * d2,
        d2 * d[4] - ring_scale(d[7], 3) - ring_scale(d[9], 2),
        d2 * d[9] + d[3] * d[4] - d[10],
        d2 * (ring_scale(d2 * (ring_scale(d2 * d[4], 10) + ring_scale(d[7], 24) -
                                ring_scale(d[9], 3)),
                          2) -
              ring_scale(d[10], 72) + d[11]) -
            ring_scale(d[3] * d[7], 48) - ring_scale(d[4] * d[6], 20) + ring_scale(d[14], 16)};
    return xi;
}

}  // namespace kw
