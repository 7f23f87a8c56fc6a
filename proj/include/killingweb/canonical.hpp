#pragma once

#include "killingweb/classify.hpp"

#include <map>

namespace kw {

/// Intrinsic shape constants of a web's chart. Present per web:
///   {a} for elliptic-hyperbolic and the two spheroidals,
///   {b,c} for conical and paraboloidal, {a,b,c} for ellipsoidal,
///   empty otherwise.
/// Gauge conventions (the charts determine some combinations only):
///   conical (b,c) fixed up to common scale — pinned to c = 1;
///   paraboloidal (b,c) fixed up to common shift (a translation along the
///   axis shifts both) — pinned to c = 1;
///   ellipsoidal (a,b,c) fixed up to common shift — pinned to c = 1.
struct EssentialParams {
    std::optional<double> a, b, c;
};

/// A separable chart: web label, essential parameters, and the frame
/// x = λ·T(u) + δ mapping separable coordinates through the canonical chart
/// map T into the original Cartesian frame.
struct SeparableChart {
    WebClass web;
    EssentialParams essential;
    IsometryD frame;
};

/// The canonical Killing tensor of a web family, from its named exact
/// parameters (see the per-web parameter lists in the implementation).
/// Validates the printed family constraints exactly.
KTParams canonical_web_tensor(WebClass web, const std::map<std::string, Rational>& params);

/// Transformation of an aligned tensor to its canonical form. For symmetric
/// webs the input must already be in the matching normal form (the classify
/// step guarantees this); asymmetric webs need no pre-alignment. The result's
/// frame is relative to the input frame. Residuals above tau_canon (relative)
/// and degenerate essential parameters throw std::domain_error.
SeparableChart to_canonical(const KTParamsD& k, WebClass web, double tau_canon = 1e-8);

/// Cartesian point of a separable-coordinate triple. Charts whose defining
/// relations are quadratic (conical, ellipsoidal, and the x,y coordinates of
/// paraboloidal) take an explicit sign octant. Out-of-range coordinates throw
/// std::domain_error.
Vec3<double> chart_map(const SeparableChart& chart, const Vec3<double>& u,
                       const std::array<int, 3>& octant = {1, 1, 1});

/// Max |off-diagonal| of K expressed in chart coordinates at u, computed with
/// a central-difference Jacobian (step 1e-6 scaled by |u|). Throws on a
/// singular Jacobian.
double chart_pushforward_check(const KTParamsD& k, const SeparableChart& chart,
                               const Vec3<double>& u,
                               const std::array<int, 3>& octant = {1, 1, 1});

/// A strictly interior chart point from a unit-cube triple t ∈ (0,1)^3;
/// used for verification sampling.
Vec3<double> chart_interior_point(const SeparableChart& chart, const Vec3<double>& t);

/// Exact value of the component matrix K^{ij} at a point: A + (B·W + WᵀBᵀ) +
/// WᵀCW with W = W(x). Agrees with evaluating kt_components.
template <class S>
Mat3<S> kt_value_at(const KTParamsT<S>& k, const Vec3<S>& x) {
    Mat3<S> w = cross_right(x);
    Mat3<S> bw = k.B * w;
    return k.A + bw + bw.transpose() + w.transpose() * (k.C * w);
}

}  // namespace kw
