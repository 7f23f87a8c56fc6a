#pragma once

#include "killingweb/rational.hpp"
#include "killingweb/smallmat.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace kw {

/// Proper Euclidean isometry, x = λ·x̃ + δ with λ ∈ SO(3).
///
/// The convention throughout: an isometry maps coordinates of the *new* frame
/// x̃ to the original frame x. Applying it to Killing tensor/vector parameters
/// produces the parameters seen in the new frame. Composition follows the same
/// convention: apply(apply(K, h1), h2) == apply(K, compose(h1, h2)), where
/// compose(h1, h2) = (λ1·λ2, λ1·δ2 + δ1).
template <class S>
struct IsometryT {
    Mat3<S> lambda;
    Vec3<S> delta;

    static IsometryT identity() {
        IsometryT h;
        h.lambda = Mat3<S>::filled(S(0));
        h.lambda[0][0] = h.lambda[1][1] = h.lambda[2][2] = S(1);
        h.delta = {{S(0), S(0), S(0)}};
        return h;
    }

    /// μ = W(δ)·λ, the matrix pairing translations with rotational generators
    /// in the parameter transformation rules.
    Mat3<S> mu() const { return cross_right(delta) * lambda; }
};

using IsometryQ = IsometryT<Rational>;
using IsometryD = IsometryT<double>;

template <class S>
IsometryT<S> compose(const IsometryT<S>& h1, const IsometryT<S>& h2) {
    return {h1.lambda * h2.lambda, h1.lambda * h2.delta + h1.delta};
}

inline bool is_special_orthogonal(const Mat3<Rational>& m) {
    Mat3<Rational> g = m.transpose() * m;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (g[i][j] != Rational(i == j ? 1 : 0)) return false;
    return m.det() == Rational(1);
}

inline double orthogonality_residual(const Mat3<double>& m) {
    Mat3<double> g = m.transpose() * m;
    double r = std::abs(m.det() - 1.0);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) r = std::max(r, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
    return r;
}

template <class S>
void require_proper_rotation(const IsometryT<S>& h) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (!is_special_orthogonal(h.lambda))
            throw std::invalid_argument("isometry: rotation is not special orthogonal");
    } else {
        if (orthogonality_residual(h.lambda) > 1e-12)
            throw std::invalid_argument("isometry: rotation fails orthogonality tolerance");
    }
}

/// Exact rotation from a rational skew-symmetric matrix via the Cayley map,
/// λ = (I − S)(I + S)⁻¹. Always well defined for skew S, and λᵀλ = I with
/// det λ = 1 hold exactly.
IsometryQ cayley_rotation(const Mat3<Rational>& skew);

inline IsometryD to_double(const IsometryQ& h) {
    IsometryD d;
    for (size_t i = 0; i < 3; ++i) {
        d.delta[i] = h.delta[i].to_double();
        for (size_t j = 0; j < 3; ++j) d.lambda[i][j] = h.lambda[i][j].to_double();
    }
    return d;
}

/// Exact inverse of a 3×3 rational matrix (adjugate over determinant).
Mat3<Rational> inverse3(const Mat3<Rational>& m);

/// Right-handed rotation whose third column is the given unit axis. The plane
/// is completed by Gram-Schmidt seeded with the standard basis vector least
/// aligned with the axis (smallest index on ties); det = +1 by construction.
inline Mat3<double> complete_rotation(const Vec3<double>& w) {
    size_t seed = 0;
    for (size_t k = 1; k < 3; ++k)
        if (std::abs(w[k]) < std::abs(w[seed])) seed = k;
    Vec3<double> u = {{0, 0, 0}};
    u[seed] = 1.0;
    double p = dot(u, w);
    for (size_t i = 0; i < 3; ++i) u[i] -= p * w[i];
    double n = std::sqrt(dot(u, u));
    for (size_t i = 0; i < 3; ++i) u[i] /= n;
    Vec3<double> v = cross(w, u);
    Mat3<double> m;
    for (size_t i = 0; i < 3; ++i) {
        m[i][0] = u[i];
        m[i][1] = v[i];
        m[i][2] = w[i];
    }
    return m;
}

}  // namespace kw
