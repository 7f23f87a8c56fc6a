#include "killingweb/invariants.hpp"

#include "killingweb/killing_ops.hpp"

#include <cmath>

namespace kw {

template <class R>
std::array<R, 15> deltas_from_matrices(const Mat3<R>& A, const Mat3<R>& B, const Mat3<R>& C) {
    const R z = A[0][0] - A[0][0];
    auto lc = [](size_t i, size_t j, size_t k) {
        return levi_civita(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
    };

    R tA = A.trace(), tB = B.trace(), tC = C.trace();
    R trA2 = z, trBB = z, frobB = z, AC = z, d3 = z, d4 = z;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            trA2 = trA2 + A[i][j] * A[j][i];
            trBB = trBB + B[i][j] * B[j][i];
            frobB = frobB + B[i][j] * B[i][j];
            AC = AC + A[i][j] * C[i][j];
            d3 = d3 + B[i][j] * C[i][j];
            d4 = d4 + C[i][j] * C[i][j];
        }
    R d6 = z, d7 = z, trACC = z;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k) {
                d6 = d6 + B[i][j] * C[j][k] * C[k][i];
                d7 = d7 + C[i][j] * C[j][k] * C[k][i];
                trACC = trACC + A[i][j] * C[j][k] * C[k][i];
            }

    R d5 = trBB + AC;

    R d8 = z;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k)
                d8 = d8 + C[i][j] * (B[j][k] * (B[i][k] + ring_scale(B[k][i], 2)) +
                                     A[j][k] * C[k][i]);

    R epsBBB = z;
    for (size_t i = 0; i < 3; ++i)
        for (size_t k = 0; k < 3; ++k)
            for (size_t m = 0; m < 3; ++m) {
                int e1 = lc(i, k, m);
                if (e1 == 0) continue;
                for (size_t j = 0; j < 3; ++j)
                    for (size_t l = 0; l < 3; ++l)
                        for (size_t n = 0; n < 3; ++n) {
                            int e = e1 * lc(j, l, n);
                            if (e == 0) continue;
                            epsBBB = epsBBB + ring_scale(B[i][j] * B[k][l] * B[m][n], e);
                        }
            }
    R d9 = epsBBB - ring_scale((ring_half(tB * tB - trBB) + AC) * tB, 2) + ring_scale(
               [&] {
                   R s = z;
                   for (size_t i = 0; i < 3; ++i)
                       for (size_t j = 0; j < 3; ++j)
                           for (size_t k = 0; k < 3; ++k)
                               s = s + B[i][j] * A[j][k] * C[k][i];
                   return s;
               }(),
               6);

    R d10 = z;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k)
                d10 = d10 + B[i][j] * (B[i][k] * C[k][j] - ring_scale(B[j][k] * C[k][i], 2));
    d10 = d10 - (frobB + AC) * tC + tA * ring_half(tC * tC - d4);

    R epsBBCC = z;
    for (size_t i = 0; i < 3; ++i)
        for (size_t l = 0; l < 3; ++l)
            for (size_t m = 0; m < 3; ++m) {
                int e1 = lc(i, l, m);
                if (e1 == 0) continue;
                for (size_t j = 0; j < 3; ++j)
                    for (size_t k = 0; k < 3; ++k)
                        for (size_t p = 0; p < 3; ++p) {
                            int e = e1 * lc(j, k, p);
                            if (e == 0) continue;
                            R cn = z;
                            for (size_t n = 0; n < 3; ++n) cn = cn + C[m][n] * C[n][p];
                            epsBBCC = epsBBCC + ring_scale(B[i][j] * B[k][l] * cn, e);
                        }
            }

    R d11 = epsBBCC;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            R inner = B[i][j] * d4;
            for (size_t k = 0; k < 3; ++k) {
                R t = z;
                for (size_t l = 0; l < 3; ++l) t = t + C[k][l] * B[i][l];
                R swap = z;
                for (size_t l = 0; l < 3; ++l) swap = swap + C[k][l] * B[l][i];
                inner = inner - C[j][k] * (t + ring_scale(ring_half(swap - tC * B[k][i]), 4));
            }
            d11 = d11 + B[i][j] * inner;
        }
    d11 = d11 + AC * ring_half(tC * tC - d4);

    R d12 = tA * ((tC * tC + ring_scale(d4, 3)) * tC - ring_scale(d7, 4)) -
            ring_scale(AC * d4, 6);
    {
        R s = z;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                R inner = B[i][j] * d4;
                for (size_t k = 0; k < 3; ++k) {
                    R t = (B[i][k] - ring_scale(B[k][i], 2)) * tC;
                    for (size_t l = 0; l < 3; ++l)
                        t = t + ring_scale(C[k][l] * B[l][i], 4);
                    inner = inner - C[j][k] * t;
                }
                s = s + B[i][j] * inner;
            }
        d12 = d12 + ring_scale(s, 6) + ring_scale(epsBBCC, 12);
    }

    R d13 = z;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            R inner = B[i][j] * ring_half(tC * tC - d4);
            for (size_t k = 0; k < 3; ++k)
                for (size_t l = 0; l < 3; ++l) inner = inner + B[j][k] * C[k][l] * C[l][i];
            R symt = C[i][j] * tB;
            for (size_t k = 0; k < 3; ++k) symt = symt + C[i][k] * B[j][k];
            inner = inner - symt * tC;
            d13 = d13 + A[i][j] * inner;
        }
    {
        R s = z;
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k) {
                R t = B[j][k] * tC;
                for (size_t l = 0; l < 3; ++l) t = t - B[k][l] * C[l][j];
                s = s + C[j][k] * t;
            }
        d13 = d13 + tA * s;
    }
    {
        R s = z;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                R inner = B[i][j] * d3;
                for (size_t k = 0; k < 3; ++k) {
                    inner = inner + ring_scale(C[j][k] * B[k][i] * tB, 2);
                    inner = inner + B[j][k] * B[i][k] * tC;
                    for (size_t l = 0; l < 3; ++l)
                        inner = inner - (B[j][k] * B[i][l] + B[i][k] * B[l][j]) * C[k][l];
                }
                s = s + B[i][j] * inner;
            }
        d13 = d13 - s;
    }

    R d14 = ring_scale(ring_half(tA * tA - trA2) * ring_half(tC * tC - d4), 4);
    {
        R s = z;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                R inner = z;
                for (size_t k = 0; k < 3; ++k) {
                    R t = C[k][i] * tC;
                    for (size_t l = 0; l < 3; ++l) t = t - C[k][l] * C[i][l];
                    inner = inner + A[j][k] * ring_half(t);
                }
                R t2 = z;
                for (size_t l = 0; l < 3; ++l) t2 = t2 + C[j][l] * C[l][i];
                inner = inner + tA * ring_half(t2 - tC * C[j][i]);
                s = s + A[i][j] * inner;
            }
        d14 = d14 + ring_scale(s, 8);
    }
    d14 = d14 + AC * (AC + ring_scale(ring_half(tB * tB - trBB), 4));
    {
        R s = z;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                for (size_t k = 0; k < 3; ++k)
                    for (size_t l = 0; l < 3; ++l)
                        s = s + C[i][j] * B[j][k] * A[k][l] * B[i][l];
        d14 = d14 + ring_scale(s, 4);
    }
    {
        R s = z;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                R inner = z;
                for (size_t k = 0; k < 3; ++k) {
                    R t = z;
                    for (size_t l = 0; l < 3; ++l) t = t + B[k][l] * B[l][i];
                    inner = inner + C[j][k] * ring_half(t - tB * B[k][i]);
                }
                s = s + A[i][j] * inner;
            }
        d14 = d14 + ring_scale(s, 16);
    }

    R d15 = AC * ((tC * tC - ring_scale(d4, 3)) * tC + ring_scale(d7, 2)) -
            ring_scale(trACC * ring_half(tC * tC - d4), 6);
    {
        R s = z;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                R inner = z;
                for (size_t k = 0; k < 3; ++k) {
                    R t1 = z;
                    for (size_t l = 0; l < 3; ++l) {
                        R br = B[i][l] * tC;
                        for (size_t m = 0; m < 3; ++m) br = br - B[i][m] * C[l][m];
                        t1 = t1 + C[k][l] * ring_half(br);
                    }
                    R t2 = z;
                    for (size_t l = 0; l < 3; ++l) {
                        R br = C[i][l] * tC;
                        for (size_t m = 0; m < 3; ++m) br = br - C[i][m] * C[l][m];
                        t2 = t2 + B[k][l] * ring_half(br);
                    }
                    inner = inner + B[j][k] * (t1 + ring_scale(t2, 2));
                }
                s = s + C[i][j] * inner;
            }
        d15 = d15 - ring_scale(s, 12);
    }

    return {tB, tC, d3, d4, d5, d6, d7, d8, d9, d10, d11, d12, d13, d14, d15};
}

template std::array<Rational, 15> deltas_from_matrices(const Mat3<Rational>&,
                                                       const Mat3<Rational>&,
                                                       const Mat3<Rational>&);
template std::array<double, 15> deltas_from_matrices(const Mat3<double>&, const Mat3<double>&,
                                                     const Mat3<double>&);
template std::array<Poly, 15> deltas_from_matrices(const Mat3<Poly>&, const Mat3<Poly>&,
                                                   const Mat3<Poly>&);

std::array<Rational, 15> full_invariants(const KTParams& k) {
    KTParams n = kt_normalized(k);
    return deltas_from_matrices(n.A, n.B, n.C);
}

std::array<double, 15> full_invariants(const KTParamsD& k) {
    KTParamsD n = kt_normalized(k);
    return deltas_from_matrices(n.A, n.B, n.C);
}

const std::array<Poly, 15>& symbolic_deltas() {
    static const std::array<Poly, 15> deltas = [] {
        const VarsPtr& ring = kt_param_vars();
        std::vector<Poly> p;
        for (size_t i = 0; i < kNumKtParams; ++i) p.push_back(Poly::variable(ring, i));
        KTParamsT<Poly> K = kt_from_vec<Poly>(p);
        return deltas_from_matrices(K.A, K.B, K.C);
    }();
    return deltas;
}

std::pair<Rational, Rational> kv_invariants(const KVParams& v) {
    return {dot(v.C, v.C), dot(v.A, v.C)};
}

std::pair<double, double> kv_invariants(const KVParamsD& v) {
    return {dot(v.C, v.C), dot(v.A, v.C)};
}

namespace {

// Parameters forced to vanish on each normal form, as positions in the
// normalized 21-vector. Translational: α1, α2, b-diagonal, b31, b12, b32, b21,
// c1, c2, γ1, γ2, γ3. Rotational additionally couples a2 = a1, c1 = c2,
// b21 = −b12.
template <class S, class ZeroTest>
bool translational_form_impl(const KTParamsT<S>& k, ZeroTest zero) {
    const auto& A = k.A;
    const auto& B = k.B;
    const auto& C = k.C;
    Vec3<S> beta = k.beta();
    return zero(A[1][2]) && zero(A[0][2]) && zero(beta[0]) && zero(beta[1]) &&
           zero(beta[2]) && zero(B[2][0]) && zero(B[0][1]) && zero(B[2][1]) &&
           zero(B[1][0]) && zero(C[0][0]) && zero(C[1][1]) && zero(C[1][2]) &&
           zero(C[0][2]) && zero(C[0][1]);
}

template <class S, class ZeroTest>
bool rotational_form_impl(const KTParamsT<S>& k, ZeroTest zero) {
    const auto& A = k.A;
    const auto& B = k.B;
    const auto& C = k.C;
    Vec3<S> beta = k.beta();
    return zero(A[1][2]) && zero(A[0][2]) && zero(A[0][1]) && zero(A[1][1] - A[0][0]) &&
           zero(beta[0]) && zero(beta[1]) && zero(beta[2]) && zero(B[1][2]) &&
           zero(B[2][0]) && zero(B[2][1]) && zero(B[0][2]) && zero(B[1][0] + B[0][1]) &&
           zero(C[1][1] - C[0][0]) && zero(C[1][2]) && zero(C[0][2]) && zero(C[0][1]);
}

}  // namespace

bool is_translational_form(const KTParams& k) {
    return translational_form_impl(k, [](const Rational& v) { return v.is_zero(); });
}
bool is_translational_form(const KTParamsD& k, double tol) {
    return translational_form_impl(k, [tol](double v) { return std::abs(v) <= tol; });
}
bool is_rotational_form(const KTParams& k) {
    return rotational_form_impl(k, [](const Rational& v) { return v.is_zero(); });
}
bool is_rotational_form(const KTParamsD& k, double tol) {
    return rotational_form_impl(k, [tol](double v) { return std::abs(v) <= tol; });
}

namespace {

template <class S>
std::pair<S, S> translational_pair(const KTParamsT<S>& k) {
    S a1 = k.A[0][0], a2 = k.A[1][1], al3 = k.A[0][1];
    S b13 = k.B[0][2], b23 = k.B[1][2], c3 = k.C[2][2];
    S s1 = b13 * b13 - b23 * b23 + c3 * (a2 - a1);
    S s2 = b13 * b23 - al3 * c3;
    return {c3, s1 * s1 + ring_scale(s2 * s2, 4)};
}

template <class S>
std::array<S, 4> rotational_quad(const KTParamsT<S>& k) {
    S b12 = k.B[0][1], c2 = k.C[1][1];
    return {c2, b12 * b12 + c2 * (k.A[2][2] - k.A[0][0]), k.A[2][2], k.C[2][2]};
}

}  // namespace

std::pair<Rational, Rational> translational_invariants(const KTParams& k) {
    if (!is_translational_form(k))
        throw std::domain_error("translational_invariants: tensor is not in the translational normal form");
    return translational_pair(k);
}

std::pair<double, double> translational_invariants(const KTParamsD& k, double tol) {
    if (!is_translational_form(k, tol))
        throw std::domain_error("translational_invariants: tensor is not in the translational normal form");
    return translational_pair(k);
}

std::array<Rational, 4> rotational_invariants(const KTParams& k) {
    if (!is_rotational_form(k))
        throw std::domain_error("rotational_invariants: tensor is not in the rotational normal form");
    return rotational_quad(k);
}

std::array<double, 4> rotational_invariants(const KTParamsD& k, double tol) {
    if (!is_rotational_form(k, tol))
        throw std::domain_error("rotational_invariants: tensor is not in the rotational normal form");
    return rotational_quad(k);
}

}  // namespace kw
