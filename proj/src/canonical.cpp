#include "killingweb/canonical.hpp"

#include "killingweb/eig3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kw {

namespace {

constexpr double kPi = std::numbers::pi;

Rational need(const std::map<std::string, Rational>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end())
        throw std::invalid_argument("canonical_web_tensor: missing parameter '" + key + "'");
    return it->second;
}

Rational opt(const std::map<std::string, Rational>& p, const std::string& key) {
    auto it = p.find(key);
    return it == p.end() ? Rational(0) : it->second;
}

Mat3<double> rot_z(double phi) {
    Mat3<double> r = Mat3<double>::filled(0.0);
    r[0][0] = std::cos(phi);
    r[0][1] = -std::sin(phi);
    r[1][0] = std::sin(phi);
    r[1][1] = std::cos(phi);
    r[2][2] = 1.0;
    return r;
}

Mat3<double> inverse3d(const Mat3<double>& m) {
    double d = m.det();
    if (std::abs(d) < 1e-14)
        throw std::domain_error("inverse3d: singular matrix");
    Mat3<double> adj;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    return (1.0 / d) * adj;
}

double norm(const Vec3<double>& v) { return std::sqrt(dot(v, v)); }

/// Translation part of the parameter action: the parameters seen from the
/// frame x = x̃ + δ.
KTParamsD translate_params(const KTParamsD& k, const Vec3<double>& delta) {
    IsometryD h = IsometryD::identity();
    h.delta = delta;
    return apply_isometry(k, h);
}

KTParamsD conjugate_params(const KTParamsD& k, const Mat3<double>& lambda) {
    IsometryD h = IsometryD::identity();
    h.lambda = lambda;
    return apply_isometry(k, h);
}

struct PatternCheck {
    double residual = 0.0;
    void zero(double v) { residual = std::max(residual, std::abs(v)); }
};

double canonical_pattern_residual(const KTParamsD& kt, WebClass web) {
    KTParamsD k = kt_normalized(kt);
    PatternCheck pc;
    const auto& A = k.A;
    const auto& B = k.B;
    const auto& C = k.C;
    auto all_B_zero = [&] {
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) pc.zero(B[i][j]);
    };
    auto A_diag = [&] {
        pc.zero(A[0][1]);
        pc.zero(A[0][2]);
        pc.zero(A[1][2]);
    };
    auto C_diag = [&] {
        pc.zero(C[0][1]);
        pc.zero(C[0][2]);
        pc.zero(C[1][2]);
    };
    switch (web) {
        case WebClass::CARTESIAN:
            A_diag();
            all_B_zero();
            for (size_t i = 0; i < 3; ++i)
                for (size_t j = 0; j < 3; ++j) pc.zero(C[i][j]);
            break;
        case WebClass::CIRCULAR_CYLINDRICAL:
            A_diag();
            pc.zero(A[1][1] - A[0][0]);
            all_B_zero();
            C_diag();
            pc.zero(C[0][0]);
            pc.zero(C[1][1]);
            break;
        case WebClass::PARABOLIC_CYLINDRICAL:
            A_diag();
            pc.zero(A[1][1] - A[0][0]);
            for (size_t i = 0; i < 3; ++i)
                for (size_t j = 0; j < 3; ++j)
                    if (!(i == 1 && j == 2)) pc.zero(B[i][j]);
            for (size_t i = 0; i < 3; ++i)
                for (size_t j = 0; j < 3; ++j) pc.zero(C[i][j]);
            break;
        case WebClass::ELLIPTIC_HYPERBOLIC:
            A_diag();
            all_B_zero();
            C_diag();
            pc.zero(C[0][0]);
            pc.zero(C[1][1]);
            break;
        case WebClass::SPHERICAL:
            A_diag();
            pc.zero(A[1][1] - A[0][0]);
            pc.zero(A[2][2] - A[0][0]);
            all_B_zero();
            C_diag();
            pc.zero(C[1][1] - C[0][0]);
            break;
        case WebClass::PROLATE_SPHEROIDAL:
        case WebClass::OBLATE_SPHEROIDAL:
            A_diag();
            pc.zero(A[1][1] - A[0][0]);
            all_B_zero();
            C_diag();
            pc.zero(C[1][1] - C[0][0]);
            break;
        case WebClass::PARABOLIC:
            A_diag();
            pc.zero(A[1][1] - A[0][0]);
            pc.zero(A[2][2] - A[0][0]);
            pc.zero(B[0][0]);
            pc.zero(B[1][1]);
            pc.zero(B[2][2]);
            pc.zero(B[0][2]);
            pc.zero(B[1][2]);
            pc.zero(B[2][0]);
            pc.zero(B[2][1]);
            pc.zero(B[1][0] + B[0][1]);
            C_diag();
            pc.zero(C[0][0]);
            pc.zero(C[1][1]);
            break;
        case WebClass::CONICAL:
            A_diag();
            pc.zero(A[1][1] - A[0][0]);
            pc.zero(A[2][2] - A[0][0]);
            all_B_zero();
            C_diag();
            break;
        case WebClass::PARABOLOIDAL:
            A_diag();
            pc.zero(B[0][0]);
            pc.zero(B[1][1]);
            pc.zero(B[2][2]);
            pc.zero(B[0][2]);
            pc.zero(B[1][2]);
            pc.zero(B[2][0]);
            pc.zero(B[2][1]);
            C_diag();
            pc.zero(C[0][0]);
            pc.zero(C[1][1]);
            break;
        case WebClass::ELLIPSOIDAL:
            A_diag();
            all_B_zero();
            C_diag();
            break;
    }
    return pc.residual;
}

void require_pattern(const KTParamsD& k, WebClass web, double tau) {
    double scale = std::max(1.0, kt_scale(k));
    if (canonical_pattern_residual(k, web) > tau * scale)
        throw std::domain_error(std::string("to_canonical: tensor does not match the ") +
                                web_name(web) + " canonical form (residual too large)");
}

/// Solve W(δ)·C = B for δ in least squares (stacked c_j × δ = b_j).
Vec3<double> solve_translation_from_B(const Mat3<double>& C, const Mat3<double>& B) {
    Mat3<double> N = Mat3<double>::filled(0.0);
    Vec3<double> rhs = {{0, 0, 0}};
    for (size_t j = 0; j < 3; ++j) {
        Vec3<double> cj = {{C[0][j], C[1][j], C[2][j]}};
        Vec3<double> bj = {{B[0][j], B[1][j], B[2][j]}};
        // [cj]x^T [cj]x = |cj|^2 I − cj cjᵀ ;  [cj]x^T bj = bj × cj
        double c2 = dot(cj, cj);
        for (size_t r = 0; r < 3; ++r)
            for (size_t s = 0; s < 3; ++s) N[r][s] += (r == s ? c2 : 0.0) - cj[r] * cj[s];
        Vec3<double> cb = cross(bj, cj);
        for (size_t r = 0; r < 3; ++r) rhs[r] += cb[r];
    }
    return inverse3d(N) * rhs;
}

struct ParaboloidalCandidate {
    IsometryD frame;
    KTParamsD canon;
    double b, c;
    double residual;
};

}  // namespace

KTParams canonical_web_tensor(WebClass web, const std::map<std::string, Rational>& p) {
    KTParams k = KTParams::zero();
    auto diagA = [&](Rational x, Rational y, Rational z) {
        k.A[0][0] = x;
        k.A[1][1] = y;
        k.A[2][2] = z;
    };
    auto diagC = [&](Rational x, Rational y, Rational z) {
        k.C[0][0] = x;
        k.C[1][1] = y;
        k.C[2][2] = z;
    };
    auto positive_ratio = [](const Rational& num, const Rational& den, const char* what) {
        if (den.is_zero() || (num / den).sign() <= 0)
            throw std::invalid_argument(std::string("canonical_web_tensor: constraint violated: ") +
                                        what);
    };
    switch (web) {
        case WebClass::CARTESIAN:
            diagA(need(p, "a1"), need(p, "a2"), need(p, "a3"));
            break;
        case WebClass::CIRCULAR_CYLINDRICAL: {
            Rational c3 = need(p, "c3");
            if (c3.is_zero())
                throw std::invalid_argument("canonical_web_tensor: circular cylindrical needs c3 != 0");
            diagA(need(p, "a1"), need(p, "a1"), need(p, "a3"));
            diagC(Rational(0), Rational(0), c3);
            break;
        }
        case WebClass::PARABOLIC_CYLINDRICAL: {
            Rational b23 = need(p, "b23");
            if (b23.is_zero())
                throw std::invalid_argument("canonical_web_tensor: parabolic cylindrical needs b23 != 0");
            diagA(need(p, "a1"), need(p, "a1"), need(p, "a3"));
            k.B[1][2] = b23;
            break;
        }
        case WebClass::ELLIPTIC_HYPERBOLIC: {
            Rational a1 = need(p, "a1"), a2 = need(p, "a2"), c3 = need(p, "c3");
            positive_ratio(a1 - a2, c3, "(a1-a2)/c3 > 0");
            diagA(a1, a2, need(p, "a3"));
            diagC(Rational(0), Rational(0), c3);
            break;
        }
        case WebClass::SPHERICAL: {
            Rational c2 = need(p, "c2");
            if (c2.is_zero())
                throw std::invalid_argument("canonical_web_tensor: spherical needs c2 != 0");
            Rational a1 = need(p, "a1");
            diagA(a1, a1, a1);
            diagC(c2, c2, need(p, "c3"));
            break;
        }
        case WebClass::PROLATE_SPHEROIDAL:
        case WebClass::OBLATE_SPHEROIDAL: {
            Rational a1 = need(p, "a1"), a3 = need(p, "a3"), c2 = need(p, "c2");
            Rational r = c2.is_zero() ? Rational(0) : (a3 - a1) / c2;
            bool want_pos = (web == WebClass::PROLATE_SPHEROIDAL);
            if (c2.is_zero() || r.sign() != (want_pos ? 1 : -1))
                throw std::invalid_argument("canonical_web_tensor: spheroidal sign constraint "
                                            "(a3-a1)/c2 violated");
            diagA(a1, a1, a3);
            diagC(c2, c2, opt(p, "c3"));
            break;
        }
        case WebClass::PARABOLIC: {
            Rational b12 = need(p, "b12");
            if (b12.is_zero())
                throw std::invalid_argument("canonical_web_tensor: parabolic needs b12 != 0");
            Rational a1 = need(p, "a1");
            diagA(a1, a1, a1);
            k.B[0][1] = b12;
            k.B[1][0] = -b12;
            diagC(Rational(0), Rational(0), opt(p, "c3"));
            break;
        }
        case WebClass::CONICAL: {
            Rational c1 = need(p, "c1"), c2 = need(p, "c2"), c3 = need(p, "c3");
            if (c1 == c2 || c2 == c3 || c1 == c3)
                throw std::invalid_argument("canonical_web_tensor: conical needs distinct c1,c2,c3");
            Rational a1 = need(p, "a1");
            diagA(a1, a1, a1);
            diagC(c1, c2, c3);
            break;
        }
        case WebClass::PARABOLOIDAL: {
            Rational a1 = need(p, "a1"), a2 = need(p, "a2"), a3 = need(p, "a3");
            Rational b12 = need(p, "b12"), b21 = need(p, "b21"), c3 = need(p, "c3");
            Rational lhs = b12 * (b12 * b21 + c3 * (a2 - a3)) + b21 * (b12 * b21 + c3 * (a1 - a3));
            if (!lhs.is_zero())
                throw std::invalid_argument("canonical_web_tensor: paraboloidal constraint violated");
            if (b12.is_zero() && b21.is_zero())
                throw std::invalid_argument("canonical_web_tensor: paraboloidal needs b12 or b21 nonzero");
            diagA(a1, a2, a3);
            k.B[0][1] = b12;
            k.B[1][0] = b21;
            diagC(Rational(0), Rational(0), c3);
            break;
        }
        case WebClass::ELLIPSOIDAL: {
            Rational a1 = need(p, "a1"), a2 = need(p, "a2"), a3 = need(p, "a3");
            Rational c1 = need(p, "c1"), c2 = need(p, "c2"), c3 = need(p, "c3");
            Rational lhs = (a1 - a2) * c1 * c2 + (a2 - a3) * c2 * c3 + (a3 - a1) * c3 * c1;
            if (!lhs.is_zero())
                throw std::invalid_argument("canonical_web_tensor: ellipsoidal constraint violated");
            diagA(a1, a2, a3);
            diagC(c1, c2, c3);
            break;
        }
    }
    return k;
}

namespace {

SeparableChart canonical_cartesian(const KTParamsD& k, double tau) {
    Eig3Result e = symmetric_eig3(k.A);
    Mat3<double> lam = e.vectors;
    if (lam.det() < 0)
        for (size_t i = 0; i < 3; ++i) lam[i][2] = -lam[i][2];
    SeparableChart c{WebClass::CARTESIAN, {}, IsometryD::identity()};
    c.frame.lambda = lam;
    require_pattern(conjugate_params(k, lam), WebClass::CARTESIAN, tau);
    return c;
}

SeparableChart canonical_translational(const KTParamsD& kn, WebClass web, double tau) {
    // Operates on the translational normal form: free parameters
    // a1, a2, a3, α3, b13, b23, c3.
    double a1 = kn.A[0][0], a2 = kn.A[1][1], al3 = kn.A[0][1];
    double b13 = kn.B[0][2], b23 = kn.B[1][2], c3 = kn.C[2][2];
    double scale = std::max(1.0, kt_scale(kn));
    double phi = 0.0;
    Vec3<double> delta = {{0, 0, 0}};
    EssentialParams ess;

    switch (web) {
        case WebClass::CARTESIAN:
            return canonical_cartesian(kn, tau);
        case WebClass::CIRCULAR_CYLINDRICAL:
            if (std::abs(c3) <= tau * scale)
                throw std::domain_error("to_canonical: circular cylindrical with c3 ~ 0");
            delta = {{b23 / c3, -b13 / c3, 0.0}};
            break;
        case WebClass::PARABOLIC_CYLINDRICAL: {
            double b2 = b13 * b13 + b23 * b23;
            if (b2 <= tau * scale * scale)
                throw std::domain_error("to_canonical: parabolic cylindrical with b13,b23 ~ 0");
            phi = (std::abs(b23) <= tau * scale) ? kPi / 2 : std::atan(-b13 / b23);
            delta = {{(b23 * (a2 - a1) + 2 * al3 * b13) / (2 * b2),
                      (b13 * (a2 - a1) - 2 * al3 * b23) / (2 * b2), 0.0}};
            break;
        }
        case WebClass::ELLIPTIC_HYPERBOLIC: {
            double s1 = b13 * b13 - b23 * b23 + c3 * (a2 - a1);
            double s2 = al3 * c3 - b13 * b23;
            double disc = s1 * s1 + 4 * s2 * s2;
            if (std::abs(c3) <= tau * scale)
                throw std::domain_error("to_canonical: elliptic-hyperbolic with c3 ~ 0");
            if (std::abs(s2) <= tau * scale * scale)
                phi = (s1 < 0) ? 0.0 : kPi / 2;
            else
                phi = std::atan((s1 + std::sqrt(disc)) / (2 * s2));
            delta = {{b23 / c3, -b13 / c3, 0.0}};
            double a_sq = std::sqrt(disc) / (c3 * c3);
            if (a_sq <= tau)
                throw std::domain_error("to_canonical: degenerate elliptic-hyperbolic focal "
                                        "parameter");
            ess.a = std::sqrt(a_sq);
            break;
        }
        default:
            throw std::logic_error("canonical_translational: not a translational web");
    }

    SeparableChart c{web, ess, IsometryD{rot_z(phi), delta}};
    require_pattern(apply_isometry(kn, c.frame), web, tau);
    return c;
}

SeparableChart canonical_rotational(const KTParamsD& kn, WebClass web, double tau) {
    // Operates on the rotational normal form: free parameters a1, a3, b12, c2, c3.
    double a1 = kn.A[0][0], a3 = kn.A[2][2];
    double b12 = kn.B[0][1], c2 = kn.C[1][1];
    double scale = std::max(1.0, kt_scale(kn));
    double d3 = 0.0;
    EssentialParams ess;

    switch (web) {
        case WebClass::CIRCULAR_CYLINDRICAL:
            d3 = 0.0;  // already canonical; the axis position is free
            break;
        case WebClass::SPHERICAL:
            if (std::abs(c2) <= tau * scale)
                throw std::domain_error("to_canonical: spherical with c2 ~ 0");
            d3 = b12 / c2;
            break;
        case WebClass::PROLATE_SPHEROIDAL:
        case WebClass::OBLATE_SPHEROIDAL: {
            if (std::abs(c2) <= tau * scale)
                throw std::domain_error("to_canonical: spheroidal with c2 ~ 0");
            d3 = b12 / c2;
            double delta2 = b12 * b12 + c2 * (a3 - a1);
            double a_sq = (web == WebClass::PROLATE_SPHEROIDAL ? 1.0 : -1.0) * delta2 / (c2 * c2);
            if (a_sq <= tau)
                throw std::domain_error("to_canonical: degenerate spheroidal focal parameter");
            ess.a = std::sqrt(a_sq);
            break;
        }
        case WebClass::PARABOLIC:
            if (std::abs(b12) <= tau * scale)
                throw std::domain_error("to_canonical: parabolic with b12 ~ 0");
            d3 = (a1 - a3) / (2 * b12);
            break;
        default:
            throw std::logic_error("canonical_rotational: not a rotational web");
    }

    SeparableChart c{web, ess, IsometryD::identity()};
    c.frame.delta = {{0.0, 0.0, d3}};
    require_pattern(apply_isometry(kn, c.frame), web, tau);
    return c;
}

SeparableChart canonical_conical(const KTParamsD& k, double tau) {
    Eig3Result e = symmetric_eig3(k.C);
    double cscale = std::max({std::abs(e.values[0]), std::abs(e.values[2]), 1.0});
    if (e.values[1] - e.values[0] <= tau * cscale || e.values[2] - e.values[1] <= tau * cscale)
        throw std::domain_error("to_canonical: conical tensor with nearly equal C eigenvalues");
    Vec3<double> delta = solve_translation_from_B(k.C, k.B);
    Mat3<double> lam = e.vectors;
    if (lam.det() < 0)
        for (size_t i = 0; i < 3; ++i) lam[i][2] = -lam[i][2];

    SeparableChart c{WebClass::CONICAL, {}, IsometryD{lam, delta}};
    require_pattern(apply_isometry(k, c.frame), WebClass::CONICAL, tau);
    double ratio = (e.values[1] - e.values[0]) / (e.values[2] - e.values[0]);
    c.essential.b = std::sqrt(ratio);
    c.essential.c = 1.0;
    return c;
}

SeparableChart canonical_ellipsoidal(const KTParamsD& k, double tau) {
    Eig3Result e = symmetric_eig3(k.C);
    double cscale = std::max({std::abs(e.values[0]), std::abs(e.values[2]), 1.0});
    bool d01 = e.values[1] - e.values[0] > tau * cscale;
    bool d12 = e.values[2] - e.values[1] > tau * cscale;

    Vec3<double> delta = solve_translation_from_B(k.C, k.B);
    Mat3<double> lam;
    if (d01 && d12) {
        lam = e.vectors;
    } else if (!d01 && !d12) {
        // Isotropic C: the rotation comes from diagonalizing the translated A.
        KTParamsD kt = translate_params(k, delta);
        Eig3Result ea = symmetric_eig3(kt.A);
        lam = ea.vectors;
    } else {
        throw std::domain_error("to_canonical: ellipsoidal tensor with exactly two equal C "
                                "eigenvalues (internal inconsistency)");
    }
    if (lam.det() < 0)
        for (size_t i = 0; i < 3; ++i) lam[i][0] = -lam[i][0];

    IsometryD base{lam, delta};
    KTParamsD kc = apply_isometry(k, base);
    require_pattern(kc, WebClass::ELLIPSOIDAL, tau);

    // The §-recovery rows determine the differences of (a,b,c); search the
    // axis permutations for the one giving a > b > c.
    std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2},
                                                {0, 2, 1},
                                                {1, 0, 2},
                                                {1, 2, 0},
                                                {2, 0, 1},
                                                {2, 1, 0}}};
    double scale = std::max(1.0, kt_scale(kc));
    for (const auto& pm : perms) {
        double at[3] = {kc.A[pm[0]][pm[0]], kc.A[pm[1]][pm[1]], kc.A[pm[2]][pm[2]]};
        double ct[3] = {kc.C[pm[0]][pm[0]], kc.C[pm[1]][pm[1]], kc.C[pm[2]][pm[2]]};
        double ab, ca;  // a−b and c−a
        if (std::abs(ct[1]) > tau * scale && std::abs(ct[2]) > tau * scale) {
            ab = (at[0] - at[1]) / ct[2];
            ca = (at[2] - at[0]) / ct[1];
        } else if (std::abs(ct[1]) <= tau * scale && std::abs(ct[2]) > tau * scale) {
            ab = (at[0] - at[1]) / ct[2];
            double cb = (at[0] - at[1]) / ct[0];
            ca = cb - ab;
        } else if (std::abs(ct[1]) > tau * scale && std::abs(ct[2]) <= tau * scale) {
            ca = (at[2] - at[0]) / ct[1];
            double cb = (at[2] - at[0]) / ct[0];
            ab = cb - ca;  // a−b = (c−b) − (c−a)
        } else {
            continue;
        }
        double bc = -ca - ab;  // b−c = (a−c) − (a−b)
        if (!(ab > tau && bc > tau)) continue;  // a > b > c

        Mat3<double> plam;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) plam[i][j] = lam[i][pm[j]];
        if (plam.det() < 0)
            for (size_t i = 0; i < 3; ++i) plam[i][0] = -plam[i][0];

        SeparableChart c{WebClass::ELLIPSOIDAL, {}, IsometryD{plam, delta}};
        double a_raw = ab + bc, b_raw = bc, c_raw = 0.0;  // gauge a−c, b−c, 0
        double shift = 1.0 - c_raw;
        c.essential.a = a_raw + shift;
        c.essential.b = b_raw + shift;
        c.essential.c = 1.0;
        require_pattern(apply_isometry(k, c.frame), WebClass::ELLIPSOIDAL, tau);
        return c;
    }
    throw std::domain_error("to_canonical: no axis ordering satisfies a > b > c (near-degenerate "
                            "ellipsoidal input)");
}

SeparableChart canonical_paraboloidal(const KTParamsD& kin, double tau) {
    KTParamsD k = kt_normalized(kin);
    double scale = std::max(1.0, kt_scale(k));
    Eig3Result ec = symmetric_eig3(k.C);
    double cmax = std::max(std::abs(ec.values[0]), std::abs(ec.values[2]));

    std::vector<ParaboloidalCandidate> candidates;
    auto try_candidate = [&](const Mat3<double>& lam, const Vec3<double>& delta) {
        IsometryD h{lam, delta};
        KTParamsD kc = apply_isometry(k, h);
        double res = canonical_pattern_residual(kc, WebClass::PARABOLOIDAL);
        if (res > tau * scale) return;
        KTParamsD kn = kt_normalized(kc);
        double at1 = kn.A[0][0], at2 = kn.A[1][1], at3 = kn.A[2][2];
        double b12 = kn.B[0][1], b21 = kn.B[1][0], c3 = kn.C[2][2];
        double b_raw, c_raw;
        double ztol = tau * scale;
        if (std::abs(c3) <= ztol) {
            if (std::abs(b12) <= ztol) return;
            c_raw = (at2 - at3) / (2 * b12);
            b_raw = c_raw - (at2 - at1) / (2 * b12);
        } else if (std::abs(b21) <= ztol && std::abs(b12) > ztol) {
            b_raw = (at1 - at2) / (2 * b12);
            c_raw = b_raw + b12 / (2 * c3);
        } else if (std::abs(b12) <= ztol && std::abs(b21) > ztol) {
            c_raw = (at1 - at2) / (2 * b21);
            b_raw = c_raw - b21 / (2 * c3);
        } else if (std::abs(b12) > ztol && std::abs(b21) > ztol) {
            b_raw = (at1 - at3) / (2 * b12);
            c_raw = b_raw + (b12 + b21) / (2 * c3);
        } else {
            return;
        }
        if (!(b_raw - c_raw > tau)) return;
        candidates.push_back({h, kc, b_raw, c_raw, res});
    };

    if (cmax > tau * scale) {
        // C has rank one: eigenvalues {0, 0, c̃3}.
        size_t big = std::abs(ec.values[0]) > std::abs(ec.values[2]) ? 0 : 2;
        double c3 = ec.values[big];
        if (std::abs(ec.values[(big + 1) % 3]) > tau * scale ||
            std::abs(ec.values[(big + 2) % 3]) > tau * scale)
            throw std::domain_error("to_canonical: paraboloidal tensor whose C block is not rank "
                                    "one");
        Vec3<double> v3 = {{ec.vectors[0][big], ec.vectors[1][big], ec.vectors[2][big]}};
        for (int sign = 0; sign < 2; ++sign) {
            Vec3<double> w = sign ? -v3 : v3;
            Vec3<double> bv = k.B * w;
            for (size_t i = 0; i < 3; ++i) bv[i] /= c3;
            Vec3<double> delta = cross(bv, w);
            KTParamsD kt = translate_params(k, delta);
            Mat3<double> lam0 = complete_rotation(w);
            Mat3<double> bp = lam0.transpose() * (kt.B * lam0);
            double d = 0.5 * (bp[0][0] - bp[1][1]);
            double s = 0.5 * (bp[0][1] + bp[1][0]);
            double psi0 = 0.5 * std::atan2(-d, s);
            for (int q = 0; q < 4; ++q)
                try_candidate(lam0 * rot_z(psi0 + q * kPi / 2), delta);
        }
    } else {
        // C vanishes; B must be skew with axis u, and b̃12 = |u| > 0 forces the
        // third column to be −u/|u|.
        Vec3<double> u = {{k.B[2][1], k.B[0][2], k.B[1][0]}};
        double un = norm(u);
        if (un <= tau * scale)
            throw std::domain_error("to_canonical: paraboloidal tensor with vanishing B and C");
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                if (std::abs(k.B[i][j] + k.B[j][i]) > tau * scale)
                    throw std::domain_error("to_canonical: paraboloidal tensor with C = 0 whose B "
                                            "is not skew");
        Vec3<double> w = {{-u[0] / un, -u[1] / un, -u[2] / un}};
        Vec3<double> aw = k.A * w;
        double axial = dot(aw, w);
        Vec3<double> delta;
        for (size_t i = 0; i < 3; ++i) delta[i] = -(aw[i] - axial * w[i]) / un;
        KTParamsD kt = translate_params(k, delta);
        Mat3<double> lam0 = complete_rotation(w);
        Mat3<double> ap = lam0.transpose() * (kt.A * lam0);
        double psi0 = 0.5 * std::atan2(2 * ap[0][1], ap[0][0] - ap[1][1]);
        for (int q = 0; q < 4; ++q) try_candidate(lam0 * rot_z(psi0 + q * kPi / 2), delta);
    }

    if (candidates.empty())
        throw std::domain_error("to_canonical: no paraboloidal canonical-form candidate found");
    // All candidates share δ; the enumeration order is the deterministic
    // tie-break.
    const ParaboloidalCandidate& best = candidates.front();
    // Pin the shift gauge to c = 1. The chart's z-output moves with the shift,
    // so the frame absorbs the compensating translation along the axis.
    double shift = 1.0 - best.c;
    SeparableChart c{WebClass::PARABOLOIDAL, {}, best.frame};
    c.essential.b = best.b + shift;
    c.essential.c = 1.0;
    for (size_t i = 0; i < 3; ++i) c.frame.delta[i] -= shift * c.frame.lambda[i][2];
    return c;
}

}  // namespace

SeparableChart to_canonical(const KTParamsD& kin, WebClass web, double tau_canon) {
    KTParamsD k = kt_normalized(kin);
    switch (web) {
        case WebClass::CARTESIAN:
            return canonical_cartesian(k, tau_canon);
        case WebClass::CIRCULAR_CYLINDRICAL: {
            // Reaches canonical form from either aligned subspace; in the
            // rotational form nothing is left to do.
            double tol = tau_canon * std::max(1.0, kt_scale(k));
            if (is_rotational_form(k, tol) && std::abs(k.C[1][1]) <= tol &&
                std::abs(k.B[0][1]) <= tol) {
                SeparableChart c{web, {}, IsometryD::identity()};
                require_pattern(k, web, tau_canon);
                return c;
            }
            return canonical_translational(k, web, tau_canon);
        }
        case WebClass::PARABOLIC_CYLINDRICAL:
        case WebClass::ELLIPTIC_HYPERBOLIC:
            return canonical_translational(k, web, tau_canon);
        case WebClass::SPHERICAL:
        case WebClass::PROLATE_SPHEROIDAL:
        case WebClass::OBLATE_SPHEROIDAL:
        case WebClass::PARABOLIC:
            return canonical_rotational(k, web, tau_canon);
        case WebClass::CONICAL:
            return canonical_conical(k, tau_canon);
        case WebClass::PARABOLOIDAL:
            return canonical_paraboloidal(k, tau_canon);
        case WebClass::ELLIPSOIDAL:
            return canonical_ellipsoidal(k, tau_canon);
    }
    throw std::logic_error("to_canonical: unknown web");
}

namespace {

void require_range(bool ok, const char* what) {
    if (!ok) throw std::domain_error(std::string("chart_map: coordinate out of range: ") + what);
}

double sq(double v) { return v * v; }

Vec3<double> chart_T(const SeparableChart& chart, const Vec3<double>& u,
                     const std::array<int, 3>& oct) {
    auto sgn = [&](size_t i) { return oct[i] >= 0 ? 1.0 : -1.0; };
    switch (chart.web) {
        case WebClass::CARTESIAN:
            return u;
        case WebClass::CIRCULAR_CYLINDRICAL:
            require_range(u[0] >= 0, "r >= 0");
            return {{u[0] * std::cos(u[1]), u[0] * std::sin(u[1]), u[2]}};
        case WebClass::PARABOLIC_CYLINDRICAL:
            require_range(u[0] >= 0, "mu >= 0");
            return {{0.5 * (sq(u[0]) - sq(u[1])), u[0] * u[1], u[2]}};
        case WebClass::ELLIPTIC_HYPERBOLIC: {
            double a = *chart.essential.a;
            require_range(u[0] >= 0, "eta >= 0");
            return {{a * std::cosh(u[0]) * std::cos(u[1]),
                     a * std::sinh(u[0]) * std::sin(u[1]), u[2]}};
        }
        case WebClass::SPHERICAL:
            require_range(u[0] >= 0, "r >= 0");
            require_range(u[1] >= 0 && u[1] <= kPi, "0 <= theta <= pi");
            return {{u[0] * std::sin(u[1]) * std::cos(u[2]),
                     u[0] * std::sin(u[1]) * std::sin(u[2]), u[0] * std::cos(u[1])}};
        case WebClass::PROLATE_SPHEROIDAL: {
            double a = *chart.essential.a;
            require_range(u[0] >= 0, "eta >= 0");
            require_range(u[1] >= 0 && u[1] <= kPi, "0 <= theta <= pi");
            return {{a * std::sinh(u[0]) * std::sin(u[1]) * std::cos(u[2]),
                     a * std::sinh(u[0]) * std::sin(u[1]) * std::sin(u[2]),
                     a * std::cosh(u[0]) * std::cos(u[1])}};
        }
        case WebClass::OBLATE_SPHEROIDAL: {
            double a = *chart.essential.a;
            require_range(u[0] >= 0, "eta >= 0");
            require_range(u[1] >= 0 && u[1] <= kPi, "0 <= theta <= pi");
            return {{a * std::cosh(u[0]) * std::sin(u[1]) * std::cos(u[2]),
                     a * std::cosh(u[0]) * std::sin(u[1]) * std::sin(u[2]),
                     a * std::sinh(u[0]) * std::cos(u[1])}};
        }
        case WebClass::PARABOLIC:
            require_range(u[0] >= 0 && u[1] >= 0, "mu, nu >= 0");
            return {{u[0] * u[1] * std::cos(u[2]), u[0] * u[1] * std::sin(u[2]),
                     0.5 * (sq(u[0]) - sq(u[1]))}};
        case WebClass::CONICAL: {
            double b = *chart.essential.b, c = *chart.essential.c;
            double r = u[0], th = u[1], la = u[2];
            require_range(r >= 0, "r >= 0");
            require_range(sq(b) < sq(th) && sq(th) < sq(c), "b^2 < theta^2 < c^2");
            require_range(0 < sq(la) && sq(la) < sq(b), "0 < lambda^2 < b^2");
            double x = r * th * la / (b * c);
            double y = std::sqrt(sq(r) * (sq(th) - sq(b)) * (sq(b) - sq(la)) /
                                 (sq(b) * (sq(c) - sq(b))));
            double z = std::sqrt(sq(r) * (sq(c) - sq(th)) * (sq(c) - sq(la)) /
                                 (sq(c) * (sq(c) - sq(b))));
            return {{sgn(0) * std::abs(x), sgn(1) * y, sgn(2) * z}};
        }
        case WebClass::PARABOLOIDAL: {
            double b = *chart.essential.b, c = *chart.essential.c;
            double mu = u[0], nu = u[1], la = u[2];
            require_range(0 < nu && nu < c && c < la && la < b && b < mu,
                          "0 < nu < c < lambda < b < mu");
            double x = 2.0 * std::sqrt((mu - b) * (b - nu) * (b - la) / (b - c));
            double y = 2.0 * std::sqrt((mu - c) * (c - nu) * (la - c) / (b - c));
            return {{sgn(0) * x, sgn(1) * y, mu + nu + la - b - c}};
        }
        case WebClass::ELLIPSOIDAL: {
            double a = *chart.essential.a, b = *chart.essential.b, c = *chart.essential.c;
            double et = u[0], th = u[1], la = u[2];
            require_range(a > et && et > b && b > th && th > c && c > la,
                          "a > eta > b > theta > c > lambda");
            double x = std::sqrt((a - et) * (a - th) * (a - la) / ((a - b) * (a - c)));
            double y = std::sqrt((b - et) * (b - th) * (b - la) / ((b - a) * (b - c)));
            double z = std::sqrt((c - et) * (c - th) * (c - la) / ((c - a) * (c - b)));
            return {{sgn(0) * x, sgn(1) * y, sgn(2) * z}};
        }
    }
    throw std::logic_error("chart_T: unknown web");
}

}  // namespace

Vec3<double> chart_map(const SeparableChart& chart, const Vec3<double>& u,
                       const std::array<int, 3>& octant) {
    Vec3<double> t = chart_T(chart, u, octant);
    return chart.frame.lambda * t + chart.frame.delta;
}

double chart_pushforward_check(const KTParamsD& k, const SeparableChart& chart,
                               const Vec3<double>& u, const std::array<int, 3>& octant) {
    Mat3<double> J;
    for (size_t c = 0; c < 3; ++c) {
        double h = 1e-6 * std::max(1.0, std::abs(u[c]));
        Vec3<double> up = u, um = u;
        up[c] += h;
        um[c] -= h;
        Vec3<double> xp = chart_map(chart, up, octant);
        Vec3<double> xm = chart_map(chart, um, octant);
        for (size_t r = 0; r < 3; ++r) J[r][c] = (xp[r] - xm[r]) / (2 * h);
    }
    if (std::abs(J.det()) < 1e-10)
        throw std::domain_error("chart_pushforward_check: singular Jacobian");
    Mat3<double> Ji = inverse3d(J);
    Vec3<double> x = chart_map(chart, u, octant);
    Mat3<double> Kx = kt_value_at(k, x);
    Mat3<double> Kc = Ji * Kx * Ji.transpose();
    double off = 0.0;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (i != j) off = std::max(off, std::abs(Kc[i][j]));
    return off;
}

Vec3<double> chart_interior_point(const SeparableChart& chart, const Vec3<double>& t) {
    auto lerp = [](double lo, double hi, double s) { return lo + (hi - lo) * s; };
    auto mid = [&](double s) { return 0.1 + 0.8 * s; };  // keep clear of range edges
    switch (chart.web) {
        case WebClass::CARTESIAN:
            return {{lerp(-2, 2, t[0]), lerp(-2, 2, t[1]), lerp(-2, 2, t[2])}};
        case WebClass::CIRCULAR_CYLINDRICAL:
            return {{lerp(0.4, 2.2, t[0]), lerp(0.3, 5.9, t[1]), lerp(-2, 2, t[2])}};
        case WebClass::PARABOLIC_CYLINDRICAL:
            return {{lerp(0.4, 2.0, t[0]), lerp(0.3, 2.0, t[1]), lerp(-2, 2, t[2])}};
        case WebClass::ELLIPTIC_HYPERBOLIC:
            return {{lerp(0.3, 1.6, t[0]), lerp(0.25, 1.3, t[1]), lerp(-2, 2, t[2])}};
        case WebClass::SPHERICAL:
            return {{lerp(0.5, 2.2, t[0]), lerp(0.4, kPi - 0.4, t[1]), lerp(0.3, 5.9, t[2])}};
        case WebClass::PROLATE_SPHEROIDAL:
        case WebClass::OBLATE_SPHEROIDAL:
            return {{lerp(0.35, 1.6, t[0]), lerp(0.4, kPi - 0.4, t[1]), lerp(0.3, 5.9, t[2])}};
        case WebClass::PARABOLIC:
            return {{lerp(0.4, 1.8, t[0]), lerp(0.4, 1.8, t[1]), lerp(0.3, 5.9, t[2])}};
        case WebClass::CONICAL: {
            double b = *chart.essential.b, c = *chart.essential.c;
            double th2 = lerp(b * b, c * c, mid(t[1]));
            double la2 = lerp(0.0, b * b, mid(t[2]));
            return {{lerp(0.5, 2.0, t[0]), std::sqrt(th2), std::sqrt(la2)}};
        }
        case WebClass::PARABOLOIDAL: {
            double b = *chart.essential.b, c = *chart.essential.c;
            return {{lerp(b + 0.2, b + 1.6, t[0]), lerp(0.0, c, mid(t[1])),
                     lerp(c, b, mid(t[2]))}};
        }
        case WebClass::ELLIPSOIDAL: {
            double a = *chart.essential.a, b = *chart.essential.b, c = *chart.essential.c;
            return {{lerp(b, a, mid(t[0])), lerp(c, b, mid(t[1])),
                     lerp(c - 1.5, c - 0.1, t[2])}};
        }
    }
    throw std::logic_error("chart_interior_point: unknown web");
}

}  // namespace kw
