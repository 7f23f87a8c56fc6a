#include "killingweb/classify.hpp"

#include <algorithm>
#include <cmath>

namespace kw {

namespace {

const char* kWebNames[] = {"CARTESIAN",          "CIRCULAR_CYLINDRICAL",
                           "PARABOLIC_CYLINDRICAL", "ELLIPTIC_HYPERBOLIC",
                           "SPHERICAL",          "PROLATE_SPHEROIDAL",
                           "OBLATE_SPHEROIDAL",  "PARABOLIC",
                           "CONICAL",            "PARABOLOIDAL",
                           "ELLIPSOIDAL"};

Vec3<double> normalize(const Vec3<double>& v) {
    double n = std::sqrt(dot(v, v));
    return {{v[0] / n, v[1] / n, v[2] / n}};
}

bool kt_is_constant(const KTParams& k) {
    KTParams n = kt_normalized(k);
    Mat3<Rational> zero = Mat3<Rational>::filled(Rational(0));
    Mat3<Rational> boff = n.B;
    return boff == zero && n.C == zero;
}

}  // namespace

const char* web_name(WebClass w) { return kWebNames[static_cast<size_t>(w)]; }

std::optional<WebClass> web_from_name(const std::string& name) {
    for (size_t i = 0; i < 11; ++i)
        if (name == kWebNames[i]) return static_cast<WebClass>(i);
    return std::nullopt;
}

KvClass classify_kv(const KVParams& v) {
    if (v.is_zero()) throw std::domain_error("classify_kv: zero Killing vector");
    auto [d1, d2] = kv_invariants(v);
    if (d1.is_zero()) {
        if (!d2.is_zero())
            throw std::domain_error("classify_kv: inconsistent invariants (C=0 forces A·C=0)");
        return {KvKind::TRANSLATIONAL, 0};
    }
    if (d2.is_zero()) return {KvKind::ROTATIONAL, 0};
    return {KvKind::HELICOIDAL, d2.sign()};
}

std::vector<KVParams> symmetry_basis(const KTParams& k) {
    Mat3<Poly> L = lie_derivative_symbolic_kv(k);
    // Collect the six independent entries over (x,y,z) monomials; each
    // coefficient is a linear form in the six Killing vector parameters.
    std::vector<size_t> xyz = {6, 7, 8};
    std::vector<std::array<Rational, 6>> rows;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i; j < 3; ++j) {
            for (auto& [mono, coef] : L[i][j].collect(xyz)) {
                std::array<Rational, 6> row = {};
                for (const auto& [e, c] : coef.terms()) {
                    size_t var = SIZE_MAX;
                    for (size_t t = 0; t < 6; ++t)
                        if (e[t] == 1) { var = t; break; }
                    if (var == SIZE_MAX)
                        throw std::logic_error("symmetry_basis: non-linear coefficient");
                    row[var] = c;
                }
                rows.push_back(row);
            }
        }
    RatMatrix m(rows.size(), 6);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < 6; ++c) m.at(r, c) = rows[r][c];
    std::vector<KVParams> basis;
    for (auto& v : nullspace(m)) {
        KVParams kv;
        kv.A = {{v[0], v[1], v[2]}};
        kv.C = {{v[3], v[4], v[5]}};
        basis.push_back(kv);
    }
    return basis;
}

IsometryD canonicalize_kv(const KVParams& v) {
    KvClass cls = classify_kv(v);
    KVParamsD d = to_double(v);
    IsometryD h = IsometryD::identity();
    if (cls.kind == KvKind::TRANSLATIONAL) {
        h.lambda = complete_rotation(normalize(d.A));
        return h;
    }
    // Rotational or helicoidal: kill the component of A orthogonal to the
    // axis with a translation solving C×δ = A⊥, axial part set to zero, then
    // rotate the axis onto z̃.
    double c2 = dot(d.C, d.C);
    double ac = dot(d.A, d.C);
    Vec3<double> aperp = d.A;
    for (size_t i = 0; i < 3; ++i) aperp[i] -= (ac / c2) * d.C[i];
    Vec3<double> delta = cross(aperp, d.C);
    for (size_t i = 0; i < 3; ++i) delta[i] /= c2;
    h.lambda = complete_rotation(normalize(d.C));
    h.delta = delta;
    return h;
}

ClassificationReport classify_web(const KTParams& k, double tau_class) {
    if (!k.symmetric_ok())
        throw std::invalid_argument("classify_web: A and C blocks must be symmetric");
    if (!has_normal_eigenvectors(k))
        throw std::domain_error("classify_web: TSN conditions violated (no normal eigenvectors)");
    if (!has_distinct_eigenvalues(k))
        throw std::domain_error("classify_web: characteristic discriminant vanishes identically "
                                "(repeated eigenvalues)");
    return classify_web_verified(k, tau_class);
}

ClassificationReport classify_web_verified(const KTParams& k, double tau_class) {
    ClassificationReport rep;
    rep.full_deltas = full_invariants(k);
    rep.xi = xi_invariants(rep.full_deltas);
    rep.aligning_isometry = IsometryD::identity();
    rep.aligned = to_double(k);

    if (kt_is_constant(k)) {
        rep.web = WebClass::CARTESIAN;
        return rep;
    }

    rep.symmetry_basis = symmetry_basis(k);

    if (rep.symmetry_basis.empty()) {
        // Asymmetric web: fully exact decision tree on the Ξ invariants.
        const auto& xi = rep.xi;
        if (xi[0].is_zero() && xi[1].is_zero()) {
            rep.web = WebClass::PARABOLOIDAL;
        } else if (xi[2].is_zero()) {
            rep.web = WebClass::ELLIPSOIDAL;
        } else if (xi[3].is_zero() && xi[4].is_zero() && xi[5].is_zero()) {
            rep.web = WebClass::CONICAL;
        } else {
            rep.web = WebClass::ELLIPSOIDAL;
        }
        return rep;
    }

    std::optional<size_t> translational, rotational, helicoidal;
    for (size_t i = 0; i < rep.symmetry_basis.size(); ++i) {
        switch (classify_kv(rep.symmetry_basis[i]).kind) {
            case KvKind::TRANSLATIONAL:
                if (!translational) translational = i;
                break;
            case KvKind::ROTATIONAL:
                if (!rotational) rotational = i;
                break;
            case KvKind::HELICOIDAL:
                if (!helicoidal) helicoidal = i;
                break;
        }
    }

    // A helicoidal symmetry pins the label immediately; the axis of any
    // helicoidal member is the web axis, so its alignment still lands the
    // tensor in the rotational subspace for the chart step.
    if (helicoidal) {
        rep.aligning_isometry = canonicalize_kv(rep.symmetry_basis[*helicoidal]);
        rep.aligned = apply_isometry(to_double(k), rep.aligning_isometry);
        rep.form = AlignedForm::ROTATIONAL;
        double tol = tau_class * kt_scale(rep.aligned);
        KTParamsD n = kt_normalized(rep.aligned);
        if (!is_rotational_form(n, tol))
            throw std::domain_error("classify_web: helicoidal alignment failed to produce the "
                                    "rotational normal form");
        rep.rotational_deltas = rotational_invariants(n, tol);
        rep.web = WebClass::CIRCULAR_CYLINDRICAL;
        auto [d1, d2] = std::pair{(*rep.rotational_deltas)[0], (*rep.rotational_deltas)[1]};
        if (std::abs(d1) > tol || std::abs(d2) > tol * kt_scale(rep.aligned))
            throw std::domain_error("classify_web: helicoidal symmetry with non-cylindrical "
                                    "invariants (internal inconsistency)");
        return rep;
    }

    if (translational) {
        rep.aligning_isometry = canonicalize_kv(rep.symmetry_basis[*translational]);
        rep.aligned = apply_isometry(to_double(k), rep.aligning_isometry);
        rep.form = AlignedForm::TRANSLATIONAL;
        double scale = kt_scale(rep.aligned);
        double tol = tau_class * scale;
        KTParamsD n = kt_normalized(rep.aligned);
        if (!is_translational_form(n, tol))
            throw std::domain_error("classify_web: translational alignment failed to produce "
                                    "the translational normal form");
        auto [d1, d2] = translational_invariants(n, tol);
        rep.translational_deltas = {d1, d2};
        bool z1 = std::abs(d1) <= tol;
        bool z2 = std::abs(d2) <= tol * scale;  // Δ2 is quartic in the parameters
        if (z1 && z2) rep.web = WebClass::CARTESIAN;
        else if (!z1 && z2) rep.web = WebClass::CIRCULAR_CYLINDRICAL;
        else if (z1 && !z2) rep.web = WebClass::PARABOLIC_CYLINDRICAL;
        else rep.web = WebClass::ELLIPTIC_HYPERBOLIC;
        return rep;
    }

    if (!rotational)
        throw std::domain_error("classify_web: symmetry basis has no usable member (internal "
                                "inconsistency)");
    rep.aligning_isometry = canonicalize_kv(rep.symmetry_basis[*rotational]);
    rep.aligned = apply_isometry(to_double(k), rep.aligning_isometry);
    rep.form = AlignedForm::ROTATIONAL;
    double scale = kt_scale(rep.aligned);
    double tol = tau_class * scale;
    KTParamsD n = kt_normalized(rep.aligned);
    if (!is_rotational_form(n, tol))
        throw std::domain_error("classify_web: rotational alignment failed to produce the "
                                "rotational normal form");
    auto q = rotational_invariants(n, tol);
    rep.rotational_deltas = q;
    bool z1 = std::abs(q[0]) <= tol;
    bool z2 = std::abs(q[1]) <= tol * scale;
    if (z1 && z2) rep.web = WebClass::CIRCULAR_CYLINDRICAL;
    else if (!z1 && z2) rep.web = WebClass::SPHERICAL;
    else if (!z1 && q[1] > 0) rep.web = WebClass::PROLATE_SPHEROIDAL;
    else if (!z1) rep.web = WebClass::OBLATE_SPHEROIDAL;
    else rep.web = WebClass::PARABOLIC;
    return rep;
}

}  // namespace kw
