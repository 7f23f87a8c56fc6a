#include "killingweb/classify.hpp"

#include "killingweb/canonical.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace kw;

namespace {

KVParams kv(std::array<long, 3> a, std::array<long, 3> c) {
    KVParams v;
    for (size_t i = 0; i < 3; ++i) {
        v.A[i] = Rational(a[i]);
        v.C[i] = Rational(c[i]);
    }
    return v;
}

}  // namespace

TEST_CASE("killing vector classification") {
    CHECK(classify_kv(kv({1, 0, 0}, {0, 0, 0})).kind == KvKind::TRANSLATIONAL);
    CHECK(classify_kv(kv({0, 0, 1}, {0, 0, 1})).kind == KvKind::HELICOIDAL);
    CHECK(classify_kv(kv({0, 0, 1}, {0, 0, 1})).handedness == 1);
    CHECK(classify_kv(kv({0, 0, -2}, {0, 0, 1})).handedness == -1);
    CHECK_THROWS_AS(classify_kv(kv({0, 0, 0}, {0, 0, 0})), std::domain_error);

    // a rotation moved anywhere stays rotational
    KVParams r2 = kv({0, 0, 0}, {0, 1, 0});
    for (int t = 0; t < 10; ++t) {
        KVParams moved = apply_isometry_kv(r2, oracle::rnd_isometry());
        CHECK(classify_kv(moved).kind == KvKind::ROTATIONAL);
    }
}

TEST_CASE("kv invariants preserved under exact isometries") {
    for (int t = 0; t < 25; ++t) {
        KVParams v = oracle::rnd_kvparams();
        auto before = kv_invariants(v);
        auto after = kv_invariants(apply_isometry_kv(v, oracle::rnd_isometry()));
        CHECK(before.first == after.first);
        CHECK(before.second == after.second);
    }
}

TEST_CASE("symmetry basis") {
    KTParams metric = KTParams::zero();
    metric.A[0][0] = metric.A[1][1] = metric.A[2][2] = Rational(1);
    CHECK(symmetry_basis(metric).size() == 6);

    // spherical canonical with c2 = c3 is invariant under all rotations
    KTParams iso = canonical_web_tensor(
        WebClass::SPHERICAL, {{"a1", Rational(1)}, {"c2", Rational(2)}, {"c3", Rational(2)}});
    auto basis_iso = symmetry_basis(iso);
    CHECK(basis_iso.size() == 3);
    bool has_r3 = false;
    for (const auto& v : basis_iso)
        if (v.A[0].is_zero() && v.A[1].is_zero() && v.A[2].is_zero() && v.C[0].is_zero() &&
            v.C[1].is_zero() && !v.C[2].is_zero())
            has_r3 = true;
    CHECK(has_r3);

    // generic spherical keeps only the axial rotation
    KTParams sph = canonical_web_tensor(
        WebClass::SPHERICAL, {{"a1", Rational(1)}, {"c2", Rational(2)}, {"c3", Rational(5)}});
    auto basis = symmetry_basis(sph);
    REQUIRE(basis.size() == 1);
    CHECK(classify_kv(basis[0]).kind == KvKind::ROTATIONAL);

    // every returned member annihilates the tensor identically
    for (const auto& v : basis_iso) {
        Mat3<Poly> l = lie_derivative(v, iso);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) CHECK(l[i][j].is_zero());
    }

    // brute-force dimension oracle on a transformed tensor: the dimension is
    // isometry invariant
    IsometryQ h = oracle::rnd_isometry();
    CHECK(symmetry_basis(apply_isometry(sph, h)).size() == 1);
    CHECK(symmetry_basis(apply_isometry(iso, h)).size() == 3);
}

TEST_CASE("kv canonicalization") {
    // X3 is already canonical
    KVParams x3 = kv({0, 0, 1}, {0, 0, 0});
    IsometryD h = canonicalize_kv(x3);
    KVParamsD c = apply_isometry_kv(to_double(x3), h);
    CHECK(std::abs(c.A[0]) < 1e-14);
    CHECK(std::abs(c.A[1]) < 1e-14);
    CHECK(std::abs(std::abs(c.A[2]) - 1.0) < 1e-14);

    // rotational with offset axis: translation solves the cross system
    KVParams off = kv({1, -1, 0}, {0, 0, 1});
    IsometryD h2 = canonicalize_kv(off);
    KVParamsD c2 = apply_isometry_kv(to_double(off), h2);
    for (size_t i = 0; i < 3; ++i) CHECK(std::abs(c2.A[i]) < 1e-12);
    CHECK(std::abs(c2.C[0]) < 1e-12);
    CHECK(std::abs(c2.C[1]) < 1e-12);
    CHECK(std::abs(c2.C[2]) > 0.5);
    CHECK(orthogonality_residual(h2.lambda) < 1e-12);

    // the CM vector aligns to the (1,1,1) axis with the expected rotation
    KVParams vcm = kv({0, 0, 0}, {1, 1, 1});
    IsometryD h3 = canonicalize_kv(vcm);
    double inv = 1.0 / std::sqrt(3.0);
    for (size_t i = 0; i < 3; ++i) CHECK(h3.lambda[i][2] == doctest::Approx(inv).epsilon(1e-12));
    // the full matrix reproduces the reference alignment
    double s6 = 1.0 / std::sqrt(6.0), s2 = 1.0 / std::sqrt(2.0);
    CHECK(h3.lambda[0][0] == doctest::Approx(2 * s6));
    CHECK(h3.lambda[1][0] == doctest::Approx(-s6));
    CHECK(h3.lambda[2][0] == doctest::Approx(-s6));
    CHECK(h3.lambda[0][1] == doctest::Approx(0.0));
    CHECK(h3.lambda[1][1] == doctest::Approx(s2));
    CHECK(h3.lambda[2][1] == doctest::Approx(-s2));

    // helicoidal: both parts land on the axis
    KVParams heli = kv({2, 0, 0}, {1, 0, 0});
    IsometryD h4 = canonicalize_kv(heli);
    KVParamsD c4 = apply_isometry_kv(to_double(heli), h4);
    CHECK(std::abs(c4.A[0]) < 1e-12);
    CHECK(std::abs(c4.A[1]) < 1e-12);
    CHECK(std::abs(std::abs(c4.A[2]) - 2.0) < 1e-12);
    CHECK(std::abs(std::abs(c4.C[2]) - 1.0) < 1e-12);
}

TEST_CASE("web classification of canonical representatives") {
    KTParams cart = canonical_web_tensor(
        WebClass::CARTESIAN,
        {{"a1", Rational(1)}, {"a2", Rational(2)}, {"a3", Rational(3)}});
    CHECK(classify_web(cart).web == WebClass::CARTESIAN);

    auto expect = [](WebClass w, const std::map<std::string, Rational>& p) {
        KTParams k = canonical_web_tensor(w, p);
        ClassificationReport r = classify_web(k);
        CHECK(r.web == w);
    };
    expect(WebClass::CIRCULAR_CYLINDRICAL,
           {{"a1", Rational(1)}, {"a3", Rational(-1)}, {"c3", Rational(2)}});
    expect(WebClass::PARABOLIC_CYLINDRICAL,
           {{"a1", Rational(1)}, {"a3", Rational(4)}, {"b23", Rational(2)}});
    expect(WebClass::ELLIPTIC_HYPERBOLIC,
           {{"a1", Rational(5)}, {"a2", Rational(1)}, {"a3", Rational(2)}, {"c3", Rational(2)}});
    expect(WebClass::SPHERICAL,
           {{"a1", Rational(1)}, {"c2", Rational(2)}, {"c3", Rational(3)}});
    expect(WebClass::PROLATE_SPHEROIDAL,
           {{"a1", Rational(0)}, {"a3", Rational(4)}, {"c2", Rational(2)}, {"c3", Rational(1)}});
    expect(WebClass::OBLATE_SPHEROIDAL,
           {{"a1", Rational(4)}, {"a3", Rational(0)}, {"c2", Rational(2)}, {"c3", Rational(1)}});
    expect(WebClass::PARABOLIC,
           {{"a1", Rational(1)}, {"b12", Rational(2)}, {"c3", Rational(1)}});
    expect(WebClass::CONICAL,
           {{"a1", Rational(1)}, {"c1", Rational(1)}, {"c2", Rational(2)}, {"c3", Rational(4)}});
    expect(WebClass::PARABOLOIDAL,
           {{"a1", Rational(-1, 2)}, {"a2", Rational(1)}, {"a3", Rational(2)},
            {"b12", Rational(1)}, {"b21", Rational(2)}, {"c3", Rational(1)}});
    expect(WebClass::ELLIPSOIDAL,
           {{"a1", Rational(5)}, {"a2", Rational(1)}, {"a3", Rational(-1)},
            {"c1", Rational(1)}, {"c2", Rational(2)}, {"c3", Rational(4)}});
}

TEST_CASE("classification rejects non-characteristic tensors") {
    KTParams metric = KTParams::zero();
    metric.A[0][0] = metric.A[1][1] = metric.A[2][2] = Rational(1);
    CHECK_THROWS_AS(classify_web(metric), std::domain_error);

    KTParams bad = KTParams::zero();
    bad.A[1][2] = bad.A[2][1] = Rational(1);
    bad.B[0][2] = Rational(1);
    bad.C[2][2] = Rational(1);
    CHECK_THROWS_AS(classify_web(bad), std::domain_error);
}

TEST_CASE("web label is isometry invariant") {
    std::vector<KTParams> reps = {
        canonical_web_tensor(WebClass::SPHERICAL, {{"a1", Rational(1)}, {"c2", Rational(2)},
                                                   {"c3", Rational(3)}}),
        canonical_web_tensor(WebClass::PARABOLIC_CYLINDRICAL,
                             {{"a1", Rational(1)}, {"a3", Rational(4)}, {"b23", Rational(2)}}),
        canonical_web_tensor(WebClass::CONICAL, {{"a1", Rational(1)}, {"c1", Rational(1)},
                                                 {"c2", Rational(2)}, {"c3", Rational(4)}}),
    };
    for (const auto& k : reps) {
        WebClass base = classify_web(k).web;
        for (int t = 0; t < 5; ++t)
            CHECK(classify_web(apply_isometry(k, oracle::rnd_isometry())).web == base);
    }
}

TEST_CASE("classification report carries the consulted invariants") {
    KTParams sph = canonical_web_tensor(
        WebClass::SPHERICAL, {{"a1", Rational(1)}, {"c2", Rational(2)}, {"c3", Rational(3)}});
    auto rep = classify_web(apply_isometry(sph, oracle::rnd_isometry()));
    CHECK(rep.web == WebClass::SPHERICAL);
    CHECK(rep.form == AlignedForm::ROTATIONAL);
    REQUIRE(rep.rotational_deltas.has_value());
    CHECK((*rep.rotational_deltas)[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs((*rep.rotational_deltas)[1]) < 1e-8);
    CHECK(rep.symmetry_basis.size() == 1);
    // the aligned tensor is in the rotational normal form
    CHECK(is_rotational_form(kt_normalized(rep.aligned), 1e-8 * kt_scale(rep.aligned)));
}
