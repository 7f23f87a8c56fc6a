#include "killingweb/killing_ops.hpp"

#include <algorithm>

namespace kw {

namespace {

const std::array<std::array<int, 3>, 6> kPerms = {{{0, 1, 2},
                                                   {1, 2, 0},
                                                   {2, 0, 1},
                                                   {1, 0, 2},
                                                   {0, 2, 1},
                                                   {2, 1, 0}}};
const std::array<int, 6> kPermSign = {1, 1, 1, -1, -1, -1};

Poly normalized_equation(const Poly& p) {
    Rational s = p.integer_primitive_scale();
    if (p.leading_coef().sign() < 0) s = -s;
    return p.scaled(s);
}

}  // namespace

Nijenhuis nijenhuis_components(const Mat3<Poly>& K, const std::array<size_t, 3>& xyz) {
    const VarsPtr& ring = K[0][0].vars();
    Mat3<std::array<Poly, 3>> dK =
        Mat3<std::array<Poly, 3>>::filled({Poly(ring), Poly(ring), Poly(ring)});
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t m = 0; m < 3; ++m) dK[i][j][m] = K[i][j].diff(xyz[m]);

    Rational half(1, 2);
    Nijenhuis N;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k) {
                Poly acc(ring);
                for (size_t l = 0; l < 3; ++l) {
                    acc += K[i][l] * (dK[l][j][k] - dK[l][k][j]);
                    acc += K[l][j] * dK[i][k][l] - K[l][k] * dK[i][j][l];
                }
                N[i][j][k] = acc.scaled(half);
            }
    return N;
}

Nijenhuis nijenhuis(const KTParams& k) {
    return nijenhuis_components(kt_components(k), {0, 1, 2});
}

std::array<Poly, 3> tsn_identities(const Mat3<Poly>& K, const std::array<size_t, 3>& xyz) {
    const VarsPtr& ring = K[0][0].vars();
    Nijenhuis N = nijenhuis_components(K, xyz);
    Mat3<Poly> K2 = K * K;
    Rational sixth(1, 6);

    // Each identity is totally antisymmetric over three indices in three
    // dimensions, hence has the single independent component [jki] = [123].
    Poly t1(ring), t2(ring), t3(ring);
    for (size_t s = 0; s < 6; ++s) {
        int p = kPerms[s][0], q = kPerms[s][1], r = kPerms[s][2];
        Rational sg(kPermSign[s]);
        t1 += N[r][p][q].scaled(sg);
        Poly acc2(ring), acc3(ring);
        for (size_t l = 0; l < 3; ++l) {
            acc2 += N[l][p][q] * K[r][l];
            acc3 += N[l][p][q] * K2[r][l];
        }
        t2 += acc2.scaled(sg);
        t3 += acc3.scaled(sg);
    }
    return {t1.scaled(sixth), t2.scaled(sixth), t3.scaled(sixth)};
}

bool has_normal_eigenvectors(const KTParams& k) {
    auto ids = tsn_identities(kt_components(k), {0, 1, 2});
    return ids[0].is_zero() && ids[1].is_zero() && ids[2].is_zero();
}

const VarsPtr& kt_param_vars() {
    static const VarsPtr vars = [] {
        VarList v;
        for (const char* n : kKtParamNames) v.emplace_back(n);
        return make_vars(std::move(v));
    }();
    return vars;
}

const std::array<std::vector<Poly>, 3>& tsn_equation_census() {
    static const std::array<std::vector<Poly>, 3> census = [] {
        VarList v;
        for (const char* n : kKtParamNames) v.emplace_back(n);
        v.insert(v.end(), {"x", "y", "z"});
        VarsPtr ring = make_vars(std::move(v));
        std::vector<Poly> params;
        params.reserve(kNumKtParams);
        for (size_t i = 0; i < kNumKtParams; ++i) params.push_back(Poly::variable(ring, i));
        std::array<size_t, 3> xyz = {kNumKtParams, kNumKtParams + 1, kNumKtParams + 2};
        Mat3<Poly> K = kt_components_generic(params, ring, xyz);
        auto ids = tsn_identities(K, xyz);

        std::array<std::vector<Poly>, 3> out;
        std::vector<size_t> sel = {xyz[0], xyz[1], xyz[2]};
        for (size_t c = 0; c < 3; ++c) {
            for (auto& [mono, coef] : ids[c].collect(sel)) {
                Poly eq = normalized_equation(coef);
                if (eq.is_zero()) continue;
                if (std::find(out[c].begin(), out[c].end(), eq) == out[c].end())
                    out[c].push_back(std::move(eq));
            }
        }
        return out;
    }();
    return census;
}

TsnConditions tsn_conditions(const KTParams& k) {
    return {tsn_equation_census(), has_normal_eigenvectors(k)};
}

Poly char_discriminant(const KTParams& k) {
    Mat3<Poly> K = kt_components(k);
    Poly tr = K.trace();
    // Sum of principal 2x2 minors and the determinant.
    Poly m = K[0][0] * K[1][1] - K[0][1] * K[1][0] + K[0][0] * K[2][2] -
             K[0][2] * K[2][0] + K[1][1] * K[2][2] - K[1][2] * K[2][1];
    Poly d = K.det();
    // Discriminant of t^3 - tr·t^2 + m·t - d.
    return (tr * m * d).scaled(Rational(18)) - (tr.pow(3) * d).scaled(Rational(4)) +
           tr * tr * m * m - m.pow(3).scaled(Rational(4)) - (d * d).scaled(Rational(27));
}

bool has_distinct_eigenvalues(const KTParams& k) { return !char_discriminant(k).is_zero(); }

Mat3<Poly> lie_derivative(const KVParams& v, const KTParams& k) {
    Mat3<Poly> K = kt_components(k);
    Vec3<Poly> V = kv_components(v);
    const VarsPtr& ring = xyz_vars();
    Mat3<Poly> L = Mat3<Poly>::filled(Poly(ring));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            Poly acc(ring);
            for (size_t l = 0; l < 3; ++l) {
                acc += V[l] * K[i][j].diff(l);
                acc -= K[l][j] * V[i].diff(l);
                acc -= K[i][l] * V[j].diff(l);
            }
            L[i][j] = acc;
        }
    return L;
}

const VarsPtr& kv_symbol_vars() {
    static const VarsPtr vars = make_vars({"va1", "va2", "va3", "vc1", "vc2", "vc3",
                                           "x", "y", "z"});
    return vars;
}

Mat3<Poly> lie_derivative_symbolic_kv(const KTParams& k) {
    const VarsPtr& ring = kv_symbol_vars();
    std::array<size_t, 3> xyz = {6, 7, 8};
    std::vector<Poly> kvp;
    for (size_t i = 0; i < 6; ++i) kvp.push_back(Poly::variable(ring, i));
    Vec3<Poly> V = kv_components_generic(kvp, ring, xyz);

    auto kt = kt_to_vec(k);
    std::vector<Poly> ktp;
    for (const auto& c : kt) ktp.push_back(Poly::constant(ring, c));
    Mat3<Poly> K = kt_components_generic(ktp, ring, xyz);

    Mat3<Poly> L = Mat3<Poly>::filled(Poly(ring));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            Poly acc(ring);
            for (size_t l = 0; l < 3; ++l) {
                acc += V[l] * K[i][j].diff(xyz[l]);
                acc -= K[l][j] * V[i].diff(xyz[l]);
                acc -= K[i][l] * V[j].diff(xyz[l]);
            }
            L[i][j] = acc;
        }
    return L;
}

const GeneratorMatrix& generator_matrix() {
    static const GeneratorMatrix g = [] {
        const VarsPtr& ring = kt_param_vars();
        std::vector<Poly> p;
        for (size_t i = 0; i < kNumKtParams; ++i) p.push_back(Poly::variable(ring, i));
        KTParamsT<Poly> K = kt_from_vec<Poly>(p);

        GeneratorMatrix out;
        Poly zero(ring);
        auto emit = [&](size_t row, const Mat3<Poly>& dA, const Mat3<Poly>& dB,
                        const Mat3<Poly>& dC) {
            KTParamsT<Poly> dk;
            dk.A = dA;
            dk.B = dB;
            dk.C = dC;
            out.rows[row] = [&] {
                std::array<Poly, kNumKtParams> r;
                auto v = kt_to_vec(dk);
                std::copy(v.begin(), v.end(), r.begin());
                return r;
            }();
        };

        Mat3<Poly> zeroM = Mat3<Poly>::filled(zero);
        for (size_t m = 0; m < 3; ++m) {
            // Velocity under translation along axis m: Ȧ = B·W + (B·W)ᵀ, Ḃ = −W·C,
            // with W = W(e_m).
            Vec3<Poly> em = {{zero, zero, zero}};
            em[m] = Poly::constant(ring, Rational(1));
            Mat3<Poly> W = cross_right(em);
            Mat3<Poly> bw = K.B * W;
            emit(m, bw + bw.transpose(), -(W * K.C), zeroM);
        }
        for (size_t m = 0; m < 3; ++m) {
            // Velocity under rotation about axis m: Ẋ = JᵀX + XJ with J = dλ/dθ.
            Mat3<Poly> J = zeroM;
            for (int i = 0; i < 3; ++i)
                for (int kk = 0; kk < 3; ++kk) {
                    int e = -levi_civita(static_cast<int>(m), i, kk);
                    if (e != 0) J[i][kk] = Poly::constant(ring, Rational(e));
                }
            Mat3<Poly> Jt = J.transpose();
            emit(3 + m, Jt * K.A + K.A * J, Jt * K.B + K.B * J, Jt * K.C + K.C * J);
        }
        return out;
    }();
    return g;
}

RatMatrix generator_matrix_at(const KTParams& k) {
    const GeneratorMatrix& g = generator_matrix();
    auto v = kt_to_vec(k);
    std::vector<Rational> vals(v.begin(), v.end());
    RatMatrix m(6, kNumKtParams);
    for (size_t r = 0; r < 6; ++r)
        for (size_t c = 0; c < kNumKtParams; ++c) m.at(r, c) = g.rows[r][c].eval(vals);
    return m;
}

Poly generator_apply(const GeneratorMatrix& g, size_t row, const Poly& f) {
    Poly acc(f.vars());
    for (size_t c = 0; c < kNumKtParams; ++c) acc += g.rows[row][c] * f.diff(c);
    return acc;
}

std::int64_t dtt_dimension(int n, int p) {
    if (n < 1 || p < 1) throw std::invalid_argument("dtt_dimension: need n >= 1, p >= 1");
    auto binom = [](std::int64_t a, std::int64_t b) {
        if (b < 0 || b > a) return std::int64_t{0};
        std::int64_t r = 1;
        for (std::int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    return binom(n + p, p + 1) * binom(n + p - 1, p) / n;
}

}  // namespace kw
