#include "killingweb/ktparams.hpp"

#include <algorithm>
#include <cmath>

namespace kw {

const std::array<const char*, kNumKtParams> kKtParamNames = {
    "a1", "a2", "a3", "al1", "al2", "al3", "b11", "b22", "b33", "b23", "b31",
    "b12", "b32", "b13", "b21", "c1", "c2", "c3", "g1", "g2", "g3"};

IsometryQ cayley_rotation(const Mat3<Rational>& s) {
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (s[i][j] != -s[j][i])
                throw std::invalid_argument("cayley_rotation: matrix is not skew-symmetric");
    Mat3<Rational> id = Mat3<Rational>::filled(Rational(0));
    id[0][0] = id[1][1] = id[2][2] = Rational(1);
    IsometryQ h;
    h.lambda = (id - s) * inverse3(id + s);
    h.delta = {{Rational(0), Rational(0), Rational(0)}};
    return h;
}

Mat3<Rational> inverse3(const Mat3<Rational>& m) {
    Rational d = m.det();
    if (d.is_zero()) throw std::domain_error("inverse3: singular matrix");
    Mat3<Rational> adj;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    return d.inv() * adj;
}

Vec3<Rational> extract_bii(const Vec3<Rational>& beta) {
    if (!(beta[0] + beta[1] + beta[2]).is_zero())
        throw std::invalid_argument("extract_bii: betas must sum to zero");
    Rational third(1, 3);
    return {{third * (beta[2] - beta[1]), third * (beta[0] - beta[2]),
             third * (beta[1] - beta[0])}};
}

KTParams kt_normalized(const KTParams& k) {
    KTParams r = k;
    Vec3<Rational> b = extract_bii(k.beta());
    r.B[0][0] = b[0];
    r.B[1][1] = b[1];
    r.B[2][2] = b[2];
    return r;
}

KTParamsD kt_normalized(const KTParamsD& k) {
    KTParamsD r = k;
    Vec3<double> beta = k.beta();
    r.B[0][0] = (beta[2] - beta[1]) / 3.0;
    r.B[1][1] = (beta[0] - beta[2]) / 3.0;
    r.B[2][2] = (beta[1] - beta[0]) / 3.0;
    return r;
}

bool operator==(const KTParams& a, const KTParams& b) {
    KTParams na = kt_normalized(a), nb = kt_normalized(b);
    return na.A == nb.A && na.B == nb.B && na.C == nb.C;
}

const VarsPtr& xyz_vars() {
    static const VarsPtr vars = make_vars({"x", "y", "z"});
    return vars;
}

Mat3<Poly> kt_components_generic(std::span<const Poly> p, const VarsPtr& ring,
                                 const std::array<size_t, 3>& xyz) {
    if (p.size() != kNumKtParams)
        throw std::invalid_argument("kt_components_generic: need 21 parameter polynomials");
    auto mono = [&](size_t v) { return Poly::variable(ring, v); };
    Poly x = mono(xyz[0]), y = mono(xyz[1]), z = mono(xyz[2]);
    const Poly &a1 = p[0], &a2 = p[1], &a3 = p[2], &al1 = p[3], &al2 = p[4], &al3 = p[5];
    const Poly &b11 = p[6], &b22 = p[7], &b33 = p[8], &b23 = p[9], &b31 = p[10];
    const Poly &b12 = p[11], &b32 = p[12], &b13 = p[13], &b21 = p[14];
    const Poly &c1 = p[15], &c2 = p[16], &c3 = p[17], &g1 = p[18], &g2 = p[19], &g3 = p[20];
    Rational two(2);

    Mat3<Poly> K = Mat3<Poly>::filled(Poly(ring));
    K[0][0] = a1 - b12.scaled(two) * z + b13.scaled(two) * y + c2 * z * z + c3 * y * y -
              g1.scaled(two) * y * z;
    K[1][1] = a2 - b23.scaled(two) * x + b21.scaled(two) * z + c3 * x * x + c1 * z * z -
              g2.scaled(two) * z * x;
    K[2][2] = a3 - b31.scaled(two) * y + b32.scaled(two) * x + c1 * y * y + c2 * x * x -
              g3.scaled(two) * x * y;
    K[1][2] = al1 + b31 * z - b21 * y + (b22 - b33) * x + (g3 * z + g2 * y - g1 * x) * x -
              c1 * y * z;
    K[2][0] = al2 + b12 * x - b32 * z + (b33 - b11) * y + (g1 * x + g3 * z - g2 * y) * y -
              c2 * z * x;
    K[0][1] = al3 + b23 * y - b13 * x + (b11 - b22) * z + (g2 * y + g1 * x - g3 * z) * z -
              c3 * x * y;
    K[2][1] = K[1][2];
    K[0][2] = K[2][0];
    K[1][0] = K[0][1];
    return K;
}

Mat3<Poly> kt_components(const KTParams& k) {
    const VarsPtr& ring = xyz_vars();
    auto v = kt_to_vec(k);
    std::vector<Poly> p;
    p.reserve(kNumKtParams);
    for (const auto& c : v) p.push_back(Poly::constant(ring, c));
    return kt_components_generic(p, ring, {0, 1, 2});
}

Vec3<Poly> kv_components_generic(std::span<const Poly> p, const VarsPtr& ring,
                                 const std::array<size_t, 3>& xyz) {
    if (p.size() != 6)
        throw std::invalid_argument("kv_components_generic: need 6 parameter polynomials");
    Poly x = Poly::variable(ring, xyz[0]);
    Poly y = Poly::variable(ring, xyz[1]);
    Poly z = Poly::variable(ring, xyz[2]);
    const Poly &a1 = p[0], &a2 = p[1], &a3 = p[2], &c1 = p[3], &c2 = p[4], &c3 = p[5];
    return {{a1 - c2 * z + c3 * y, a2 - c3 * x + c1 * z, a3 - c1 * y + c2 * x}};
}

Vec3<Poly> kv_components(const KVParams& v) {
    const VarsPtr& ring = xyz_vars();
    std::vector<Poly> p;
    for (size_t i = 0; i < 3; ++i) p.push_back(Poly::constant(ring, v.A[i]));
    for (size_t i = 0; i < 3; ++i) p.push_back(Poly::constant(ring, v.C[i]));
    return kv_components_generic(p, ring, {0, 1, 2});
}

double kt_scale(const KTParamsD& k) {
    double s = 0.0;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            s = std::max(s, std::abs(k.A[i][j]));
            s = std::max(s, std::abs(k.B[i][j]));
            s = std::max(s, std::abs(k.C[i][j]));
        }
    return s > 0.0 ? s : 1.0;
}

}  // namespace kw
