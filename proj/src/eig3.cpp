#include "killingweb/eig3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kw {

namespace {

double norm_inf(const Mat3<double>& m) {
    double s = 0.0;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) s = std::max(s, std::abs(m[i][j]));
    return s;
}

}  // namespace

Eig3Result symmetric_eig3(const Mat3<double>& m, double tol) {
    double scale = std::max(norm_inf(m), 1e-300);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            if (std::abs(m[i][j] - m[j][i]) > tol * scale)
                throw std::invalid_argument("symmetric_eig3: matrix is not symmetric");

    Mat3<double> a = m;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) a[i][j] = 0.5 * (m[i][j] + m[j][i]);
    Mat3<double> v = Mat3<double>::filled(0.0);
    v[0][0] = v[1][1] = v[2][2] = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-16 * scale) break;
        for (size_t p = 0; p < 3; ++p)
            for (size_t q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-18 * scale) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (size_t k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (size_t k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }

    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] < a[y][y]; });

    Eig3Result r;
    r.vectors = Mat3<double>::filled(0.0);
    for (size_t k = 0; k < 3; ++k) {
        r.values[k] = a[order[k]][order[k]];
        for (size_t i = 0; i < 3; ++i) r.vectors[i][k] = v[i][order[k]];
    }

    // Deterministic basis inside numerically degenerate clusters: re-span by
    // Gram-Schmidt seeded with the standard basis.
    size_t k = 0;
    while (k < 3) {
        size_t e = k + 1;
        while (e < 3 && std::abs(r.values[e] - r.values[k]) <= tol * scale) ++e;
        if (e - k > 1) {
            // Project standard basis vectors onto the cluster span, keep the
            // first (e-k) independent ones.
            std::array<Vec3<double>, 3> span;
            for (size_t c = 0; c < e - k; ++c)
                for (size_t i = 0; i < 3; ++i) span[c][i] = r.vectors[i][k + c];
            std::array<Vec3<double>, 3> out;
            size_t got = 0;
            for (size_t seed = 0; seed < 3 && got < e - k; ++seed) {
                Vec3<double> w = {{0, 0, 0}};
                for (size_t c = 0; c < e - k; ++c) {
                    double proj = span[c][seed];
                    for (size_t i = 0; i < 3; ++i) w[i] += proj * span[c][i];
                }
                for (size_t c = 0; c < got; ++c) {
                    double proj = dot(w, out[c]);
                    for (size_t i = 0; i < 3; ++i) w[i] -= proj * out[c][i];
                }
                double n = std::sqrt(dot(w, w));
                if (n < 1e-8) continue;
                for (size_t i = 0; i < 3; ++i) w[i] /= n;
                out[got++] = w;
            }
            for (size_t c = 0; c < e - k; ++c)
                for (size_t i = 0; i < 3; ++i) r.vectors[i][k + c] = out[c][i];
        }
        k = e;
    }

    // Sign convention: largest-magnitude component of each column positive.
    for (size_t c = 0; c < 3; ++c) {
        size_t big = 0;
        for (size_t i = 1; i < 3; ++i)
            if (std::abs(r.vectors[i][c]) > std::abs(r.vectors[big][c])) big = i;
        if (r.vectors[big][c] < 0)
            for (size_t i = 0; i < 3; ++i) r.vectors[i][c] = -r.vectors[i][c];
    }
    return r;
}

}  // namespace kw
