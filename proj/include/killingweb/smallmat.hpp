#pragma once

#include <array>
#include <cstddef>

namespace kw {

template <class T>
struct Vec3 {
    std::array<T, 3> e{};

    T& operator[](size_t i) { return e[i]; }
    const T& operator[](size_t i) const { return e[i]; }

    friend Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
    }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}};
    }
    Vec3 operator-() const { return {{-e[0], -e[1], -e[2]}}; }
    friend Vec3 operator*(const T& s, const Vec3& v) {
        return {{s * v[0], s * v[1], s * v[2]}};
    }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.e == b.e; }
};

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

template <class T>
struct Mat3 {
    std::array<std::array<T, 3>, 3> m{};

    std::array<T, 3>& operator[](size_t i) { return m[i]; }
    const std::array<T, 3>& operator[](size_t i) const { return m[i]; }

    static Mat3 filled(const T& v) {
        Mat3 r;
        for (auto& row : r.m) row.fill(v);
        return r;
    }

    Mat3 transpose() const {
        Mat3 r;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) r[i][j] = m[j][i];
        return r;
    }

    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) r[i][j] = a[i][j] + b[i][j];
        return r;
    }
    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
        return r;
    }
    Mat3 operator-() const {
        Mat3 r;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) r[i][j] = -m[i][j];
        return r;
    }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                T acc = a[i][0] * b[0][j];
                acc = acc + a[i][1] * b[1][j];
                acc = acc + a[i][2] * b[2][j];
                r[i][j] = acc;
            }
        return r;
    }
    friend Vec3<T> operator*(const Mat3& a, const Vec3<T>& v) {
        Vec3<T> r;
        for (size_t i = 0; i < 3; ++i)
            r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
        return r;
    }
    friend Mat3 operator*(const T& s, const Mat3& a) {
        Mat3 r;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) r[i][j] = s * a[i][j];
        return r;
    }
    friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }

    T trace() const { return m[0][0] + m[1][1] + m[2][2]; }

    T det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
};

/// M + Mᵀ (twice the symmetric part; avoids dividing by two in generic rings).
template <class T>
Mat3<T> sym2(const Mat3<T>& m) {
    return m + m.transpose();
}

/// Skew matrix W(d) with W(d)·v = v × d.
template <class T>
Mat3<T> cross_right(const Vec3<T>& d) {
    Mat3<T> w = Mat3<T>::filled(d[0] - d[0]);  // zero of the scalar ring
    w[0][1] = d[2];
    w[0][2] = -d[1];
    w[1][0] = -d[2];
    w[1][2] = d[0];
    w[2][0] = d[1];
    w[2][1] = -d[0];
    return w;
}

constexpr int levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i) * (k - i) * (k - j) > 0) ? 1 : -1;
}

}  // namespace kw
