#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace cp3 {

template <typename T>
struct V3 {
  T x{}, y{}, z{};

  T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  V3 operator+(const V3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  V3 operator-(const V3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  V3 operator*(T s) const { return {x * s, y * s, z * s}; }
  V3 operator-() const { return {-x, -y, -z}; }
  V3& operator+=(const V3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

template <typename T>
V3<T> operator*(T s, const V3<T>& v) { return v * s; }

template <typename T>
T dot(const V3<T>& a, const V3<T>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

template <typename T>
V3<T> cross(const V3<T>& a, const V3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const V3<double>& v) { return std::sqrt(dot(v, v)); }

inline V3<double> normalized(const V3<double>& v) {
  const double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

// Row-major 3x3 matrix.
template <typename T>
struct M3 {
  std::array<T, 9> m{};

  T& operator()(int i, int j) { return m[3 * i + j]; }
  const T& operator()(int i, int j) const { return m[3 * i + j]; }

  static M3 identity() {
    M3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = T(1);
    return r;
  }

  M3 operator+(const M3& o) const {
    M3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }
  M3 operator-(const M3& o) const {
    M3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
    return r;
  }
  M3 operator*(T s) const {
    M3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
    return r;
  }
  M3& operator+=(const M3& o) {
    for (int i = 0; i < 9; ++i) m[i] += o.m[i];
    return *this;
  }

  M3 transposed() const {
    M3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  V3<T> operator*(const V3<T>& v) const {
    V3<T> r;
    for (int i = 0; i < 3; ++i)
      r[i] = (*this)(i, 0) * v.x + (*this)(i, 1) * v.y + (*this)(i, 2) * v.z;
    return r;
  }

  M3 operator*(const M3& o) const {
    M3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T s{};
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  T trace() const { return m[0] + m[4] + m[8]; }
};

template <typename T>
M3<T> operator*(T s, const M3<T>& a) { return a * s; }

// a ⊗ b
template <typename T>
M3<T> outer(const V3<T>& a, const V3<T>& b) {
  M3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

using Vec3 = V3<double>;
using Mat3 = M3<double>;
using CVec3 = V3<std::complex<double>>;
using CMat3 = M3<std::complex<double>>;

inline double max_abs(const Mat3& a) {
  double r = 0.0;
  for (double v : a.m) r = std::max(r, std::abs(v));
  return r;
}

inline double asymmetry(const Mat3& a) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) r = std::max(r, std::abs(a(i, j) - a(j, i)));
  return r;
}

inline CMat3 to_complex(const Mat3& a) {
  CMat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i];
  return r;
}

inline CVec3 to_complex(const Vec3& v) { return {v.x, v.y, v.z}; }

}  // namespace cp3
