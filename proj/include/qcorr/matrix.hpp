#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qcorr/tolerances.hpp"

// Small dense matrix kit for two-qubit work: real 3-vectors and 3x3 blocks for
// Bloch data, complex 2x2 / 4x4 for operators. Everything is stack-sized and
// kept deliberately free of external linear algebra.

namespace qcorr {

using cplx = std::complex<double>;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// density matrix failed hermiticity / trace / positivity checks
struct invalid_state : error {
  invalid_state(const std::string& what, double offender)
      : error(what), offending_eigenvalue(offender) {}
  double offending_eigenvalue;
};

// matrix carries entries outside the X sparsity pattern
struct not_x_state : error {
  explicit not_x_state(const std::string& what) : error(what) {}
};

inline bool finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// ---------------------------------------------------------------------------
// real vectors / 3x3 blocks

struct Vec3 {
  double x = 0, y = 0, z = 0;

  double norm_sq() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

struct Mat3 {
  // row-major
  std::array<double, 9> e{};

  double& at(int i, int j) { return e[3 * i + j]; }
  double at(int i, int j) const { return e[3 * i + j]; }

  static Mat3 identity() {
    Mat3 m;
    m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = 1.0;
    return m;
  }
  static Mat3 diagonal(double a, double b, double c) {
    Mat3 m;
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    return m;
  }

  Mat3 transpose() const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.at(i, j) = at(j, i);
    return m;
  }

  double trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }

  double frobenius_sq() const {
    double s = 0;
    for (double v : e) s += v * v;
    return s;
  }
};

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  return c;
}

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 9; ++i) c.e[i] = a.e[i] + b.e[i];
  return c;
}

inline Mat3 operator*(double s, const Mat3& a) {
  Mat3 c;
  for (int i = 0; i < 9; ++i) c.e[i] = s * a.e[i];
  return c;
}

inline Vec3 operator*(const Mat3& m, Vec3 v) {
  return {m.at(0, 0) * v.x + m.at(0, 1) * v.y + m.at(0, 2) * v.z,
          m.at(1, 0) * v.x + m.at(1, 1) * v.y + m.at(1, 2) * v.z,
          m.at(2, 0) * v.x + m.at(2, 1) * v.y + m.at(2, 2) * v.z};
}

inline Mat3 outer(Vec3 a, Vec3 b) {
  Mat3 m;
  const double av[3] = {a.x, a.y, a.z}, bv[3] = {b.x, b.y, b.z};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = av[i] * bv[j];
  return m;
}

inline double det(const Mat3& m) {
  return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
         m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
         m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
}

// Symmetric 3x3; construction rejects asymmetric input and stores the
// symmetrized entries so downstream solvers see an exactly symmetric block.
struct SymMat3 {
  Mat3 m;

  static SymMat3 from(const Mat3& a) {
    double worst = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        worst = std::max(worst, std::abs(a.at(i, j) - a.at(j, i)));
    double scale = std::sqrt(a.frobenius_sq());
    if (worst > tol::symmetry_check * (1.0 + scale))
      throw error("SymMat3: input not symmetric (max asymmetry " + std::to_string(worst) + ")");
    SymMat3 s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.m.at(i, j) = 0.5 * (a.at(i, j) + a.at(j, i));
    return s;
  }
};

// ---------------------------------------------------------------------------
// complex 2x2 / 4x4

struct CMat2 {
  std::array<cplx, 4> e{};

  cplx& at(int i, int j) { return e[2 * i + j]; }
  const cplx& at(int i, int j) const { return e[2 * i + j]; }

  static CMat2 from_entries(cplx a, cplx b, cplx c, cplx d) {
    for (const cplx& z : {a, b, c, d})
      if (!finite(z)) throw error("CMat2: non-finite entry");
    CMat2 m;
    m.e = {a, b, c, d};
    return m;
  }
  static CMat2 identity() { return from_entries(1, 0, 0, 1); }
  static CMat2 zero() { return CMat2{}; }

  cplx trace() const { return e[0] + e[3]; }
};

inline CMat2 operator*(const CMat2& a, const CMat2& b) {
  CMat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
  return c;
}

inline CMat2 operator+(const CMat2& a, const CMat2& b) {
  CMat2 c;
  for (int i = 0; i < 4; ++i) c.e[i] = a.e[i] + b.e[i];
  return c;
}

inline CMat2 operator-(const CMat2& a, const CMat2& b) {
  CMat2 c;
  for (int i = 0; i < 4; ++i) c.e[i] = a.e[i] - b.e[i];
  return c;
}

inline CMat2 operator*(cplx s, const CMat2& a) {
  CMat2 c;
  for (int i = 0; i < 4; ++i) c.e[i] = s * a.e[i];
  return c;
}

inline CMat2 dagger(const CMat2& a) {
  CMat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c.at(i, j) = std::conj(a.at(j, i));
  return c;
}

inline cplx det(const CMat2& a) { return a.e[0] * a.e[3] - a.e[1] * a.e[2]; }

struct CMat4 {
  std::array<cplx, 16> e{};

  cplx& at(int i, int j) { return e[4 * i + j]; }
  const cplx& at(int i, int j) const { return e[4 * i + j]; }

  static CMat4 from_entries(const std::array<cplx, 16>& entries) {
    for (const cplx& z : entries)
      if (!finite(z)) throw error("CMat4: non-finite entry");
    CMat4 m;
    m.e = entries;
    return m;
  }
  static CMat4 identity() {
    CMat4 m;
    for (int i = 0; i < 4; ++i) m.at(i, i) = 1.0;
    return m;
  }

  cplx trace() const { return e[0] + e[5] + e[10] + e[15]; }
};

inline CMat4 operator*(const CMat4& a, const CMat4& b) {
  CMat4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0;
      for (int k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  return c;
}

inline CMat4 operator+(const CMat4& a, const CMat4& b) {
  CMat4 c;
  for (int i = 0; i < 16; ++i) c.e[i] = a.e[i] + b.e[i];
  return c;
}

inline CMat4 operator-(const CMat4& a, const CMat4& b) {
  CMat4 c;
  for (int i = 0; i < 16; ++i) c.e[i] = a.e[i] - b.e[i];
  return c;
}

inline CMat4 operator*(cplx s, const CMat4& a) {
  CMat4 c;
  for (int i = 0; i < 16; ++i) c.e[i] = s * a.e[i];
  return c;
}

inline CMat4 dagger(const CMat4& a) {
  CMat4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c.at(i, j) = std::conj(a.at(j, i));
  return c;
}

inline CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          c.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
  return c;
}

// tr(M^dag M) = sum of squared entry moduli
inline double hs_norm_sq(const CMat4& m) {
  double s = 0;
  for (const cplx& z : m.e) s += std::norm(z);
  return s;
}

inline double hs_norm_sq(const CMat2& m) {
  double s = 0;
  for (const cplx& z : m.e) s += std::norm(z);
  return s;
}

inline double max_abs(const CMat4& m) {
  double s = 0;
  for (const cplx& z : m.e) s = std::max(s, std::abs(z));
  return s;
}

inline double max_abs(const CMat2& m) {
  double s = 0;
  for (const cplx& z : m.e) s = std::max(s, std::abs(z));
  return s;
}

// determinant via LU with partial pivoting (used by the root-check tests)
inline cplx det(const CMat4& a) {
  std::array<cplx, 16> u = a.e;
  cplx d = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(u[4 * r + col]) > std::abs(u[4 * pivot + col])) pivot = r;
    if (std::abs(u[4 * pivot + col]) == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < 4; ++j) std::swap(u[4 * pivot + j], u[4 * col + j]);
      d = -d;
    }
    d *= u[4 * col + col];
    for (int r = col + 1; r < 4; ++r) {
      cplx f = u[4 * r + col] / u[4 * col + col];
      for (int j = col; j < 4; ++j) u[4 * r + j] -= f * u[4 * col + j];
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Pauli basis

namespace pauli {
inline const CMat2 id = CMat2::from_entries(1, 0, 0, 1);
inline const CMat2 x = CMat2::from_entries(0, 1, 1, 0);
inline const CMat2 y = CMat2::from_entries(0, cplx(0, -1), cplx(0, 1), 0);
inline const CMat2 z = CMat2::from_entries(1, 0, 0, -1);

inline const CMat2& by_index(int i) {
  switch (i) {
    case 0: return x;
    case 1: return y;
    default: return z;
  }
}
}  // namespace pauli

// n . sigma for a real direction vector
inline CMat2 dot_sigma(Vec3 n) {
  CMat2 m;
  m.at(0, 0) = n.z;
  m.at(0, 1) = cplx(n.x, -n.y);
  m.at(1, 0) = cplx(n.x, n.y);
  m.at(1, 1) = -n.z;
  return m;
}

}  // namespace qcorr
