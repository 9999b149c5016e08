#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "qcorr/matrix.hpp"
#include "qcorr/tolerances.hpp"

// Eigenvalue solvers for the two sizes that actually occur here. The 3x3
// symmetric case uses the trigonometric closed form of the characteristic
// cubic; near-degenerate spectra fall back to a Jacobi sweep so the closed
// form never runs on an ill-conditioned acos argument. The 4x4 Hermitian case
// is a plain cyclic Jacobi on the complex matrix.

namespace qcorr {

namespace detail {

// cyclic Jacobi for real symmetric 3x3, returns unsorted diagonal
inline std::array<double, 3> jacobi_sym3(Mat3 a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) off += 2 * a.at(i, j) * a.at(i, j);
    if (std::sqrt(off) < 1e-14 * (1.0 + std::sqrt(a.frobenius_sq()))) break;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a.at(p, q) == 0.0) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2 * a.at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1 + theta * theta));
        const double c = 1 / std::sqrt(1 + t * t), s = t * c;
        Mat3 r = Mat3::identity();
        r.at(p, p) = c;
        r.at(q, q) = c;
        r.at(p, q) = s;
        r.at(q, p) = -s;
        a = r.transpose() * a * r;
      }
  }
  return {a.at(0, 0), a.at(1, 1), a.at(2, 2)};
}

}  // namespace detail

// Eigenvalues of a symmetric 3x3, descending.
inline std::array<double, 3> eig_sym3(const SymMat3& sm) {
  const Mat3& a = sm.m;
  std::array<double, 3> lam;

  const double p1 = a.at(0, 1) * a.at(0, 1) + a.at(0, 2) * a.at(0, 2) +
                    a.at(1, 2) * a.at(1, 2);
  const double q = a.trace() / 3.0;
  if (p1 == 0.0) {
    lam = {a.at(0, 0), a.at(1, 1), a.at(2, 2)};
  } else {
    const double p2 = (a.at(0, 0) - q) * (a.at(0, 0) - q) +
                      (a.at(1, 1) - q) * (a.at(1, 1) - q) +
                      (a.at(2, 2) - q) * (a.at(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        b.at(i, j) = (a.at(i, j) - (i == j ? q : 0.0)) / p;
    const double r = det(b) / 2.0;

    // |r| -> 1 marks a (near-)repeated root where acos loses accuracy
    if (1.0 - std::abs(r) < tol::cardano_disc) {
      lam = detail::jacobi_sym3(a);
    } else {
      const double phi = std::acos(std::clamp(r, -1.0, 1.0)) / 3.0;
      const double two_pi_3 = 2.0943951023931953;
      lam[0] = q + 2 * p * std::cos(phi);
      lam[2] = q + 2 * p * std::cos(phi + two_pi_3);
      lam[1] = 3 * q - lam[0] - lam[2];
    }
  }
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return lam;
}

inline std::array<double, 3> eig_sym3(const Mat3& a) {
  return eig_sym3(SymMat3::from(a));
}

// Eigenvalues of a Hermitian 4x4, descending. Rejects input whose
// anti-Hermitian part exceeds the gate; iterates until the off-diagonal
// Frobenius norm is below tol::jacobi_offdiag.
inline std::array<double, 4> eig_herm4(const CMat4& h) {
  double defect = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      defect = std::max(defect, std::abs(h.at(i, j) - std::conj(h.at(j, i))));
  if (defect > tol::hermiticity)
    throw error("eig_herm4: matrix not Hermitian (defect " + std::to_string(defect) + ")");

  CMat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));

  auto off_diag = [](const CMat4& m) {
    double off = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) off += std::norm(m.at(i, j));
    return std::sqrt(off);
  };

  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    if (off_diag(a) < tol::jacobi_offdiag) {
      converged = true;
      break;
    }
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const cplx apq = a.at(p, q);
        const double abs_apq = std::abs(apq);
        if (abs_apq < 1e-300) continue;
        const double app = a.at(p, p).real(), aqq = a.at(q, q).real();
        const cplx phase = apq / abs_apq;
        const double theta = (aqq - app) / (2 * abs_apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1 + theta * theta));
        const double c = 1 / std::sqrt(1 + t * t), s = t * c;
        CMat4 j4 = CMat4::identity();
        j4.at(p, p) = c;
        j4.at(q, q) = c;
        j4.at(p, q) = s * phase;
        j4.at(q, p) = -s * std::conj(phase);
        a = dagger(j4) * a * j4;
      }
  }
  if (!converged && off_diag(a) >= tol::jacobi_offdiag)
    throw error("eig_herm4: Jacobi failed to converge");

  std::array<double, 4> lam = {a.at(0, 0).real(), a.at(1, 1).real(),
                               a.at(2, 2).real(), a.at(3, 3).real()};
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return lam;
}

}  // namespace qcorr
