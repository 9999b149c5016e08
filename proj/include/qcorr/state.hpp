#pragma once

#include <array>
#include <cmath>
#include <string>

#include "qcorr/eigensolvers.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/tolerances.hpp"

// Two-qubit density matrices, their Bloch picture and the X-shaped subfamily.
//
// Basis order throughout: |00>, |01>, |10>, |11>, first factor = qubit A.
// Bloch components carry the 1/2 normalization
//   x_i = tr(rho sigma_i x I)/2,  y_j = tr(rho I x sigma_j)/2,
//   t_ij = tr(rho sigma_i x sigma_j)/2,
// so purity decomposes as tr(rho^2) = 1/4 + |x|^2 + |y|^2 + |T|^2.

namespace qcorr {

struct TwoQubitState {
  CMat4 rho;

  // full gate: Hermitian, unit trace, positive semidefinite
  static TwoQubitState from_matrix(const CMat4& m) {
    double defect = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        defect = std::max(defect, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
    if (defect > tol::hermiticity)
      throw invalid_state("density matrix not Hermitian (defect " +
                              std::to_string(defect) + ")",
                          defect);
    const cplx tr = m.trace();
    if (std::abs(tr - 1.0) > tol::trace_one)
      throw invalid_state("density matrix trace != 1 (trace " +
                              std::to_string(tr.real()) + ")",
                          tr.real());
    const auto lam = eig_herm4(m);
    if (lam[3] < tol::psd_eigen_floor)
      throw invalid_state("density matrix not positive semidefinite (eigenvalue " +
                              std::to_string(lam[3]) + ")",
                          lam[3]);
    return TwoQubitState{m};
  }

  // for matrices produced internally (channel output, projective updates)
  static TwoQubitState trusted(const CMat4& m) { return TwoQubitState{m}; }

  double min_eigenvalue() const { return eig_herm4(rho)[3]; }
  double purity() const {
    double s = 0;
    for (const cplx& z : rho.e) s += std::norm(z);
    return s;
  }
};

// reduced single-qubit states
inline CMat2 reduced_a(const TwoQubitState& s) {
  CMat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.at(i, j) = s.rho.at(2 * i, 2 * j) + s.rho.at(2 * i + 1, 2 * j + 1);
  return r;
}

inline CMat2 reduced_b(const TwoQubitState& s) {
  CMat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.at(i, j) = s.rho.at(i, j) + s.rho.at(2 + i, 2 + j);
  return r;
}

// ---------------------------------------------------------------------------
// Bloch picture

struct BlochForm {
  Vec3 x;   // qubit A vector
  Vec3 y;   // qubit B vector
  Mat3 t;   // correlation block
};

namespace detail {
inline const CMat4& pauli_ai(int i) {
  static const std::array<CMat4, 3> ops = {kron(pauli::x, pauli::id),
                                           kron(pauli::y, pauli::id),
                                           kron(pauli::z, pauli::id)};
  return ops[static_cast<size_t>(i)];
}
inline const CMat4& pauli_bi(int i) {
  static const std::array<CMat4, 3> ops = {kron(pauli::id, pauli::x),
                                           kron(pauli::id, pauli::y),
                                           kron(pauli::id, pauli::z)};
  return ops[static_cast<size_t>(i)];
}
inline const CMat4& pauli_ab(int i, int j) {
  static const std::array<CMat4, 9> ops = [] {
    std::array<CMat4, 9> o;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        o[static_cast<size_t>(3 * a + b)] = kron(pauli::by_index(a), pauli::by_index(b));
    return o;
  }();
  return ops[static_cast<size_t>(3 * i + j)];
}

inline double re_trace_prod(const CMat4& rho, const CMat4& op) {
  // Re tr(rho * op)
  double s = 0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      s += (rho.at(i, k) * op.at(k, i)).real();
  return s;
}
}  // namespace detail

inline BlochForm bloch_decompose(const TwoQubitState& s) {
  double defect = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      defect = std::max(defect, std::abs(s.rho.at(i, j) - std::conj(s.rho.at(j, i))));
  if (defect > tol::hermiticity || std::abs(s.rho.trace() - 1.0) > tol::trace_one)
    throw invalid_state("bloch_decompose: input is not a density matrix", defect);

  BlochForm b;
  double* xs[3] = {&b.x.x, &b.x.y, &b.x.z};
  double* ys[3] = {&b.y.x, &b.y.y, &b.y.z};
  for (int i = 0; i < 3; ++i) {
    *xs[i] = 0.5 * detail::re_trace_prod(s.rho, detail::pauli_ai(i));
    *ys[i] = 0.5 * detail::re_trace_prod(s.rho, detail::pauli_bi(i));
    for (int j = 0; j < 3; ++j)
      b.t.at(i, j) = 0.5 * detail::re_trace_prod(s.rho, detail::pauli_ab(i, j));
  }
  return b;
}

// Inverse map. The result always has unit trace and is Hermitian; positivity
// is NOT checked here (property tests probe reconstruction of perturbed
// forms), use TwoQubitState::min_eigenvalue() to flag.
inline TwoQubitState bloch_reconstruct(const BlochForm& b) {
  CMat4 m = 0.25 * CMat4::identity();
  const double xv[3] = {b.x.x, b.x.y, b.x.z};
  const double yv[3] = {b.y.x, b.y.y, b.y.z};
  for (int i = 0; i < 3; ++i) {
    m = m + (0.5 * xv[i]) * detail::pauli_ai(i);
    m = m + (0.5 * yv[i]) * detail::pauli_bi(i);
    for (int j = 0; j < 3; ++j)
      m = m + (0.5 * b.t.at(i, j)) * detail::pauli_ab(i, j);
  }
  return TwoQubitState::trusted(m);
}

// ---------------------------------------------------------------------------
// initial-state families

enum class StateFamily { pure, werner, vedral_plenio };

// pure:           sqrt(1-a)|00> + sqrt(a)|11>
// werner:         (1-a)/4 I + a |psi-><psi-|
// vedral_plenio:  a/2 (|00><00| + |11><11|) + (1-a) |psi-><psi-|
inline TwoQubitState make_family(StateFamily f, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw error("make_family: alpha must lie in [0,1]");
  CMat4 m;
  switch (f) {
    case StateFamily::pure: {
      const double c = std::sqrt(alpha * (1.0 - alpha));
      m.at(0, 0) = 1.0 - alpha;
      m.at(3, 3) = alpha;
      m.at(0, 3) = c;
      m.at(3, 0) = c;
      break;
    }
    case StateFamily::werner: {
      m.at(0, 0) = m.at(3, 3) = (1.0 - alpha) / 4.0;
      m.at(1, 1) = m.at(2, 2) = (1.0 + alpha) / 4.0;
      m.at(1, 2) = m.at(2, 1) = -alpha / 2.0;
      break;
    }
    case StateFamily::vedral_plenio: {
      m.at(0, 0) = m.at(3, 3) = alpha / 2.0;
      m.at(1, 1) = m.at(2, 2) = (1.0 - alpha) / 2.0;
      m.at(1, 2) = m.at(2, 1) = -(1.0 - alpha) / 2.0;
      break;
    }
  }
  return TwoQubitState::trusted(m);
}

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

inline TwoQubitState make_bell(BellState b) {
  CMat4 m;
  const bool phi = (b == BellState::phi_plus || b == BellState::phi_minus);
  const double sign =
      (b == BellState::phi_plus || b == BellState::psi_plus) ? 0.5 : -0.5;
  const int i = phi ? 0 : 1, j = phi ? 3 : 2;
  m.at(i, i) = m.at(j, j) = 0.5;
  m.at(i, j) = m.at(j, i) = sign;
  return TwoQubitState::trusted(m);
}

// ---------------------------------------------------------------------------
// X states

// Canonical X form: real nonnegative anti-diagonal entries; the diagonal local
// unitary diag(1, e^{i th_b}) x diag(1, e^{i th_a}) that removed the phases is
// recorded so callers can undo it.
struct XState {
  double rho11 = 0, rho22 = 0, rho33 = 0, rho44 = 0;
  double rho14 = 0, rho23 = 0;
  double phase14 = 0, phase23 = 0;
};

inline XState as_x_state(const TwoQubitState& s) {
  const CMat4& m = s.rho;
  double worst = 0;
  static const int off_x[8][2] = {{0, 1}, {0, 2}, {1, 0}, {2, 0},
                                  {1, 3}, {2, 3}, {3, 1}, {3, 2}};
  for (auto& ij : off_x) worst = std::max(worst, std::abs(m.at(ij[0], ij[1])));
  if (worst > tol::off_x_entry)
    throw not_x_state("as_x_state: off-pattern entry of magnitude " +
                      std::to_string(worst));

  XState x;
  x.rho11 = m.at(0, 0).real();
  x.rho22 = m.at(1, 1).real();
  x.rho33 = m.at(2, 2).real();
  x.rho44 = m.at(3, 3).real();
  x.rho14 = std::abs(m.at(0, 3));
  x.rho23 = std::abs(m.at(1, 2));
  x.phase14 = x.rho14 > 0 ? std::arg(m.at(0, 3)) : 0.0;
  x.phase23 = x.rho23 > 0 ? std::arg(m.at(1, 2)) : 0.0;

  const double outer_cap =
      std::sqrt(std::max(x.rho11, 0.0) * std::max(x.rho44, 0.0));
  const double inner_cap =
      std::sqrt(std::max(x.rho22, 0.0) * std::max(x.rho33, 0.0));
  if (x.rho14 > outer_cap + tol::x_block_slack ||
      x.rho23 > inner_cap + tol::x_block_slack)
    throw invalid_state("as_x_state: anti-diagonal exceeds positivity bound",
                        x.rho14 - outer_cap);
  return x;
}

inline TwoQubitState to_density(const XState& x) {
  CMat4 m;
  m.at(0, 0) = x.rho11;
  m.at(1, 1) = x.rho22;
  m.at(2, 2) = x.rho33;
  m.at(3, 3) = x.rho44;
  m.at(0, 3) = m.at(3, 0) = x.rho14;
  m.at(1, 2) = m.at(2, 1) = x.rho23;
  return TwoQubitState::trusted(m);
}

inline bool has_x_shape(const CMat4& m) {
  static const int off_x[8][2] = {{0, 1}, {0, 2}, {1, 0}, {2, 0},
                                  {1, 3}, {2, 3}, {3, 1}, {3, 2}};
  for (auto& ij : off_x)
    if (std::abs(m.at(ij[0], ij[1])) > tol::off_x_entry) return false;
  return true;
}

}  // namespace qcorr
