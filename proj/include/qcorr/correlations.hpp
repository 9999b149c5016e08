#pragma once

#include <cmath>
#include <utility>

#include "qcorr/eigensolvers.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/state.hpp"
#include "qcorr/tolerances.hpp"

// Measurement-induced nonlocality (MIN) and geometric discord (GD), each
// computed two independent ways:
//
//   closed form   Bloch data + 3x3 eigenvalues
//     MIN = tr TT' - x.TT'x/|x|^2          (x != 0)
//         = tr TT' - min_eig(TT')          (x  = 0)
//     GD  = |x|^2 + |T|^2 - max_eig(xx' + TT')
//
//   search oracle  disturbance |rho - Pi(rho)|^2 of a local projective
//     measurement on A, evaluated with plain matrix arithmetic and optimized
//     over the measurement axis (MIN maximizes over non-disturbing axes, GD
//     minimizes over all axes).
//
// The pair deliberately shares no numerics, so the oracle certifies the
// closed form.

namespace qcorr {

struct MeasurementDirection {
  Vec3 n;  // unit vector

  static MeasurementDirection from(Vec3 v) {
    const double nn = v.norm();
    if (nn < tol::direction_norm)
      throw error("MeasurementDirection: zero-length axis");
    return MeasurementDirection{(1.0 / nn) * v};
  }
};

enum class Branch { x_nonzero, x_zero };

// Pi_+- = (I +- n.sigma)/2 applied to qubit A:  sum_k (Pi_k x I) rho (Pi_k x I)
inline TwoQubitState post_measurement_state(const TwoQubitState& s,
                                            const MeasurementDirection& d) {
  const CMat2 ns = dot_sigma(d.n);
  const CMat2 pi_p = 0.5 * (CMat2::identity() + ns);
  const CMat2 pi_m = 0.5 * (CMat2::identity() - ns);
  const CMat4 p0 = kron(pi_p, pauli::id);
  const CMat4 p1 = kron(pi_m, pauli::id);
  return TwoQubitState::trusted(p0 * s.rho * p0 + p1 * s.rho * p1);
}

inline double measurement_disturbance(const TwoQubitState& s,
                                      const MeasurementDirection& d) {
  return hs_norm_sq(s.rho - post_measurement_state(s, d).rho);
}

// ---------------------------------------------------------------------------
// closed forms

inline double min_closed(const TwoQubitState& s) {
  const BlochForm b = bloch_decompose(s);
  const Mat3 tt = b.t * b.t.transpose();
  const double xn2 = b.x.norm_sq();
  double v;
  if (xn2 > tol::x_branch_eps * tol::x_branch_eps) {
    v = tt.trace() - dot(b.x, tt * b.x) / xn2;
  } else {
    v = tt.trace() - eig_sym3(SymMat3::from(tt))[2];
  }
  return std::max(v, 0.0);
}

inline double gd_closed(const TwoQubitState& s) {
  const BlochForm b = bloch_decompose(s);
  const Mat3 k = outer(b.x, b.x) + b.t * b.t.transpose();
  const double v =
      b.x.norm_sq() + b.t.frobenius_sq() - eig_sym3(SymMat3::from(k))[0];
  return std::max(v, 0.0);
}

// ---------------------------------------------------------------------------
// search oracles

namespace detail {

inline Vec3 sph_dir(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

// Fibonacci lattice scan (first-best-index tie break) followed by compass
// refinement of the two spherical angles around the winner. Polls include
// the diagonals: the objective can ridge at 45 degrees to the angle axes,
// where axis-only bracketing stalls well short of the peak.
template <class F>
std::pair<double, Vec3> sphere_max(F&& f) {
  constexpr int kLattice = 2048;
  constexpr double kGoldenAngle = 2.399963229728653;  // pi (3 - sqrt 5)
  constexpr int kMaxSweeps = 64;

  double best = 0;
  Vec3 best_dir{0, 0, 1};
  bool first = true;
  for (int i = 0; i < kLattice; ++i) {
    const double zc = 1.0 - (2.0 * i + 1.0) / kLattice;
    const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    const double phi = kGoldenAngle * i;
    const Vec3 n{r * std::cos(phi), r * std::sin(phi), zc};
    const double v = f(n);
    if (first || v > best) {
      best = v;
      best_dir = n;
      first = false;
    }
  }

  double bt = std::acos(std::clamp(best_dir.z, -1.0, 1.0));
  double bp = std::atan2(best_dir.y, best_dir.x);
  constexpr int dt[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  constexpr int dp[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  double h = 2.0 * std::sqrt(4.0 * 3.141592653589793 / kLattice);
  while (h > 1e-9) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      bool moved = false;
      for (int k = 0; k < 8; ++k) {
        const double th = bt + h * dt[k], ph = bp + h * dp[k];
        const double v = f(sph_dir(th, ph));
        if (v > best) {
          best = v;
          bt = th;
          bp = ph;
          moved = true;
        }
      }
      if (!moved) break;
    }
    h *= 0.5;
  }
  return {best, sph_dir(bt, bp)};
}

}  // namespace detail

struct OracleResult {
  double value = 0;
  MeasurementDirection direction{Vec3{0, 0, 1}};
};

// MIN by direct search. A measurement leaves the A marginal fixed only along
// +-x/|x|, so for x != 0 the constrained "maximum" is a single evaluation;
// the degenerate marginal (x = 0) admits every axis.
inline OracleResult min_oracle(const TwoQubitState& s, double = 1e-9) {
  const CMat2 ra = reduced_a(s);
  const Vec3 x = {0.5 * (ra.at(0, 1) + ra.at(1, 0)).real(),
                  0.5 * (cplx(0, 1) * (ra.at(0, 1) - ra.at(1, 0))).real(),
                  0.5 * (ra.at(0, 0) - ra.at(1, 1)).real()};
  if (x.norm() > tol::x_branch_eps) {
    const auto d = MeasurementDirection::from(x);
    return {std::max(measurement_disturbance(s, d), 0.0), d};
  }
  auto [v, n] = detail::sphere_max([&](Vec3 dir) {
    return measurement_disturbance(s, MeasurementDirection{dir});
  });
  return {std::max(v, 0.0), MeasurementDirection::from(n)};
}

// GD by direct search: nearest measured state over all axes.
inline OracleResult gd_oracle(const TwoQubitState& s, double = 1e-9) {
  auto [v, n] = detail::sphere_max([&](Vec3 dir) {
    return -measurement_disturbance(s, MeasurementDirection{dir});
  });
  return {std::max(-v, 0.0), MeasurementDirection::from(n)};
}

struct CorrelationReport {
  double min_value = 0, gd_value = 0;
  double min_oracle_value = 0, gd_oracle_value = 0;
  MeasurementDirection min_direction{Vec3{0, 0, 1}};
  MeasurementDirection gd_direction{Vec3{0, 0, 1}};
  Branch branch = Branch::x_zero;
};

inline CorrelationReport correlation_report(const TwoQubitState& s) {
  CorrelationReport r;
  r.min_value = min_closed(s);
  r.gd_value = gd_closed(s);
  const OracleResult mo = min_oracle(s);
  const OracleResult go = gd_oracle(s);
  r.min_oracle_value = mo.value;
  r.gd_oracle_value = go.value;
  r.min_direction = mo.direction;
  r.gd_direction = go.direction;
  const BlochForm b = bloch_decompose(s);
  r.branch = b.x.norm() > tol::x_branch_eps ? Branch::x_nonzero : Branch::x_zero;
  return r;
}

}  // namespace qcorr
