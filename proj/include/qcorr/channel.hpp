#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/matrix.hpp"
#include "qcorr/state.hpp"
#include "qcorr/tolerances.hpp"

// Single-qubit Kraus channels and their product action on two qubits.

namespace qcorr {

// sum_k E_k^dag E_k = I within tolerance
inline bool validate_cptp(const std::vector<CMat2>& kraus) {
  CMat2 acc;
  for (const CMat2& e : kraus) acc = acc + dagger(e) * e;
  const CMat2 diff = acc - CMat2::identity();
  double worst = 0;
  for (const cplx& z : diff.e) worst = std::max(worst, std::abs(z));
  return worst <= tol::cptp_check;
}

/// A completely positive trace preserving qubit map, stored as at most four
/// Kraus operators with the identity-like operator first.
struct QubitChannel {
  std::vector<CMat2> kraus;
  std::string name;

  static QubitChannel from_kraus(std::vector<CMat2> ops, std::string label) {
    if (ops.empty() || ops.size() > 4)
      throw error("QubitChannel: need 1..4 Kraus operators");
    if (!validate_cptp(ops))
      throw error("QubitChannel '" + label + "': Kraus set is not trace preserving");
    return QubitChannel{std::move(ops), std::move(label)};
  }
};

inline void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw error(std::string(what) + " must lie in [0,1]");
}

inline QubitChannel identity_channel() {
  return QubitChannel::from_kraus({CMat2::identity()}, "identity");
}

// uniform Pauli noise; Bloch contraction diag(1-g, 1-g, 1-g)
inline QubitChannel depolarizing(double gamma) {
  check_unit_interval(gamma, "depolarizing gamma");
  const double w0 = std::sqrt(1.0 - 0.75 * gamma);
  const double w = std::sqrt(0.25 * gamma);
  return QubitChannel::from_kraus(
      {w0 * pauli::id, w * pauli::x, w * pauli::y, w * pauli::z}, "depolarizing");
}

// phase noise; Bloch contraction diag(sqrt(1-g), sqrt(1-g), 1)
inline QubitChannel dephasing(double gamma) {
  check_unit_interval(gamma, "dephasing gamma");
  return QubitChannel::from_kraus(
      {CMat2::from_entries(1, 0, 0, std::sqrt(1.0 - gamma)),
       CMat2::from_entries(0, 0, 0, std::sqrt(gamma))},
      "dephasing");
}

// generalized amplitude damping toward the p / (1-p) population mixture
inline QubitChannel gad(double gamma, double p) {
  check_unit_interval(gamma, "damping gamma");
  check_unit_interval(p, "damping p");
  const double sp = std::sqrt(p), sq = std::sqrt(1.0 - p);
  const double sg = std::sqrt(gamma), sgc = std::sqrt(1.0 - gamma);
  std::vector<CMat2> ops;
  ops.push_back(sp * CMat2::from_entries(1, 0, 0, sgc));
  ops.push_back(sp * CMat2::from_entries(0, sg, 0, 0));
  ops.push_back(sq * CMat2::from_entries(sgc, 0, 0, 1));
  ops.push_back(sq * CMat2::from_entries(0, 0, sg, 0));
  // drop numerically null operators so the identity-like one stays first
  std::vector<CMat2> kept;
  for (const CMat2& e : ops)
    if (hs_norm_sq(e) > 1e-30) kept.push_back(e);
  return QubitChannel::from_kraus(std::move(kept), "damping");
}

// The sqrt(gamma/2) Pauli weighting that sometimes circulates for the
// depolarizing channel. It is NOT trace preserving (sum E^dag E =
// (1 + 3 gamma/4) I); kept only so the validation report can document the
// failure. Returns raw operators, deliberately not a QubitChannel.
inline std::vector<CMat2> depolarizing_variant_kraus(double gamma) {
  check_unit_interval(gamma, "depolarizing gamma");
  const double w0 = std::sqrt(1.0 - 0.75 * gamma);
  const double w = std::sqrt(0.5 * gamma);
  return {w0 * pauli::id, w * pauli::x, w * pauli::y, w * pauli::z};
}

inline CMat2 apply(const QubitChannel& ch, const CMat2& rho) {
  CMat2 out;
  for (const CMat2& e : ch.kraus) out = out + e * rho * dagger(e);
  return out;
}

// rho -> sum_{uv} (E_u x F_v) rho (E_u x F_v)^dag
inline TwoQubitState apply_local(const QubitChannel& a, const QubitChannel& b,
                                 const TwoQubitState& s) {
  CMat4 out;
  for (const CMat2& ea : a.kraus)
    for (const CMat2& fb : b.kraus) {
      const CMat4 k = kron(ea, fb);
      out = out + k * s.rho * dagger(k);
    }
  return TwoQubitState::trusted(out);
}

inline TwoQubitState apply_local(const QubitChannel& both, const TwoQubitState& s) {
  return apply_local(both, both, s);
}

// Affine Bloch picture v -> Tv + t of a single-qubit channel.
struct BlochAffine {
  Mat3 map;
  Vec3 shift;
};

namespace detail {
inline Vec3 qubit_bloch(const CMat2& rho) {
  return {(rho.at(0, 1) + rho.at(1, 0)).real(),
          (cplx(0, 1) * (rho.at(0, 1) - rho.at(1, 0))).real(),
          (rho.at(0, 0) - rho.at(1, 1)).real()};
}
}  // namespace detail

inline BlochAffine bloch_affine(const QubitChannel& ch) {
  BlochAffine out;
  out.shift = detail::qubit_bloch(apply(ch, 0.5 * CMat2::identity()));
  for (int i = 0; i < 3; ++i) {
    const CMat2 probe = 0.5 * (CMat2::identity() + pauli::by_index(i));
    const Vec3 col = detail::qubit_bloch(apply(ch, probe)) - out.shift;
    out.map.at(0, i) = col.x;
    out.map.at(1, i) = col.y;
    out.map.at(2, i) = col.z;
  }
  return out;
}

inline bool is_unital(const QubitChannel& ch) {
  const CMat2 img = apply(ch, 0.5 * CMat2::identity());
  const CMat2 diff = img - 0.5 * CMat2::identity();
  double worst = 0;
  for (const cplx& z : diff.e) worst = std::max(worst, std::abs(z));
  return worst <= tol::unital_shift;
}

}  // namespace qcorr
