#pragma once

#include <cmath>
#include <cstdint>

#include "qcorr/matrix.hpp"
#include "qcorr/state.hpp"

// Self-contained deterministic sampling. A fixed seed must reproduce the same
// stream on any platform, so no std::random distributions are used (their
// outputs are implementation defined); generation is xoshiro256++ with a
// splitmix64 seeder and a hand-rolled Box-Muller.

namespace qcorr {

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) {
      // splitmix64 expansion of the seed
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx cnormal() { return {normal(), normal()}; }

 private:
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
  uint64_t s_[4];
  double spare_ = 0;
  bool have_spare_ = false;
};

// independent stream for item i of a seeded batch; parallel-safe and
// order-independent
inline Rng rng_for(uint64_t seed, uint64_t item) {
  return Rng(seed * 0x2545f4914f6cdd1dULL + item + 1);
}

// G G^dag / tr(G G^dag) with iid standard complex Gaussian G
// (Hilbert-Schmidt measure)
inline TwoQubitState random_state(Rng& rng) {
  CMat4 g;
  for (auto& z : g.e) z = rng.cnormal();
  const CMat4 h = g * dagger(g);
  const double tr = h.trace().real();
  return TwoQubitState::trusted((1.0 / tr) * h);
}

// Haar on SU(2) via uniform unit quaternion
inline CMat2 random_unitary2(Rng& rng) {
  double q[4];
  double n = 0;
  do {
    n = 0;
    for (auto& v : q) {
      v = rng.normal();
      n += v * v;
    }
  } while (n == 0.0);
  n = std::sqrt(n);
  for (auto& v : q) v /= n;
  // a I + i (b X + c Y + d Z)
  CMat2 u;
  u.at(0, 0) = cplx(q[0], q[3]);
  u.at(0, 1) = cplx(q[2], q[1]);
  u.at(1, 0) = cplx(-q[2], q[1]);
  u.at(1, 1) = cplx(q[0], -q[3]);
  return u;
}

// Haar-distributed 4x4 unitary: Gram-Schmidt of a Ginibre sample
inline CMat4 random_unitary4(Rng& rng) {
  CMat4 g;
  for (auto& z : g.e) z = rng.cnormal();
  for (int c = 0; c < 4; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx ip = 0;
      for (int r = 0; r < 4; ++r) ip += std::conj(g.at(r, prev)) * g.at(r, c);
      for (int r = 0; r < 4; ++r) g.at(r, c) -= ip * g.at(r, prev);
    }
    double nrm = 0;
    for (int r = 0; r < 4; ++r) nrm += std::norm(g.at(r, c));
    nrm = std::sqrt(nrm);
    for (int r = 0; r < 4; ++r) g.at(r, c) /= nrm;
  }
  return g;
}

inline Vec3 random_direction(Rng& rng) {
  Vec3 v;
  double n = 0;
  do {
    v = {rng.normal(), rng.normal(), rng.normal()};
    n = v.norm();
  } while (n < 1e-12);
  return (1.0 / n) * v;
}

// random single-qubit density matrix (mixed, Hilbert-Schmidt)
inline CMat2 random_qubit(Rng& rng) {
  CMat2 g;
  for (auto& z : g.e) z = rng.cnormal();
  const CMat2 h = g * dagger(g);
  return (1.0 / h.trace().real()) * h;
}

// classical-quantum state sum_k p_k |k><k| x rho_k with a random A basis;
// zero discord by construction
inline TwoQubitState random_classical_quantum(Rng& rng) {
  const Vec3 a = random_direction(rng);
  const CMat2 na = dot_sigma(a);
  const CMat2 pk0 = 0.5 * (CMat2::identity() + na);
  const CMat2 pk1 = 0.5 * (CMat2::identity() - na);
  const double p = rng.uniform();
  const CMat4 m = kron(p * pk0, random_qubit(rng)) +
                  kron((1.0 - p) * pk1, random_qubit(rng));
  return TwoQubitState::trusted(m);
}

}  // namespace qcorr
