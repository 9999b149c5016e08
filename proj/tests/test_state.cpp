#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcorr/random.hpp"
#include "qcorr/state.hpp"

using namespace qcorr;

TEST_CASE("density matrix validation", "[state]") {
  SECTION("accepts maximally mixed") {
    const auto s = TwoQubitState::from_matrix(0.25 * CMat4::identity());
    REQUIRE(std::abs(s.purity() - 0.25) < 1e-14);
  }
  SECTION("rejects non-hermitian") {
    CMat4 m = 0.25 * CMat4::identity();
    m.at(0, 1) = cplx(0.1, 0.0);
    REQUIRE_THROWS_AS(TwoQubitState::from_matrix(m), invalid_state);
  }
  SECTION("rejects wrong trace") {
    REQUIRE_THROWS_AS(TwoQubitState::from_matrix(0.3 * CMat4::identity()),
                      invalid_state);
  }
  SECTION("rejects negative eigenvalue and reports it") {
    CMat4 m;
    m.at(0, 0) = 0.6;
    m.at(3, 3) = 0.6;
    m.at(1, 1) = -0.1;
    m.at(2, 2) = -0.1;
    try {
      TwoQubitState::from_matrix(m);
      FAIL("expected invalid_state");
    } catch (const invalid_state& e) {
      REQUIRE(std::abs(e.offending_eigenvalue + 0.1) < 1e-12);
    }
  }
}

TEST_CASE("initial state families", "[state]") {
  SECTION("werner entries") {
    const CMat4& m = make_family(StateFamily::werner, 0.6).rho;
    REQUIRE(std::abs(m.at(0, 0).real() - 0.1) < 1e-15);
    REQUIRE(std::abs(m.at(1, 1).real() - 0.4) < 1e-15);
    REQUIRE(std::abs(m.at(2, 2).real() - 0.4) < 1e-15);
    REQUIRE(std::abs(m.at(3, 3).real() - 0.1) < 1e-15);
    REQUIRE(std::abs(m.at(1, 2).real() + 0.3) < 1e-15);
    REQUIRE(std::abs(m.at(0, 3)) == 0.0);
  }
  SECTION("vedral-plenio entries") {
    const CMat4& m = make_family(StateFamily::vedral_plenio, 0.25).rho;
    REQUIRE(std::abs(m.at(0, 0).real() - 0.125) < 1e-15);
    REQUIRE(std::abs(m.at(1, 1).real() - 0.375) < 1e-15);
    REQUIRE(std::abs(m.at(1, 2).real() + 0.375) < 1e-15);
  }
  SECTION("pure family is pure") {
    for (double a : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      const auto s = make_family(StateFamily::pure, a);
      REQUIRE(std::abs(s.purity() - 1.0) < 1e-13);
    }
  }
  SECTION("alpha out of range") {
    REQUIRE_THROWS_AS(make_family(StateFamily::werner, 1.2), error);
    REQUIRE_THROWS_AS(make_family(StateFamily::pure, -0.1), error);
  }
  SECTION("bell states") {
    const auto s = make_bell(BellState::phi_plus);
    REQUIRE(std::abs(s.rho.at(0, 3).real() - 0.5) < 1e-15);
    REQUIRE(std::abs(s.purity() - 1.0) < 1e-14);
    const auto b = bloch_decompose(make_bell(BellState::psi_minus));
    REQUIRE(b.x.norm() < 1e-14);
    REQUIRE(b.y.norm() < 1e-14);
    // singlet correlation block is -I/2
    REQUIRE(std::abs(b.t.at(0, 0) + 0.5) < 1e-14);
    REQUIRE(std::abs(b.t.at(1, 1) + 0.5) < 1e-14);
    REQUIRE(std::abs(b.t.at(2, 2) + 0.5) < 1e-14);
  }
}

TEST_CASE("bloch decomposition", "[state]") {
  SECTION("pure family components") {
    const double a = 0.3, c = std::sqrt(a * (1 - a));
    const auto b = bloch_decompose(make_family(StateFamily::pure, a));
    REQUIRE(std::abs(b.x.z - (1 - 2 * a) / 2) < 1e-14);
    REQUIRE(std::abs(b.y.z - (1 - 2 * a) / 2) < 1e-14);
    REQUIRE(std::abs(b.x.x) < 1e-14);
    REQUIRE(std::abs(b.t.at(0, 0) - c) < 1e-14);
    REQUIRE(std::abs(b.t.at(1, 1) + c) < 1e-14);
    REQUIRE(std::abs(b.t.at(2, 2) - 0.5) < 1e-14);
    REQUIRE(std::abs(b.t.at(0, 1)) < 1e-14);
  }
  SECTION("werner components") {
    const auto b = bloch_decompose(make_family(StateFamily::werner, 0.8));
    REQUIRE(b.x.norm() < 1e-14);
    REQUIRE(b.y.norm() < 1e-14);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        REQUIRE(std::abs(b.t.at(i, j) - (i == j ? -0.4 : 0.0)) < 1e-14);
  }
  SECTION("purity identity and round trip on random states") {
    Rng rng(21);
    for (int rep = 0; rep < 50; ++rep) {
      const auto s = random_state(rng);
      const auto b = bloch_decompose(s);
      const double claimed =
          0.25 + b.x.norm_sq() + b.y.norm_sq() + b.t.frobenius_sq();
      REQUIRE(std::abs(claimed - s.purity()) < 1e-12);
      const auto back = bloch_reconstruct(b);
      REQUIRE(max_abs(back.rho - s.rho) < 1e-12);
    }
  }
  SECTION("reduced states match bloch vectors") {
    Rng rng(22);
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = random_state(rng);
      const auto b = bloch_decompose(s);
      const CMat2 ra = reduced_a(s);
      REQUIRE(std::abs(ra.trace().real() - 1.0) < 1e-12);
      REQUIRE(std::abs(0.5 * (ra.at(0, 0) - ra.at(1, 1)).real() - b.x.z) < 1e-12);
      REQUIRE(std::abs(ra.at(0, 1).real() - b.x.x) < 1e-12);
      REQUIRE(std::abs(-ra.at(0, 1).imag() - b.x.y) < 1e-12);
    }
  }
}

TEST_CASE("x state extraction", "[state]") {
  SECTION("werner is an x state") {
    const auto x = as_x_state(make_family(StateFamily::werner, 0.6));
    REQUIRE(std::abs(x.rho22 - 0.4) < 1e-15);
    REQUIRE(std::abs(x.rho23 - 0.3) < 1e-15);
    // canonical form stores the magnitude; the removed phase is pi
    REQUIRE(std::abs(std::abs(x.phase23) - std::acos(-1.0)) < 1e-12);
    REQUIRE(x.rho14 == 0.0);
  }
  SECTION("canonical form reconstructs to a valid state") {
    const auto x = as_x_state(make_family(StateFamily::vedral_plenio, 0.25));
    const auto s = to_density(x);
    REQUIRE(s.min_eigenvalue() > -1e-12);
    REQUIRE(std::abs(s.rho.at(1, 2).real() - 0.375) < 1e-14);
  }
  SECTION("generic state rejected") {
    Rng rng(23);
    const auto s = random_state(rng);
    REQUIRE_THROWS_AS(as_x_state(s), not_x_state);
    REQUIRE_FALSE(has_x_shape(s.rho));
    REQUIRE(has_x_shape(make_bell(BellState::phi_plus).rho));
  }
}
