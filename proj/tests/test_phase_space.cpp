#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starspin/phase_space.hpp"

using namespace starspin;

namespace {

const Complex I{0.0, 1.0};
using Poly = PhaseSpacePolynomial;

Poly random_poly(int dims, int max_deg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, max_deg);
  Poly r(dims);
  for (int t = 0; t < 5; ++t) {
    Poly::Exponents e(2 * dims, 0);
    int budget = deg(rng);
    for (int k = 0; k < budget; ++k) e[rng() % (2 * dims)] += 1;
    r.add_term(std::move(e), Complex(unit(rng), unit(rng)));
  }
  return r;
}

}  // namespace

TEST_CASE("polynomial arithmetic and derivatives") {
  auto q = Poly::q(0, 1);
  auto p = Poly::p(0, 1);
  auto sq = (q + p) * (q + p);
  CHECK(max_dist(sq, q * q + p * p + (q * p).scaled_by(2.0)) < 1e-15);
  CHECK(max_dist(sq.derivative_q(0), (q + p).scaled_by(2.0)) < 1e-15);
  CHECK((q * q).derivative_p(0).is_zero());
  CHECK(q.total_degree() == 1);
  CHECK(sq.total_degree() == 2);
  CHECK(Poly::constant(2.0).is_constant());
  CHECK(!q.is_constant());
}

TEST_CASE("dimension lifting aligns the momentum block") {
  auto q1 = Poly::q(0, 1);
  auto p1 = Poly::p(0, 1);
  auto lifted_q = q1.lifted_to(2);
  auto lifted_p = p1.lifted_to(2);
  CHECK(max_dist(lifted_q, Poly::q(0, 2)) < 1e-15);
  CHECK(max_dist(lifted_p, Poly::p(0, 2)) < 1e-15);
  CHECK(max_dist(q1 + Poly::p(1, 2), Poly::q(0, 2) + Poly::p(1, 2)) < 1e-15);
}

TEST_CASE("canonical pair under the Moyal star") {
  auto q = Poly::q(0, 1);
  auto p = Poly::p(0, 1);
  const double hbar = 0.7;
  auto qp = q * p;
  CHECK(max_dist(moyal_star(q, p, hbar), qp + Poly::constant(I * hbar / 2.0)) < 1e-15);
  CHECK(max_dist(moyal_star(p, q, hbar), qp - Poly::constant(I * hbar / 2.0)) < 1e-15);
  auto comm = moyal_star(q, p, hbar) - moyal_star(p, q, hbar);
  CHECK(max_dist(comm, Poly::constant(I * hbar)) < 1e-15);
  CHECK(max_dist(moyal_star(q, p, 0.0), qp) < 1e-15);
}

TEST_CASE("oscillator energy star-squares to the shifted square") {
  auto q = Poly::q(0, 1);
  auto p = Poly::p(0, 1);
  auto h = (q * q + p * p).scaled_by(0.5);
  auto expect = h * h - Poly::constant(0.25);
  CHECK(max_dist(moyal_star(h, h, 1.0), expect) < 1e-14);
}

TEST_CASE("Moyal star is associative on random polynomials") {
  std::mt19937_64 rng(53);
  for (int dims : {1, 2}) {
    for (int trial = 0; trial < 8; ++trial) {
      auto f = random_poly(dims, 2, rng);
      auto g = random_poly(dims, 2, rng);
      auto h = random_poly(dims, 2, rng);
      auto lhs = moyal_star(moyal_star(f, g, 0.9), h, 0.9);
      auto rhs = moyal_star(f, moyal_star(g, h, 0.9), 0.9);
      CHECK(max_dist(lhs, rhs) < 1e-11);
    }
  }
}

TEST_CASE("combined star contracts blades and star-multiplies coefficients") {
  auto sig = AlgebraSignature::euclidean(3);
  auto q = Poly::q(0, 3);
  auto p = Poly::p(0, 3);
  const double hbar = 0.7;
  auto a = PhaseSpaceMultivector::blade(sig, 0b001, q);
  auto b1 = PhaseSpaceMultivector::blade(sig, 0b001, p);
  auto b2 = PhaseSpaceMultivector::blade(sig, 0b010, p);

  auto same = combined_star(a, b1, hbar);
  CHECK(max_dist(same.coefficient(0), q * p + Poly::constant(I * hbar / 2.0)) < 1e-15);
  CHECK(same.coefficient(0b011).is_zero());

  auto cross = combined_star(a, b2, hbar);
  CHECK(max_dist(cross.coefficient(0b011), q * p + Poly::constant(I * hbar / 2.0)) < 1e-15);
  CHECK(cross.coefficient(0).is_zero());
}

TEST_CASE("symmetric gauge potential and its curl") {
  auto sig = AlgebraSignature::euclidean(3);
  auto a = vector_potential(sig, {0.0, 0.0, 2.0});
  CHECK(max_dist(a.coefficient(0b001), Poly::q(1, 3).scaled_by(-1.0)) < 1e-15);
  CHECK(max_dist(a.coefficient(0b010), Poly::q(0, 3)) < 1e-15);
  CHECK(a.coefficient(0b100).is_zero());
  auto curl = curl_bivector(a);
  CHECK(max_dist(curl.coefficient(0b011), Poly::constant(2.0)) < 1e-15);
  CHECK(curl.coefficient(0b101).is_zero());
  CHECK(curl.coefficient(0b110).is_zero());

  auto full = curl_bivector(vector_potential(sig, {0.4, -1.1, 0.9}));
  CHECK(max_dist(full.coefficient(0b011), Poly::constant(0.9)) < 1e-15);
  CHECK(max_dist(full.coefficient(0b101), Poly::constant(1.1)) < 1e-15);
  CHECK(max_dist(full.coefficient(0b110), Poly::constant(0.4)) < 1e-15);
}

TEST_CASE("axis-aligned field splits into kinetic and precession parts") {
  const double e = 2.0, m = 1.5, b3 = 0.8, hbar = 0.9;
  auto split = landau_hamiltonian({0.0, 0.0, b3}, e, m, hbar);

  CHECK(split.omega[0] == doctest::Approx(0.0));
  CHECK(split.omega[2] == doctest::Approx(e * b3 / m));

  auto spin = split.spin.coefficient(0b011);
  REQUIRE(spin.is_constant());
  CHECK(std::abs(spin.constant_term() - (-I * hbar * e * b3 / (2.0 * m))) < 1e-14);
  CHECK(split.spin.coefficient(0b101).is_zero());
  CHECK(split.spin.coefficient(0b110).is_zero());

  auto bos = split.bosonic.coefficient(0);
  Poly::Exponents p1sq = {0, 0, 0, 2, 0, 0};
  Poly::Exponents q2p1 = {0, 1, 0, 1, 0, 0};
  Poly::Exponents q2sq = {0, 2, 0, 0, 0, 0};
  CHECK(std::abs(bos.coefficient(p1sq) - Complex(1.0 / (2.0 * m))) < 1e-14);
  CHECK(std::abs(bos.coefficient(q2p1) - Complex(-e * b3 / (2.0 * m))) < 1e-14);
  CHECK(std::abs(bos.coefficient(q2sq) - Complex(e * e * b3 * b3 / (8.0 * m))) < 1e-14);

  CHECK(approx_equal(split.hamiltonian, split.bosonic + split.spin, 1e-13));
  CHECK(is_real(split.hamiltonian, 1e-12));
}

TEST_CASE("generic field spin part follows the curl") {
  const double e = -1.3, m = 0.7, hbar = 1.0;
  const std::array<double, 3> field = {0.5, -0.25, 1.2};
  auto split = landau_hamiltonian(field, e, m, hbar);
  const Complex unit = -I * hbar * e / (2.0 * m);
  auto c12 = split.spin.coefficient(0b011);
  auto c13 = split.spin.coefficient(0b101);
  auto c23 = split.spin.coefficient(0b110);
  CHECK(std::abs(c12.constant_term() - unit * field[2]) < 1e-13);
  CHECK(std::abs(c13.constant_term() - (-unit * field[1])) < 1e-13);
  CHECK(std::abs(c23.constant_term() - unit * field[0]) < 1e-13);
  for (int i = 0; i < 3; ++i)
    CHECK(split.omega[i] == doctest::Approx(e * field[i] / m));
}

TEST_CASE("degenerate mass is rejected") {
  CHECK_THROWS_AS(landau_hamiltonian({0, 0, 1}, 1.0, 0.0), DomainError);
}
