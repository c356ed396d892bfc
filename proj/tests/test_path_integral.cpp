#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "starspin/algebra.hpp"
#include "starspin/berezin.hpp"
#include "starspin/errors.hpp"
#include "starspin/path_integral.hpp"
#include "starspin/spin.hpp"
#include "starspin/star.hpp"

using namespace starspin;

namespace {

const Complex I{0.0, 1.0};
const double kPi = std::acos(-1.0);

SigPtr sig3() {
  static SigPtr sig = AlgebraSignature::euclidean(3);
  return sig;
}

// Vertical-field Hamiltonian -i e s1^s2, splitting |E| = e.
SpinHamiltonian hsz(double e) {
  return validate_spin_hamiltonian(Multivector::blade(sig3(), 0b011u, -I * e));
}

// Full-bivector Hamiltonian with a tilted splitting axis.
SpinHamiltonian tilted(double a, double b, double c) {
  Multivector h(sig3());
  h.add_term(0b110u, -I * a);
  h.add_term(0b101u, -I * b);
  h.add_term(0b011u, -I * c);
  return validate_spin_hamiltonian(h);
}

SpinHamiltonian random_h(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(0.3, 1.4);
  return tilted(coeff(rng), coeff(rng), coeff(rng));
}

// Normalized plus state (1 - i s1^s2)/sqrt(2); evolution multiplies it by
// the eigenphase exp(-i|E|t) for the vertical Hamiltonian.
Multivector psi_plus() {
  Multivector psi = Multivector::scalar(sig3(), Complex(1.0)) +
                    Multivector::blade(sig3(), 0b011u, -I);
  return scaled(psi, Complex(1.0 / std::sqrt(2.0)));
}

Multivector random_even(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Multivector psi(sig3());
  for (uint32_t mask : {0b000u, 0b011u, 0b101u, 0b110u})
    psi.add_term(mask, Complex(coeff(rng), coeff(rng)));
  return psi;
}

}  // namespace

TEST_CASE("slice lattice layout and capacity") {
  const SliceLattice lat = SliceLattice::make(3, 1.2);
  CHECK(lat.sig->size() == 12);
  CHECK(lat.slices == 3);
  CHECK(lat.dt == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(lat.offset(2) == 6);
  CHECK(lat.triple(1) == GeneratorSet{3, 4, 5});
  CHECK(lat.sig->label(0) == "s1@t0");
  CHECK(lat.sig->label(3) == "s1@1");
  CHECK(lat.sig->label(11) == "s3@t");

  CHECK_THROWS_AS(SliceLattice::make(0, 1.0), DomainError);
  // 3*(7+1) = 24 generators still fits; one more slice does not.
  CHECK_NOTHROW(SliceLattice::make(7, 1.0));
  CHECK_THROWS_AS(SliceLattice::make(8, 1.0), CapacityExceeded);
}

TEST_CASE("single-slice evaluation reproduces the closed form exactly") {
  const SpinHamiltonian h = hsz(0.9);
  const double t = 1.3;
  const Multivector direct = star_exponential(h, t);
  const Multivector sliced = discretized_propagator(h, t, 1);
  CHECK(max_abs_diff(sliced, direct) < 1e-14);
}

TEST_CASE("two-slice evaluation matches the closed form") {
  const SpinHamiltonian h = hsz(1.1);
  for (double t : {0.4, 1.0, 2.7}) {
    const Multivector sliced = discretized_propagator(h, t, 2);
    CHECK(max_abs_diff(sliced, star_exponential(h, t)) < 1e-10);
  }
}

TEST_CASE("four and six slices stay on the closed form") {
  const SpinHamiltonian h = tilted(0.5, 0.7, 0.6);
  const double t = 1.9;
  for (int n : {4, 6}) {
    const Multivector sliced = discretized_propagator(h, t, n);
    CHECK(max_abs_diff(sliced, star_exponential(h, t)) < 1e-9);
  }
}

TEST_CASE("slice counts one through six all reproduce the closed form") {
  std::mt19937_64 rng(20260822);
  for (int n = 1; n <= 6; ++n) {
    const SpinHamiltonian h = random_h(rng);
    std::uniform_real_distribution<double> time(0.3, 2.5);
    const double t = time(rng);
    const Multivector sliced = discretized_propagator(h, t, n);
    CHECK(max_abs_diff(sliced, star_exponential(h, t)) < 1e-9);
  }
}

TEST_CASE("oversized lattices are rejected") {
  const SpinHamiltonian h = hsz(1.0);
  CHECK_THROWS_AS(discretized_propagator(h, 1.0, 0), DomainError);
  CHECK_THROWS_AS(discretized_propagator(h, 1.0, 8), CapacityExceeded);
}

TEST_CASE("delta-form kernel at zero interval is the pure coupling delta") {
  const SpinHamiltonian h = hsz(0.8);
  const Multivector g = greens_function_delta_form(h, 0.0);
  const Multivector ref =
      delta_function(greens_signature(), {0, 1, 2}, {3, 4, 5});
  CHECK(max_abs_diff(g, ref) < 1e-14);
}

TEST_CASE("delta-form kernel passes its internal integral cross-check") {
  // The constructor itself throws if the replica-integral form strays from
  // the direct product; a clean return is the assertion.
  const SpinHamiltonian h = tilted(0.4, 0.3, 0.9);
  for (double dt : {0.1, 0.7, 1.6, 2.9}) CHECK_NOTHROW(greens_function_delta_form(h, dt));
}

TEST_CASE("fourier form equals the delta form across sampled intervals") {
  const SpinHamiltonian h = hsz(1.2);
  for (int k = 0; k < 10; ++k) {
    const double dt = 0.25 * (k + 1);
    const Multivector a = greens_function_fourier_form(h, dt);
    const Multivector b = greens_function_delta_form(h, dt);
    CHECK(max_abs_diff(a, b) < 1e-10);
  }
  CHECK(max_abs_diff(greens_function_fourier_form(h, 0.0),
                     delta_function(greens_signature(), {0, 1, 2}, {3, 4, 5})) < 1e-14);
}

TEST_CASE("fourier and delta forms agree for random Hamiltonians") {
  std::mt19937_64 rng(77002);
  std::uniform_real_distribution<double> time(0.2, 3.0);
  for (int k = 0; k < 10; ++k) {
    const SpinHamiltonian h = random_h(rng);
    const double dt = time(rng);
    CHECK(max_abs_diff(greens_function_fourier_form(h, dt),
                       greens_function_delta_form(h, dt)) < 1e-10);
  }
}

TEST_CASE("real-coefficient kernel variant transports through the isomorphism") {
  const double e = 0.9;
  const double dt = 1.3;
  const SpinHamiltonian h = hsz(e);
  const SpinHamiltonian h_real = validate_spin_hamiltonian(
      Multivector::blade(sig3(), 0b100u, Complex(e)));
  const SigPtr g6 = greens_signature();
  const Multivector coupling = delta_function(g6, {0, 1, 2}, {3, 4, 5});

  // Delta-style kernel built from the real-coefficient exponential of the
  // vector-form Hamiltonian, and the same kernel reached by mapping the
  // complex exponential through the volume-element isomorphism first.
  const Multivector real_exp = star_exponential_real(h_real, dt);
  const Multivector via_iso = iso_complex_to_real(star_exponential(h, dt));
  CHECK(max_abs_diff(real_exp, via_iso) < 1e-12);
  const Multivector direct =
      clifford_star(embed_shift(real_exp, g6, 0), coupling);
  const Multivector transported =
      clifford_star(embed_shift(via_iso, g6, 0), coupling);
  CHECK(max_abs_diff(direct, transported) < 1e-12);

  // Integral route with the real-coefficient exponential substituted on the
  // end-minus-replica difference; it must land on the same kernel.
  const SigPtr g9 = AlgebraSignature::make(
      {"s1@t", "s2@t", "s3@t", "s1@t0", "s2@t0", "s3@t0", "s1@p", "s2@p", "s3@p"},
      std::vector<double>(9, 1.0));
  std::vector<Multivector> images;
  for (int k = 0; k < 3; ++k) {
    Multivector im(g9);
    im.add_term(1u << k, Complex(1.0));
    im.add_term(1u << (6 + k), Complex(-1.0));
    images.push_back(im);
  }
  Multivector expo(g9);
  for (int k = 0; k < 3; ++k) {
    expo.add_term((1u << k) | (1u << (6 + k)), Complex(-1.0));
    expo.add_term((1u << (3 + k)) | (1u << (6 + k)), Complex(1.0));
  }
  const Multivector integrand =
      wedge(substitute(real_exp, g9, images), exp_wedge_series(expo));
  const Multivector integral =
      project_shift(berezin_integrate(integrand, {8, 7, 6}), g6, 0);
  CHECK(max_abs_diff(integral, direct) < 1e-10);
}

TEST_CASE("propagation applies the eigenphase to the plus state") {
  const SpinHamiltonian h = hsz(1.4);
  for (double dt : {0.3, 1.1, 2.6}) {
    const Multivector g = greens_function_delta_form(h, dt);
    const Multivector out = propagate(psi_plus(), g);
    const Multivector expected =
        scaled(psi_plus(), std::exp(-I * Complex(h.abs_e * dt)));
    CHECK(max_abs_diff(out, expected) < 1e-12);
  }
}

TEST_CASE("zero-interval propagation is the relabeling identity") {
  const SpinHamiltonian h = tilted(0.6, 0.2, 0.8);
  const Multivector g = greens_function_delta_form(h, 0.0);
  std::mt19937_64 rng(40123);
  for (int k = 0; k < 5; ++k) {
    const Multivector psi = random_even(rng);
    CHECK(max_abs_diff(propagate(psi, g), psi) < 1e-13);
  }
}

TEST_CASE("propagation matches direct evolution for random even states") {
  std::mt19937_64 rng(55808);
  std::uniform_real_distribution<double> time(0.2, 2.8);
  for (int k = 0; k < 10; ++k) {
    const SpinHamiltonian h = random_h(rng);
    const double dt = time(rng);
    const Multivector g = greens_function_delta_form(h, dt);
    const Multivector psi = random_even(rng);
    CHECK(max_abs_diff(propagate(psi, g), wave_function_evolve(psi, h, dt)) <
          1e-10);
  }
}

TEST_CASE("propagation rejects mismatched inputs") {
  const SpinHamiltonian h = hsz(1.0);
  const Multivector g = greens_function_delta_form(h, 0.5);
  const SigPtr wide = AlgebraSignature::euclidean(4);
  CHECK_THROWS_AS(propagate(Multivector::scalar(wide, Complex(1.0)), g),
                  SignatureMismatch);
  CHECK_THROWS_AS(propagate(psi_plus(), star_exponential(h, 0.5)),
                  SignatureMismatch);
}

TEST_CASE("composing two half-steps gives the full-interval kernel") {
  const SpinHamiltonian h = tilted(0.7, 0.5, 0.4);
  const double t = 1.8;
  const Multivector half = greens_function_delta_form(h, t / 2);
  const Multivector composed = compose_propagators(half, half);
  CHECK(max_abs_diff(composed, greens_function_delta_form(h, t)) < 1e-10);
}

TEST_CASE("composing with a zero-interval kernel changes nothing") {
  const SpinHamiltonian h = hsz(0.7);
  const Multivector g = greens_function_delta_form(h, 1.1);
  const Multivector unit = greens_function_delta_form(h, 0.0);
  CHECK(max_abs_diff(compose_propagators(unit, g), g) < 1e-12);
  CHECK(max_abs_diff(compose_propagators(g, unit), g) < 1e-12);
}

TEST_CASE("four quarter-steps compose to the full kernel") {
  const SpinHamiltonian h = tilted(0.3, 0.8, 0.5);
  const double t = 2.2;
  const Multivector quarter = greens_function_delta_form(h, t / 4);
  Multivector acc = quarter;
  for (int k = 0; k < 3; ++k) acc = compose_propagators(quarter, acc);
  CHECK(max_abs_diff(acc, greens_function_delta_form(h, t)) < 1e-9);
}

TEST_CASE("composition is associative across random splits") {
  std::mt19937_64 rng(90377);
  std::uniform_real_distribution<double> piece(0.2, 1.2);
  for (int k = 0; k < 3; ++k) {
    const SpinHamiltonian h = random_h(rng);
    const double a = piece(rng);
    const double b = piece(rng);
    const double c = piece(rng);
    const Multivector ga = greens_function_delta_form(h, a);
    const Multivector gb = greens_function_delta_form(h, b);
    const Multivector gc = greens_function_delta_form(h, c);
    const Multivector left =
        compose_propagators(compose_propagators(gc, gb), ga);
    const Multivector right =
        compose_propagators(gc, compose_propagators(gb, ga));
    CHECK(max_abs_diff(left, right) < 1e-10);
    CHECK(max_abs_diff(left, greens_function_delta_form(h, a + b + c)) < 1e-9);
  }
}

TEST_CASE("composition rejects kernels off the two-endpoint signature") {
  const SpinHamiltonian h = hsz(1.0);
  const Multivector g = greens_function_delta_form(h, 0.5);
  CHECK_THROWS_AS(compose_propagators(g, star_exponential(h, 0.5)),
                  SignatureMismatch);
  CHECK_THROWS_AS(compose_propagators(psi_plus(), g), SignatureMismatch);
}

TEST_CASE("propagation commutes with the matrix lift of the projectors") {
  // Splitting the state into level components, evolving each by its
  // eigenphase through the lifted projectors, and recombining must equal
  // pushing the state through the kernel.
  std::mt19937_64 rng(61441);
  std::uniform_real_distribution<double> time(0.3, 2.4);
  for (int k = 0; k < 5; ++k) {
    const SpinHamiltonian h = random_h(rng);
    const double dt = time(rng);
    const auto [plus, minus] = wigner_projectors(h);
    const LinearOperator lift_plus = operator_lift(plus);
    const LinearOperator lift_minus = operator_lift(minus);
    const Multivector psi = random_even(rng);
    const Multivector matrix_route =
        scaled(lift_plus.apply(psi), std::exp(-I * Complex(h.abs_e * dt))) +
        scaled(lift_minus.apply(psi), std::exp(I * Complex(h.abs_e * dt)));
    const Multivector g = greens_function_delta_form(h, dt);
    CHECK(max_abs_diff(propagate(psi, g), matrix_route) < 1e-10);
  }
}
