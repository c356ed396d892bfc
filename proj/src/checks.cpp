#include "starspin/checks.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <random>

#include "starspin/algebra.hpp"
#include "starspin/berezin.hpp"
#include "starspin/path_integral.hpp"
#include "starspin/phase_space.hpp"
#include "starspin/spin.hpp"
#include "starspin/star.hpp"

namespace starspin {

namespace {

const Complex I{0.0, 1.0};
const double kPi = std::acos(-1.0);

SigPtr sig3() {
  static SigPtr sig = AlgebraSignature::euclidean(3);
  return sig;
}

Multivector gen(int i) { return Multivector::generator(sig3(), i); }

Multivector blade(uint32_t mask, Complex c = Complex(1.0)) {
  return Multivector::blade(sig3(), mask, c);
}

SpinHamiltonian hsz(double e) {
  return validate_spin_hamiltonian(blade(0b011u, -I * e));
}

Multivector random_mv(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.5, 1.5);
  Multivector a(sig3());
  for (uint32_t mask = 0; mask < 8; ++mask)
    a.add_term(mask, Complex(coeff(rng), coeff(rng)));
  return a;
}

// Hamiltonians the validator accepts: a vector, a full bivector, or a
// rotated vector-plus-bivector mix.
SpinHamiltonian random_valid_h(std::mt19937_64& rng, int kind) {
  std::uniform_real_distribution<double> coeff(0.3, 1.5);
  if (kind % 3 == 0) {
    Multivector v(sig3());
    for (int k = 0; k < 3; ++k) v.add_term(1u << k, Complex(coeff(rng)));
    return validate_spin_hamiltonian(v);
  }
  if (kind % 3 == 1) {
    Multivector b(sig3());
    b.add_term(0b110u, -I * coeff(rng));
    b.add_term(0b101u, -I * coeff(rng));
    b.add_term(0b011u, -I * coeff(rng));
    return validate_spin_hamiltonian(b);
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<double, 3> axis{};
  double len = 0.0;
  while (len < 0.3) {
    for (double& a : axis) a = gauss(rng);
    len = std::hypot(axis[0], axis[1], axis[2]);
  }
  const Multivector seed =
      scaled(gen(0), Complex(coeff(rng))) + blade(0b011u, -I * coeff(rng));
  const Multivector r = rotor(axis_bivector(sig3(), axis), 1.1);
  return validate_spin_hamiltonian(rotate(r, seed));
}

Multivector random_rotor_mv(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<double, 3> axis{};
  double len = 0.0;
  while (len < 0.3) {
    for (double& a : axis) a = gauss(rng);
    len = std::hypot(axis[0], axis[1], axis[2]);
  }
  std::uniform_real_distribution<double> angle(0.4, 2.6);
  return rotor(axis_bivector(sig3(), axis), angle(rng));
}

struct Suite {
  CheckResult result;

  Suite(std::string name, double tol) : result{std::move(name), 0.0, tol, true} {}

  void observe(double dev) { result.worst = std::max(result.worst, dev); }
  void observe(const Multivector& a, const Multivector& b) {
    observe(max_abs_diff(a, b));
  }
  void require(bool ok) {
    if (!ok) observe(result.tol * 16.0);
  }

  CheckResult done() {
    result.pass = result.worst <= result.tol;
    return result;
  }
};

CheckResult check_basis_products() {
  Suite s("basis products carry the metric delta", 1e-12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Multivector expect = wedge(gen(i), gen(j));
      if (i == j) expect = expect + Multivector::scalar(sig3(), Complex(1.0));
      s.observe(clifford_star(gen(i), gen(j)), expect);
    }
  return s.done();
}

CheckResult check_quaternion_units() {
  Suite s("bivector units close the quaternion relations", 1e-12);
  const Multivector qi = blade(0b110u);
  const Multivector qj = blade(0b101u);
  const Multivector qk = blade(0b011u);
  const Multivector minus_one = Multivector::scalar(sig3(), Complex(-1.0));
  s.observe(clifford_star(qi, qi), minus_one);
  s.observe(clifford_star(qj, qj), minus_one);
  s.observe(clifford_star(qk, qk), minus_one);
  s.observe(clifford_star(clifford_star(qi, qj), qk), minus_one);
  return s.done();
}

CheckResult check_star_integral_form() {
  Suite s("integral form matches the differential star", default_check_tol());
  std::mt19937_64 rng(310001);
  for (int k = 0; k < 200; ++k) {
    const Multivector a = random_mv(rng);
    const Multivector b = random_mv(rng);
    s.observe(clifford_star_integral_form(a, b), clifford_star(a, b));
  }
  return s.done();
}

void projector_laws(Suite& s, const SpinHamiltonian& h) {
  const auto [plus, minus] = wigner_projectors(h);
  s.observe(clifford_star(plus, plus), plus);
  s.observe(clifford_star(minus, minus), minus);
  s.observe(max_norm(clifford_star(plus, minus)));
  s.observe(max_norm(clifford_star(minus, plus)));
  s.observe(plus + minus, Multivector::scalar(h.h.sig(), Complex(1.0)));
  s.observe(clifford_star(h.h, plus), scaled(plus, Complex(h.abs_e)));
  s.observe(clifford_star(h.h, minus), scaled(minus, Complex(-h.abs_e)));
}

CheckResult check_projectors() {
  Suite s("projector laws and level eigenvalues", default_check_tol());
  const SpinHamiltonian h = hsz(0.65);
  const auto [plus, minus] = wigner_projectors(h);
  s.observe(plus, scaled(Multivector::scalar(sig3(), Complex(1.0)) +
                             blade(0b011u, -I),
                         Complex(0.5)));
  s.observe(minus, scaled(Multivector::scalar(sig3(), Complex(1.0)) +
                              blade(0b011u, I),
                          Complex(0.5)));
  projector_laws(s, h);
  std::mt19937_64 rng(310002);
  for (int k = 0; k < 20; ++k) projector_laws(s, random_valid_h(rng, k));
  return s.done();
}

CheckResult check_star_exponential() {
  Suite s("star exponential series, level split, and group law",
          default_check_tol());
  const SpinHamiltonian h = hsz(0.65);
  const auto [plus, minus] = wigner_projectors(h);
  for (int k = 0; k < 50; ++k) {
    const double t = -2.0 * kPi / h.abs_e + k * (4.0 * kPi / h.abs_e) / 49.0;
    const Multivector closed = star_exponential(h, t);
    s.observe(closed, star_exponential_series(h, t, 40));
    const Multivector split =
        scaled(plus, std::exp(-I * Complex(h.abs_e * t))) +
        scaled(minus, std::exp(I * Complex(h.abs_e * t)));
    s.observe(closed, split);
  }
  std::mt19937_64 rng(310003);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const double t1 = time(rng);
    const double t2 = time(rng);
    s.observe(clifford_star(star_exponential(h, t1), star_exponential(h, t2)),
              star_exponential(h, t1 + t2));
  }
  return s.done();
}

CheckResult check_precession() {
  Suite s("generators precess at the doubled frequency", default_check_tol());
  const double omega = 1.3;
  const SpinHamiltonian h = hsz(omega / 2.0);
  for (int k = 0; k < 50; ++k) {
    const double t = -2.0 + k * 0.16;
    Multivector expect1(sig3());
    expect1.add_term(0b001u, Complex(std::cos(omega * t)));
    expect1.add_term(0b010u, Complex(-std::sin(omega * t)));
    s.observe(evolve_generator(0, h, t), expect1);
    Multivector expect2(sig3());
    expect2.add_term(0b001u, Complex(std::sin(omega * t)));
    expect2.add_term(0b010u, Complex(std::cos(omega * t)));
    s.observe(evolve_generator(1, h, t), expect2);
    s.observe(evolve_generator(2, h, t), gen(2));
  }
  return s.done();
}

CheckResult check_ladders() {
  Suite s("ladder pairs exchange the level projectors", 1e-12);
  const SpinHamiltonian h = hsz(1.0);
  const auto [plus, minus] = wigner_projectors(h);
  for (LadderFlavor flavor : {LadderFlavor::Vector, LadderFlavor::Bivector})
    for (bool primed : {false, true}) {
      const auto [f, bar] = ladder_operators(h, flavor, primed);
      s.observe(clifford_star(clifford_star(bar, plus), f), minus);
      s.observe(clifford_star(clifford_star(f, minus), bar), plus);
    }
  const auto [rf, rbar] = real_ladder(sig3());
  const Multivector one = Multivector::scalar(sig3(), Complex(1.0));
  const Multivector rplus = scaled(one + gen(2), Complex(0.5));
  const Multivector rminus = scaled(one - gen(2), Complex(0.5));
  s.observe(clifford_star(clifford_star(rbar, rplus), rf), rminus);
  s.observe(clifford_star(clifford_star(rf, rminus), rbar), rplus);
  s.observe(clifford_star(clifford_star(gen(0), plus), gen(0)), minus);
  s.observe(clifford_star(clifford_star(gen(0), minus), gen(0)), plus);
  return s.done();
}

CheckResult check_landau_splitting() {
  Suite s("kinetic star square splits into drift and level terms",
          default_check_tol());
  using Poly = PhaseSpacePolynomial;
  std::mt19937_64 rng(310008);
  std::uniform_real_distribution<double> field(-1.2, 1.2);
  std::uniform_real_distribution<double> charge(0.4, 1.6);
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::array<double, 3> b = {field(rng), field(rng), field(rng)};
    const double e = (trial % 2 ? -1.0 : 1.0) * charge(rng);
    const double m = mass(rng);
    const double hbar = mass(rng);
    const LandauSplit split = landau_hamiltonian(b, e, m, hbar);

    // Drift part: the plain square of p + eA with the symmetric-gauge
    // potential A = (field x position)/2, no quantum correction because the
    // components are linear.
    std::array<Poly, 3> v;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      Poly a = Poly::q(k, 3).scaled_by(Complex(0.5 * b[j])) -
               Poly::q(j, 3).scaled_by(Complex(0.5 * b[k]));
      v[i] = Poly::p(i, 3) + a.scaled_by(Complex(e));
    }
    Poly drift(3);
    for (int i = 0; i < 3; ++i) drift += v[i] * v[i];
    drift = drift.scaled_by(Complex(1.0 / (2.0 * m)));

    PhaseSpaceMultivector expect(sig3());
    expect.add_term(0u, drift);
    const Complex unit = -I * hbar * e / (2.0 * m);
    expect.add_term(0b011u, Poly::constant(unit * b[2], 3));
    expect.add_term(0b101u, Poly::constant(-unit * b[1], 3));
    expect.add_term(0b110u, Poly::constant(unit * b[0], 3));

    s.observe(max_abs_diff(split.hamiltonian, expect));
    for (int i = 0; i < 3; ++i)
      s.observe(std::abs(split.omega[i] - e * b[i] / m));
  }
  return s.done();
}

CheckResult check_berezin_fourier() {
  Suite s("integration normalization, sifting, and transform round trip",
          1e-12);
  s.observe(berezin_integrate(blade(0b111u), {0, 1, 2}),
            Multivector::scalar(sig3(), Complex(1.0)));

  const SigPtr six = AlgebraSignature::make(
      {"s1", "s2", "s3", "s1'", "s2'", "s3'"}, std::vector<double>(6, 1.0));
  const Multivector d = delta_function(six, {0, 1, 2}, {3, 4, 5});
  for (uint32_t mask = 0; mask < 8; ++mask) {
    const Multivector f = blade(mask, Complex(0.7, -0.4));
    s.observe(berezin_integrate(wedge(d, embed_shift(f, six, 0)), {0, 1, 2}),
              embed_shift(f, six, 3));
  }

  for (uint32_t mask = 0; mask < 8; ++mask) {
    const Multivector f = embed_shift(blade(mask, Complex(1.1, 0.4)), six, 0);
    const Multivector forward = grassmann_fourier(f, {0, 1, 2}, {3, 4, 5});
    s.observe(grassmann_fourier_inverse(forward, {3, 4, 5}, {0, 1, 2}), f);
  }

  const SigPtr nine = AlgebraSignature::make(
      {"s1", "s2", "s3", "s1'", "s2'", "s3'", "s1''", "s2''", "s3''"},
      std::vector<double>(9, 1.0));
  const Multivector dd = delta_function(nine, {0, 1, 2}, {3, 4, 5});
  Multivector kernel(nine);
  for (int k = 0; k < 3; ++k)
    kernel.add_term((uint32_t{1} << (3 + k)) | (uint32_t{1} << (6 + k)), I);
  s.observe(grassmann_fourier(dd, {0, 1, 2}, {6, 7, 8}),
            exp_wedge_series(kernel));
  return s.done();
}

CheckResult check_gaussian_chain() {
  Suite s("coupled replica chains integrate to unity", 1e-12);
  for (int n : {2, 4, 6}) {
    const GaussianPairResult r = gaussian_pair_integral(n);
    s.require(r.even);
    s.observe(std::abs(r.value - Complex(1.0)));
  }
  return s.done();
}

CheckResult check_operator_lift() {
  Suite s("lifted multivectors act by left star multiplication", 1e-12);
  for (uint32_t ma = 0; ma < 8; ++ma) {
    const LinearOperator lift = operator_lift(blade(ma));
    for (uint32_t mb = 0; mb < 8; ++mb)
      s.observe(lift.apply(blade(mb)), clifford_star(blade(ma), blade(mb)));
  }
  const double e = 0.8;
  const LinearOperator lifted_h = operator_lift(hsz(e).h);
  const LinearOperator factored =
      operator_lift(gen(0)).compose_after(operator_lift(gen(1))).scaled_by(-I * e);
  s.observe(lifted_h.max_entry_diff(factored));
  return s.done();
}

CheckResult check_scalar_product() {
  Suite s("wave function pairing normalizes and matches the plain integral",
          default_check_tol());
  const Multivector one = Multivector::scalar(sig3(), Complex(1.0));
  const Multivector psi_plus =
      scaled(one + blade(0b011u, -I), Complex(1.0 / std::sqrt(2.0)));
  s.observe(std::abs(scalar_product(psi_plus, psi_plus) - Complex(1.0)));

  std::mt19937_64 rng(310012);
  std::uniform_real_distribution<double> coeff(-1.5, 1.5);
  for (int k = 0; k < 20; ++k) {
    Multivector psi(sig3());
    double sum = 0.0;
    for (uint32_t mask = 0; mask < 8; ++mask) {
      const double c = coeff(rng);
      psi.add_term(mask, Complex(c));
      sum += c * c;
    }
    s.observe(std::abs(scalar_product(psi, psi) - Complex(sum)));
  }

  for (int k = 0; k < 50; ++k) {
    const Multivector a = random_mv(rng);
    const Multivector b = random_mv(rng);
    const Complex starred =
        berezin_integrate(clifford_star(a, b), {0, 1, 2}).coefficient(0);
    const Complex wedged = berezin_integrate(wedge(a, b), {0, 1, 2}).coefficient(0);
    s.observe(std::abs(starred - wedged));
  }
  return s.done();
}

CheckResult check_spinor_wigner() {
  Suite s("spinors generate projectors with matching eigenvalues",
          default_check_tol());
  const Multivector one = Multivector::scalar(sig3(), Complex(1.0));
  const Multivector psi_up = one;
  const Multivector psi_down = blade(0b101u, Complex(-1.0));
  s.observe(wigner_from_spinor(psi_up), scaled(one + gen(2), Complex(0.5)));
  s.observe(wigner_from_spinor(psi_down), scaled(one - gen(2), Complex(0.5)));

  std::mt19937_64 rng(310013);
  std::vector<Multivector> spinors = {psi_up, psi_down};
  for (int k = 0; k < 10; ++k) spinors.push_back(random_rotor_mv(rng));
  for (const Multivector& psi : spinors) {
    const Multivector pi = wigner_from_spinor(psi);
    s.observe(clifford_star(pi, pi), pi);
    for (int i = 0; i < 3; ++i)
      for (double lambda : {1.0, -1.0}) {
        const double spinor_side =
            max_norm(spinor_eigen_residual(psi, i, Complex(lambda)));
        const double projector_side =
            max_norm(scaled(pi, Complex(lambda)) - clifford_star(gen(i), pi));
        s.require((spinor_side < default_check_tol() &&
                   projector_side < default_check_tol()) ||
                  (spinor_side > 1e-3 && projector_side > 1e-3));
      }
  }
  return s.done();
}

CheckResult check_isomorphisms() {
  Suite s("subalgebra maps preserve the star product", 1e-12);
  const std::array<uint32_t, 4> even = {0u, 0b011u, 0b101u, 0b110u};
  for (uint32_t ma : even)
    for (uint32_t mb : even)
      for (Complex ca : {Complex(1.0), I}) {
        const Multivector a = blade(ma, ca);
        const Multivector b = blade(mb);
        s.observe(iso_even_cl3_to_cl2(clifford_star(a, b)),
                  clifford_star(iso_even_cl3_to_cl2(a), iso_even_cl3_to_cl2(b)));
        s.observe(iso_cl2_to_even_cl3(iso_even_cl3_to_cl2(a)), a);
        s.observe(iso_complex_to_real(clifford_star(a, b)),
                  clifford_star(iso_complex_to_real(a), iso_complex_to_real(b)));
        s.observe(iso_real_to_complex(iso_complex_to_real(a)), a);
      }

  const SpinHamiltonian h = hsz(0.55);
  const SpinHamiltonian h_real = validate_spin_hamiltonian(
      Multivector::blade(sig3(), 0b100u, Complex(0.55)));
  const auto [plus, minus] = wigner_projectors(h);
  s.observe(iso_complex_to_real(plus),
            scaled(Multivector::scalar(sig3(), Complex(1.0)) + gen(2),
                   Complex(0.5)));
  for (double t : {0.0, 0.8, 2.1}) {
    s.observe(iso_complex_to_real(star_exponential(h, t)),
              star_exponential_real(h_real, t));
    const Multivector mapped = iso_even_cl3_to_cl2(star_exponential(h, t));
    s.observe(iso_cl2_to_even_cl3(mapped), star_exponential(h, t));
  }
  s.observe(iso_even_cl3_to_cl2(plus),
            clifford_star(iso_even_cl3_to_cl2(plus), iso_even_cl3_to_cl2(plus)));
  (void)minus;
  return s.done();
}

CheckResult check_propagator() {
  // Mixed bounds, so deviations are folded to ratios against their own
  // tolerance and the suite bound is 1.
  Suite s("sliced, integral, and composed propagators agree", 1.0);
  std::mt19937_64 rng(310015);
  std::uniform_real_distribution<double> time(0.3, 2.4);
  for (int n = 1; n <= 6; ++n) {
    const SpinHamiltonian h = random_valid_h(rng, 3 * n + 1);
    const double t = time(rng);
    s.observe(max_abs_diff(discretized_propagator(h, t, n),
                           star_exponential(h, t)) /
              1e-9);
  }
  for (int k = 0; k < 10; ++k) {
    const SpinHamiltonian h = random_valid_h(rng, 3 * k + 1);
    const double dt = time(rng);
    s.observe(max_abs_diff(greens_function_fourier_form(h, dt),
                           greens_function_delta_form(h, dt)) /
              1e-10);
    const Multivector g = greens_function_delta_form(h, dt);
    const Multivector psi = random_mv(rng) + random_mv(rng);
    s.observe(max_abs_diff(propagate(psi, g), wave_function_evolve(psi, h, dt)) /
              1e-10);
  }
  const SpinHamiltonian h = hsz(0.8);
  const double t = 1.6;
  const Multivector half = greens_function_delta_form(h, t / 2.0);
  s.observe(max_abs_diff(compose_propagators(half, half),
                         greens_function_delta_form(h, t)) /
            1e-9);
  return s.done();
}

}  // namespace

double default_check_tol() {
  static const double tol = [] {
    if (const char* env = std::getenv("STARSPIN_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && v > 0.0) return v;
    }
    return 1e-10;
  }();
  return tol;
}

std::vector<CheckResult> run_all_checks() {
  return {
      check_basis_products(),   check_quaternion_units(),
      check_star_integral_form(), check_projectors(),
      check_star_exponential(), check_precession(),
      check_ladders(),          check_landau_splitting(),
      check_berezin_fourier(),  check_gaussian_chain(),
      check_operator_lift(),    check_scalar_product(),
      check_spinor_wigner(),    check_isomorphisms(),
      check_propagator(),
  };
}

}  // namespace starspin
