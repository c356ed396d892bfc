#include "starspin/demos.hpp"

#include <cmath>
#include <sstream>

#include "starspin/algebra.hpp"
#include "starspin/io.hpp"
#include "starspin/path_integral.hpp"
#include "starspin/phase_space.hpp"
#include "starspin/spin.hpp"
#include "starspin/star.hpp"

namespace starspin {

namespace {

const Complex I{0.0, 1.0};

SigPtr sig3() {
  static SigPtr sig = AlgebraSignature::euclidean(3);
  return sig;
}

SpinHamiltonian z_splitting(double e) {
  return validate_spin_hamiltonian(
      Multivector::blade(sig3(), 0b011u, -I * e));
}

double real_coefficient(const Multivector& a, uint32_t mask) {
  return a.coefficient(mask).real();
}

}  // namespace

std::string demo_precession(double omega, int steps) {
  if (omega <= 0.0) throw DomainError("precession frequency must be positive");
  if (steps < 1) throw DomainError("need at least one precession step");
  const SpinHamiltonian h = z_splitting(omega / 2.0);
  const double period = 2.0 * std::acos(-1.0) / omega;
  std::ostringstream out;
  out << "t\tcos_wt\tsin_wt\ts1_on_s1\ts1_on_s2\ts2_on_s1\ts2_on_s2\tmax_dev\n";
  for (int k = 0; k <= steps; ++k) {
    const double t = k * period / steps;
    const double c = std::cos(omega * t);
    const double sn = std::sin(omega * t);
    const Multivector e1 = evolve_generator(0, h, t);
    const Multivector e2 = evolve_generator(1, h, t);
    Multivector closed1(sig3());
    closed1.add_term(0b001u, Complex(c));
    closed1.add_term(0b010u, Complex(-sn));
    Multivector closed2(sig3());
    closed2.add_term(0b001u, Complex(sn));
    closed2.add_term(0b010u, Complex(c));
    const double dev =
        std::max(max_abs_diff(e1, closed1), max_abs_diff(e2, closed2));
    out << format_real(t) << '\t' << format_real(c) << '\t' << format_real(sn)
        << '\t' << format_real(real_coefficient(e1, 0b001u)) << '\t'
        << format_real(real_coefficient(e1, 0b010u)) << '\t'
        << format_real(real_coefficient(e2, 0b001u)) << '\t'
        << format_real(real_coefficient(e2, 0b010u)) << '\t'
        << format_real(dev) << '\n';
  }
  return out.str();
}

std::string demo_projectors() {
  const SpinHamiltonian h = z_splitting(1.0);
  const auto [plus, minus] = wigner_projectors(h);
  const Multivector one = Multivector::scalar(sig3(), Complex(1.0));
  std::ostringstream out;
  out << "quantity\tvalue\n";
  out << "pi_plus\t" << to_canonical(plus) << '\n';
  out << "pi_minus\t" << to_canonical(minus) << '\n';
  out << "idempotence_plus\t"
      << format_real(max_abs_diff(clifford_star(plus, plus), plus)) << '\n';
  out << "idempotence_minus\t"
      << format_real(max_abs_diff(clifford_star(minus, minus), minus)) << '\n';
  out << "annihilation\t"
      << format_real(max_norm(clifford_star(plus, minus))) << '\n';
  out << "completeness\t" << format_real(max_abs_diff(plus + minus, one))
      << '\n';
  out << "eigen_plus\t"
      << format_real(max_abs_diff(clifford_star(h.h, plus),
                                  scaled(plus, Complex(h.abs_e))))
      << '\n';
  out << "eigen_minus\t"
      << format_real(max_abs_diff(clifford_star(h.h, minus),
                                  scaled(minus, Complex(-h.abs_e))))
      << '\n';
  return out.str();
}

std::string demo_landau(const std::array<double, 3>& b, double charge,
                        double mass) {
  const LandauSplit split = landau_hamiltonian(b, charge, mass, /*hbar=*/1.0);
  const Complex unit = -I * charge / (2.0 * mass);
  const std::array<std::pair<uint32_t, Complex>, 3> spin_rows = {
      std::pair{0b011u, unit * b[2]},
      std::pair{0b101u, -unit * b[1]},
      std::pair{0b110u, unit * b[0]},
  };
  std::ostringstream out;
  out << "quantity\tpredicted\tactual\tdev\n";
  for (int i = 0; i < 3; ++i) {
    const double predicted = charge * b[i] / mass;
    out << "omega_" << (i + 1) << '\t' << format_real(predicted) << '\t'
        << format_real(split.omega[i]) << '\t'
        << format_real(std::abs(split.omega[i] - predicted)) << '\n';
  }
  const std::array<std::string, 3> names = {"spin_s1s2", "spin_s1s3",
                                            "spin_s2s3"};
  for (int i = 0; i < 3; ++i) {
    const auto& [mask, predicted] = spin_rows[i];
    const Complex actual = split.spin.coefficient(mask).constant_term();
    out << names[i] << '\t' << format_coefficient(predicted) << '\t'
        << format_coefficient(actual) << '\t'
        << format_real(std::abs(actual - predicted)) << '\n';
  }
  return out.str();
}

std::string demo_path_integral(int slices) {
  if (slices < 1) throw DomainError("need at least one time slice");
  const SpinHamiltonian h = z_splitting(0.6);
  const double t = 1.7;
  const Multivector closed = star_exponential(h, t);
  std::ostringstream out;
  out << "n\tmax_dev\n";
  for (int n = 1; n <= slices; ++n)
    out << n << '\t'
        << format_real(max_abs_diff(discretized_propagator(h, t, n), closed))
        << '\n';
  return out.str();
}

}  // namespace starspin
