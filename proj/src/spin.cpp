#include "starspin/spin.hpp"

#include <algorithm>
#include <cmath>

#include "starspin/errors.hpp"

namespace starspin {

namespace {

// Hard floor below which a star square counts as degenerate.
constexpr double kEnergyFloor = 1e-12;

void require_cl3(const SigPtr& sig) {
  if (sig->size() != 3 || sig->metric(0) != 1.0 || sig->metric(1) != 1.0 ||
      sig->metric(2) != 1.0)
    throw DomainError("operation needs exactly three unit-metric generators");
}

Multivector pseudoscalar(const SigPtr& sig) {
  return Multivector::blade(sig, 0b111u, Complex(1.0));
}

void require_even(const Multivector& a) {
  for (const auto& [mask, c] : a.terms()) {
    (void)c;
    if (blade_grade(mask) % 2 != 0)
      throw DomainError("operand must lie in the even subalgebra");
  }
}

Multivector half_sum(const SigPtr& sig, uint32_t mask_a, Complex ca, uint32_t mask_b,
                     Complex cb) {
  Multivector r(sig);
  r.add_term(mask_a, 0.5 * ca);
  r.add_term(mask_b, 0.5 * cb);
  return r;
}

// Vertical-axis ladder pair before any rotor transport.
LadderPair vertical_ladder(const SigPtr& sig, LadderFlavor flavor, bool primed) {
  const Complex i(0.0, 1.0);
  // (s1 + i s2)/2, or the quadrature partner (s2 - i s1)/2.
  Multivector f = primed ? half_sum(sig, 0b001u, -i, 0b010u, Complex(1.0))
                         : half_sum(sig, 0b001u, Complex(1.0), 0b010u, i);
  if (flavor == LadderFlavor::Bivector)
    f = clifford_star(Multivector::generator(sig, 2), f);
  return {f, reversion(f)};
}

}  // namespace

SpinHamiltonian validate_spin_hamiltonian(const Multivector& h) {
  if (std::abs(h.coefficient(0)) > kDefaultTol)
    throw DegenerateHamiltonian("Hamiltonian has a scalar part");
  if (!is_real(h))
    throw DegenerateHamiltonian("Hamiltonian is not fixed under reversion");
  const Multivector square = clifford_star(h, h);
  const Complex c = square.coefficient(0);
  const double scale = 1.0 + std::abs(c);
  if (max_abs_diff(square, Multivector::scalar(h.sig(), c)) > kDefaultTol * scale)
    throw DegenerateHamiltonian("star square is not a scalar");
  if (std::abs(c.imag()) > kDefaultTol * scale)
    throw DegenerateHamiltonian("star square is not real");
  if (c.real() < kEnergyFloor)
    throw DegenerateHamiltonian("star square is not positive");
  return {h, std::sqrt(c.real())};
}

std::pair<Multivector, Multivector> wigner_projectors(const SpinHamiltonian& h) {
  const Multivector unit = scaled(h.h, Complex(1.0 / h.abs_e));
  const Multivector one = Multivector::scalar(h.h.sig(), Complex(1.0));
  return {scaled(one + unit, Complex(0.5)), scaled(one - unit, Complex(0.5))};
}

Multivector star_exponential(const SpinHamiltonian& h, double t) {
  const double c = std::cos(h.abs_e * t);
  const double s = std::sin(h.abs_e * t);
  return Multivector::scalar(h.h.sig(), Complex(c)) +
         scaled(h.h, Complex(0.0, -s / h.abs_e));
}

Multivector star_exponential_real(const SpinHamiltonian& h, double t) {
  require_cl3(h.h.sig());
  const double c = std::cos(h.abs_e * t);
  const double s = std::sin(h.abs_e * t);
  const Multivector dual = clifford_star(pseudoscalar(h.h.sig()), h.h);
  return Multivector::scalar(h.h.sig(), Complex(c)) +
         scaled(dual, Complex(-s / h.abs_e));
}

Multivector star_exponential_series(const SpinHamiltonian& h, double t, int order) {
  if (order < 0) throw DomainError("series order must be nonnegative");
  Multivector acc = Multivector::scalar(h.h.sig(), Complex(1.0));
  Multivector term = acc;
  for (int k = 1; k <= order; ++k) {
    term = scaled(clifford_star(term, h.h), Complex(0.0, -t) / double(k));
    acc = acc + term;
  }
  return acc;
}

Multivector evolve_generator(int i, const SpinHamiltonian& h, double t) {
  const Multivector e = star_exponential(h, t);
  const Multivector g = Multivector::generator(h.h.sig(), i);
  return clifford_star(clifford_star(reversion(e), g), e);
}

LadderPair ladder_operators(const SpinHamiltonian& h, LadderFlavor flavor,
                            bool primed) {
  const SigPtr& sig = h.h.sig();
  require_cl3(sig);
  if (homogeneous_grade(h.h) != 2)
    throw DomainError("ladder operators need a bivector Hamiltonian");

  // Unit field axis n from the bivector dual: H/|E| must equal
  // -i (n1 s2^s3 - n2 s1^s3 + n3 s1^s2) with real unit n.
  const Complex i(0.0, 1.0);
  const std::array<Complex, 3> n = {i * h.h.coefficient(0b110u) / h.abs_e,
                                    -i * h.h.coefficient(0b101u) / h.abs_e,
                                    i * h.h.coefficient(0b011u) / h.abs_e};
  double norm2 = 0.0;
  for (const Complex& nk : n) {
    if (std::abs(nk.imag()) > kDefaultTol)
      throw DomainError("ladder operators need a real bivector Hamiltonian");
    norm2 += nk.real() * nk.real();
  }
  if (std::abs(norm2 - 1.0) > kDefaultTol)
    throw DomainError("ladder operators need a real bivector Hamiltonian");

  const LadderPair vertical = vertical_ladder(sig, flavor, primed);
  const std::array<double, 3> axis = {n[0].real(), n[1].real(), n[2].real()};
  if (std::abs(axis[2] - 1.0) < kDefaultTol) return vertical;

  // Transport the vertical pair with the rotor taking s3 onto the field axis.
  const double planar = std::hypot(axis[0], axis[1]);
  std::array<double, 3> rot_axis = {1.0, 0.0, 0.0};
  if (planar > kDefaultTol)
    rot_axis = {-axis[1] / planar, axis[0] / planar, 0.0};
  const double theta = std::acos(std::clamp(axis[2], -1.0, 1.0));
  const Multivector b = axis_bivector(sig, rot_axis);
  Multivector target(sig);
  for (int k = 0; k < 3; ++k) target.add_term(1u << k, Complex(axis[k]));
  Multivector r = rotor(b, theta);
  if (max_abs_diff(rotate(r, Multivector::generator(sig, 2)), target) > 1e-9)
    r = rotor(b, -theta);
  if (max_abs_diff(rotate(r, Multivector::generator(sig, 2)), target) > 1e-9)
    throw DomainError("rotor transport failed to reach the field axis");
  return {rotate(r, vertical.f), rotate(r, vertical.bar)};
}

LadderPair real_ladder(const SigPtr& sig) {
  require_cl3(sig);
  const Multivector f =
      scaled(Multivector::generator(sig, 0) +
                 clifford_star(pseudoscalar(sig), Multivector::generator(sig, 1)),
             Complex(0.5));
  return {f, reversion(f)};
}

HolomorphicReport holomorphic_decomposition(const SigPtr& sig) {
  require_cl3(sig);
  const Complex i(0.0, 1.0);
  const LadderPair p = vertical_ladder(sig, LadderFlavor::Vector, false);
  const Multivector s1 = Multivector::generator(sig, 0);
  const Multivector s2 = Multivector::generator(sig, 1);
  const Multivector b12 = Multivector::blade(sig, 0b011u, -i);
  const Multivector one = Multivector::scalar(sig, Complex(1.0));
  const Multivector plus = scaled(one + b12, Complex(0.5));
  const Multivector minus = scaled(one - b12, Complex(0.5));

  HolomorphicReport rep{};
  rep.vector_sum = max_abs_diff(p.f + p.bar, s1);
  rep.vector_diff = max_abs_diff(scaled(p.f - p.bar, -i), s2);
  rep.bivector_star =
      max_abs_diff(scaled(clifford_star(p.f, p.bar), Complex(2.0)) - one, b12);
  rep.bivector_wedge = max_abs_diff(scaled(wedge(p.f, p.bar), Complex(2.0)), b12);
  rep.projector_plus = max_abs_diff(clifford_star(p.f, p.bar), plus);
  rep.projector_minus = max_abs_diff(clifford_star(p.bar, p.f), minus);
  rep.worst = std::max({rep.vector_sum, rep.vector_diff, rep.bivector_star,
                        rep.bivector_wedge, rep.projector_plus, rep.projector_minus});
  return rep;
}

Multivector axis_bivector(const SigPtr& sig, const std::array<double, 3>& axis) {
  require_cl3(sig);
  const double len = std::hypot(axis[0], axis[1], axis[2]);
  if (len < kDefaultTol) throw DomainError("rotation axis must be nonzero");
  Multivector v(sig);
  for (int k = 0; k < 3; ++k) v.add_term(1u << k, Complex(axis[k] / len));
  return clifford_star(pseudoscalar(sig), v);
}

Multivector rotor(const Multivector& b, double phi) {
  if (homogeneous_grade(b) != 2) throw DomainError("rotor plane must be a bivector");
  const Multivector square = clifford_star(b, b);
  if (max_abs_diff(square, Multivector::scalar(b.sig(), Complex(-1.0))) > kDefaultTol)
    throw DomainError("rotor plane must star-square to -1");
  return Multivector::scalar(b.sig(), Complex(std::cos(phi / 2.0))) +
         scaled(b, Complex(std::sin(phi / 2.0)));
}

Multivector rotate(const Multivector& r, const Multivector& x) {
  return clifford_star(clifford_star(r, x), reversion(r));
}

std::array<double, 4> spinor_components(const Multivector& psi, double tol) {
  require_cl3(psi.sig());
  require_even(psi);
  std::array<double, 4> c{};
  for (const auto& [mask, coeff] : psi.terms()) {
    if (std::abs(coeff.imag()) > tol)
      throw DomainError("spinor components must be real");
    switch (mask) {
      case 0u: c[0] = coeff.real(); break;
      case 0b110u: c[1] = coeff.real(); break;
      case 0b101u: c[2] = -coeff.real(); break;  // stored blade is s1^s3
      case 0b011u: c[3] = coeff.real(); break;
      default: throw DomainError("operand must lie in the even subalgebra");
    }
  }
  return c;
}

std::pair<Complex, Complex> spinor_to_tuple(const Multivector& psi) {
  const std::array<double, 4> c = spinor_components(psi);
  return {Complex(c[0], c[3]), Complex(-c[2], c[1])};
}

Multivector tuple_to_spinor(const SigPtr& sig, Complex first, Complex second) {
  require_cl3(sig);
  Multivector r(sig);
  r.add_term(0u, Complex(first.real()));
  r.add_term(0b110u, Complex(second.imag()));
  r.add_term(0b101u, Complex(second.real()));  // component c2 = -re(second)
  r.add_term(0b011u, Complex(first.imag()));
  return r;
}

Multivector spinor_eigen_residual(const Multivector& psi, int i, Complex lambda) {
  const SigPtr& sig = psi.sig();
  require_cl3(sig);
  const Multivector lhs = scaled(psi, lambda);
  const Multivector rhs = clifford_star(
      clifford_star(Multivector::generator(sig, i), psi), Multivector::generator(sig, 2));
  return lhs - rhs;
}

Multivector wigner_from_spinor(const Multivector& psi, double tol) {
  require_cl3(psi.sig());
  const Multivector one = Multivector::scalar(psi.sig(), Complex(1.0));
  const Multivector bar = reversion(psi);
  if (max_abs_diff(clifford_star(psi, bar), one) > tol ||
      max_abs_diff(clifford_star(bar, psi), one) > tol)
    throw DomainError("spinor is not normalized");
  const Multivector gate = scaled(one + Multivector::generator(psi.sig(), 2), Complex(0.5));
  return clifford_star(clifford_star(psi, gate), bar);
}

Multivector iso_even_cl3_to_cl2(const Multivector& a) {
  require_cl3(a.sig());
  require_even(a);
  static const SigPtr cl2 = AlgebraSignature::euclidean(2);
  const Complex i(0.0, 1.0);
  Multivector r(cl2);
  for (const auto& [mask, c] : a.terms()) {
    switch (mask) {
      case 0u: r.add_term(0u, c); break;
      case 0b110u: r.add_term(0b01u, i * c); break;
      case 0b101u: r.add_term(0b10u, -i * c); break;
      case 0b011u: r.add_term(0b11u, c); break;
      default: break;  // unreachable after the even check
    }
  }
  return r;
}

Multivector iso_cl2_to_even_cl3(const Multivector& a) {
  if (a.sig()->size() != 2 || a.sig()->metric(0) != 1.0 || a.sig()->metric(1) != 1.0)
    throw DomainError("operation needs exactly two unit-metric generators");
  static const SigPtr cl3 = AlgebraSignature::euclidean(3);
  const Complex i(0.0, 1.0);
  Multivector r(cl3);
  for (const auto& [mask, c] : a.terms()) {
    switch (mask) {
      case 0u: r.add_term(0u, c); break;
      case 0b01u: r.add_term(0b110u, -i * c); break;
      case 0b10u: r.add_term(0b101u, i * c); break;
      case 0b11u: r.add_term(0b011u, c); break;
      default: break;
    }
  }
  return r;
}

Multivector iso_complex_to_real(const Multivector& a) {
  require_cl3(a.sig());
  require_even(a);
  const Multivector i3 = pseudoscalar(a.sig());
  Multivector r(a.sig());
  for (const auto& [mask, c] : a.terms()) {
    r.add_term(mask, Complex(c.real()));
    if (c.imag() != 0.0) {
      const Multivector dual =
          clifford_star(i3, Multivector::blade(a.sig(), mask, Complex(c.imag())));
      for (const auto& [dm, dc] : dual.terms()) r.add_term(dm, dc);
    }
  }
  return r;
}

Multivector iso_real_to_complex(const Multivector& a, double tol) {
  require_cl3(a.sig());
  const Multivector i3 = pseudoscalar(a.sig());
  const Complex i(0.0, 1.0);
  Multivector r(a.sig());
  for (const auto& [mask, c] : a.terms()) {
    if (std::abs(c.imag()) > tol)
      throw DomainError("real-algebra operand must have real coefficients");
    if (blade_grade(mask) % 2 == 0) {
      r.add_term(mask, Complex(c.real()));
    } else {
      // Odd blades are pseudoscalar duals of even ones: b = I3 * (-I3 * b).
      const Multivector even_part =
          scaled(clifford_star(i3, Multivector::blade(a.sig(), mask, Complex(1.0))),
                 -i * c.real());
      for (const auto& [em, ec] : even_part.terms()) r.add_term(em, ec);
    }
  }
  return r;
}

LinearOperator::LinearOperator(SigPtr sig) : sig_(std::move(sig)) {
  if (sig_->size() > 10)
    throw CapacityExceeded("operator lift is limited to 10 generators");
  dim_ = 1 << sig_->size();
  m_.assign(size_t(dim_) * dim_, Complex(0.0));
}

LinearOperator LinearOperator::identity(SigPtr sig) {
  LinearOperator r(std::move(sig));
  for (int k = 0; k < r.dim_; ++k) r.set_entry(k, k, Complex(1.0));
  return r;
}

Multivector LinearOperator::apply(const Multivector& x) const {
  if (!sig_->same_as(*x.sig()))
    throw SignatureMismatch("operator and operand use different signatures");
  std::vector<Complex> out(size_t(dim_), Complex(0.0));
  for (const auto& [mask, c] : x.terms())
    for (int j = 0; j < dim_; ++j) out[j] += entry(j, int(mask)) * c;
  Multivector r(x.sig());
  for (int j = 0; j < dim_; ++j) r.add_term(uint32_t(j), out[j]);
  return r;
}

LinearOperator LinearOperator::compose_after(const LinearOperator& inner) const {
  if (!sig_->same_as(*inner.sig_))
    throw SignatureMismatch("composed operators use different signatures");
  LinearOperator r(sig_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) {
      Complex acc(0.0);
      for (int m = 0; m < dim_; ++m) acc += entry(j, m) * inner.entry(m, k);
      r.set_entry(j, k, acc);
    }
  return r;
}

LinearOperator LinearOperator::scaled_by(Complex s) const {
  LinearOperator r(sig_);
  for (size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] * s;
  return r;
}

LinearOperator LinearOperator::plus(const LinearOperator& o) const {
  if (!sig_->same_as(*o.sig_))
    throw SignatureMismatch("summed operators use different signatures");
  LinearOperator r(sig_);
  for (size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] + o.m_[k];
  return r;
}

double LinearOperator::max_entry_diff(const LinearOperator& o) const {
  double worst = 0.0;
  for (size_t k = 0; k < m_.size(); ++k)
    worst = std::max(worst, std::abs(m_[k] - o.m_[k]));
  return worst;
}

LinearOperator operator_lift(const Multivector& a) {
  const SigPtr& sig = a.sig();
  const int n = sig->size();
  const int dim = 1 << n;

  // One operator per generator: wedge from the left plus left derivative.
  std::vector<LinearOperator> gen_ops;
  gen_ops.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    LinearOperator op(sig);
    const Multivector g = Multivector::generator(sig, i);
    for (int in = 0; in < dim; ++in) {
      const Multivector basis = Multivector::blade(sig, uint32_t(in), Complex(1.0));
      const Multivector image = wedge(g, basis) + left_derivative(basis, i);
      for (const auto& [mask, c] : image.terms()) op.set_entry(int(mask), in, c);
    }
    gen_ops.push_back(std::move(op));
  }

  LinearOperator total(sig);
  for (const auto& [mask, c] : a.terms()) {
    LinearOperator acc = LinearOperator::identity(sig);
    for (int bit = 0; bit < n; ++bit)
      if (mask & (1u << bit)) acc = acc.compose_after(gen_ops[size_t(bit)]);
    total = total.plus(acc.scaled_by(c));
  }
  return total;
}

Complex scalar_product(const Multivector& psi_prime, const Multivector& psi) {
  check_same_sig(psi_prime, psi);
  require_cl3(psi.sig());
  const Multivector tilde = clifford_star(pseudoscalar(psi.sig()), reversion(psi_prime));
  const Multivector integrated = berezin_integrate(wedge(tilde, psi), {0, 1, 2});
  return integrated.coefficient(0);
}

Multivector wave_function_evolve(const Multivector& psi, const SpinHamiltonian& h,
                                 double t) {
  return clifford_star(star_exponential(h, t), psi);
}

}  // namespace starspin

