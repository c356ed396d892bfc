#ifndef STARSPIN_PHASE_SPACE_HPP
#define STARSPIN_PHASE_SPACE_HPP

// Bosonic phase-space layer: complex polynomials in canonical pairs (q_i, p_i)
// with the Moyal star product, and the combined star on multivectors whose
// coefficients are such polynomials. Grassmann structure stays in the blade
// mask; the coefficient ring does the quantum-mechanical work.

#include <array>
#include <map>
#include <vector>

#include "starspin/algebra.hpp"
#include "starspin/star.hpp"

namespace starspin {

/// Sparse polynomial in q_1..q_d, p_1..p_d. Terms are keyed by the exponent
/// vector, q exponents first, then p exponents. A dims-0 polynomial is a bare
/// constant and lifts transparently to any dimension.
class PhaseSpacePolynomial {
 public:
  using Exponents = std::vector<unsigned>;

  PhaseSpacePolynomial() = default;
  explicit PhaseSpacePolynomial(int dims) : dims_(dims) {
    if (dims < 0) throw DomainError("negative phase-space dimension");
  }

  static PhaseSpacePolynomial constant(Complex c, int dims = 0) {
    PhaseSpacePolynomial r(dims);
    r.add_term(Exponents(2 * dims, 0), c);
    return r;
  }
  static PhaseSpacePolynomial q(int i, int dims) {
    return variable(i, dims, /*momentum=*/false);
  }
  static PhaseSpacePolynomial p(int i, int dims) {
    return variable(i, dims, /*momentum=*/true);
  }

  int dims() const { return dims_; }
  const std::map<Exponents, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    for (const auto& [e, c] : terms_)
      for (unsigned k : e)
        if (k != 0) return false;
    return true;
  }

  /// Value of the exponent-free term.
  Complex constant_term() const {
    auto it = terms_.find(Exponents(2 * dims_, 0));
    return it == terms_.end() ? Complex{} : it->second;
  }

  Complex coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Complex{} : it->second;
  }

  void add_term(Exponents e, Complex c) {
    if (int(e.size()) != 2 * dims_)
      throw DomainError("exponent vector length does not match dimension");
    auto [it, fresh] = terms_.try_emplace(std::move(e), c);
    if (!fresh) it->second += c;
    if (std::abs(it->second) < kPruneEps) terms_.erase(it);
  }

  /// Same polynomial viewed in a larger dimension; exponent positions are
  /// remapped so the q and p blocks stay aligned.
  PhaseSpacePolynomial lifted_to(int dims) const {
    if (dims == dims_) return *this;
    if (dims < dims_) throw DomainError("cannot lower phase-space dimension");
    PhaseSpacePolynomial r(dims);
    for (const auto& [e, c] : terms_) {
      Exponents ne(2 * dims, 0);
      for (int i = 0; i < dims_; ++i) {
        ne[i] = e[i];
        ne[dims + i] = e[dims_ + i];
      }
      r.add_term(std::move(ne), c);
    }
    return r;
  }

  PhaseSpacePolynomial& operator+=(const PhaseSpacePolynomial& o) {
    if (o.dims_ > dims_) *this = lifted_to(o.dims_);
    const auto lifted = o.lifted_to(dims_);
    for (const auto& [e, c] : lifted.terms_) add_term(e, c);
    return *this;
  }

  friend PhaseSpacePolynomial operator+(PhaseSpacePolynomial a,
                                        const PhaseSpacePolynomial& b) {
    a += b;
    return a;
  }
  friend PhaseSpacePolynomial operator-(const PhaseSpacePolynomial& a) {
    PhaseSpacePolynomial r(a.dims_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, -c);
    return r;
  }
  friend PhaseSpacePolynomial operator-(const PhaseSpacePolynomial& a,
                                        const PhaseSpacePolynomial& b) {
    return a + (-b);
  }

  /// Commutative pointwise product.
  friend PhaseSpacePolynomial operator*(const PhaseSpacePolynomial& a,
                                        const PhaseSpacePolynomial& b) {
    const int d = std::max(a.dims_, b.dims_);
    const auto la = a.lifted_to(d);
    const auto lb = b.lifted_to(d);
    PhaseSpacePolynomial r(d);
    for (const auto& [ea, ca] : la.terms_)
      for (const auto& [eb, cb] : lb.terms_) {
        Exponents e(2 * d);
        for (int i = 0; i < 2 * d; ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  PhaseSpacePolynomial scaled_by(Complex s) const {
    PhaseSpacePolynomial r(dims_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  PhaseSpacePolynomial conjugated() const {
    PhaseSpacePolynomial r(dims_);
    for (const auto& [e, c] : terms_) r.add_term(e, std::conj(c));
    return r;
  }

  PhaseSpacePolynomial derivative_q(int i) const { return derivative(i); }
  PhaseSpacePolynomial derivative_p(int i) const { return derivative(dims_ + i); }

  int total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (unsigned k : e) d += int(k);
      deg = std::max(deg, d);
    }
    return deg;
  }

  double max_coeff_norm() const {
    double worst = 0.0;
    for (const auto& [e, c] : terms_) worst = std::max(worst, std::abs(c));
    return worst;
  }

  friend double max_dist(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
    const int d = std::max(a.dims_, b.dims_);
    const auto la = a.lifted_to(d);
    const auto lb = b.lifted_to(d);
    double worst = 0.0;
    for (const auto& [e, c] : la.terms_)
      worst = std::max(worst, std::abs(c - lb.coefficient(e)));
    for (const auto& [e, c] : lb.terms_)
      worst = std::max(worst, std::abs(la.coefficient(e) - c));
    return worst;
  }

 private:
  static PhaseSpacePolynomial variable(int i, int dims, bool momentum) {
    if (i < 0 || i >= dims) throw DomainError("phase-space variable index out of range");
    PhaseSpacePolynomial r(dims);
    Exponents e(2 * dims, 0);
    e[momentum ? dims + i : i] = 1;
    r.add_term(std::move(e), 1.0);
    return r;
  }

  PhaseSpacePolynomial derivative(int slot) const {
    if (slot < 0 || slot >= 2 * dims_)
      throw DomainError("phase-space variable index out of range");
    PhaseSpacePolynomial r(dims_);
    for (const auto& [e, c] : terms_) {
      if (e[slot] == 0) continue;
      Exponents ne = e;
      ne[slot] -= 1;
      r.add_term(std::move(ne), c * double(e[slot]));
    }
    return r;
  }

  int dims_ = 0;
  std::map<Exponents, Complex> terms_;
};

template <>
struct CoeffOps<PhaseSpacePolynomial> {
  static PhaseSpacePolynomial zero() { return {}; }
  static PhaseSpacePolynomial one() { return PhaseSpacePolynomial::constant(1.0); }
  static PhaseSpacePolynomial mul(const PhaseSpacePolynomial& a,
                                  const PhaseSpacePolynomial& b) {
    return a * b;
  }
  static PhaseSpacePolynomial scale(const PhaseSpacePolynomial& c, const Complex& s) {
    return c.scaled_by(s);
  }
  static PhaseSpacePolynomial conj(const PhaseSpacePolynomial& c) {
    return c.conjugated();
  }
  static double norm(const PhaseSpacePolynomial& c) { return c.max_coeff_norm(); }
  static double dist(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
    return max_dist(a, b);
  }
  static bool negligible(const PhaseSpacePolynomial& c, double eps) {
    return c.max_coeff_norm() < eps;
  }
};

using PhaseSpaceMultivector = MultivectorT<PhaseSpacePolynomial>;

/// Moyal star product of two polynomials. The series terminates because every
/// order differentiates both factors.
PhaseSpacePolynomial moyal_star(const PhaseSpacePolynomial& f,
                                const PhaseSpacePolynomial& g, double hbar = 1.0);

/// Star product that contracts Grassmann generators through the signature
/// metric while multiplying coefficients with the Moyal star.
PhaseSpaceMultivector combined_star(const PhaseSpaceMultivector& a,
                                    const PhaseSpaceMultivector& b, double hbar = 1.0);

/// Symmetric-gauge vector potential for a constant field: component i carries
/// the polynomial (1/2) * (field x position)_i on generator i.
PhaseSpaceMultivector vector_potential(const SigPtr& sig,
                                       const std::array<double, 3>& field);

/// Bivector curl of a grade-1 field: sum over i<j of
/// (d_i a_j - d_j a_i) on the blade i^j.
PhaseSpaceMultivector curl_bivector(const PhaseSpaceMultivector& a);

struct LandauSplit {
  PhaseSpaceMultivector hamiltonian;  // full (1/2m) V star V
  PhaseSpaceMultivector bosonic;      // scalar-blade part
  PhaseSpaceMultivector spin;         // bivector part
  std::array<double, 3> omega;        // charge * field / mass per axis
};

/// Charged particle in a constant field, symmetric gauge: squares the kinetic
/// vector V = sum (p_i + charge * A_i) sigma_i under the combined star and
/// splits the result. The bivector part is checked against the closed form
/// built from the curl before returning.
LandauSplit landau_hamiltonian(const std::array<double, 3>& field, double charge,
                               double mass, double hbar = 1.0);

}  // namespace starspin

#endif
