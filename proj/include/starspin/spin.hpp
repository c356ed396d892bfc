#ifndef STARSPIN_SPIN_HPP
#define STARSPIN_SPIN_HPP

// Two-level dynamics on three Euclidean generators: Hamiltonian validation,
// spectral projectors, star exponentials, generator precession, ladder
// operators, rotors and spinors, the spinor-to-projector map, the two
// algebra isomorphisms, the left-multiplication operator lift, and the
// integral scalar product.

#include <array>
#include <utility>

#include "starspin/algebra.hpp"
#include "starspin/berezin.hpp"
#include "starspin/star.hpp"

namespace starspin {

/// A Hamiltonian accepted by validation: vanishing scalar part, fixed under
/// reversion, and star-squaring to a positive real scalar whose square root
/// is the level splitting.
struct SpinHamiltonian {
  Multivector h;
  double abs_e;
};

/// Checks the conditions above and caches |E|. Throws DegenerateHamiltonian
/// when the star square is below threshold, not scalar, or not real
/// positive.
SpinHamiltonian validate_spin_hamiltonian(const Multivector& h);

/// Eigenprojectors (1 +- H/|E|)/2 onto the two levels, returned {plus,
/// minus}. Idempotent, mutually annihilating, summing to 1; H star pi_pm =
/// +-|E| pi_pm.
std::pair<Multivector, Multivector> wigner_projectors(const SpinHamiltonian& h);

/// Closed-form star exponential of -i H t:
/// cos(|E|t) - i (H/|E|) sin(|E|t).
Multivector star_exponential(const SpinHamiltonian& h, double t);

/// Real-algebra variant: the pseudoscalar replaces the imaginary unit, so
/// the result is cos(|E|t) - I3 star (H/|E|) sin(|E|t).
Multivector star_exponential_real(const SpinHamiltonian& h, double t);

/// Truncated power series sum_k (-it)^k / k! H^(k star), for cross-checking
/// the closed form.
Multivector star_exponential_series(const SpinHamiltonian& h, double t, int order);

/// Heisenberg picture of one generator: bar(E) star sigma_i star E with
/// E the star exponential at time t.
Multivector evolve_generator(int i, const SpinHamiltonian& h, double t);

enum class LadderFlavor { Vector, Bivector };

/// A ladder pair; `bar` is the reversion partner of `f`.
struct LadderPair {
  Multivector f;
  Multivector bar;
};

/// Level-shift operators for a bivector Hamiltonian. For the standard
/// vertical case the vector flavor is (s1 + i s2)/2 and the bivector flavor
/// its left product with s3; `primed` selects the quadrature partner built
/// from s2. Other field directions are reached by conjugating the vertical
/// pair with the rotor that transports the vertical axis onto the field
/// axis.
LadderPair ladder_operators(const SpinHamiltonian& h, LadderFlavor flavor,
                            bool primed = false);

/// Real-algebra ladder pair (s1 +- I3 star s2)/2 on the given signature.
LadderPair real_ladder(const SigPtr& sig);

/// Residuals of the identities tying the vertical vector ladder pair to the
/// generators and projectors. All should vanish.
struct HolomorphicReport {
  double vector_sum;       // f + bar against s1
  double vector_diff;      // -i (f - bar) against s2
  double bivector_star;    // 2 f star bar - 1 against -i s1 s2
  double bivector_wedge;   // 2 (f wedge bar) against -i s1 s2
  double projector_plus;   // f star bar against pi+
  double projector_minus;  // bar star f against pi-
  double worst;
};
HolomorphicReport holomorphic_decomposition(const SigPtr& sig);

/// Unit bivector generating the rotation about the given axis: the
/// pseudoscalar star the normalized axis vector.
Multivector axis_bivector(const SigPtr& sig, const std::array<double, 3>& axis);

/// R = cos(phi/2) + B sin(phi/2) for a unit bivector B (B star B = -1).
/// Orientation: for the vertical axis bivector s1^s2, a positive angle turns
/// generator 1 toward minus generator 2.
Multivector rotor(const Multivector& b, double phi);

/// Two-sided action R star x star bar(R).
Multivector rotate(const Multivector& r, const Multivector& x);

/// Real components (grade 0 and the three bivectors) of an even multivector;
/// throws if odd-grade blades or imaginary parts above tol are present.
/// Component order: scalar, s2^s3, s3^s1, s1^s2.
std::array<double, 4> spinor_components(const Multivector& psi,
                                        double tol = kDefaultTol);

/// Pair view (c0 + i c3, -c2 + i c1) of the components above.
std::pair<Complex, Complex> spinor_to_tuple(const Multivector& psi);

/// Inverse of spinor_to_tuple.
Multivector tuple_to_spinor(const SigPtr& sig, Complex first, Complex second);

/// lambda psi - sigma_i star psi star sigma_3; zero iff psi is a
/// lambda-eigenspinor for direction i.
Multivector spinor_eigen_residual(const Multivector& psi, int i, Complex lambda);

/// Projector generated by a normalized spinor: psi star (1+s3)/2 star
/// bar(psi). Throws unless psi star bar(psi) = bar(psi) star psi = 1.
Multivector wigner_from_spinor(const Multivector& psi, double tol = kDefaultTol);

/// Even-subalgebra isomorphism onto two generators: the three bivectors map
/// to i s1, -i s2 and the two-generator volume blade. Star products are
/// preserved.
Multivector iso_even_cl3_to_cl2(const Multivector& a);
Multivector iso_cl2_to_even_cl3(const Multivector& a);

/// Trades the scalar imaginary unit for the central pseudoscalar: an even
/// multivector with complex coefficients becomes a full multivector with
/// real coefficients. Star products are preserved; the second function
/// inverts the first.
Multivector iso_complex_to_real(const Multivector& a);
Multivector iso_real_to_complex(const Multivector& a, double tol = kDefaultTol);

/// Dense endomorphism of the blade basis.
class LinearOperator {
 public:
  explicit LinearOperator(SigPtr sig);
  static LinearOperator identity(SigPtr sig);

  int dim() const { return dim_; }
  const SigPtr& sig() const { return sig_; }

  Complex entry(int out, int in) const { return m_[size_t(out) * dim_ + in]; }
  void set_entry(int out, int in, Complex v) { m_[size_t(out) * dim_ + in] = v; }

  Multivector apply(const Multivector& x) const;
  LinearOperator compose_after(const LinearOperator& inner) const;
  LinearOperator scaled_by(Complex s) const;
  LinearOperator plus(const LinearOperator& o) const;
  double max_entry_diff(const LinearOperator& o) const;

 private:
  SigPtr sig_;
  int dim_;
  std::vector<Complex> m_;  // row-major, m_[out * dim_ + in]
};

/// Left star multiplication by A as an operator: each generator becomes
/// "wedge from the left plus left derivative", blades compose with the
/// rightmost generator acting first, so apply(B) = A star B.
LinearOperator operator_lift(const Multivector& a);

/// Integral pairing: the full Berezin integral of (I3 star bar(psi'))
/// wedge psi. Conjugate-linear in the first argument; on real-coefficient
/// arguments it is the sum over blades of products of coefficients.
Complex scalar_product(const Multivector& psi_prime, const Multivector& psi);

/// Schroedinger picture: star exponential at t star psi.
Multivector wave_function_evolve(const Multivector& psi, const SpinHamiltonian& h,
                                 double t);

}  // namespace starspin

#endif
