#ifndef STARSPIN_STAR_HPP
#define STARSPIN_STAR_HPP

// Clifford star product in two equivalent forms. The differential form
// expands the exponential bidifferential operator pairing a right-acting
// derivative on the left factor with a left-acting derivative on the right
// factor, one metric contraction per generator; nilpotency truncates the
// series after the shared generators are exhausted. The integral form
// triplicates the signature with inert replicas, multiplies the operands on
// the replica blocks by a bilinear exponential kernel and Berezin-integrates
// the replicas away. Both are exercised against each other in the tests.

#include "starspin/algebra.hpp"

namespace starspin {

/// Product of the metric entries over the generators of the submask.
inline double metric_product(const AlgebraSignature& sig, uint32_t mask) {
  double p = 1.0;
  for (uint32_t rest = mask; rest != 0; rest &= rest - 1)
    p *= sig.metric(std::countr_zero(rest));
  return p;
}

/// Star product as the finite expansion over contraction subsets S of the
/// active generators: sum over S of eta(S) * (A with right-arrow derivatives
/// applied in ascending order of S) wedge (B with left-arrow derivatives in
/// ascending order of S). Coefficient multiplication is pluggable so the
/// combined phase-space product can route it through the Moyal star.
template <class C, class Mul>
MultivectorT<C> star_expand(const MultivectorT<C>& a, const MultivectorT<C>& b,
                            Mul&& mul) {
  check_same_sig(a, b);
  const auto& sig = *a.sig();
  const uint32_t u = union_mask(a) & union_mask(b) & sig.active_mask();
  MultivectorT<C> r(a.sig());
  uint32_t s = u;
  while (true) {
    const double eta = metric_product(sig, s);
    if (eta != 0.0) {
      MultivectorT<C> al = a;
      MultivectorT<C> br = b;
      for (uint32_t rest = s; rest != 0; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        al = right_derivative(al, i);
        br = left_derivative(br, i);
      }
      if (!al.is_zero() && !br.is_zero())
        r = r + scaled(wedge_with(al, br, mul), Complex(eta, 0.0));
    }
    if (s == 0) break;
    s = (s - 1) & u;
  }
  return r;
}

template <class C>
MultivectorT<C> clifford_star(const MultivectorT<C>& a, const MultivectorT<C>& b) {
  return star_expand(a, b,
                     [](const C& x, const C& y) { return CoeffOps<C>::mul(x, y); });
}

/// A star A star ... star A, n factors; n = 0 gives the scalar 1.
template <class C>
MultivectorT<C> n_fold_star(const MultivectorT<C>& a, int n) {
  if (n < 0) throw DomainError("negative star power");
  MultivectorT<C> r = MultivectorT<C>::scalar(a.sig(), CoeffOps<C>::one());
  for (int k = 0; k < n; ++k) r = clifford_star(r, a);
  return r;
}

/// Wedge exponential of a nilpotent argument (an optional scalar part is
/// split off and folded back as a factor exp(s)).
Multivector exp_wedge_series(const Multivector& e);

/// Integral form of the Clifford star product on a Euclidean signature:
/// both operands move to inert replica blocks, the pairwise bilinear
/// exponential couples original and replica generators, and the replicas are
/// integrated out (double-primed block innermost).
Multivector clifford_star_integral_form(const Multivector& a, const Multivector& b);

/// Inner part of a product of homogeneous multivectors: grade |m-n| of
/// A star B. For two grade-1 vectors this is the symmetrized product.
Multivector scalar_part(const Multivector& a, const Multivector& b);

/// Outer part: grade m+n of A star B, the antisymmetrized product for
/// grade-1 vectors, equal to the wedge.
Multivector exterior_part(const Multivector& a, const Multivector& b);

}  // namespace starspin

#endif
