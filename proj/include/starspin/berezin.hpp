#ifndef STARSPIN_BEREZIN_HPP
#define STARSPIN_BEREZIN_HPP

// Integration layer: iterated Berezin integrals, the pairwise exponential
// transform between generator blocks, delta functions built from pairwise
// differences, linear substitution with its determinant factor, and the
// closed chain integral used by the lattice layer.

#include <utility>

#include "starspin/algebra.hpp"
#include "starspin/star.hpp"

namespace starspin {

/// Iterated Berezin integral over the listed generators. A single integral
/// is the left derivative; the first listed generator is applied first, so a
/// standard triple {1,2,3} sends the blade s1^s2^s3 to +1.
Multivector berezin_integrate(const Multivector& a, const GeneratorSet& gens);

/// Wedge A with exp(i sum_k from_k to_k) and integrate the from block away.
Multivector grassmann_fourier(const Multivector& a, const GeneratorSet& from,
                              const GeneratorSet& to);

/// Same kernel, closed with the constant that makes the double transform the
/// identity (-i when the blocks are triples).
Multivector grassmann_fourier_inverse(const Multivector& a, const GeneratorSet& from,
                                      const GeneratorSet& to);

/// Wedge of the pairwise differences (first_k - second_k) in listed order.
/// Integrating it from the left against f over the first set evaluates f on
/// the second set.
Multivector delta_function(const SigPtr& sig, const GeneratorSet& first,
                           const GeneratorSet& second);

struct Substitution {
  Multivector result;
  Complex jacobian;
};

/// Replace each from_i by sum_j m[i][j] * to_j, leaving other generators
/// alone. The jacobian det(m) relates the Berezin integrals over the two
/// blocks: integrating the substituted A over `to` equals det(m) times
/// integrating A over `from` (the Grassmann measure scales inversely).
Substitution linear_substitution(const Multivector& a,
                                 const std::vector<std::vector<Complex>>& m,
                                 const GeneratorSet& from, const GeneratorSet& to);

/// Determinant by LU elimination with partial pivoting.
Complex determinant(std::vector<std::vector<Complex>> m);

struct GaussianPairResult {
  Complex value;
  bool even;  // the closed form equals 1 only for an even chain
};

/// Chain of n generator triples with each neighbour pair bilinearly coupled,
/// exponentiated and integrated over everything. Returns 1 for even n; odd n
/// is computed anyway and flagged through `even`.
GaussianPairResult gaussian_pair_integral(int n);

/// Both sides of the identity that the full integral of a star product
/// equals the full integral of the plain wedge product.
std::pair<Complex, Complex> star_under_integral(const Multivector& a,
                                                const Multivector& b);

}  // namespace starspin

#endif
