#ifndef STARSPIN_PATH_INTEGRAL_HPP
#define STARSPIN_PATH_INTEGRAL_HPP

// Discretized propagation: N-fold star products evaluated slice by slice
// through Berezin integrals on a generator lattice, two-endpoint Green's
// functions in their product and integral forms, and their composition.
//
// Block-integral convention used throughout this module: when a generator
// triple is eliminated under an integral that links several triples, its
// three derivatives are applied in descending generator order. That single
// choice realizes the relabeling identity of propagation, the semigroup
// law of composition, and both integral Green's forms with their printed
// leading signs; the anchors in the test suite freeze it.

#include "starspin/algebra.hpp"
#include "starspin/spin.hpp"

namespace starspin {

/// Generator bookkeeping for an N-step evaluation: triple 0 holds the start
/// boundary, triples 1..N hold the slices, with the last one doubling as
/// the end boundary.
struct SliceLattice {
  SigPtr sig;
  int slices;
  double dt;

  int offset(int k) const { return 3 * k; }
  GeneratorSet triple(int k) const { return {3 * k, 3 * k + 1, 3 * k + 2}; }

  static SliceLattice make(int slices, double total_time);
};

/// N-fold product of slice exponentials, evaluated on the lattice by
/// chaining one-step kernels through intermediate Berezin integrals, and
/// cross-checked against the repeated closed-form star product. Equals the
/// closed-form exponential of the full interval.
Multivector discretized_propagator(const SpinHamiltonian& h, double t, int n);

/// Six-generator signature housing the end triple (bits 0..2) and the start
/// triple (bits 3..5) of a two-endpoint kernel.
SigPtr greens_signature();

/// Two-endpoint kernel Exp(H dt) star delta(end - start), with an internal
/// consistency check against its replica-integral form.
Multivector greens_function_delta_form(const SpinHamiltonian& h, double dt);

/// The same kernel built as an integral over one replica triple of the
/// difference-argument exponential against a coupling kernel.
Multivector greens_function_fourier_form(const SpinHamiltonian& h, double dt);

/// Pushes a state on the base generators through a two-endpoint kernel:
/// integrate the start triple out of G wedge psi, then read the result off
/// the end triple.
Multivector propagate(const Multivector& psi, const Multivector& g);

/// Chains two kernels over their shared middle triple, later interval
/// written first. Satisfies the semigroup law.
Multivector compose_propagators(const Multivector& g21, const Multivector& g10);

}  // namespace starspin

#endif
