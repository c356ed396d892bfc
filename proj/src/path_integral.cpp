#include "starspin/path_integral.hpp"

#include <string>
#include <vector>

#include "starspin/berezin.hpp"
#include "starspin/errors.hpp"
#include "starspin/star.hpp"

namespace starspin {

namespace {

constexpr double kFormTol = 1e-10;

void require_base3(const SigPtr& sig) {
  if (sig->size() != 3)
    throw DomainError("propagation needs a Hamiltonian on the three base generators");
}

GeneratorSet descending(const GeneratorSet& gens) {
  return GeneratorSet(gens.rbegin(), gens.rend());
}

// Nine-generator workspace: end triple, start triple, replica triple.
SigPtr replica_signature() {
  static SigPtr sig = AlgebraSignature::make(
      {"s1@t", "s2@t", "s3@t", "s1@t0", "s2@t0", "s3@t0", "s1@p", "s2@p", "s3@p"},
      std::vector<double>(9, 1.0));
  return sig;
}

// Nine-generator workspace for composition: end, middle, start triples.
SigPtr compose_signature() {
  static SigPtr sig = AlgebraSignature::make(
      {"s1@b", "s2@b", "s3@b", "s1@m", "s2@m", "s3@m", "s1@a", "s2@a", "s3@a"},
      std::vector<double>(9, 1.0));
  return sig;
}

// Exp(H dt) placed on the lattice triple `at`, star the coupling delta
// between triples `at` and `back`.
Multivector step_kernel(const SliceLattice& lat, const SpinHamiltonian& h,
                        int at, int back) {
  const Multivector slice_exp =
      embed_shift(star_exponential(h, lat.dt), lat.sig, lat.offset(at));
  return clifford_star(slice_exp,
                       delta_function(lat.sig, lat.triple(at), lat.triple(back)));
}

}  // namespace

SliceLattice SliceLattice::make(int slices, double total_time) {
  if (slices < 1) throw DomainError("slice count must be at least 1");
  const int gens = 3 * (slices + 1);
  if (gens > 24)
    throw CapacityExceeded("slice lattice needs more than 24 generators");
  std::vector<std::string> labels;
  std::vector<double> metric(size_t(gens), 1.0);
  labels.reserve(size_t(gens));
  for (int k = 0; k <= slices; ++k) {
    const std::string block = k == 0 ? "t0" : (k == slices ? "t" : std::to_string(k));
    for (int i = 1; i <= 3; ++i)
      labels.push_back("s" + std::to_string(i) + "@" + block);
  }
  return {AlgebraSignature::make(std::move(labels), std::move(metric)), slices,
          total_time / slices};
}

Multivector discretized_propagator(const SpinHamiltonian& h, double t, int n) {
  require_base3(h.h.sig());
  const SliceLattice lat = SliceLattice::make(n, t);

  // Route one: repeated closed-form star products on the base generators.
  const Multivector repeated = n_fold_star(star_exponential(h, lat.dt), n);

  // Route two: chain the one-step kernels across the lattice, eliminating
  // each intermediate triple by a Berezin integral, then strip the start
  // boundary against the unit state and read off the final slice.
  Multivector acc = step_kernel(lat, h, 1, 0);
  for (int k = 2; k <= n; ++k)
    acc = berezin_integrate(wedge(step_kernel(lat, h, k, k - 1), acc),
                            descending(lat.triple(k - 1)));
  acc = berezin_integrate(acc, descending(lat.triple(0)));
  const Multivector sliced = project_shift(acc, h.h.sig(), lat.offset(n));

  if (max_abs_diff(sliced, repeated) > kFormTol)
    throw DomainError("slice evaluation disagrees with the repeated star product");
  return sliced;
}

SigPtr greens_signature() {
  static SigPtr sig = AlgebraSignature::make(
      {"s1@t", "s2@t", "s3@t", "s1@t0", "s2@t0", "s3@t0"},
      std::vector<double>(6, 1.0));
  return sig;
}

Multivector greens_function_delta_form(const SpinHamiltonian& h, double dt) {
  require_base3(h.h.sig());
  const SigPtr g6 = greens_signature();
  const Multivector direct =
      clifford_star(embed_shift(star_exponential(h, dt), g6, 0),
                    delta_function(g6, {0, 1, 2}, {3, 4, 5}));

  // Replica-integral form: minus the integral over the replica triple of
  // Exp(H dt) on the replica against the cyclic three-way coupling kernel.
  const SigPtr g9 = replica_signature();
  Multivector expo(g9);
  for (int k = 0; k < 3; ++k) {
    expo.add_term((1u << k) | (1u << (6 + k)), Complex(1.0));         // end, replica
    expo.add_term((1u << (3 + k)) | (1u << (6 + k)), Complex(-1.0));  // replica, start
    expo.add_term((1u << k) | (1u << (3 + k)), Complex(-1.0));        // start, end
  }
  const Multivector integrand =
      wedge(embed_shift(star_exponential(h, dt), g9, 6), exp_wedge_series(expo));
  const Multivector integral =
      scaled(berezin_integrate(integrand, {8, 7, 6}), Complex(-1.0));
  if (max_abs_diff(project_shift(integral, g6, 0), direct) > kFormTol)
    throw DomainError("replica-integral kernel disagrees with the delta form");
  return direct;
}

Multivector greens_function_fourier_form(const SpinHamiltonian& h, double dt) {
  require_base3(h.h.sig());
  const SigPtr g9 = replica_signature();

  // Exp(H dt) evaluated on the difference of the end and replica triples.
  std::vector<Multivector> images;
  images.reserve(3);
  for (int k = 0; k < 3; ++k) {
    Multivector im(g9);
    im.add_term(1u << k, Complex(1.0));
    im.add_term(1u << (6 + k), Complex(-1.0));
    images.push_back(std::move(im));
  }
  const Multivector exp_diff = substitute(star_exponential(h, dt), g9, images);

  // Coupling kernel: replica against the difference of the boundaries.
  Multivector expo(g9);
  for (int k = 0; k < 3; ++k) {
    expo.add_term((1u << k) | (1u << (6 + k)), Complex(-1.0));
    expo.add_term((1u << (3 + k)) | (1u << (6 + k)), Complex(1.0));
  }
  const Multivector integrand = wedge(exp_diff, exp_wedge_series(expo));
  return project_shift(berezin_integrate(integrand, {8, 7, 6}),
                       greens_signature(), 0);
}

Multivector propagate(const Multivector& psi, const Multivector& g) {
  if (!g.sig()->same_as(*greens_signature()))
    throw SignatureMismatch("kernel must live on the two-endpoint signature");
  if (psi.sig()->size() != 3)
    throw SignatureMismatch("state must live on the three base generators");
  const Multivector integrand = wedge(g, embed_shift(psi, g.sig(), 3));
  return project_shift(berezin_integrate(integrand, {5, 4, 3}), psi.sig(), 0);
}

Multivector compose_propagators(const Multivector& g21, const Multivector& g10) {
  const SigPtr g6 = greens_signature();
  if (!g21.sig()->same_as(*g6) || !g10.sig()->same_as(*g6))
    throw SignatureMismatch("composition needs two-endpoint kernels");
  const SigPtr g9 = compose_signature();
  const Multivector lifted =
      wedge(embed_shift(g21, g9, 0), embed_shift(g10, g9, 3));
  const Multivector mid_integrated = berezin_integrate(lifted, {5, 4, 3});

  // Relabel the start triple from bits 6..8 down to 3..5 through the
  // audited substitution path; the permutation jacobian must be unity.
  std::vector<std::vector<Complex>> identity = {
      {Complex(1.0), Complex(0.0), Complex(0.0)},
      {Complex(0.0), Complex(1.0), Complex(0.0)},
      {Complex(0.0), Complex(0.0), Complex(1.0)}};
  const Substitution relabeled =
      linear_substitution(mid_integrated, identity, {6, 7, 8}, {3, 4, 5});
  if (std::abs(relabeled.jacobian - Complex(1.0)) > 1e-12)
    throw DomainError("relabeling jacobian is not unity");
  return project_shift(relabeled.result, g6, 0);
}

}  // namespace starspin
