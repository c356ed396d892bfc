#include "starspin/berezin.hpp"

namespace starspin {

namespace {

void check_block(const SigPtr& sig, const GeneratorSet& gens) {
  for (int i : gens)
    if (i < 0 || i >= sig->size())
      throw UnknownGenerator("generator index " + std::to_string(i) +
                             " outside signature");
}

void check_disjoint_pairs(const SigPtr& sig, const GeneratorSet& a,
                          const GeneratorSet& b) {
  check_block(sig, a);
  check_block(sig, b);
  if (a.size() != b.size()) throw DomainError("generator blocks differ in size");
  uint32_t seen = 0;
  for (int i : a) seen |= uint32_t{1} << i;
  for (int i : b) {
    if (seen & (uint32_t{1} << i)) throw DomainError("generator blocks overlap");
    seen |= uint32_t{1} << i;
  }
}

/// exp(coeff * sum_k from_k to_k) as a finite wedge series.
Multivector pair_kernel(const SigPtr& sig, const GeneratorSet& from,
                        const GeneratorSet& to, Complex coeff) {
  Multivector e(sig);
  for (size_t k = 0; k < from.size(); ++k) {
    const uint32_t mask = (uint32_t{1} << from[k]) | (uint32_t{1} << to[k]);
    e.add_term(mask, from[k] < to[k] ? coeff : -coeff);
  }
  return exp_wedge_series(e);
}

/// The double transform multiplies by i^n times the parity of the block
/// reversal; the inverse divides it back out.
Complex double_transform_factor(size_t n) {
  Complex f{1.0, 0.0};
  for (size_t k = 0; k < n; ++k) f *= Complex(0.0, 1.0);
  if ((n * (n - 1) / 2) % 2 == 1) f = -f;
  return f;
}

}  // namespace

Multivector berezin_integrate(const Multivector& a, const GeneratorSet& gens) {
  check_block(a.sig(), gens);
  Multivector r = a;
  for (int i : gens) r = left_derivative(r, i);
  return r;
}

Multivector grassmann_fourier(const Multivector& a, const GeneratorSet& from,
                              const GeneratorSet& to) {
  check_disjoint_pairs(a.sig(), from, to);
  auto kernel = pair_kernel(a.sig(), from, to, Complex(0.0, 1.0));
  return berezin_integrate(wedge(a, kernel), from);
}

Multivector grassmann_fourier_inverse(const Multivector& a, const GeneratorSet& from,
                                      const GeneratorSet& to) {
  return scaled(grassmann_fourier(a, from, to),
                std::conj(double_transform_factor(from.size())));
}

Multivector delta_function(const SigPtr& sig, const GeneratorSet& first,
                           const GeneratorSet& second) {
  check_disjoint_pairs(sig, first, second);
  Multivector r = Multivector::scalar(sig, 1.0);
  for (size_t k = 0; k < first.size(); ++k) {
    auto diff = Multivector::generator(sig, first[k]) -
                Multivector::generator(sig, second[k]);
    r = wedge(r, diff);
  }
  return r;
}

Complex determinant(std::vector<std::vector<Complex>> m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw DomainError("determinant needs a square matrix");
  Complex det{1.0, 0.0};
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t row = col + 1; row < n; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    if (std::abs(m[pivot][col]) < 1e-12) throw SingularMatrix("matrix is singular");
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t row = col + 1; row < n; ++row) {
      const Complex f = m[row][col] / m[col][col];
      for (size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return det;
}

Substitution linear_substitution(const Multivector& a,
                                 const std::vector<std::vector<Complex>>& m,
                                 const GeneratorSet& from, const GeneratorSet& to) {
  const auto& sig = a.sig();
  check_block(sig, from);
  check_block(sig, to);
  if (from.size() != to.size() || m.size() != from.size())
    throw DomainError("substitution matrix does not match the generator blocks");

  const Complex det = determinant(m);

  std::vector<Multivector> images;
  images.reserve(sig->size());
  for (int g = 0; g < sig->size(); ++g)
    images.push_back(Multivector::generator(sig, g));
  for (size_t i = 0; i < from.size(); ++i) {
    Multivector image(sig);
    for (size_t j = 0; j < to.size(); ++j)
      image = image + scaled(Multivector::generator(sig, to[j]), m[i][j]);
    images[from[i]] = image;
  }
  return Substitution{substitute(a, sig, images), det};
}

GaussianPairResult gaussian_pair_integral(int n) {
  if (n < 1) throw DomainError("chain length must be positive");
  if (3 * n > AlgebraSignature::kMaxGenerators)
    throw CapacityExceeded("chain of " + std::to_string(n) +
                           " triples exceeds the generator capacity");
  auto sig = AlgebraSignature::euclidean(3 * n);
  auto idx = [](int m, int i) { return 3 * (m - 1) + i; };

  // Each neighbour coupling pairs triple m+1 against triple m, so the
  // ascending blade carries a minus sign.
  Multivector e(sig);
  for (int m = 1; m < n; ++m)
    for (int i = 0; i < 3; ++i)
      e.add_term((uint32_t{1} << idx(m, i)) | (uint32_t{1} << idx(m + 1, i)), -1.0);

  Multivector integrand = exp_wedge_series(e);
  GeneratorSet all;
  for (int m = 1; m <= n; ++m)
    for (int i = 0; i < 3; ++i) all.push_back(idx(m, i));
  auto value = berezin_integrate(integrand, all);
  return GaussianPairResult{value.coefficient(0), n % 2 == 0};
}

std::pair<Complex, Complex> star_under_integral(const Multivector& a,
                                                const Multivector& b) {
  check_same_sig(a, b);
  GeneratorSet all;
  for (int i = 0; i < a.sig()->size(); ++i) all.push_back(i);
  auto lhs = berezin_integrate(clifford_star(a, b), all);
  auto rhs = berezin_integrate(wedge(a, b), all);
  return {lhs.coefficient(0), rhs.coefficient(0)};
}

}  // namespace starspin
