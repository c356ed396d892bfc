#include "starspin/star.hpp"

#include <cmath>

namespace starspin {

namespace {

Multivector integrate_ascending(Multivector a, int first, int count) {
  for (int i = first; i < first + count; ++i) a = left_derivative(a, i);
  return a;
}

}  // namespace

Multivector exp_wedge_series(const Multivector& e) {
  const Complex s = e.coefficient(0);
  Multivector rest = e;
  if (s != Complex{0.0, 0.0}) rest = rest - Multivector::scalar(e.sig(), s);

  Multivector acc = Multivector::scalar(e.sig(), 1.0);
  Multivector term = acc;
  const int cap = e.sig()->size();
  for (int k = 1; k <= cap; ++k) {
    term = scaled(wedge(term, rest), Complex(1.0 / k, 0.0));
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return s == Complex{0.0, 0.0} ? acc : scaled(acc, std::exp(s));
}

Multivector clifford_star_integral_form(const Multivector& a, const Multivector& b) {
  check_same_sig(a, b);
  const auto& base = *a.sig();
  const int n = base.size();
  if (3 * n > AlgebraSignature::kMaxGenerators)
    throw CapacityExceeded("replica signature for the integral form is too large");
  for (int i = 0; i < n; ++i)
    if (base.metric(i) != 1.0)
      throw DomainError("integral form needs a Euclidean signature");

  std::vector<std::string> labels;
  std::vector<double> metric(3 * n, 0.0);
  for (int i = 0; i < n; ++i) {
    labels.push_back(base.label(i));
    metric[i] = base.metric(i);
  }
  for (int i = 0; i < n; ++i) labels.push_back(base.label(i) + "'");
  for (int i = 0; i < n; ++i) labels.push_back(base.label(i) + "''");
  SigPtr big = AlgebraSignature::make(std::move(labels), std::move(metric));

  const Multivector ap = embed_shift(a, big, n);
  const Multivector bpp = embed_shift(b, big, 2 * n);

  // Kernel exponent: sum_i s_i s'_i + s'_i s''_i + s''_i s_i, with each pair
  // stored in ascending order (the third one flips sign).
  Multivector e(big);
  for (int i = 0; i < n; ++i) {
    e.add_term((uint32_t{1} << i) | (uint32_t{1} << (n + i)), 1.0);
    e.add_term((uint32_t{1} << (n + i)) | (uint32_t{1} << (2 * n + i)), 1.0);
    e.add_term((uint32_t{1} << i) | (uint32_t{1} << (2 * n + i)), -1.0);
  }

  Multivector integrand = wedge(wedge(ap, bpp), exp_wedge_series(e));
  integrand = integrate_ascending(std::move(integrand), 2 * n, n);
  integrand = integrate_ascending(std::move(integrand), n, n);
  return project_shift(integrand, a.sig(), 0);
}

namespace {

int required_grade(const Multivector& a, const char* who) {
  const auto g = homogeneous_grade(a);
  if (!g) throw DomainError(std::string(who) + " needs a homogeneous multivector");
  return *g;
}

}  // namespace

Multivector scalar_part(const Multivector& a, const Multivector& b) {
  const int m = required_grade(a, "scalar_part");
  const int n = required_grade(b, "scalar_part");
  return grade_project(clifford_star(a, b), std::abs(m - n));
}

Multivector exterior_part(const Multivector& a, const Multivector& b) {
  const int m = required_grade(a, "exterior_part");
  const int n = required_grade(b, "exterior_part");
  return grade_project(clifford_star(a, b), m + n);
}

}  // namespace starspin
