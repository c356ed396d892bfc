#include "starspin/phase_space.hpp"

namespace starspin {

PhaseSpacePolynomial moyal_star(const PhaseSpacePolynomial& f,
                                const PhaseSpacePolynomial& g, double hbar) {
  const int d = std::max(f.dims(), g.dims());
  using Pair = std::pair<PhaseSpacePolynomial, PhaseSpacePolynomial>;
  std::vector<Pair> pairs{{f.lifted_to(d), g.lifted_to(d)}};
  PhaseSpacePolynomial acc = f * g;
  Complex factor = 1.0;
  for (int k = 1; !pairs.empty(); ++k) {
    factor *= Complex(0.0, hbar / 2.0) / double(k);
    std::vector<Pair> next;
    for (const auto& [fr, gr] : pairs)
      for (int i = 0; i < d; ++i) {
        auto fq = fr.derivative_q(i);
        auto gp = gr.derivative_p(i);
        if (!fq.is_zero() && !gp.is_zero()) next.emplace_back(std::move(fq), std::move(gp));
        auto fp = fr.derivative_p(i);
        auto gq = gr.derivative_q(i);
        if (!fp.is_zero() && !gq.is_zero()) next.emplace_back(-fp, std::move(gq));
      }
    pairs = std::move(next);
    for (const auto& [fr, gr] : pairs) acc += (fr * gr).scaled_by(factor);
  }
  return acc;
}

PhaseSpaceMultivector combined_star(const PhaseSpaceMultivector& a,
                                    const PhaseSpaceMultivector& b, double hbar) {
  return star_expand(a, b,
                     [hbar](const PhaseSpacePolynomial& x, const PhaseSpacePolynomial& y) {
                       return moyal_star(x, y, hbar);
                     });
}

PhaseSpaceMultivector vector_potential(const SigPtr& sig,
                                       const std::array<double, 3>& field) {
  if (sig->size() < 3) throw DomainError("vector potential needs three generators");
  auto qv = [](int i) { return PhaseSpacePolynomial::q(i, 3); };
  PhaseSpaceMultivector a(sig);
  const std::array<PhaseSpacePolynomial, 3> comp = {
      (qv(2).scaled_by(field[1]) - qv(1).scaled_by(field[2])).scaled_by(0.5),
      (qv(0).scaled_by(field[2]) - qv(2).scaled_by(field[0])).scaled_by(0.5),
      (qv(1).scaled_by(field[0]) - qv(0).scaled_by(field[1])).scaled_by(0.5)};
  for (int i = 0; i < 3; ++i) a.add_term(uint32_t{1} << i, comp[i]);
  return a;
}

PhaseSpaceMultivector curl_bivector(const PhaseSpaceMultivector& a) {
  if (auto g = homogeneous_grade(a); !g || *g != 1)
    throw DomainError("curl needs a grade-1 field");
  const int n = a.sig()->size();
  int d = n;
  for (const auto& [mask, c] : a.terms()) d = std::max(d, c.dims());
  PhaseSpaceMultivector r(a.sig());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto ai = a.coefficient(uint32_t{1} << i).lifted_to(d);
      auto aj = a.coefficient(uint32_t{1} << j).lifted_to(d);
      auto c = aj.derivative_q(i) - ai.derivative_q(j);
      if (!c.is_zero()) r.add_term((uint32_t{1} << i) | (uint32_t{1} << j), c);
    }
  return r;
}

LandauSplit landau_hamiltonian(const std::array<double, 3>& field, double charge,
                               double mass, double hbar) {
  if (mass == 0.0) throw DomainError("zero mass");
  auto sig = AlgebraSignature::euclidean(3);
  auto pot = vector_potential(sig, field);

  PhaseSpaceMultivector kinetic(sig);
  for (int i = 0; i < 3; ++i) {
    auto comp = PhaseSpacePolynomial::p(i, 3) +
                pot.coefficient(uint32_t{1} << i).scaled_by(charge);
    kinetic.add_term(uint32_t{1} << i, comp);
  }

  auto ham = scaled(combined_star(kinetic, kinetic, hbar),
                    Complex(1.0 / (2.0 * mass), 0.0));
  auto spin = grade_project(ham, 2);

  // The bivector part must be the curl contracted with -i hbar/2 times
  // charge over mass; anything else means the product expansion broke.
  PhaseSpaceMultivector expect =
      scaled(curl_bivector(pot), Complex(0.0, -hbar * charge / (2.0 * mass)));
  if (max_abs_diff(spin, expect) > 1e-9)
    throw DomainError("landau bivector part disagrees with the curl form");

  return LandauSplit{ham, grade_project(ham, 0), spin,
                     {charge * field[0] / mass, charge * field[1] / mass,
                      charge * field[2] / mass}};
}

}  // namespace starspin
