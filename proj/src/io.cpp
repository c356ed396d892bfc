#include "starspin/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "starspin/errors.hpp"

namespace starspin {

namespace {

// Splits a coefficient into the three printable shapes.
enum class CoeffShape { Real, Imaginary, Mixed };

CoeffShape shape_of(Complex c) {
  if (c.imag() == 0.0) return CoeffShape::Real;
  if (c.real() == 0.0) return CoeffShape::Imaginary;
  return CoeffShape::Mixed;
}

std::string blade_string(const AlgebraSignature& sig, uint32_t mask,
                         const char* joiner) {
  std::string out;
  for (uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    if (!out.empty()) out += joiner;
    out += sig.label(std::countr_zero(rest));
  }
  return out;
}

}  // namespace

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // collapse -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_coefficient(Complex c) {
  switch (shape_of(c)) {
    case CoeffShape::Real:
      return format_real(c.real());
    case CoeffShape::Imaginary:
      return format_real(c.imag()) + "i";
    case CoeffShape::Mixed:
      return "(" + format_real(c.real()) + (c.imag() < 0.0 ? "-" : "+") +
             format_real(std::abs(c.imag())) + "i)";
  }
  return {};
}

std::string to_canonical(const Multivector& a) {
  std::vector<std::pair<uint32_t, Complex>> terms(a.terms().begin(),
                                                  a.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& x, const auto& y) {
                     const int gx = blade_grade(x.first);
                     const int gy = blade_grade(y.first);
                     return gx != gy ? gx < gy : x.first < y.first;
                   });
  std::string out;
  for (const auto& [mask, raw] : terms) {
    if (std::abs(raw) < kPruneEps) continue;
    Complex c(raw.real() == 0.0 ? 0.0 : raw.real(),
              raw.imag() == 0.0 ? 0.0 : raw.imag());
    const CoeffShape shape = shape_of(c);

    // Fold a leading sign of real or imaginary coefficients into the
    // joining operator; mixed pairs keep their signs inside the parens.
    bool negative = false;
    if (shape == CoeffShape::Real && c.real() < 0.0) {
      negative = true;
      c = -c;
    } else if (shape == CoeffShape::Imaginary && c.imag() < 0.0) {
      negative = true;
      c = -c;
    }

    std::string body;
    if (mask == 0) {
      body = format_coefficient(c);
    } else {
      const std::string blade = blade_string(*a.sig(), mask, "^");
      if (shape == CoeffShape::Real && c.real() == 1.0)
        body = blade;
      else if (shape == CoeffShape::Imaginary && c.imag() == 1.0)
        body = "i*" + blade;
      else
        body = format_coefficient(c) + "*" + blade;
    }

    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

nlohmann::json to_json(const Multivector& a) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [mask, c] : a.terms())
    j[blade_string(*a.sig(), mask, " ")] = {c.real(), c.imag()};
  return j;
}

Multivector multivector_from_json(const SigPtr& sig, const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("multivector JSON must be an object");
  Multivector r(sig);
  for (const auto& [key, value] : j.items()) {
    if (!value.is_array() || value.size() != 2)
      throw DomainError("coefficient for '" + key + "' must be a [re, im] pair");
    uint32_t mask = 0;
    std::istringstream labels(key);
    std::string label;
    while (labels >> label) {
      const int i = sig->index_of(label);
      const uint32_t bit = uint32_t{1} << i;
      if (mask & bit) throw DomainError("repeated generator " + label);
      mask |= bit;
    }
    r.add_term(mask, Complex(value[0].get<double>(), value[1].get<double>()));
  }
  return r;
}

nlohmann::json to_json(const PhaseSpacePolynomial& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [exps, c] : p.terms()) {
    std::string key;
    for (int k = 0; k < 2 * p.dims(); ++k) {
      if (exps[size_t(k)] == 0) continue;
      if (!key.empty()) key += ' ';
      key += (k < p.dims() ? 'q' : 'p');
      key += std::to_string(k < p.dims() ? k + 1 : k - p.dims() + 1);
      if (exps[size_t(k)] > 1) key += '^' + std::to_string(exps[size_t(k)]);
    }
    j[key] = {c.real(), c.imag()};
  }
  return j;
}

}  // namespace starspin
