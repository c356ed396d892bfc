#ifndef STARSPIN_IO_HPP
#define STARSPIN_IO_HPP

// Canonical text and JSON forms for multivectors. The text form is the
// printer half of the expression round trip: terms sorted by grade then
// bitmask, coefficients at 12 significant digits with negative zero
// normalized away, every output string parseable back to the same canonical
// form. The JSON form maps blade label strings to [re, im] pairs and round
// trips bit-exactly.

#include <string>

#include <json.hpp>

#include "starspin/algebra.hpp"
#include "starspin/phase_space.hpp"

namespace starspin {

/// Shortest %.12g rendering with -0 folded to 0.
std::string format_real(double x);

/// One complex coefficient: bare real, bare imaginary with an i suffix, or
/// a parenthesized a+bi pair when both parts are present.
std::string format_coefficient(Complex c);

/// Sum of c*label^label terms sorted by (grade, bitmask); unit real
/// coefficients are elided on blades, negative leading signs fold into the
/// joining operator. The empty multivector prints as 0.
std::string to_canonical(const Multivector& a);

/// Object keyed by space-joined ascending blade labels ("" for the scalar
/// term), each value a [re, im] pair.
nlohmann::json to_json(const Multivector& a);

/// Inverse of to_json against the given signature. Unknown labels throw.
Multivector multivector_from_json(const SigPtr& sig, const nlohmann::json& j);

/// Object keyed by monomial strings like "q1^2 p2" ("" for the constant),
/// each value a [re, im] pair.
nlohmann::json to_json(const PhaseSpacePolynomial& p);

}  // namespace starspin

#endif
