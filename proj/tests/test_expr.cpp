#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "starspin/berezin.hpp"
#include "starspin/errors.hpp"
#include "starspin/expr.hpp"
#include "starspin/io.hpp"
#include "starspin/spin.hpp"
#include "starspin/star.hpp"

using namespace starspin;

namespace {

const Complex I{0.0, 1.0};

Session plain_session() { return Session({"s1 s2 s3"}); }

std::string canon(const Session& s, const std::string& expr) {
  return to_canonical(s.eval(expr));
}

Multivector random_mv(const SigPtr& sig, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  Multivector a(sig);
  for (uint32_t mask = 0; mask < 8; ++mask)
    a.add_term(mask, Complex(coeff(rng), coeff(rng)));
  return a;
}

}  // namespace

TEST_CASE("tokenizer splits generators, literals, and operators") {
  const auto toks = tokenize("s1 * s2");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].kind == Token::Kind::Gen);
  CHECK(toks[0].text == "s1");
  CHECK(toks[1].kind == Token::Kind::Star);
  CHECK(toks[2].kind == Token::Kind::Gen);
  CHECK(toks[3].kind == Token::Kind::End);

  const auto mixed = tokenize("0.5*(1 - 1i*s1^s2)");
  REQUIRE(mixed.size() == 12);
  CHECK(mixed[0].kind == Token::Kind::Number);
  CHECK(mixed[0].value == doctest::Approx(0.5));
  CHECK(mixed[4].kind == Token::Kind::Minus);
  CHECK(mixed[5].kind == Token::Kind::Imag);
  CHECK(mixed[5].value == doctest::Approx(1.0));
  CHECK(mixed[8].kind == Token::Kind::Caret);

  const auto primed = tokenize("s1''");
  CHECK(primed[0].kind == Token::Kind::Gen);
  CHECK(primed[0].text == "s1''");

  const auto sci = tokenize("2.5e-3i");
  CHECK(sci[0].kind == Token::Kind::Imag);
  CHECK(sci[0].value == doctest::Approx(2.5e-3));

  const auto bare = tokenize("i");
  CHECK(bare[0].kind == Token::Kind::Imag);
  CHECK(bare[0].value == doctest::Approx(1.0));
}

TEST_CASE("tokenizer reports the position of a bad character") {
  try {
    tokenize("s1 + @");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("parser builds the expected shapes") {
  const AstPtr sum = parse(tokenize("s1*s2 + 1"));
  REQUIRE(sum->kind == ExprAst::Kind::Add);
  CHECK(sum->args[0]->kind == ExprAst::Kind::Star);
  CHECK(sum->args[1]->kind == ExprAst::Kind::Literal);

  const AstPtr integral = parse(tokenize("int(s1^s2^s3, s1 s2 s3)"));
  REQUIRE(integral->kind == ExprAst::Kind::Int);
  CHECK(integral->gens == std::vector<std::string>{"s1", "s2", "s3"});

  // Equal precedence, left associative: a*b^c groups as (a*b)^c.
  const AstPtr chain = parse(tokenize("s1*s2^s3"));
  REQUIRE(chain->kind == ExprAst::Kind::Wedge);
  CHECK(chain->args[0]->kind == ExprAst::Kind::Star);

  const AstPtr graded = parse(tokenize("grade(s1 + s1^s2, 2)"));
  REQUIRE(graded->kind == ExprAst::Kind::Grade);
  CHECK(graded->grade == 2);
}

TEST_CASE("parser rejects malformed input with positions") {
  CHECK_THROWS_AS(parse(tokenize("rev(s1*s2")), ParseError);
  try {
    parse(tokenize("rev(s1*s2"));
  } catch (const ParseError& e) {
    CHECK(e.position == 9);  // end of input
  }
  CHECK_THROWS_AS(parse(tokenize("frob(s1)")), ParseError);
  CHECK_THROWS_AS(parse(tokenize("s1 s2")), ParseError);       // trailing input
  CHECK_THROWS_AS(parse(tokenize("grade(s1, 1.5)")), ParseError);
  CHECK_THROWS_AS(parse(tokenize("int(1, )")), ParseError);
  CHECK_THROWS_AS(parse(tokenize("")), ParseError);
}

TEST_CASE("evaluator computes star and wedge semantics") {
  Session s = plain_session();
  CHECK(canon(s, "s1*s1") == "1");
  CHECK(canon(s, "s2*s1") == "-s1^s2");
  CHECK(canon(s, "s1^s1") == "0");
  CHECK(canon(s, "grade(1 + s1 + s1^s2, 2)") == "s1^s2");
  CHECK(canon(s, "0.5*(1 - 1i*s1^s2)") == "0.5 - 0.5i*s1^s2");
  CHECK(canon(s, "rev(s1^s2)") == "-s1^s2");
  CHECK(canon(s, "-2*s3 + s3") == "-s3");
  CHECK(canon(s, "int(s1^s2^s3, s1 s2 s3)") == "1");
}

TEST_CASE("projector calls annihilate each other") {
  Session s = plain_session();
  CHECK(canon(s, "pi_plus(hsz) * pi_minus(hsz)") == "0");
  CHECK(canon(s, "pi_plus(hsz) + pi_minus(hsz)") == "1");
  CHECK(canon(s, "pi_plus(hsz)") == "0.5 - 0.5i*s1^s2");
}

TEST_CASE("call keywords route to the library operations") {
  Session s({"s1 s2 s3 s1' s2' s3'"});
  const SigPtr sig = s.sig();
  REQUIRE(sig->size() == 6);

  const Multivector d = s.eval("delta(s1 s2 s3, s1' s2' s3')");
  CHECK(max_abs_diff(d, delta_function(sig, {0, 1, 2}, {3, 4, 5})) == 0.0);

  const Multivector ft = s.eval("ft(s1^s2, s1 s2 s3, s1' s2' s3')");
  CHECK(max_abs_diff(ft, grassmann_fourier(Multivector::blade(sig, 0b011u, Complex(1.0)),
                                           {0, 1, 2}, {3, 4, 5})) == 0.0);

  const SpinHamiltonian h = validate_spin_hamiltonian(
      Multivector::blade(s.base(), 0b011u, -I * 0.7));
  const Multivector e = s.eval("exp_c(0.7*(0 - i)*s1^s2, 1.3)");
  CHECK(max_abs_diff(e, embed_shift(star_exponential(h, 1.3), sig, 0)) < 1e-12);

  const Multivector r = s.eval("rotor(s1^s2, 0.8)");
  CHECK(max_abs_diff(r, embed_shift(rotor(Multivector::blade(s.base(), 0b011u,
                                                             Complex(1.0)),
                                          0.8),
                                    sig, 0)) < 1e-15);

  const Multivector lifted = s.eval("lift(s1, s1^s2)");
  CHECK(max_abs_diff(lifted,
                     clifford_star(Multivector::generator(sig, 0),
                                   Multivector::blade(sig, 0b011u, Complex(1.0)))) <
        1e-15);
}

TEST_CASE("interpreter star is the library star for random bindings") {
  Session s = plain_session();
  std::mt19937_64 rng(46028);
  for (int k = 0; k < 10; ++k) {
    const Multivector a = random_mv(s.sig(), rng);
    const Multivector b = random_mv(s.sig(), rng);
    Session bound = plain_session();
    bound.let("a", to_canonical(a));
    bound.let("b", to_canonical(b));
    CHECK(max_abs_diff(bound.eval("a * b"), clifford_star(a, b)) < 1e-9);
  }
}

TEST_CASE("session bindings evaluate in order and reject grammar collisions") {
  Session s = plain_session();
  s.let("u", "s1 + s2");
  s.let("v", "u ^ s3");
  CHECK(to_canonical(s.eval("v")) == "s1^s3 + s2^s3");
  CHECK_THROWS_AS(s.let("i", "1"), ParseError);
  CHECK_THROWS_AS(s.let("rev", "1"), ParseError);
  CHECK_THROWS_AS(s.let("s4", "1"), ParseError);
  CHECK_THROWS_AS(s.let("2u", "1"), ParseError);
  CHECK_THROWS_AS(s.eval("nope"), EvalError);
}

TEST_CASE("evaluation errors carry the failing offset") {
  Session s = plain_session();
  try {
    s.eval("1 + exp_c(s1^s2, 1.0)");  // not a valid Hamiltonian: square is -1
    FAIL("expected an evaluation error");
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
  }
  CHECK_THROWS_AS(s.eval("exp_c(hsz, s1)"), EvalError);
  CHECK_THROWS_AS(s.eval("grade(s9, 1)"), EvalError);
}

TEST_CASE("primed references widen the session signature in blocks") {
  Session s({"s2'' + s1"});
  REQUIRE(s.sig()->size() == 9);
  CHECK(s.sig()->label(0) == "s1");
  CHECK(s.sig()->label(3) == "s1'");
  CHECK(s.sig()->label(8) == "s3''");
  CHECK(s.base()->size() == 3);

  // Spin calls still act on the base block.
  CHECK(to_canonical(s.eval("pi_plus(hsz) * pi_minus(hsz)")) == "0");
  // A value with primed support cannot enter a base-block call.
  CHECK_THROWS_AS(s.eval("pi_plus(hsz + s1'^s2')"), EvalError);
}

TEST_CASE("canonical printing is a parse fixed point") {
  Session s({"s1 s2 s3 s1'"});
  const std::vector<std::string> exprs = {
      "0",
      "1 + s1",
      "s2*s1",
      "0.5 - 0.5i*s1^s2",
      "(1+2i)*s1 - 3i*s2^s3 + 0.125",
      "rev(s1^s2^s3) * (s1 + 2*s2)",
      "delta(s1 s2 s3, s1' s2' s3')",
      "pi_plus(hsz) - pi_minus(hsz)",
      "exp_c(hsz, 0.75) * s1",
  };
  for (const std::string& e : exprs) {
    const std::string first = to_canonical(s.eval(e));
    const std::string second = to_canonical(s.eval(first));
    CHECK(first == second);
  }
}

TEST_CASE("json round trip is exact") {
  Session s = plain_session();
  std::mt19937_64 rng(8181);
  for (int k = 0; k < 20; ++k) {
    const Multivector a = random_mv(s.sig(), rng);
    const nlohmann::json j = to_json(a);
    const Multivector back =
        multivector_from_json(s.sig(), nlohmann::json::parse(j.dump()));
    CHECK(max_abs_diff(a, back) == 0.0);
  }

  const nlohmann::json j = to_json(s.eval("0.5 - 0.5i*s1^s2"));
  CHECK(j[""][0].get<double>() == 0.5);
  CHECK(j["s1 s2"][1].get<double>() == -0.5);

  CHECK_THROWS_AS(multivector_from_json(s.sig(), nlohmann::json::parse("[1]")),
                  DomainError);
  CHECK_THROWS_AS(
      multivector_from_json(s.sig(), nlohmann::json::parse("{\"s9\": [1,0]}")),
      UnknownGenerator);
}

TEST_CASE("phase-space polynomials serialize with exponent keys") {
  PhaseSpacePolynomial p(2);
  p.add_term({2, 0, 0, 1}, Complex(1.5, 0.0));
  p.add_term({0, 0, 0, 0}, Complex(0.0, -2.0));
  const nlohmann::json j = to_json(p);
  CHECK(j["q1^2 p2"][0].get<double>() == 1.5);
  CHECK(j[""][1].get<double>() == -2.0);
}
