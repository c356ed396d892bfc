#ifndef STARSPIN_EXPR_HPP
#define STARSPIN_EXPR_HPP

// Expression language over multivectors: a tokenizer, a recursive-descent
// parser, and an evaluator bound to a session signature. `*` is the Clifford
// star, `^` the wedge, both left-associative at equal precedence below
// unary minus; named calls bind tightest. Generators are written s1, s2',
// s3'' and so on; `i` is the imaginary unit, never a variable. The canonical
// printer in io.hpp is the inverse direction: its output parses and
// evaluates back to a value with the identical canonical form.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "starspin/algebra.hpp"
#include "starspin/errors.hpp"

namespace starspin {

struct Token {
  enum class Kind {
    Number,   // real literal
    Imag,     // imaginary literal (trailing i) or bare i
    Gen,      // s<k> with optional primes
    Ident,    // call keyword or bound name
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
  };
  Kind kind;
  std::string text;   // generator label or identifier
  double value = 0.0; // numeric payload for Number and Imag
  size_t pos = 0;     // byte offset into the source
};

/// Splits the source into tokens, ending with an End marker. Unexpected
/// characters throw ParseError with the offending position.
std::vector<Token> tokenize(const std::string& text);

struct ExprAst;
using AstPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
  enum class Kind {
    Literal,    // complex scalar
    Generator,  // session generator by label
    Name,       // bound name
    Neg,
    Rev,
    Grade,      // grade projection, level in `grade`
    Add,
    Sub,
    Star,
    Wedge,
    Int,      // Berezin integral over `gens`
    Ft,       // Grassmann Fourier transform, `gens` onto `gens2`
    Delta,    // pairing delta of `gens` against `gens2`
    ExpC,     // star exponential: args[0] Hamiltonian, args[1] time
    PiPlus,   // upper projector of args[0]
    PiMinus,  // lower projector of args[0]
    Rotor,    // args[0] plane bivector, args[1] angle
    Lift,     // args[0] lifted to an operator, applied to args[1]
  };
  Kind kind = Kind::Literal;
  size_t pos = 0;
  Complex literal{};
  std::string name;                // Generator label or Name
  int grade = 0;                   // Grade projection level
  std::vector<AstPtr> args;        // operand expressions
  std::vector<std::string> gens;   // first generator-list argument
  std::vector<std::string> gens2;  // second generator-list argument
};

/// Recursive-descent parse of a full token stream; trailing tokens are a
/// syntax error. Unknown call names and arity mistakes throw ParseError.
AstPtr parse(const std::vector<Token>& tokens);

/// Evaluation failure wrapping an underlying domain error with the position
/// of the expression node that raised it.
struct EvalError : Error {
  using Error::Error;
};

/// One signature plus named bindings. The signature is built from the
/// generator references appearing in the constructor sources: prime depth d
/// contributes a block of generators s1..sw at depth d (w at least 3), all
/// unit metric, blocks ordered by depth. The spin operations act on the
/// depth-0 block; `hsz` is pre-bound to the unit-splitting Hamiltonian
/// -i s1^s2.
class Session {
 public:
  explicit Session(const std::vector<std::string>& sources);

  /// Evaluates and binds; rejects names that collide with the grammar.
  void let(const std::string& name, const std::string& expr);

  Multivector eval(const std::string& expr) const;
  Multivector eval(const AstPtr& ast) const;

  const SigPtr& sig() const { return sig_; }
  const SigPtr& base() const { return base_; }

 private:
  SigPtr sig_;
  SigPtr base_;
  std::map<std::string, Multivector> bindings_;
};

}  // namespace starspin

#endif
