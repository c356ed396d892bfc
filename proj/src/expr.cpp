#include "starspin/expr.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <utility>

#include "starspin/berezin.hpp"
#include "starspin/spin.hpp"
#include "starspin/star.hpp"

namespace starspin {

namespace {

const Complex kImag{0.0, 1.0};

bool is_ident_start(char c) { return std::isalpha(uint8_t(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(uint8_t(c)) || c == '_'; }

// Generator labels look like s<digits> plus optional primes.
bool split_generator(const std::string& label, int& index, int& primes) {
  size_t end = label.size();
  primes = 0;
  while (end > 0 && label[end - 1] == '\'') {
    ++primes;
    --end;
  }
  if (end < 2 || label[0] != 's') return false;
  index = 0;
  for (size_t k = 1; k < end; ++k) {
    if (!std::isdigit(uint8_t(label[k]))) return false;
    index = index * 10 + (label[k] - '0');
  }
  return index >= 1;
}

const std::set<std::string> kCallKeywords = {
    "rev",     "grade",    "int",   "ft",    "delta",
    "exp_c",   "pi_plus",  "pi_minus", "rotor", "lift"};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  AstPtr run() {
    AstPtr e = expr();
    if (peek().kind != Token::Kind::End)
      throw ParseError("unexpected trailing input", peek().pos);
    return e;
  }

 private:
  const std::vector<Token>& toks_;
  size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }

  const Token& expect(Token::Kind kind, const char* what) {
    if (peek().kind != kind) throw ParseError(std::string("expected ") + what, peek().pos);
    return next();
  }

  static AstPtr node(ExprAst a) { return std::make_shared<const ExprAst>(std::move(a)); }

  AstPtr expr() {
    AstPtr left = term();
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      const Token& op = next();
      ExprAst a;
      a.kind = op.kind == Token::Kind::Plus ? ExprAst::Kind::Add : ExprAst::Kind::Sub;
      a.pos = op.pos;
      a.args = {left, term()};
      left = node(std::move(a));
    }
    return left;
  }

  AstPtr term() {
    AstPtr left = unary();
    while (peek().kind == Token::Kind::Star || peek().kind == Token::Kind::Caret) {
      const Token& op = next();
      ExprAst a;
      a.kind = op.kind == Token::Kind::Star ? ExprAst::Kind::Star : ExprAst::Kind::Wedge;
      a.pos = op.pos;
      a.args = {left, unary()};
      left = node(std::move(a));
    }
    return left;
  }

  AstPtr unary() {
    if (peek().kind == Token::Kind::Minus) {
      const Token& op = next();
      ExprAst a;
      a.kind = ExprAst::Kind::Neg;
      a.pos = op.pos;
      a.args = {unary()};
      return node(std::move(a));
    }
    return primary();
  }

  std::vector<std::string> generator_list() {
    std::vector<std::string> labels;
    while (peek().kind == Token::Kind::Gen) labels.push_back(next().text);
    if (labels.empty())
      throw ParseError("expected one or more generators", peek().pos);
    return labels;
  }

  int grade_level() {
    const Token& t = expect(Token::Kind::Number, "a grade level");
    const double v = t.value;
    if (v != std::floor(v) || v < 0.0 || v > 32.0)
      throw ParseError("grade level must be a small nonnegative integer", t.pos);
    return int(v);
  }

  AstPtr call(const Token& name) {
    expect(Token::Kind::LParen, "(");
    ExprAst a;
    a.kind = ExprAst::Kind::Rev;
    a.pos = name.pos;
    if (name.text == "rev") {
      a.args = {expr()};
    } else if (name.text == "grade") {
      a.kind = ExprAst::Kind::Grade;
      a.args = {expr()};
      expect(Token::Kind::Comma, ",");
      a.grade = grade_level();
    } else if (name.text == "int") {
      a.kind = ExprAst::Kind::Int;
      a.args = {expr()};
      expect(Token::Kind::Comma, ",");
      a.gens = generator_list();
    } else if (name.text == "ft") {
      a.kind = ExprAst::Kind::Ft;
      a.args = {expr()};
      expect(Token::Kind::Comma, ",");
      a.gens = generator_list();
      expect(Token::Kind::Comma, ",");
      a.gens2 = generator_list();
    } else if (name.text == "delta") {
      a.kind = ExprAst::Kind::Delta;
      a.gens = generator_list();
      expect(Token::Kind::Comma, ",");
      a.gens2 = generator_list();
    } else if (name.text == "exp_c" || name.text == "rotor" || name.text == "lift") {
      a.kind = name.text == "exp_c" ? ExprAst::Kind::ExpC
               : name.text == "rotor" ? ExprAst::Kind::Rotor
                                      : ExprAst::Kind::Lift;
      a.args = {expr()};
      expect(Token::Kind::Comma, ",");
      a.args.push_back(expr());
    } else if (name.text == "pi_plus" || name.text == "pi_minus") {
      a.kind = name.text == "pi_plus" ? ExprAst::Kind::PiPlus : ExprAst::Kind::PiMinus;
      a.args = {expr()};
    }
    expect(Token::Kind::RParen, ")");
    return node(std::move(a));
  }

  AstPtr primary() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Kind::Number: {
        ExprAst a;
        a.kind = ExprAst::Kind::Literal;
        a.pos = t.pos;
        a.literal = Complex(t.value);
        return node(std::move(a));
      }
      case Token::Kind::Imag: {
        ExprAst a;
        a.kind = ExprAst::Kind::Literal;
        a.pos = t.pos;
        a.literal = Complex(0.0, t.value);
        return node(std::move(a));
      }
      case Token::Kind::Gen: {
        ExprAst a;
        a.kind = ExprAst::Kind::Generator;
        a.pos = t.pos;
        a.name = t.text;
        return node(std::move(a));
      }
      case Token::Kind::LParen: {
        AstPtr e = expr();
        expect(Token::Kind::RParen, ")");
        return e;
      }
      case Token::Kind::Ident: {
        if (kCallKeywords.count(t.text)) return call(t);
        if (peek().kind == Token::Kind::LParen)
          throw ParseError("unknown function name " + t.text, t.pos);
        ExprAst a;
        a.kind = ExprAst::Kind::Name;
        a.pos = t.pos;
        a.name = t.text;
        return node(std::move(a));
      }
      default:
        throw ParseError("expected a value", t.pos);
    }
  }
};

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  size_t at = 0;
  while (at < text.size()) {
    const char c = text[at];
    if (std::isspace(uint8_t(c))) {
      ++at;
      continue;
    }
    const size_t start = at;
    if (std::isdigit(uint8_t(c))) {
      while (at < text.size() && std::isdigit(uint8_t(text[at]))) ++at;
      if (at < text.size() && text[at] == '.') {
        ++at;
        if (at >= text.size() || !std::isdigit(uint8_t(text[at])))
          throw ParseError("expected digits after the decimal point", at);
        while (at < text.size() && std::isdigit(uint8_t(text[at]))) ++at;
      }
      if (at < text.size() && (text[at] == 'e' || text[at] == 'E')) {
        size_t mark = at++;
        if (at < text.size() && (text[at] == '+' || text[at] == '-')) ++at;
        if (at < text.size() && std::isdigit(uint8_t(text[at]))) {
          while (at < text.size() && std::isdigit(uint8_t(text[at]))) ++at;
        } else {
          at = mark;  // the e starts an identifier, not an exponent
        }
      }
      Token t{Token::Kind::Number, text.substr(start, at - start),
              std::stod(text.substr(start, at - start)), start};
      if (at < text.size() && text[at] == 'i' &&
          (at + 1 >= text.size() || !is_ident_char(text[at + 1]))) {
        ++at;
        t.kind = Token::Kind::Imag;
      }
      out.push_back(std::move(t));
      continue;
    }
    if (is_ident_start(c)) {
      while (at < text.size() && is_ident_char(text[at])) ++at;
      std::string word = text.substr(start, at - start);
      int index = 0;
      int primes = 0;
      if (split_generator(word, index, primes)) {
        while (at < text.size() && text[at] == '\'') {
          ++at;
          word += '\'';
        }
        out.push_back({Token::Kind::Gen, std::move(word), 0.0, start});
      } else if (word == "i") {
        out.push_back({Token::Kind::Imag, std::move(word), 1.0, start});
      } else {
        out.push_back({Token::Kind::Ident, std::move(word), 0.0, start});
      }
      continue;
    }
    switch (c) {
      case '+': out.push_back({Token::Kind::Plus, "+", 0.0, at}); break;
      case '-': out.push_back({Token::Kind::Minus, "-", 0.0, at}); break;
      case '*': out.push_back({Token::Kind::Star, "*", 0.0, at}); break;
      case '^': out.push_back({Token::Kind::Caret, "^", 0.0, at}); break;
      case '(': out.push_back({Token::Kind::LParen, "(", 0.0, at}); break;
      case ')': out.push_back({Token::Kind::RParen, ")", 0.0, at}); break;
      case ',': out.push_back({Token::Kind::Comma, ",", 0.0, at}); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
    ++at;
  }
  out.push_back({Token::Kind::End, "", 0.0, text.size()});
  return out;
}

AstPtr parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

namespace {

template <class F>
Multivector guarded(size_t pos, F&& f) {
  try {
    return f();
  } catch (const EvalError&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw EvalError(std::string(e.what()) + " (at offset " + std::to_string(pos) + ")");
  }
}

}  // namespace

Session::Session(const std::vector<std::string>& sources) {
  int width = 3;
  int depth = 0;
  for (const std::string& source : sources) {
    for (const Token& t : tokenize(source)) {
      if (t.kind != Token::Kind::Gen) continue;
      int index = 0;
      int primes = 0;
      split_generator(t.text, index, primes);
      width = std::max(width, index);
      depth = std::max(depth, primes);
    }
  }
  std::vector<std::string> labels;
  for (int d = 0; d <= depth; ++d)
    for (int k = 1; k <= width; ++k)
      labels.push_back("s" + std::to_string(k) + std::string(size_t(d), '\''));
  sig_ = AlgebraSignature::make(labels, std::vector<double>(labels.size(), 1.0));
  base_ = AlgebraSignature::make(
      std::vector<std::string>(labels.begin(), labels.begin() + width),
      std::vector<double>(size_t(width), 1.0));
  bindings_.emplace("hsz", Multivector::blade(sig_, 0b011u, -kImag));
}

void Session::let(const std::string& name, const std::string& expr) {
  if (name.empty() || !is_ident_start(name[0]))
    throw ParseError("binding name must be an identifier", 0);
  for (char c : name)
    if (!is_ident_char(c)) throw ParseError("binding name must be an identifier", 0);
  int index = 0;
  int primes = 0;
  if (name == "i" || kCallKeywords.count(name) || split_generator(name, index, primes))
    throw ParseError("binding name " + name + " collides with the grammar", 0);
  bindings_.insert_or_assign(name, eval(expr));
}

Multivector Session::eval(const std::string& expr) const {
  return eval(parse(tokenize(expr)));
}

Multivector Session::eval(const AstPtr& ast) const {
  const ExprAst& a = *ast;
  const auto indexes = [&](const std::vector<std::string>& labels) {
    GeneratorSet set;
    for (const std::string& label : labels) set.push_back(sig_->index_of(label));
    return set;
  };
  const auto to_base = [&](const Multivector& v) {
    return project_shift(v, base_, 0);
  };
  const auto from_base = [&](const Multivector& v) {
    return embed_shift(v, sig_, 0);
  };
  const auto real_scalar = [&](const Multivector& v) {
    for (const auto& [mask, c] : v.terms())
      if (mask != 0 || std::abs(c.imag()) > kDefaultTol)
        throw DomainError("argument must be a real scalar");
    return v.coefficient(0).real();
  };

  switch (a.kind) {
    case ExprAst::Kind::Literal:
      return Multivector::scalar(sig_, a.literal);
    case ExprAst::Kind::Generator:
      return guarded(a.pos, [&] {
        return Multivector::generator(sig_, sig_->index_of(a.name));
      });
    case ExprAst::Kind::Name: {
      auto it = bindings_.find(a.name);
      if (it == bindings_.end())
        throw EvalError("unknown name " + a.name + " (at offset " +
                        std::to_string(a.pos) + ")");
      return it->second;
    }
    case ExprAst::Kind::Neg:
      return scaled(eval(a.args[0]), Complex(-1.0));
    case ExprAst::Kind::Rev:
      return reversion(eval(a.args[0]));
    case ExprAst::Kind::Grade:
      return grade_project(eval(a.args[0]), a.grade);
    case ExprAst::Kind::Add:
      return eval(a.args[0]) + eval(a.args[1]);
    case ExprAst::Kind::Sub:
      return eval(a.args[0]) - eval(a.args[1]);
    case ExprAst::Kind::Star:
      return guarded(a.pos, [&] { return clifford_star(eval(a.args[0]), eval(a.args[1])); });
    case ExprAst::Kind::Wedge:
      return wedge(eval(a.args[0]), eval(a.args[1]));
    case ExprAst::Kind::Int:
      return guarded(a.pos, [&] { return berezin_integrate(eval(a.args[0]), indexes(a.gens)); });
    case ExprAst::Kind::Ft:
      return guarded(a.pos, [&] {
        return grassmann_fourier(eval(a.args[0]), indexes(a.gens), indexes(a.gens2));
      });
    case ExprAst::Kind::Delta:
      return guarded(a.pos, [&] {
        return delta_function(sig_, indexes(a.gens), indexes(a.gens2));
      });
    case ExprAst::Kind::ExpC:
      return guarded(a.pos, [&] {
        const SpinHamiltonian h = validate_spin_hamiltonian(to_base(eval(a.args[0])));
        return from_base(star_exponential(h, real_scalar(eval(a.args[1]))));
      });
    case ExprAst::Kind::PiPlus:
    case ExprAst::Kind::PiMinus:
      return guarded(a.pos, [&] {
        const SpinHamiltonian h = validate_spin_hamiltonian(to_base(eval(a.args[0])));
        auto [plus, minus] = wigner_projectors(h);
        return from_base(a.kind == ExprAst::Kind::PiPlus ? plus : minus);
      });
    case ExprAst::Kind::Rotor:
      return guarded(a.pos, [&] {
        return from_base(rotor(to_base(eval(a.args[0])), real_scalar(eval(a.args[1]))));
      });
    case ExprAst::Kind::Lift:
      return guarded(a.pos, [&] {
        return operator_lift(eval(a.args[0])).apply(eval(a.args[1]));
      });
  }
  throw EvalError("malformed expression tree (at offset " + std::to_string(a.pos) + ")");
}

}  // namespace starspin
