#include <cctype>
#include <map>

#include "eqlab/lefn/function.hpp"

namespace eqlab::lefn {
namespace {

enum class Tok { Number, Ident, LParen, RParen, Comma, Plus, Minus, Star, Slash, Caret, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digit = [&](std::size_t k) { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (digit(i) || (c == '.' && digit(i + 1))) {
      while (digit(i) || (i < s.size() && s[i] == '.')) ++i;
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (digit(k)) {
          i = k;
          while (digit(i)) ++i;
        }
      }
      // p/q literal: a slash directly followed by a digit continues the number.
      if (i < s.size() && s[i] == '/' && digit(i + 1)) {
        ++i;
        while (digit(i)) ++i;
      }
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '.')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({kind, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  LEFunction parse_all() {
    LEFunction f = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

  template <typename F>
  auto guarded(F&& f) -> decltype(f()) {
    const std::size_t at = peek().pos;
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(e.what(), at);
    }
  }

  LEFunction expr() {
    LEFunction acc;
    bool negate = false;
    if (accept(Tok::Minus)) {
      negate = true;
    } else {
      accept(Tok::Plus);
    }
    LEFunction t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept(Tok::Plus)) {
        acc += term();
      } else if (accept(Tok::Minus)) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  LEFunction term() {
    LEFunction acc = factor();
    for (;;) {
      if (accept(Tok::Star)) {
        LEFunction rhs = factor();
        acc = guarded([&] { return acc * rhs; });
      } else if (peek().kind == Tok::Slash) {
        take();
        const Token& t = peek();
        if (t.kind != Tok::Number) fail("only numeric divisors are supported");
        take();
        const Rational d = guarded([&] { return Rational::parse(t.text); });
        if (d.is_zero()) fail("division by zero");
        acc = acc.scaled(Rational(1) / d);
      } else {
        return acc;
      }
    }
  }

  LEFunction factor() {
    LEFunction base = atom();
    if (!accept(Tok::Caret)) return base;
    const Coefficient e = exponent();
    return guarded([&] { return power(base, e); });
  }

  static LEFunction power(const LEFunction& base, const Coefficient& e) {
    if (base.is_zero()) {
      if (e.sign() <= 0) throw std::domain_error("0 raised to a non-positive power");
      return base;
    }
    if (base.terms().size() != 1) throw std::domain_error("powers apply to single terms only");
    const LETerm& t = base.terms().front();
    Coefficient c = 1;
    if (!(t.coeff == Coefficient(1))) {
      if (!t.coeff.is_rational() || !e.is_rational() || !e.rational_part().is_integer()) {
        throw std::domain_error("constant raised to a non-integer power; tag it with irr(...)");
      }
      c = t.coeff.rational_part().pow(e.rational_part().num());
    }
    return LEFunction::monomial(c, t.growth.scaled(e));
  }

  Coefficient exponent() {
    bool negative = false;
    if (accept(Tok::Minus)) {
      negative = true;
    } else {
      accept(Tok::Plus);
    }
    Coefficient e;
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      take();
      e = guarded([&] { return Rational::parse(t.text); });
    } else if (t.kind == Tok::Ident && t.text == "irr") {
      e = irr_literal();
    } else if (accept(Tok::LParen)) {
      const std::size_t at = peek().pos;
      LEFunction inner = expr();
      expect(Tok::RParen, "')'");
      if (!inner.is_constant()) throw ParseError("exponent must be constant", at);
      if (!inner.is_zero()) e = inner.leading().coeff;
    } else {
      fail("expected exponent");
    }
    return negative ? -e : e;
  }

  Coefficient irr_literal() {
    take();  // irr
    expect(Tok::LParen, "'(' after irr");
    bool negative = false;
    if (accept(Tok::Minus)) {
      negative = true;
    } else {
      accept(Tok::Plus);
    }
    const Token& num = peek();
    if (num.kind != Tok::Number) fail("expected decimal approximation");
    take();
    expect(Tok::Comma, "','");
    const Token& label = peek();
    if (label.kind != Tok::Ident && label.kind != Tok::Number) fail("expected label");
    take();
    expect(Tok::RParen, "')'");
    HighReal approx = guarded([&] { return parse_high_real(num.text); });
    if (negative) approx = -approx;
    return guarded([&] { return register_label(label.text, approx, label.pos, (negative ? "-" : "") + num.text); });
  }

  Coefficient register_label(const std::string& label, const HighReal& approx, std::size_t pos, std::string text = {}) {
    auto [it, inserted] = labels_.emplace(label, approx);
    if (!inserted && it->second != approx) throw ParseError("label '" + label + "' reused with a different value", pos);
    return Coefficient::irrational(label, approx, 1, std::move(text));
  }

  LEFunction atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        return LEFunction::constant(guarded([&] { return Rational::parse(t.text); }));
      }
      case Tok::Ident: {
        if (t.text == "x") {
          take();
          return LEFunction::identity();
        }
        if (t.text == "irr") return LEFunction::constant(irr_literal());
        if (t.text == "log" || t.text == "ln" || t.text == "log10") {
          const bool decimal = t.text == "log10";
          take();
          expect(Tok::LParen, "'('");
          const std::size_t at = peek().pos;
          LEFunction arg = expr();
          expect(Tok::RParen, "')'");
          LEFunction out = log_of(arg, at);
          if (decimal) {
            out = out.scaled(guarded([&] { return register_label(kLog10eLabel, log10e_approx(), t.pos); }));
          }
          return out;
        }
        if (t.text == "exp" || t.text == "sin" || t.text == "cos") {
          throw ParseError("'" + t.text + "' is outside the subpolynomial grammar", t.pos);
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.pos);
      }
      case Tok::LParen: {
        take();
        LEFunction inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  static LEFunction log_of(const LEFunction& arg, std::size_t at) {
    if (arg.terms().size() == 1 && arg.leading().coeff == Coefficient(1)) {
      const GrowthVector& g = arg.leading().growth;
      if (g.log_powers.empty() && g.x_power == Coefficient(1)) return LEFunction::iterated_log(1);
      if (g.x_power.is_zero()) {
        const auto& p = g.log_powers;
        const bool single = std::count_if(p.begin(), p.end(), [](const Rational& r) { return !r.is_zero(); }) == 1;
        if (single && p.back() == Rational(1)) return LEFunction::iterated_log(static_cast<int>(p.size()) + 1);
      }
    }
    throw ParseError("log argument must be x or an iterated log of x", at);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, HighReal> labels_;
};

std::string nested_log(std::size_t k) {
  std::string s = "x";
  for (std::size_t i = 0; i < k; ++i) s = "log(" + s + ")";
  return s;
}

std::string rational_exponent(const Rational& r) { return r.to_string(); }

std::string monomial_body(const GrowthVector& g) {
  std::vector<std::string> factors;
  if (!g.x_power.is_zero()) {
    if (g.x_power == Coefficient(1)) {
      factors.push_back("x");
    } else if (g.x_power.is_rational()) {
      factors.push_back("x^" + rational_exponent(g.x_power.rational_part()));
    } else {
      factors.push_back("x^(" + g.x_power.to_string() + ")");
    }
  }
  for (std::size_t j = 0; j < g.log_powers.size(); ++j) {
    const Rational& p = g.log_powers[j];
    if (p.is_zero()) continue;
    std::string f = nested_log(j + 1);
    if (p != Rational(1)) f += "^" + rational_exponent(p);
    factors.push_back(f);
  }
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "*";
    out += factors[i];
  }
  return out;
}

} // namespace

LEFunction parse(std::string_view text) { return Parser(text).parse_all(); }

std::string LEFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  auto emit = [&out](const Rational& q, const std::string& coeff_body, const std::string& body) {
    const bool negative = q.sign() < 0;
    const Rational mag = negative ? -q : q;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::vector<std::string> parts;
    if (mag != Rational(1) || (coeff_body.empty() && body.empty())) parts.push_back(mag.to_string());
    if (!coeff_body.empty()) parts.push_back(coeff_body);
    if (!body.empty()) parts.push_back(body);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += "*";
      out += parts[i];
    }
  };
  for (const auto& t : terms_) {
    const std::string body = monomial_body(t.growth);
    if (!t.coeff.rational_part().is_zero()) emit(t.coeff.rational_part(), "", body);
    for (const auto& [label, atom] : t.coeff.atoms()) {
      emit(atom.multiplier, "irr(" + atom.text + "," + label + ")", body);
    }
  }
  return out;
}

} // namespace eqlab::lefn
