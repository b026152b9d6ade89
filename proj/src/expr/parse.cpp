#include <cctype>

#include "sqe/expr.hpp"

namespace sqe {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols) : text_(text), symbols_(symbols) {}

  Expr parse_all() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr expression() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::raw_mul({Expr::integer(-1), term()}));
      } else {
        break;
      }
    }
    return Expr::raw_add(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{unary()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(unary());
      } else if (accept('/')) {
        factors.push_back(Expr::raw_pow(unary(), -1));
      } else {
        break;
      }
    }
    return Expr::raw_mul(std::move(factors));
  }

  Expr unary() {
    if (accept('-')) {
      return Expr::raw_mul({Expr::integer(-1), unary()});
    }
    if (accept('+')) {
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      return Expr::raw_pow(std::move(base), exponent());
    }
    return base;
  }

  /// Literal exponent: [-]int or ( [-]int [/ int] ), right-associative.
  Rational exponent() {
    skip_space();
    std::size_t start = pos_;
    Rational q;
    if (accept('(')) {
      bool neg = accept('-');
      q = integer_literal();
      if (accept('/')) {
        mpz_class d = integer_literal().get_num();
        if (d == 0) {
          throw ParseError("zero denominator in exponent", start);
        }
        q /= Rational(d);
      }
      if (neg) {
        q = -q;
      }
      expect(')');
    } else {
      bool neg = accept('-');
      q = integer_literal();
      if (neg) {
        q = -q;
      }
    }
    q.canonicalize();
    if (accept('^')) {
      std::size_t at = pos_;
      Rational inner = exponent();
      if (inner.get_den() != 1 || sgn(inner) < 0 || inner > 64) {
        throw ParseError("unsupported nested exponent", at);
      }
      Rational r = 1;
      for (long i = 0; i < inner.get_num().get_si(); ++i) {
        r *= q;
      }
      if (q.get_den() != 1 || r.get_den() != 1) {
        throw ParseError("nested exponent must be an integer", at);
      }
      q = r;
    }
    return q;
  }

  Rational integer_literal() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) {
      throw ParseError("expected integer literal", start);
    }
    return Rational(mpz_class(std::string(text_.substr(start, pos_ - start))));
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of input", pos_);
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational v = integer_literal();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        throw ParseError("decimal literals are not supported", pos_);
      }
      return Expr::number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (auto f = func_from_name(name)) {
        if (!accept('(')) {
          throw ParseError("expected '(' after function '" + name + "'", pos_);
        }
        Expr arg = expression();
        expect(')');
        return Expr::raw_func(*f, std::move(arg));
      }
      if (!symbols_.contains(name)) {
        throw UnknownIdentifier(name, start);
      }
      return Expr::symbol(name);
    }
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  const SymbolTable& symbols_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_raw(std::string_view text, const SymbolTable& symbols) { return Parser(text, symbols).parse_all(); }

Expr parse(std::string_view text, const SymbolTable& symbols) { return normalize(parse_raw(text, symbols)); }

}  // namespace sqe
