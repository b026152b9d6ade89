#pragma once

// Internal canonical representation behind normalized Exprs.
//
// A normalized expression is a rational function
//     num / (f_1^k_1 * ... * f_m^k_m)
// where num is a Laurent polynomial over *atoms* (symbols, sin/cos/log of a
// normalized argument, q-th roots of a normalized base) with an optional
// exponential factor exp(arg) per monomial, and every f_i is a primitive
// polynomial with integer coefficients, no monomial content and a positive
// leading coefficient. Numerators never contain cos(u)^k with k >= 2, nor
// sin(u)^k with k >= 2 beside a negative power of cos(u), and root
// atoms only carry exponents in [0, q).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqe/expr.hpp"

namespace sqe {
Expr make_expr(std::shared_ptr<const detail::Node> node);
}  // namespace sqe

namespace sqe::detail {

struct Node {
  Expr::Kind kind = Expr::Kind::Number;
  Rational value;  // Number payload or Pow exponent
  std::string name;
  Func func = Func::Sin;
  std::vector<Expr> ops;
  std::shared_ptr<const RationalFunction> rf;  // present iff normalized
};

struct Atom {
  enum class Kind : std::uint8_t { Symbol, Sin, Cos, Log, Root };
  Kind kind = Kind::Symbol;
  std::string name;
  Expr arg;        // argument (Sin/Cos/Log) or base (Root), normalized
  int index = 0;   // Root: q in base^(1/q)
};

int compare_atoms(const Atom& a, const Atom& b);

struct Monomial {
  std::vector<std::pair<Atom, long>> powers;  // sorted by atom, nonzero exponents
  Expr exp_arg;                               // factor exp(exp_arg); zero when absent

  long degree() const;
  bool is_one() const { return powers.empty() && exp_arg.is_zero(); }
};

/// Term order: total degree, then lexicographic by atom, then the
/// exponential factor. Positive when a ranks above b.
int compare_monomials(const Monomial& a, const Monomial& b);

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) > 0; }
};

struct Term {
  Monomial mono;
  Rational coef;
};

/// Terms sorted by descending term order, all coefficients nonzero.
using Polynomial = std::vector<Term>;

struct Factor {
  Polynomial poly;
  long mult = 0;
};

struct RationalFunction {
  Polynomial num;
  std::vector<Factor> den;  // sorted, canonical, pairwise non-dividing

  bool is_zero() const { return num.empty(); }
  std::optional<Rational> constant() const;
};

using RF = RationalFunction;

int compare_polynomials(const Polynomial& a, const Polynomial& b);

// -------- monomials / polynomials
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_pow(const Monomial& a, long k);
Polynomial poly_constant(const Rational& c);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rational& c);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul_term(const Polynomial& a, const Monomial& m, const Rational& c);
Polynomial poly_pow(const Polynomial& a, long k);
/// Exact quotient a / b, or nullopt when b does not divide a (or the
/// division cannot be decided within the step budget).
std::optional<Polynomial> poly_exact_div(const Polynomial& a, const Polynomial& b);

// -------- rational functions
RF rf_constant(const Rational& c);
RF rf_atom(Atom atom, long exponent = 1);
RF rf_exp(const Expr& arg);
RF rf_add(const RF& a, const RF& b);
RF rf_neg(const RF& a);
RF rf_mul(const RF& a, const RF& b);
RF rf_inverse(const RF& a);
RF rf_pow(const RF& a, long k);
RF rf_derivative(const RF& a, std::string_view wrt);
bool rf_depends_on(const RF& a, std::string_view symbol);
void rf_collect_symbols(const RF& a, std::vector<std::string>& out);

std::shared_ptr<const RF> to_rf(const Expr& e);
Expr to_expr(RF rf);

Expr make_symbol_node(const std::string& name);

}  // namespace sqe::detail
