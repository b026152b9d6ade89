#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sqe {

using Rational = mpq_class;

enum class Func : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt };

std::string_view func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

namespace detail {
struct Node;
struct RationalFunction;
}  // namespace detail

/// Immutable symbolic expression.
///
/// An Expr is either *raw* (built by the parser or by the raw_* factories, in
/// whatever shape the input had) or *normalized* (canonical rational-function
/// form, see normalize()). Every public operation except the raw_* factories
/// returns normalized expressions, and the arithmetic operators below always
/// normalize their result.
class Expr {
 public:
  enum class Kind : std::uint8_t { Number, Symbol, Add, Mul, Pow, Func };

  /// The zero constant.
  Expr();

  static Expr number(const Rational& value);
  static Expr integer(long value);
  static Expr symbol(std::string name);

  static Expr raw_add(std::vector<Expr> terms);
  static Expr raw_mul(std::vector<Expr> factors);
  static Expr raw_pow(Expr base, const Rational& exponent);
  static Expr raw_func(Func f, Expr arg);

  Kind kind() const;
  bool is_normalized() const;

  /// Number payload; only valid for Kind::Number.
  const Rational& value() const;
  /// Symbol name; only valid for Kind::Symbol.
  const std::string& name() const;
  /// Exponent; only valid for Kind::Pow.
  const Rational& exponent() const;
  /// Function; only valid for Kind::Func.
  Func func() const;
  /// Operands: terms (Add), factors (Mul), {base} (Pow), {argument} (Func).
  std::span<const Expr> operands() const;

  bool is_zero() const;
  bool is_one() const;
  std::optional<Rational> as_number() const;

  /// Grammar-compatible rendering; parse(str()) reproduces the normal form.
  std::string str() const;
  /// LaTeX rendering for reports.
  std::string latex() const;

  const detail::Node* node() const { return node_.get(); }

 private:
  friend struct detail::Node;
  friend Expr make_expr(std::shared_ptr<const detail::Node> node);
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

/// Total structural order; 0 means structurally equal.
int compare(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
/// Throws DivisionByZero when b normalizes to zero.
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);
Expr pow(const Expr& base, long exponent);
Expr pow(const Expr& base, const Rational& exponent);
Expr sin(const Expr& x);
Expr cos(const Expr& x);
Expr tan(const Expr& x);
Expr exp(const Expr& x);
Expr log(const Expr& x);
Expr sqrt(const Expr& x);

/// Canonical form: rational-function normalization over a common (factored)
/// denominator plus the rewrite cos(u)^2 -> 1 - sin(u)^2. Idempotent.
Expr normalize(const Expr& e);

/// Exact partial derivative; symbols other than `wrt` are constants.
Expr differentiate(const Expr& e, std::string_view wrt);

/// Names of all symbols occurring in e (sorted).
std::vector<std::string> free_symbols(const Expr& e);
bool depends_on(const Expr& e, std::string_view symbol);

// ---------------------------------------------------------------- errors

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public ExprError {
 public:
  using ExprError::ExprError;
};

/// A numeric evaluation left the domain of some subexpression.
class DomainError : public ExprError {
 public:
  DomainError(std::string what, std::string subexpression)
      : ExprError(std::move(what)), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

class UnboundSymbol : public ExprError {
 public:
  explicit UnboundSymbol(const std::string& name)
      : ExprError("unbound symbol '" + name + "'"), name_(name) {}
  const std::string& symbol() const { return name_; }

 private:
  std::string name_;
};

// ----------------------------------------------------------- symbol table

struct Parameter {
  std::string name;
  bool positive = false;
  bool nonzero = false;
};

/// Coordinates (ordered) and parameters of a chart. Names are disjoint
/// identifiers that do not collide with function names.
class SymbolTable {
 public:
  SymbolTable() = default;

  void add_coordinate(const std::string& name);
  void add_parameter(Parameter p);

  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<Parameter>& parameters() const { return parameters_; }

  bool contains(std::string_view name) const;
  bool is_coordinate(std::string_view name) const;
  const Parameter* parameter(std::string_view name) const;
  std::vector<std::string> all_names() const;

 private:
  void check_new_name(const std::string& name) const;

  std::vector<std::string> coordinates_;
  std::vector<Parameter> parameters_;
};

bool is_identifier(std::string_view s);

// ----------------------------------------------------------------- parser

class ParseError : public ExprError {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : ExprError(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& identifier, std::size_t offset)
      : ParseError("unknown identifier '" + identifier + "'", offset), identifier_(identifier) {}
  const std::string& identifier() const { return identifier_; }

 private:
  std::string identifier_;
};

/// Parses `text` and returns its normal form.
Expr parse(std::string_view text, const SymbolTable& symbols);
/// Parses without normalizing (the raw tree as written).
Expr parse_raw(std::string_view text, const SymbolTable& symbols);

// ------------------------------------------------------------- numerics

using Bindings = std::map<std::string, double, std::less<>>;

/// IEEE evaluation. Throws DomainError (division by zero, log of a
/// non-positive number, even root of a negative number, non-finite result)
/// or UnboundSymbol.
double eval_numeric(const Expr& e, const Bindings& bindings);

/// Like eval_numeric, also reporting the largest magnitude of any
/// subexpression encountered (the scale used by zero testing).
double eval_numeric(const Expr& e, const Bindings& bindings, double& max_magnitude);

}  // namespace sqe
