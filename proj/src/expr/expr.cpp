#include "sqe/expr.hpp"

#include <algorithm>
#include <array>

#include "algebra.hpp"

namespace sqe {

using detail::Node;
using detail::RF;

Expr make_expr(std::shared_ptr<const Node> node) { return Expr(std::move(node)); }

namespace {

constexpr std::array<std::pair<Func, std::string_view>, 6> kFuncNames{{
    {Func::Sin, "sin"},
    {Func::Cos, "cos"},
    {Func::Tan, "tan"},
    {Func::Exp, "exp"},
    {Func::Log, "log"},
    {Func::Sqrt, "sqrt"},
}};

std::shared_ptr<const Node> number_node(const Rational& v) {
  auto n = std::make_shared<Node>();
  n->kind = Expr::Kind::Number;
  n->value = v;
  n->value.canonicalize();
  auto rf = std::make_shared<RF>();
  if (sgn(n->value) != 0) {
    rf->num = detail::poly_constant(n->value);
  }
  n->rf = std::move(rf);
  return n;
}

const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> zero = number_node(0);
  return zero;
}

std::shared_ptr<Node> composite(Expr::Kind kind, std::vector<Expr> ops) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->ops = std::move(ops);
  return n;
}

}  // namespace

std::string_view func_name(Func f) {
  for (const auto& [fn, name] : kFuncNames) {
    if (fn == f) {
      return name;
    }
  }
  return "?";
}

std::optional<Func> func_from_name(std::string_view name) {
  for (const auto& [fn, n] : kFuncNames) {
    if (n == name) {
      return fn;
    }
  }
  return std::nullopt;
}

Expr::Expr() : node_(zero_node()) {}

Expr Expr::number(const Rational& value) {
  if (sgn(value) == 0) {
    return Expr();
  }
  return Expr(number_node(value));
}

Expr Expr::integer(long value) { return number(Rational(value)); }

Expr Expr::symbol(std::string name) {
  if (!is_identifier(name)) {
    throw ExprError("invalid symbol name '" + name + "'");
  }
  return detail::make_symbol_node(name);
}

Expr Expr::raw_add(std::vector<Expr> terms) {
  if (terms.empty()) {
    return Expr();
  }
  if (terms.size() == 1) {
    return terms.front();
  }
  return Expr(composite(Kind::Add, std::move(terms)));
}

Expr Expr::raw_mul(std::vector<Expr> factors) {
  if (factors.empty()) {
    return integer(1);
  }
  if (factors.size() == 1) {
    return factors.front();
  }
  return Expr(composite(Kind::Mul, std::move(factors)));
}

Expr Expr::raw_pow(Expr base, const Rational& exponent) {
  auto n = composite(Kind::Pow, {std::move(base)});
  n->value = exponent;
  n->value.canonicalize();
  return Expr(std::move(n));
}

Expr Expr::raw_func(Func f, Expr arg) {
  auto n = composite(Kind::Func, {std::move(arg)});
  n->func = f;
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_normalized() const { return node_->rf != nullptr; }

const Rational& Expr::value() const {
  if (kind() != Kind::Number) {
    throw std::logic_error("Expr::value on a non-number");
  }
  return node_->value;
}

const std::string& Expr::name() const {
  if (kind() != Kind::Symbol) {
    throw std::logic_error("Expr::name on a non-symbol");
  }
  return node_->name;
}

const Rational& Expr::exponent() const {
  if (kind() != Kind::Pow) {
    throw std::logic_error("Expr::exponent on a non-power");
  }
  return node_->value;
}

Func Expr::func() const {
  if (kind() != Kind::Func) {
    throw std::logic_error("Expr::func on a non-function");
  }
  return node_->func;
}

std::span<const Expr> Expr::operands() const { return node_->ops; }

bool Expr::is_zero() const {
  if (node_->rf) {
    return node_->rf->is_zero();
  }
  return kind() == Kind::Number && sgn(node_->value) == 0;
}

bool Expr::is_one() const {
  auto c = as_number();
  return c && *c == 1;
}

std::optional<Rational> Expr::as_number() const {
  if (node_->rf) {
    return node_->rf->constant();
  }
  if (kind() == Kind::Number) {
    return node_->value;
  }
  return std::nullopt;
}

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) {
    return 0;
  }
  if (a.kind() != b.kind()) {
    return a.kind() < b.kind() ? -1 : 1;
  }
  switch (a.kind()) {
    case Expr::Kind::Number: {
      int c = cmp(a.value(), b.value());
      return (c > 0) - (c < 0);
    }
    case Expr::Kind::Symbol: {
      int c = a.name().compare(b.name());
      return (c > 0) - (c < 0);
    }
    case Expr::Kind::Pow: {
      if (int c = compare(a.operands()[0], b.operands()[0]); c != 0) {
        return c;
      }
      int c = cmp(a.exponent(), b.exponent());
      return (c > 0) - (c < 0);
    }
    case Expr::Kind::Func:
      if (a.func() != b.func()) {
        return a.func() < b.func() ? -1 : 1;
      }
      return compare(a.operands()[0], b.operands()[0]);
    case Expr::Kind::Add:
    case Expr::Kind::Mul: {
      auto ao = a.operands();
      auto bo = b.operands();
      if (ao.size() != bo.size()) {
        return ao.size() < bo.size() ? -1 : 1;
      }
      for (std::size_t i = 0; i < ao.size(); ++i) {
        if (int c = compare(ao[i], bo[i]); c != 0) {
          return c;
        }
      }
      return 0;
    }
  }
  return 0;
}

Expr operator+(const Expr& a, const Expr& b) { return detail::to_expr(detail::rf_add(*detail::to_rf(a), *detail::to_rf(b))); }

Expr operator-(const Expr& a, const Expr& b) {
  return detail::to_expr(detail::rf_add(*detail::to_rf(a), detail::rf_neg(*detail::to_rf(b))));
}

Expr operator*(const Expr& a, const Expr& b) { return detail::to_expr(detail::rf_mul(*detail::to_rf(a), *detail::to_rf(b))); }

Expr operator/(const Expr& a, const Expr& b) {
  const auto& rb = *detail::to_rf(b);
  if (rb.is_zero()) {
    throw DivisionByZero("division by zero");
  }
  return detail::to_expr(detail::rf_mul(*detail::to_rf(a), detail::rf_inverse(rb)));
}

Expr operator-(const Expr& a) { return detail::to_expr(detail::rf_neg(*detail::to_rf(a))); }

Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, long exponent) { return detail::to_expr(detail::rf_pow(*detail::to_rf(base), exponent)); }

Expr pow(const Expr& base, const Rational& exponent) { return normalize(Expr::raw_pow(base, exponent)); }

Expr sin(const Expr& x) { return normalize(Expr::raw_func(Func::Sin, x)); }
Expr cos(const Expr& x) { return normalize(Expr::raw_func(Func::Cos, x)); }
Expr tan(const Expr& x) { return normalize(Expr::raw_func(Func::Tan, x)); }
Expr exp(const Expr& x) { return normalize(Expr::raw_func(Func::Exp, x)); }
Expr log(const Expr& x) { return normalize(Expr::raw_func(Func::Log, x)); }
Expr sqrt(const Expr& x) { return normalize(Expr::raw_func(Func::Sqrt, x)); }

Expr normalize(const Expr& e) {
  if (e.is_normalized()) {
    return e;
  }
  return detail::to_expr(*detail::to_rf(e));
}

Expr differentiate(const Expr& e, std::string_view wrt) {
  return detail::to_expr(detail::rf_derivative(*detail::to_rf(e), wrt));
}

std::vector<std::string> free_symbols(const Expr& e) {
  std::vector<std::string> out;
  detail::rf_collect_symbols(*detail::to_rf(e), out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool depends_on(const Expr& e, std::string_view symbol) { return detail::rf_depends_on(*detail::to_rf(e), symbol); }

// ------------------------------------------------------------ SymbolTable

bool is_identifier(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

void SymbolTable::check_new_name(const std::string& name) const {
  if (!is_identifier(name)) {
    throw ExprError("invalid identifier '" + name + "'");
  }
  if (func_from_name(name)) {
    throw ExprError("identifier '" + name + "' collides with a function name");
  }
  if (contains(name)) {
    throw ExprError("duplicate identifier '" + name + "'");
  }
}

void SymbolTable::add_coordinate(const std::string& name) {
  check_new_name(name);
  coordinates_.push_back(name);
}

void SymbolTable::add_parameter(Parameter p) {
  check_new_name(p.name);
  parameters_.push_back(std::move(p));
}

bool SymbolTable::contains(std::string_view name) const { return is_coordinate(name) || parameter(name) != nullptr; }

bool SymbolTable::is_coordinate(std::string_view name) const {
  return std::find(coordinates_.begin(), coordinates_.end(), name) != coordinates_.end();
}

const Parameter* SymbolTable::parameter(std::string_view name) const {
  for (const auto& p : parameters_) {
    if (p.name == name) {
      return &p;
    }
  }
  return nullptr;
}

std::vector<std::string> SymbolTable::all_names() const {
  std::vector<std::string> out = coordinates_;
  for (const auto& p : parameters_) {
    out.push_back(p.name);
  }
  return out;
}

}  // namespace sqe
