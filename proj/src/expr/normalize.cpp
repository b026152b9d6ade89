#include <unordered_map>

#include "algebra.hpp"

namespace sqe::detail {

namespace {

RF compute_rf(const Expr& e);

std::optional<mpz_class> exact_root(const mpz_class& v, unsigned long d) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), d) == 0) {
    return std::nullopt;
  }
  return r;
}

RF rational_power(const Expr& base, const Rational& q) {
  Expr b = normalize(base);
  const RF& rb = *to_rf(b);
  long p = q.get_num().get_si();
  long d = q.get_den().get_si();
  if (auto c = rb.constant()) {
    if (sgn(*c) == 0) {
      if (p > 0) {
        return RF{};
      }
      throw DivisionByZero("zero raised to a negative power");
    }
    if (sgn(*c) > 0 || d % 2 == 1) {
      auto num = exact_root(c->get_num(), static_cast<unsigned long>(d));
      auto den = exact_root(c->get_den(), static_cast<unsigned long>(d));
      if (num && den) {
        return rf_pow(rf_constant(Rational(*num, *den)), p);
      }
    }
  }
  if (rb.den.empty() && rb.num.size() == 1 && rb.num[0].coef == 1 && rb.num[0].mono.powers.empty() &&
      !rb.num[0].mono.exp_arg.is_zero()) {
    return rf_exp(Expr::number(q) * rb.num[0].mono.exp_arg);
  }
  return rf_atom(Atom{Atom::Kind::Root, {}, b, static_cast<int>(d)}, p);
}

RF function_rf(Func f, const Expr& raw_arg) {
  Expr a = normalize(raw_arg);
  switch (f) {
    case Func::Sin:
      return a.is_zero() ? RF{} : rf_atom(Atom{Atom::Kind::Sin, {}, a, 0});
    case Func::Cos:
      return a.is_zero() ? rf_constant(1) : rf_atom(Atom{Atom::Kind::Cos, {}, a, 0});
    case Func::Tan:
      if (a.is_zero()) {
        return RF{};
      }
      return rf_mul(rf_atom(Atom{Atom::Kind::Sin, {}, a, 0}), rf_inverse(rf_atom(Atom{Atom::Kind::Cos, {}, a, 0})));
    case Func::Exp:
      return rf_exp(a);
    case Func::Log:
      if (a.is_one()) {
        return RF{};
      }
      return rf_atom(Atom{Atom::Kind::Log, {}, a, 0});
    case Func::Sqrt:
      return rational_power(a, Rational(1, 2));
  }
  return RF{};
}

RF power_rf(const Expr& base, const Rational& q) {
  if (q.get_den() != 1) {
    return rational_power(base, q);
  }
  long k = q.get_num().get_si();
  if (k >= 0) {
    return rf_pow(*to_rf(base), k);
  }
  // Negative powers distribute over products and fold nested integer powers,
  // so that 1/(f^2*g) keeps f and g as separate denominator factors.
  if (base.kind() == Expr::Kind::Mul) {
    RF acc = rf_constant(1);
    for (const auto& f : base.operands()) {
      acc = rf_mul(acc, power_rf(f, q));
    }
    return acc;
  }
  if (base.kind() == Expr::Kind::Pow && base.exponent().get_den() == 1) {
    return power_rf(base.operands()[0], base.exponent() * q);
  }
  return rf_pow(rf_inverse(*to_rf(base)), -k);
}

RF compute_rf(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return rf_constant(e.value());
    case Expr::Kind::Symbol:
      return rf_atom(Atom{Atom::Kind::Symbol, e.name(), {}, 0});
    case Expr::Kind::Add: {
      RF acc;
      for (const auto& t : e.operands()) {
        acc = rf_add(acc, *to_rf(t));
      }
      return acc;
    }
    case Expr::Kind::Mul: {
      RF acc = rf_constant(1);
      for (const auto& f : e.operands()) {
        acc = rf_mul(acc, *to_rf(f));
        if (acc.is_zero()) {
          break;
        }
      }
      return acc;
    }
    case Expr::Kind::Pow:
      return power_rf(e.operands()[0], e.exponent());
    case Expr::Kind::Func:
      return function_rf(e.func(), e.operands()[0]);
  }
  return RF{};
}

Expr atom_expr(const Atom& atom) {
  switch (atom.kind) {
    case Atom::Kind::Symbol:
      return make_symbol_node(atom.name);
    case Atom::Kind::Sin:
      return Expr::raw_func(Func::Sin, atom.arg);
    case Atom::Kind::Cos:
      return Expr::raw_func(Func::Cos, atom.arg);
    case Atom::Kind::Log:
      return Expr::raw_func(Func::Log, atom.arg);
    case Atom::Kind::Root:
      break;
  }
  return atom.arg;
}

Expr atom_power(const Atom& atom, long e) {
  if (atom.kind == Atom::Kind::Root) {
    return Expr::raw_pow(atom.arg, Rational(e, atom.index));
  }
  Expr base = atom_expr(atom);
  return e == 1 ? base : Expr::raw_pow(base, e);
}

Expr term_expr(const Term& t) {
  std::vector<Expr> factors;
  if (t.coef != 1) {
    factors.push_back(Expr::number(t.coef));
  }
  for (const auto& [atom, e] : t.mono.powers) {
    factors.push_back(atom_power(atom, e));
  }
  if (!t.mono.exp_arg.is_zero()) {
    factors.push_back(Expr::raw_func(Func::Exp, t.mono.exp_arg));
  }
  return Expr::raw_mul(std::move(factors));
}

Expr poly_expr(const Polynomial& p) {
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& t : p) {
    terms.push_back(term_expr(t));
  }
  return Expr::raw_add(std::move(terms));
}

Expr build_tree(const RF& rf) {
  Expr num = poly_expr(rf.num);
  if (rf.den.empty()) {
    return num;
  }
  std::vector<Expr> factors;
  if (num.kind() == Expr::Kind::Mul) {
    factors.assign(num.operands().begin(), num.operands().end());
  } else if (!num.is_one()) {
    factors.push_back(num);
  }
  for (const auto& f : rf.den) {
    factors.push_back(Expr::raw_pow(poly_expr(f.poly), -f.mult));
  }
  return Expr::raw_mul(std::move(factors));
}

}  // namespace

std::shared_ptr<const RF> to_rf(const Expr& e) {
  if (const auto& rf = e.node()->rf) {
    return rf;
  }
  return std::make_shared<const RF>(compute_rf(e));
}

Expr to_expr(RF rf) {
  if (rf.num.empty()) {
    return Expr();
  }
  if (auto c = rf.constant()) {
    return Expr::number(*c);
  }
  if (rf.den.empty() && rf.num.size() == 1 && rf.num[0].coef == 1 && rf.num[0].mono.exp_arg.is_zero() &&
      rf.num[0].mono.powers.size() == 1 && rf.num[0].mono.powers[0].second == 1 &&
      rf.num[0].mono.powers[0].first.kind == Atom::Kind::Symbol) {
    return make_symbol_node(rf.num[0].mono.powers[0].first.name);
  }
  Expr tree = build_tree(rf);
  auto node = std::make_shared<Node>(*tree.node());
  node->rf = std::make_shared<const RF>(std::move(rf));
  return make_expr(std::move(node));
}

Expr make_symbol_node(const std::string& name) {
  static std::unordered_map<std::string, Expr> cache;
  if (auto it = cache.find(name); it != cache.end()) {
    return it->second;
  }
  auto node = std::make_shared<Node>();
  node->kind = Expr::Kind::Symbol;
  node->name = name;
  Monomial m;
  m.powers.emplace_back(Atom{Atom::Kind::Symbol, name, {}, 0}, 1);
  node->rf = std::make_shared<const RF>(RF{Polynomial{Term{std::move(m), Rational(1)}}, {}});
  Expr e = make_expr(std::move(node));
  cache.emplace(name, e);
  return e;
}

}  // namespace sqe::detail
