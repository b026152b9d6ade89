#include <algorithm>
#include <numeric>
#include <set>

#include "algebra.hpp"

namespace sqe::detail {

namespace {

bool is_unit_poly(const Polynomial& p) { return p.size() == 1 && p[0].mono.is_one() && p[0].coef == 1; }

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

/// Index of a power that breaks the trig normal form: cos(u)^k with k >= 2,
/// or sin(u)^k with k >= 2 next to cos(u)^j with j < 0. Returns -1 if none.
std::ptrdiff_t reducible_trig(const Monomial& m) {
  for (std::size_t i = 0; i < m.powers.size(); ++i) {
    const auto& [atom, e] = m.powers[i];
    if (atom.kind == Atom::Kind::Cos && e >= 2) {
      return static_cast<std::ptrdiff_t>(i);
    }
    if (atom.kind == Atom::Kind::Sin && e >= 2) {
      for (const auto& [other, f] : m.powers) {
        if (other.kind == Atom::Kind::Cos && f < 0 && other.arg == atom.arg) {
          return static_cast<std::ptrdiff_t>(i);
        }
      }
    }
  }
  return -1;
}

bool has_reducible_trig(const Polynomial& p) {
  return std::any_of(p.begin(), p.end(), [](const Term& t) { return reducible_trig(t.mono) >= 0; });
}

/// Rewrites cos(u)^k, k >= 2, as cos(u)^(k-2) * (1 - sin(u)^2), and
/// sin(u)^k * cos(u)^j, j < 0, as sin(u)^(k-2) * cos(u)^j * (1 - cos(u)^2),
/// until neither pattern remains. The Laurent monomials left over form a
/// basis modulo sin^2 + cos^2 = 1, so equal functions get equal forms.
Polynomial reduce_trig(Polynomial p) {
  while (has_reducible_trig(p)) {
    Polynomial next;
    for (const auto& t : p) {
      std::ptrdiff_t at = reducible_trig(t.mono);
      if (at < 0) {
        next = poly_add(next, Polynomial{t});
        continue;
      }
      auto idx = static_cast<std::size_t>(at);
      Monomial rest = t.mono;
      const Atom& hit = t.mono.powers[idx].first;
      Atom other{hit.kind == Atom::Kind::Cos ? Atom::Kind::Sin : Atom::Kind::Cos, {}, hit.arg, 0};
      rest.powers[idx].second -= 2;
      if (rest.powers[idx].second == 0) {
        rest.powers.erase(rest.powers.begin() + at);
      }
      Monomial sq;
      sq.powers.emplace_back(other, 2);
      next = poly_add(next, Polynomial{Term{rest, t.coef}});
      next = poly_add(next, Polynomial{Term{mono_mul(rest, sq), -t.coef}});
    }
    p = std::move(next);
  }
  return p;
}

bool has_bad_root(const Monomial& m) {
  for (const auto& [atom, e] : m.powers) {
    if (atom.kind == Atom::Kind::Root && (e < 0 || e >= atom.index)) {
      return true;
    }
  }
  return false;
}

void insert_factor(std::vector<Factor>& list, const Polynomial& f, long k);

RF reduce(RF r);

/// Polynomial to canonical RF: trig rewrite and root exponents moved into
/// [0, q) by pulling whole powers of the base out.
RF rf_from_poly(Polynomial p) {
  p = reduce_trig(std::move(p));
  Polynomial good;
  std::vector<Term> bad;
  for (auto& t : p) {
    if (has_bad_root(t.mono)) {
      bad.push_back(std::move(t));
    } else {
      good.push_back(std::move(t));
    }
  }
  RF result{std::move(good), {}};
  for (auto& t : bad) {
    Monomial m;
    m.exp_arg = t.mono.exp_arg;
    RF mult = rf_constant(t.coef);
    for (const auto& [atom, e] : t.mono.powers) {
      if (atom.kind == Atom::Kind::Root && (e < 0 || e >= atom.index)) {
        long k = floor_div(e, atom.index);
        long rem = e - k * atom.index;
        if (rem != 0) {
          m.powers.emplace_back(atom, rem);
        }
        mult = rf_mul(mult, rf_pow(*to_rf(atom.arg), k));
      } else {
        m.powers.emplace_back(atom, e);
      }
    }
    result = rf_add(result, rf_mul(RF{Polynomial{Term{m, Rational(1)}}, {}}, mult));
  }
  return result;
}

struct Split {
  Rational content;
  Monomial mono;
  Polynomial prim;
};

Monomial mono_div_exact(const Monomial& a, const Monomial& b) {
  Monomial inv = mono_pow(b, -1);
  Monomial q = mono_mul(a, Monomial{inv.powers, Expr()});
  if (!b.exp_arg.is_zero()) {
    q.exp_arg = Expr();
  }
  return q;
}

/// p = content * mono * prim with prim primitive over Z, free of monomial
/// content and with a positive leading coefficient.
Split split_content(const Polynomial& p) {
  Split s;
  std::vector<Atom> atoms;
  for (const auto& t : p) {
    for (const auto& [atom, e] : t.mono.powers) {
      atoms.push_back(atom);
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return compare_atoms(a, b) < 0; });
  atoms.erase(std::unique(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return compare_atoms(a, b) == 0; }),
              atoms.end());
  for (const auto& atom : atoms) {
    long lo = 0;
    bool first = true;
    for (const auto& t : p) {
      long e = 0;
      for (const auto& [a2, e2] : t.mono.powers) {
        if (compare_atoms(a2, atom) == 0) {
          e = e2;
          break;
        }
      }
      if (first || e < lo) {
        lo = e;
        first = false;
      }
    }
    if (lo != 0) {
      s.mono.powers.emplace_back(atom, lo);
    }
  }
  const Expr& e0 = p.front().mono.exp_arg;
  if (!e0.is_zero() && std::all_of(p.begin(), p.end(), [&](const Term& t) { return t.mono.exp_arg == e0; })) {
    s.mono.exp_arg = e0;
  }
  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& t : p) {
    mpz_class n = abs(t.coef.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den().get_mpz_t());
  }
  s.content = Rational(g, l);
  s.content.canonicalize();
  if (sgn(p.front().coef) < 0) {
    s.content = -s.content;
  }
  Rational inv = 1 / s.content;
  for (const auto& t : p) {
    s.prim.push_back(Term{mono_div_exact(t.mono, s.mono), t.coef * inv});
  }
  std::sort(s.prim.begin(), s.prim.end(),
            [](const Term& a, const Term& b) { return compare_monomials(a.mono, b.mono) > 0; });
  return s;
}

void insert_factor(std::vector<Factor>& list, const Polynomial& f, long k) {
  if (is_unit_poly(f)) {
    return;
  }
  for (auto& g : list) {
    if (compare_polynomials(g.poly, f) == 0) {
      g.mult += k;
      return;
    }
  }
  for (std::size_t idx = 0; idx < list.size(); ++idx) {
    if (auto q = poly_exact_div(f, list[idx].poly); q && !q->empty()) {
      list[idx].mult += k;
      insert_factor(list, *q, k);
      return;
    }
    if (auto q = poly_exact_div(list[idx].poly, f); q && !q->empty()) {
      long kg = list[idx].mult;
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(idx));
      insert_factor(list, f, kg + k);
      insert_factor(list, *q, kg);
      return;
    }
  }
  list.push_back(Factor{f, k});
  std::sort(list.begin(), list.end(),
            [](const Factor& a, const Factor& b) { return compare_polynomials(a.poly, b.poly) < 0; });
}

void drop_empty_factors(std::vector<Factor>& list) {
  list.erase(std::remove_if(list.begin(), list.end(), [](const Factor& f) { return f.mult == 0; }), list.end());
}

/// Cancels denominator factors that divide the numerator.
RF reduce(RF r) {
  drop_empty_factors(r.den);
  if (r.num.empty()) {
    return RF{};
  }
  if (r.den.empty()) {
    return r;
  }
  // Clear negative (Laurent) exponents so exact division works in the
  // polynomial ring.
  Monomial shift;
  std::vector<std::pair<Atom, long>> lows;
  for (const auto& t : r.num) {
    for (const auto& [atom, e] : t.mono.powers) {
      if (e >= 0) {
        continue;
      }
      auto it = std::find_if(lows.begin(), lows.end(), [&](const auto& p) { return compare_atoms(p.first, atom) == 0; });
      if (it == lows.end()) {
        lows.emplace_back(atom, e);
      } else {
        it->second = std::min(it->second, e);
      }
    }
  }
  std::sort(lows.begin(), lows.end(), [](const auto& a, const auto& b) { return compare_atoms(a.first, b.first) < 0; });
  for (const auto& [atom, e] : lows) {
    shift.powers.emplace_back(atom, -e);
  }
  Polynomial n = poly_mul_term(r.num, shift, 1);
  bool changed = false;
  for (auto& f : r.den) {
    while (f.mult > 0) {
      auto q = poly_exact_div(n, f.poly);
      if (!q) {
        break;
      }
      n = std::move(*q);
      --f.mult;
      changed = true;
    }
  }
  if (!changed) {
    return r;
  }
  drop_empty_factors(r.den);
  r.num = reduce_trig(poly_mul_term(n, mono_pow(shift, -1), 1));
  return r;
}

std::vector<long> decompose(const std::vector<Factor>& list, std::vector<Factor>& base) {
  std::vector<long> cnt(base.size(), 0);
  for (const auto& f : list) {
    Polynomial rem = f.poly;
    for (std::size_t i = 0; i < base.size() && !is_unit_poly(rem); ++i) {
      if (compare_polynomials(rem, base[i].poly) == 0) {
        cnt[i] += f.mult;
        rem = poly_constant(1);
        break;
      }
      while (!is_unit_poly(rem)) {
        auto q = poly_exact_div(rem, base[i].poly);
        if (!q || q->empty()) {
          break;
        }
        cnt[i] += f.mult;
        rem = std::move(*q);
      }
    }
    if (!is_unit_poly(rem)) {
      base.push_back(Factor{rem, 0});
      cnt.push_back(f.mult);
    }
  }
  return cnt;
}

Polynomial poly_of_factors(const std::vector<Factor>& base, const std::vector<long>& mults) {
  Polynomial p = poly_constant(1);
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (mults[i] > 0) {
      p = poly_mul(p, poly_pow(base[i].poly, mults[i]));
    }
  }
  return p;
}

bool same_den(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].mult != b[i].mult || compare_polynomials(a[i].poly, b[i].poly) != 0) {
      return false;
    }
  }
  return true;
}

bool atom_depends_on(const Atom& atom, std::string_view wrt) {
  if (atom.kind == Atom::Kind::Symbol) {
    return atom.name == wrt;
  }
  return rf_depends_on(*to_rf(atom.arg), wrt);
}

bool poly_depends_on(const Polynomial& p, std::string_view wrt) {
  for (const auto& t : p) {
    for (const auto& [atom, e] : t.mono.powers) {
      if (atom_depends_on(atom, wrt)) {
        return true;
      }
    }
    if (!t.mono.exp_arg.is_zero() && rf_depends_on(*to_rf(t.mono.exp_arg), wrt)) {
      return true;
    }
  }
  return false;
}

RF atom_derivative(const Atom& atom, std::string_view wrt) {
  switch (atom.kind) {
    case Atom::Kind::Symbol:
      return rf_constant(atom.name == wrt ? 1 : 0);
    case Atom::Kind::Sin:
      return rf_mul(rf_atom(Atom{Atom::Kind::Cos, {}, atom.arg, 0}), rf_derivative(*to_rf(atom.arg), wrt));
    case Atom::Kind::Cos:
      return rf_neg(rf_mul(rf_atom(Atom{Atom::Kind::Sin, {}, atom.arg, 0}), rf_derivative(*to_rf(atom.arg), wrt)));
    case Atom::Kind::Log:
      return rf_mul(rf_derivative(*to_rf(atom.arg), wrt), rf_inverse(*to_rf(atom.arg)));
    case Atom::Kind::Root: {
      const RF& base = *to_rf(atom.arg);
      RF r = rf_mul(rf_atom(atom), rf_derivative(base, wrt));
      return rf_mul(rf_mul(r, rf_inverse(base)), rf_constant(Rational(1, atom.index)));
    }
  }
  return RF{};
}

RF poly_derivative(const Polynomial& p, std::string_view wrt) {
  RF total;
  for (const auto& t : p) {
    const Monomial& m = t.mono;
    for (std::size_t idx = 0; idx < m.powers.size(); ++idx) {
      const auto& [atom, e] = m.powers[idx];
      if (!atom_depends_on(atom, wrt)) {
        continue;
      }
      Monomial rest = m;
      rest.powers[idx].second -= 1;
      if (rest.powers[idx].second == 0) {
        rest.powers.erase(rest.powers.begin() + static_cast<std::ptrdiff_t>(idx));
      }
      RF part = rf_mul(rf_from_poly(Polynomial{Term{rest, t.coef * e}}), atom_derivative(atom, wrt));
      total = rf_add(total, part);
    }
    if (!m.exp_arg.is_zero() && rf_depends_on(*to_rf(m.exp_arg), wrt)) {
      RF part = rf_mul(RF{Polynomial{t}, {}}, rf_derivative(*to_rf(m.exp_arg), wrt));
      total = rf_add(total, part);
    }
  }
  return total;
}

void collect_atom_symbols(const Atom& atom, std::vector<std::string>& out) {
  if (atom.kind == Atom::Kind::Symbol) {
    out.push_back(atom.name);
  } else {
    rf_collect_symbols(*to_rf(atom.arg), out);
  }
}

void collect_poly_symbols(const Polynomial& p, std::vector<std::string>& out) {
  for (const auto& t : p) {
    for (const auto& [atom, e] : t.mono.powers) {
      collect_atom_symbols(atom, out);
    }
    if (!t.mono.exp_arg.is_zero()) {
      rf_collect_symbols(*to_rf(t.mono.exp_arg), out);
    }
  }
}

}  // namespace

std::optional<Rational> RationalFunction::constant() const {
  if (num.empty()) {
    return Rational(0);
  }
  if (den.empty() && num.size() == 1 && num[0].mono.is_one()) {
    return num[0].coef;
  }
  return std::nullopt;
}

RF rf_constant(const Rational& c) { return RF{poly_constant(c), {}}; }

RF rf_atom(Atom atom, long exponent) {
  Monomial m;
  m.powers.emplace_back(std::move(atom), exponent);
  return rf_from_poly(Polynomial{Term{std::move(m), Rational(1)}});
}

RF rf_exp(const Expr& arg) {
  if (arg.is_zero()) {
    return rf_constant(1);
  }
  Monomial m;
  m.exp_arg = normalize(arg);
  return RF{Polynomial{Term{std::move(m), Rational(1)}}, {}};
}

RF rf_add(const RF& a, const RF& b) {
  if (a.num.empty()) {
    return b;
  }
  if (b.num.empty()) {
    return a;
  }
  if (same_den(a.den, b.den)) {
    return reduce(RF{reduce_trig(poly_add(a.num, b.num)), a.den});
  }
  std::vector<Factor> base;
  for (const auto& f : a.den) {
    insert_factor(base, f.poly, 0);
  }
  for (const auto& f : b.den) {
    insert_factor(base, f.poly, 0);
  }
  std::vector<long> ea = decompose(a.den, base);
  std::vector<long> eb = decompose(b.den, base);
  ea.resize(base.size(), 0);
  std::vector<long> lcm(base.size());
  std::vector<long> fa(base.size());
  std::vector<long> fb(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    lcm[i] = std::max(ea[i], eb[i]);
    fa[i] = lcm[i] - ea[i];
    fb[i] = lcm[i] - eb[i];
  }
  Polynomial na = poly_mul(a.num, poly_of_factors(base, fa));
  Polynomial nb = poly_mul(b.num, poly_of_factors(base, fb));
  std::vector<Factor> den;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (lcm[i] > 0) {
      den.push_back(Factor{base[i].poly, lcm[i]});
    }
  }
  std::sort(den.begin(), den.end(),
            [](const Factor& x, const Factor& y) { return compare_polynomials(x.poly, y.poly) < 0; });
  RF sum = rf_from_poly(poly_add(na, nb));
  for (const auto& f : sum.den) {
    insert_factor(den, f.poly, f.mult);
  }
  return reduce(RF{std::move(sum.num), std::move(den)});
}

RF rf_neg(const RF& a) { return RF{poly_scale(a.num, -1), a.den}; }

RF rf_mul(const RF& a, const RF& b) {
  if (a.num.empty() || b.num.empty()) {
    return RF{};
  }
  RF r = rf_from_poly(poly_mul(a.num, b.num));
  std::vector<Factor> den = a.den;
  for (const auto& f : b.den) {
    insert_factor(den, f.poly, f.mult);
  }
  for (const auto& f : r.den) {
    insert_factor(den, f.poly, f.mult);
  }
  return reduce(RF{std::move(r.num), std::move(den)});
}

RF rf_inverse(const RF& a) {
  if (a.num.empty()) {
    throw DivisionByZero("division by zero");
  }
  Split s = split_content(a.num);
  Polynomial n{Term{mono_pow(s.mono, -1), 1 / s.content}};
  for (const auto& f : a.den) {
    n = poly_mul(n, poly_pow(f.poly, f.mult));
  }
  RF r = rf_from_poly(std::move(n));
  if (!is_unit_poly(s.prim)) {
    insert_factor(r.den, s.prim, 1);
  }
  return reduce(std::move(r));
}

RF rf_pow(const RF& a, long k) {
  if (k < 0) {
    return rf_pow(rf_inverse(a), -k);
  }
  RF result = rf_constant(1);
  RF base = a;
  while (k > 0) {
    if (k & 1) {
      result = rf_mul(result, base);
    }
    k >>= 1;
    if (k > 0) {
      base = rf_mul(base, base);
    }
  }
  return result;
}

RF rf_derivative(const RF& a, std::string_view wrt) {
  if (!rf_depends_on(a, wrt)) {
    return RF{};
  }
  RF acc = poly_derivative(a.num, wrt);
  if (a.den.empty()) {
    return acc;
  }
  RF num{a.num, {}};
  for (const auto& f : a.den) {
    if (!poly_depends_on(f.poly, wrt)) {
      continue;
    }
    RF log_deriv = rf_mul(poly_derivative(f.poly, wrt), rf_inverse(RF{f.poly, {}}));
    acc = rf_add(acc, rf_mul(rf_mul(num, rf_constant(-f.mult)), log_deriv));
  }
  return rf_mul(acc, RF{poly_constant(1), a.den});
}

bool rf_depends_on(const RF& a, std::string_view symbol) {
  if (poly_depends_on(a.num, symbol)) {
    return true;
  }
  return std::any_of(a.den.begin(), a.den.end(), [&](const Factor& f) { return poly_depends_on(f.poly, symbol); });
}

void rf_collect_symbols(const RF& a, std::vector<std::string>& out) {
  collect_poly_symbols(a.num, out);
  for (const auto& f : a.den) {
    collect_poly_symbols(f.poly, out);
  }
}

}  // namespace sqe::detail
