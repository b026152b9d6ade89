#include <algorithm>
#include <map>
#include <stdexcept>

#include "algebra.hpp"

namespace sqe::detail {

namespace {

int sign_of(long v) { return (v > 0) - (v < 0); }

class PolyBuilder {
 public:
  void add(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
    }
  }
  Polynomial take() {
    Polynomial out;
    out.reserve(terms_.size());
    for (auto& [m, c] : terms_) {
      if (sgn(c) != 0) {
        out.push_back(Term{m, c});
      }
    }
    terms_.clear();
    return out;
  }

 private:
  std::map<Monomial, Rational, MonomialGreater> terms_;
};

}  // namespace

int compare_atoms(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) {
    return a.kind < b.kind ? -1 : 1;
  }
  if (a.kind == Atom::Kind::Symbol) {
    int c = a.name.compare(b.name);
    return (c > 0) - (c < 0);
  }
  if (int c = compare(a.arg, b.arg); c != 0) {
    return c;
  }
  return (a.index > b.index) - (a.index < b.index);
}

long Monomial::degree() const {
  long d = 0;
  for (const auto& [atom, e] : powers) {
    d += e;
  }
  return d;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
  long da = a.degree();
  long db = b.degree();
  if (da != db) {
    return da > db ? 1 : -1;
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.powers.size() || j < b.powers.size()) {
    if (j == b.powers.size()) {
      return sign_of(a.powers[i].second);
    }
    if (i == a.powers.size()) {
      return -sign_of(b.powers[j].second);
    }
    int c = compare_atoms(a.powers[i].first, b.powers[j].first);
    if (c == 0) {
      if (a.powers[i].second != b.powers[j].second) {
        return a.powers[i].second > b.powers[j].second ? 1 : -1;
      }
      ++i;
      ++j;
    } else if (c < 0) {
      return sign_of(a.powers[i].second);
    } else {
      return -sign_of(b.powers[j].second);
    }
  }
  bool az = a.exp_arg.is_zero();
  bool bz = b.exp_arg.is_zero();
  if (az || bz) {
    return az == bz ? 0 : (az ? -1 : 1);
  }
  return compare(a.exp_arg, b.exp_arg);
}

int compare_polynomials(const Polynomial& a, const Polynomial& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (int c = compare_monomials(a[k].mono, b[k].mono); c != 0) {
      return c;
    }
    if (int c = cmp(a[k].coef, b[k].coef); c != 0) {
      return c > 0 ? 1 : -1;
    }
  }
  if (a.size() != b.size()) {
    return a.size() > b.size() ? 1 : -1;
  }
  return 0;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.powers.reserve(a.powers.size() + b.powers.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.powers.size() || j < b.powers.size()) {
    if (j == b.powers.size()) {
      r.powers.push_back(a.powers[i++]);
    } else if (i == a.powers.size()) {
      r.powers.push_back(b.powers[j++]);
    } else {
      int c = compare_atoms(a.powers[i].first, b.powers[j].first);
      if (c < 0) {
        r.powers.push_back(a.powers[i++]);
      } else if (c > 0) {
        r.powers.push_back(b.powers[j++]);
      } else {
        long e = a.powers[i].second + b.powers[j].second;
        if (e != 0) {
          r.powers.emplace_back(a.powers[i].first, e);
        }
        ++i;
        ++j;
      }
    }
  }
  if (a.exp_arg.is_zero()) {
    r.exp_arg = b.exp_arg;
  } else if (b.exp_arg.is_zero()) {
    r.exp_arg = a.exp_arg;
  } else {
    r.exp_arg = a.exp_arg + b.exp_arg;
  }
  return r;
}

Monomial mono_pow(const Monomial& a, long k) {
  Monomial r;
  if (k == 0) {
    return r;
  }
  r.powers = a.powers;
  for (auto& p : r.powers) {
    p.second *= k;
  }
  if (!a.exp_arg.is_zero()) {
    r.exp_arg = Expr::integer(k) * a.exp_arg;
  }
  return r;
}

namespace {

/// q with a = q * b, when every atom exponent of b is covered by a and the
/// exponential factors are compatible.
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial q;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.powers.size() || j < b.powers.size()) {
    if (j == b.powers.size()) {
      q.powers.push_back(a.powers[i++]);
      continue;
    }
    if (i == a.powers.size()) {
      if (b.powers[j].second > 0) {
        return std::nullopt;
      }
      q.powers.emplace_back(b.powers[j].first, -b.powers[j].second);
      ++j;
      continue;
    }
    int c = compare_atoms(a.powers[i].first, b.powers[j].first);
    if (c < 0) {
      q.powers.push_back(a.powers[i++]);
    } else if (c > 0) {
      if (b.powers[j].second > 0) {
        return std::nullopt;
      }
      q.powers.emplace_back(b.powers[j].first, -b.powers[j].second);
      ++j;
    } else {
      long e = a.powers[i].second - b.powers[j].second;
      if (e < 0 && a.powers[i].second >= 0) {
        return std::nullopt;
      }
      if (e != 0) {
        q.powers.emplace_back(a.powers[i].first, e);
      }
      ++i;
      ++j;
    }
  }
  if (!b.exp_arg.is_zero()) {
    if (b.exp_arg != a.exp_arg) {
      return std::nullopt;
    }
  } else {
    q.exp_arg = a.exp_arg;
  }
  return q;
}

long poly_degree(const Polynomial& p) {
  long d = 0;
  bool first = true;
  for (const auto& t : p) {
    long td = t.mono.degree();
    if (first || td > d) {
      d = td;
      first = false;
    }
  }
  return d;
}

}  // namespace

Polynomial poly_constant(const Rational& c) {
  if (sgn(c) == 0) {
    return {};
  }
  return {Term{Monomial{}, c}};
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      r.push_back(a[i++]);
    } else if (i == a.size()) {
      r.push_back(b[j++]);
    } else {
      int c = compare_monomials(a[i].mono, b[j].mono);
      if (c > 0) {
        r.push_back(a[i++]);
      } else if (c < 0) {
        r.push_back(b[j++]);
      } else {
        Rational s = a[i].coef + b[j].coef;
        if (sgn(s) != 0) {
          r.push_back(Term{a[i].mono, s});
        }
        ++i;
        ++j;
      }
    }
  }
  return r;
}

Polynomial poly_scale(const Polynomial& a, const Rational& c) {
  if (sgn(c) == 0) {
    return {};
  }
  Polynomial r = a;
  for (auto& t : r) {
    t.coef *= c;
  }
  return r;
}

Polynomial poly_mul_term(const Polynomial& a, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) {
    return {};
  }
  if (m.is_one()) {
    return poly_scale(a, c);
  }
  PolyBuilder b;
  for (const auto& t : a) {
    b.add(mono_mul(t.mono, m), t.coef * c);
  }
  return b.take();
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  if (a.size() == 1) {
    return poly_mul_term(b, a[0].mono, a[0].coef);
  }
  if (b.size() == 1) {
    return poly_mul_term(a, b[0].mono, b[0].coef);
  }
  PolyBuilder out;
  for (const auto& s : a) {
    for (const auto& t : b) {
      out.add(mono_mul(s.mono, t.mono), s.coef * t.coef);
    }
  }
  return out.take();
}

Polynomial poly_pow(const Polynomial& a, long k) {
  if (k < 0) {
    throw std::invalid_argument("poly_pow: negative exponent");
  }
  Polynomial result = poly_constant(1);
  Polynomial base = a;
  while (k > 0) {
    if (k & 1) {
      result = poly_mul(result, base);
    }
    k >>= 1;
    if (k > 0) {
      base = poly_mul(base, base);
    }
  }
  return result;
}

std::optional<Polynomial> poly_exact_div(const Polynomial& a, const Polynomial& b) {
  if (b.empty()) {
    throw DivisionByZero("polynomial division by zero");
  }
  if (a.empty()) {
    return Polynomial{};
  }
  if (poly_degree(a) < poly_degree(b) || a.size() < 1) {
    return std::nullopt;
  }
  // The step budget only matters when exponential factors break the
  // multiplicativity of the term order.
  constexpr int kMaxSteps = 4096;
  PolyBuilder quotient;
  Polynomial rem = a;
  for (int step = 0; !rem.empty(); ++step) {
    if (step > kMaxSteps) {
      return std::nullopt;
    }
    auto m = mono_div(rem.front().mono, b.front().mono);
    if (!m) {
      return std::nullopt;
    }
    Rational c = rem.front().coef / b.front().coef;
    quotient.add(*m, c);
    rem = poly_add(rem, poly_mul_term(b, *m, -c));
  }
  return quotient.take();
}

}  // namespace sqe::detail
