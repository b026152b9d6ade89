#include <array>
#include <string>

#include "algebra.hpp"

namespace sqe {

namespace {

// Precedence levels for parenthesization.
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

struct Rendered {
  std::string text;
  int prec;
};

bool is_negative_factor(const Expr& e) {
  if (e.kind() == Expr::Kind::Number) {
    return sgn(e.value()) < 0;
  }
  if (e.kind() == Expr::Kind::Mul) {
    const Expr& first = e.operands()[0];
    return first.kind() == Expr::Kind::Number && sgn(first.value()) < 0;
  }
  return false;
}

/// Shared layout logic for plain and LaTeX output.
class Printer {
 public:
  explicit Printer(bool latex) : latex_(latex) {}

  Rendered render(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Number:
        return number(e.value());
      case Expr::Kind::Symbol:
        return {symbol(e.name()), kAtom};
      case Expr::Kind::Add:
        return sum(e);
      case Expr::Kind::Mul:
        return product(e.operands(), false);
      case Expr::Kind::Pow:
        return power(e.operands()[0], e.exponent());
      case Expr::Kind::Func:
        return function(e.func(), e.operands()[0]);
    }
    return {"", kAtom};
  }

 private:
  std::string paren(const std::string& s) const { return latex_ ? "\\left(" + s + "\\right)" : "(" + s + ")"; }

  std::string wrap(const Rendered& r, int min_prec) const { return r.prec < min_prec ? paren(r.text) : r.text; }

  Rendered number(const Rational& v) const {
    if (v.get_den() == 1) {
      return {v.get_num().get_str(), sgn(v) < 0 ? kUnary : kAtom};
    }
    if (latex_) {
      std::string s = "\\frac{" + mpz_class(abs(v.get_num())).get_str() + "}{" + v.get_den().get_str() + "}";
      return sgn(v) < 0 ? Rendered{"-" + s, kUnary} : Rendered{s, kAtom};
    }
    return {v.get_str(), sgn(v) < 0 ? kUnary : kProduct};
  }

  std::string symbol(const std::string& name) const {
    if (!latex_) {
      return name;
    }
    static constexpr std::array<std::string_view, 24> kGreek{
        "alpha", "beta",  "gamma", "delta", "epsilon", "zeta",  "eta",   "theta",
        "iota",  "kappa", "lambda", "mu",   "nu",      "xi",    "rho",   "sigma",
        "tau",   "phi",   "chi",   "psi",   "omega",   "Lambda", "Gamma", "Omega"};
    for (auto g : kGreek) {
      if (name == g) {
        return "\\" + name;
      }
    }
    // x1 -> x^{1} (coordinate index), other names verbatim
    std::size_t split = name.find_first_of("0123456789");
    if (split != std::string::npos && split > 0 && name.find('_') == std::string::npos &&
        name.find_first_not_of("0123456789", split) == std::string::npos) {
      return "{" + name.substr(0, split) + "^{" + name.substr(split) + "}}";
    }
    std::string out;
    for (char c : name) {
      if (c == '_') {
        out += "\\_";
      } else {
        out += c;
      }
    }
    return out;
  }

  Rendered sum(const Expr& e) {
    std::string out;
    bool first = true;
    for (const auto& t : e.operands()) {
      bool neg = is_negative_factor(t);
      Rendered r = render(neg ? normalize_sign(t) : t);
      if (first) {
        out += neg ? "-" + wrap(r, kProduct) : wrap(r, kSum + 1);
      } else {
        out += neg ? " - " + wrap(r, kProduct) : " + " + wrap(r, kSum + 1);
      }
      first = false;
    }
    return {out, kSum};
  }

  /// |t| for a term whose leading factor is a negative number, keeping the
  /// remaining factors as they are.
  static Expr normalize_sign(const Expr& t) {
    if (t.kind() == Expr::Kind::Number) {
      return Expr::number(-t.value());
    }
    std::vector<Expr> factors(t.operands().begin(), t.operands().end());
    Rational c = -factors[0].value();
    if (c == 1) {
      factors.erase(factors.begin());
    } else {
      factors[0] = Expr::number(c);
    }
    return Expr::raw_mul(std::move(factors));
  }

  Rendered product(std::span<const Expr> factors, bool) {
    Rational coef = 1;
    std::vector<Expr> num;
    std::vector<Expr> den;
    for (const auto& f : factors) {
      if (f.kind() == Expr::Kind::Number) {
        coef *= f.value();
      } else if (f.kind() == Expr::Kind::Pow && sgn(f.exponent()) < 0) {
        Rational q = -f.exponent();
        den.push_back(q == 1 ? f.operands()[0] : Expr::raw_pow(f.operands()[0], q));
      } else {
        num.push_back(f);
      }
    }
    bool neg = sgn(coef) < 0;
    Rational mag = abs(coef);
    mpz_class cn = mag.get_num();
    mpz_class cd = mag.get_den();
    std::vector<std::string> num_parts;
    if (cn != 1 || num.empty()) {
      num_parts.push_back(cn.get_str());
    }
    for (const auto& f : num) {
      num_parts.push_back(wrap(render(f), kPower));
    }
    std::vector<std::string> den_parts;
    if (cd != 1) {
      den_parts.push_back(cd.get_str());
    }
    for (const auto& f : den) {
      den_parts.push_back(wrap(render(f), kPower));
    }
    std::string mul = latex_ ? " " : "*";
    auto join = [&](const std::vector<std::string>& parts) {
      std::string s;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
          s += mul;
        }
        s += parts[i];
      }
      return s;
    };
    std::string text;
    int prec = kProduct;
    if (den_parts.empty()) {
      text = join(num_parts);
      if (num_parts.size() == 1 && num.size() == 1) {
        prec = render(num[0]).prec;
        if (prec < kProduct) {
          prec = kProduct;
        }
      }
    } else if (latex_) {
      text = "\\frac{" + join(num_parts) + "}{" + join(den_parts) + "}";
      prec = kAtom;
    } else {
      std::string d = join(den_parts);
      if (den_parts.size() > 1) {
        d = "(" + d + ")";
      }
      text = join(num_parts) + "/" + d;
    }
    if (neg) {
      return {"-" + text, kUnary};
    }
    return {text, prec};
  }

  Rendered power(const Expr& base, const Rational& q) {
    if (sgn(q) < 0) {
      std::array<Expr, 2> parts{Expr::integer(1), Expr::raw_pow(base, q)};
      return product(parts, false);
    }
    Rendered b = render(base);
    // Negative numbers and anything looser than an atom need parentheses.
    std::string bt = b.prec < kAtom ? paren(b.text) : b.text;
    if (latex_ && base.kind() == Expr::Kind::Symbol && bt.front() == '{') {
      bt = "{" + bt + "}";
    }
    std::string et;
    if (q.get_den() == 1) {
      et = q.get_num().get_str();
    } else if (latex_) {
      et = "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
    } else {
      et = "(" + q.get_str() + ")";
    }
    if (latex_) {
      return {bt + "^{" + et + "}", kPower};
    }
    return {bt + "^" + et, kPower};
  }

  Rendered function(Func f, const Expr& arg) {
    Rendered a = render(arg);
    if (latex_) {
      if (f == Func::Sqrt) {
        return {"\\sqrt{" + a.text + "}", kAtom};
      }
      if (f == Func::Exp) {
        return {"e^{" + a.text + "}", kPower};
      }
      return {"\\" + std::string(func_name(f)) + paren(a.text), kAtom};
    }
    return {std::string(func_name(f)) + "(" + a.text + ")", kAtom};
  }

  bool latex_;
};

}  // namespace

std::string Expr::str() const { return Printer(false).render(*this).text; }

std::string Expr::latex() const { return Printer(true).render(*this).text; }

}  // namespace sqe
