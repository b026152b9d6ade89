#include <algorithm>
#include <cmath>

#include "sqe/expr.hpp"

namespace sqe {

namespace {

double eval_rec(const Expr& e, const Bindings& b, double& scale) {
  double v = 0.0;
  switch (e.kind()) {
    case Expr::Kind::Number:
      v = e.value().get_d();
      break;
    case Expr::Kind::Symbol: {
      auto it = b.find(e.name());
      if (it == b.end()) {
        throw UnboundSymbol(e.name());
      }
      v = it->second;
      break;
    }
    case Expr::Kind::Add:
      for (const auto& t : e.operands()) {
        v += eval_rec(t, b, scale);
      }
      break;
    case Expr::Kind::Mul:
      v = 1.0;
      for (const auto& f : e.operands()) {
        v *= eval_rec(f, b, scale);
      }
      break;
    case Expr::Kind::Pow: {
      double x = eval_rec(e.operands()[0], b, scale);
      const Rational& q = e.exponent();
      if (x == 0.0 && sgn(q) < 0) {
        throw DomainError("division by zero", e.str());
      }
      if (q.get_den() == 1) {
        v = std::pow(x, q.get_d());
      } else if (x < 0.0) {
        if (q.get_den() % 2 == 0) {
          throw DomainError("even root of a negative number", e.str());
        }
        double m = std::pow(-x, q.get_d());
        v = (q.get_num() % 2 == 0) ? m : -m;
      } else {
        v = std::pow(x, q.get_d());
      }
      break;
    }
    case Expr::Kind::Func: {
      double x = eval_rec(e.operands()[0], b, scale);
      switch (e.func()) {
        case Func::Sin:
          v = std::sin(x);
          break;
        case Func::Cos:
          v = std::cos(x);
          break;
        case Func::Tan:
          v = std::tan(x);
          break;
        case Func::Exp:
          v = std::exp(x);
          break;
        case Func::Log:
          if (x <= 0.0) {
            throw DomainError("log of a non-positive number", e.str());
          }
          v = std::log(x);
          break;
        case Func::Sqrt:
          if (x < 0.0) {
            throw DomainError("square root of a negative number", e.str());
          }
          v = std::sqrt(x);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(v)) {
    throw DomainError("non-finite value", e.str());
  }
  scale = std::max(scale, std::fabs(v));
  return v;
}

}  // namespace

double eval_numeric(const Expr& e, const Bindings& bindings) {
  double scale = 0.0;
  return eval_rec(e, bindings, scale);
}

double eval_numeric(const Expr& e, const Bindings& bindings, double& max_magnitude) {
  max_magnitude = 0.0;
  return eval_rec(e, bindings, max_magnitude);
}

}  // namespace sqe
