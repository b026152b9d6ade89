#include "sqe/curvature.hpp"

namespace sqe {

namespace {

void require_all_down(const TensorField& h) {
  for (Variance v : h.variance()) {
    if (v != Variance::Down) {
      throw std::invalid_argument("tensor must be fully covariant");
    }
  }
}

std::vector<Variance> grown_down(const TensorField& h) {
  std::vector<Variance> v(static_cast<std::size_t>(h.rank() + 2), Variance::Down);
  return v;
}

Expr contraction_pi_p(const ChartSpec& c, const TensorField& P) {
  Expr s;
  for (int i = 0; i < c.dim(); ++i) {
    s += c.pi()({i}) * P({i});
  }
  return s;
}

}  // namespace

int epsilon(RicciSign s) { return s == RicciSign::Standard ? 1 : -1; }

std::string_view to_string(RicciSign s) { return s == RicciSign::Standard ? "standard" : "paper"; }

std::optional<RicciSign> ricci_sign_from_string(std::string_view s) {
  if (s == "standard") {
    return RicciSign::Standard;
  }
  if (s == "paper") {
    return RicciSign::Paper;
  }
  return std::nullopt;
}

TensorField riemann(const ConnectionCoefficients& conn, const std::vector<std::string>& coordinates) {
  int n = conn.dim();
  TensorField dgamma = partial_derivative(conn.gamma, coordinates);  // (d, l, j, k) = ∂_d Γ^l_jk
  TensorField r(n, {Variance::Up, Variance::Down, Variance::Down, Variance::Down});
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          Expr v = dgamma({i, l, j, k}) - dgamma({j, l, i, k});
          for (int m = 0; m < n; ++m) {
            if (!conn(l, i, m).is_zero() && !conn(m, j, k).is_zero()) {
              v += conn(l, i, m) * conn(m, j, k);
            }
            if (!conn(l, j, m).is_zero() && !conn(m, i, k).is_zero()) {
              v -= conn(l, j, m) * conn(m, i, k);
            }
          }
          r({l, i, j, k}) = v;
          r({l, j, i, k}) = -v;
        }
      }
    }
  }
  return r;
}

CurvatureBundle ricci(const ConnectionCoefficients& conn, const ChartSpec& c, RicciSign sign) {
  CurvatureBundle b;
  b.kind = conn.kind;
  b.sign = sign;
  b.riemann = riemann(conn, c.coordinates());
  Expr eps = Expr::integer(epsilon(sign));
  int n = c.dim();
  b.ricci = TensorField::generate(n, {Variance::Down, Variance::Down}, [&](const std::vector<int>& x) {
    Expr s;
    for (int i = 0; i < n; ++i) {
      s += b.riemann({i, i, x[0], x[1]});
    }
    return eps * s;
  });
  Expr half = Expr::number(Rational(1, 2));
  b.ricci_symmetrized = TensorField::generate(n, {Variance::Down, Variance::Down}, [&](const std::vector<int>& x) {
    return half * (b.ricci({x[0], x[1]}) + b.ricci({x[1], x[0]}));
  });
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (!c.inverse({j, k}).is_zero()) {
        b.scalar += c.inverse({j, k}) * b.ricci_symmetrized({j, k});
      }
    }
  }
  return b;
}

TensorField deformation_tensor(const ChartSpec& c) { return deformation_tensor(c, levi_civita(c)); }

TensorField deformation_tensor(const ChartSpec& c, const ConnectionCoefficients& lc) {
  const TensorField& pi = c.pi();
  TensorField P = generator(c);
  Expr half_pp = Expr::number(Rational(1, 2)) * contraction_pi_p(c, P);
  TensorField npi = covariant_derivative(lc, pi, c.coordinates());
  return TensorField::generate(c.dim(), {Variance::Down, Variance::Down}, [&](const std::vector<int>& x) {
    return npi({x[0], x[1]}) - pi({x[0]}) * pi({x[1]}) + half_pp * c.metric({x[0], x[1]});
  });
}

RelationCheck verify_curvature_relation(const ChartSpec& c, const ZeroTestOptions& options) {
  ConnectionCoefficients lc = levi_civita(c, options);
  ConnectionCoefficients ss = semi_symmetric(c, lc, options);
  return verify_curvature_relation(c, riemann(lc, c.coordinates()), riemann(ss, c.coordinates()),
                                   deformation_tensor(c, lc), options);
}

RelationCheck verify_curvature_relation(const ChartSpec& c, const TensorField& r, const TensorField& r_bar,
                                        const TensorField& a, const ZeroTestOptions& options) {
  int n = c.dim();
  TensorField a_up = raise_index(a, 1, c);  // A_j^l
  RelationCheck out;
  out.residual = TensorField::generate(n, r.variance(), [&](const std::vector<int>& x) {
    int l = x[0];
    int i = x[1];
    int j = x[2];
    int k = x[3];
    Expr rhs = r({l, i, j, k});
    if (l == j) {
      rhs += a({i, k});
    }
    if (l == i) {
      rhs -= a({j, k});
    }
    rhs += c.metric({i, k}) * a_up({j, l}) - c.metric({j, k}) * a_up({i, l});
    return r_bar({l, i, j, k}) - rhs;
  });
  out.verdict = tensor_is_zero(out.residual, c.sample_ranges, options);
  return out;
}

RelationCheck verify_ricci_relation(const ChartSpec& c, RicciSign sign, const ZeroTestOptions& options) {
  ConnectionCoefficients lc = levi_civita(c, options);
  ConnectionCoefficients ss = semi_symmetric(c, lc, options);
  return verify_ricci_relation(c, ricci(lc, c, sign).ricci, ricci(ss, c, sign).ricci,
                               covariant_derivative(lc, c.pi(), c.coordinates()), sign, options);
}

RelationCheck verify_ricci_relation(const ChartSpec& c, const TensorField& s, const TensorField& s_bar,
                                    const TensorField& nabla_pi, RicciSign sign, const ZeroTestOptions& options) {
  int n = c.dim();
  const TensorField& pi = c.pi();
  TensorField P = generator(c);
  Expr pp = contraction_pi_p(c, P);
  Expr div;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!c.inverse({i, j}).is_zero()) {
        div += c.inverse({i, j}) * nabla_pi({i, j});
      }
    }
  }
  Expr nm2 = Expr::integer(n - 2);
  Expr eps = Expr::integer(epsilon(sign));
  Expr trace_coef = nm2 * pp + div;
  RelationCheck out;
  out.residual = TensorField::generate(n, {Variance::Down, Variance::Down}, [&](const std::vector<int>& x) {
    int j = x[0];
    int k = x[1];
    Expr bracket = -nm2 * nabla_pi({j, k}) + nm2 * pi({j}) * pi({k}) - trace_coef * c.metric({j, k});
    return s_bar({j, k}) - s({j, k}) - eps * bracket;
  });
  out.verdict = tensor_is_zero(out.residual, c.sample_ranges, options);
  return out;
}

TensorField bianchi_cyclic_sum(const TensorField& r) {
  return TensorField::generate(r.dim(), r.variance(), [&](const std::vector<int>& x) {
    int l = x[0];
    int i = x[1];
    int j = x[2];
    int k = x[3];
    return r({l, i, j, k}) + r({l, j, k, i}) + r({l, k, i, j});
  });
}

TensorField bianchi_defect(const TensorField& a) {
  return TensorField::generate(a.dim(), {Variance::Up, Variance::Down, Variance::Down, Variance::Down},
                               [&](const std::vector<int>& x) {
                                 int l = x[0];
                                 int i = x[1];
                                 int j = x[2];
                                 int k = x[3];
                                 Expr v;
                                 if (l == i) {
                                   v += a({k, j}) - a({j, k});
                                 }
                                 if (l == j) {
                                   v += a({i, k}) - a({k, i});
                                 }
                                 if (l == k) {
                                   v += a({j, i}) - a({i, j});
                                 }
                                 return v;
                               });
}

TensorField r_dot_h(const TensorField& r, const TensorField& h) {
  require_all_down(h);
  int n = h.dim();
  auto k = static_cast<std::size_t>(h.rank());
  return TensorField::generate(n, grown_down(h), [&](const std::vector<int>& idx) {
    std::vector<int> w(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    int x = idx[k];
    int y = idx[k + 1];
    Expr v;
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<int> w2 = w;
      for (int l = 0; l < n; ++l) {
        const Expr& rl = r({l, x, y, w[s]});
        if (rl.is_zero()) {
          continue;
        }
        w2[s] = l;
        v -= rl * h.at(w2);
      }
    }
    return v;
  });
}

TensorField q_theta_h(const TensorField& theta, const TensorField& h, const SampleRanges& ranges,
                      const ZeroTestOptions& options) {
  require_all_down(h);
  if (theta.rank() != 2) {
    throw std::invalid_argument("theta must be a rank-2 tensor");
  }
  if (!tensor_is_zero(theta - swap_slots(theta, 0, 1), ranges, options).vanishes) {
    throw AsymmetryError("theta is not symmetric");
  }
  int n = h.dim();
  auto k = static_cast<std::size_t>(h.rank());
  return TensorField::generate(n, grown_down(h), [&](const std::vector<int>& idx) {
    std::vector<int> w(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    int x = idx[k];
    int y = idx[k + 1];
    Expr v;
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<int> wa = w;
      std::vector<int> wb = w;
      wa[s] = x;
      wb[s] = y;
      v -= theta({y, w[s]}) * h.at(wa) - theta({x, w[s]}) * h.at(wb);
    }
    return v;
  });
}

}  // namespace sqe
