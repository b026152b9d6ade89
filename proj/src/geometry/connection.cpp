#include "sqe/connection.hpp"

namespace sqe {

namespace {

void assert_metric(const ConnectionCoefficients& conn, const ChartSpec& c, const ZeroTestOptions& options) {
  TensorField ng = covariant_derivative(conn, c.metric, c.coordinates());
  TensorVerdict v = tensor_is_zero(ng, c.sample_ranges, options);
  if (!v.vanishes) {
    throw ConnectionError(std::string(to_string(conn.kind)) + " connection is not metric on chart '" + c.name + "'");
  }
}

}  // namespace

std::string_view to_string(ConnectionKind k) {
  return k == ConnectionKind::LeviCivita ? "levi-civita" : "semi-symmetric";
}

ConnectionCoefficients levi_civita(const ChartSpec& c, const ZeroTestOptions& options) {
  int n = c.dim();
  TensorField dg = partial_derivative(c.metric, c.coordinates());  // dg(l, i, j) = ∂_l g_ij
  ConnectionCoefficients conn;
  conn.kind = ConnectionKind::LeviCivita;
  conn.gamma = TensorField::generate(n, {Variance::Up, Variance::Down, Variance::Down}, [&](const std::vector<int>& x) {
    int k = x[0];
    int i = x[1];
    int j = x[2];
    Expr sum;
    for (int l = 0; l < n; ++l) {
      const Expr& gkl = c.inverse({k, l});
      if (gkl.is_zero()) {
        continue;
      }
      sum += gkl * (dg({i, j, l}) + dg({j, i, l}) - dg({l, i, j}));
    }
    return Expr::number(Rational(1, 2)) * sum;
  });
  assert_metric(conn, c, options);
  return conn;
}

ConnectionCoefficients semi_symmetric(const ChartSpec& c, const ZeroTestOptions& options) {
  return semi_symmetric(c, levi_civita(c, options), options);
}

ConnectionCoefficients semi_symmetric(const ChartSpec& c, const ConnectionCoefficients& lc,
                                      const ZeroTestOptions& options) {
  const TensorField& pi = c.pi();
  TensorField P = generator(c);
  ConnectionCoefficients conn;
  conn.kind = ConnectionKind::SemiSymmetric;
  conn.one_form = pi;
  conn.gamma = TensorField::generate(c.dim(), {Variance::Up, Variance::Down, Variance::Down}, [&](const std::vector<int>& x) {
    int k = x[0];
    int i = x[1];
    int j = x[2];
    Expr v = lc(k, i, j) - c.metric({i, j}) * P({k});
    if (k == i) {
      v += pi({j});
    }
    return v;
  });
  assert_metric(conn, c, options);
  return conn;
}

TensorField torsion(const ConnectionCoefficients& conn) {
  return TensorField::generate(conn.dim(), {Variance::Up, Variance::Down, Variance::Down},
                               [&](const std::vector<int>& x) { return conn(x[0], x[1], x[2]) - conn(x[0], x[2], x[1]); });
}

TensorField partial_derivative(const TensorField& t, const std::vector<std::string>& coordinates) {
  std::vector<Variance> v{Variance::Down};
  v.insert(v.end(), t.variance().begin(), t.variance().end());
  return TensorField::generate(t.dim(), v, [&](const std::vector<int>& x) {
    std::vector<int> rest(x.begin() + 1, x.end());
    return differentiate(t.at(rest), coordinates[static_cast<std::size_t>(x[0])]);
  });
}

TensorField covariant_derivative(const ConnectionCoefficients& conn, const TensorField& t,
                                 const std::vector<std::string>& coordinates) {
  int n = t.dim();
  std::vector<Variance> v{Variance::Down};
  v.insert(v.end(), t.variance().begin(), t.variance().end());
  return TensorField::generate(n, v, [&](const std::vector<int>& x) {
    int d = x[0];
    std::vector<int> rest(x.begin() + 1, x.end());
    Expr sum = differentiate(t.at(rest), coordinates[static_cast<std::size_t>(d)]);
    for (std::size_t s = 0; s < rest.size(); ++s) {
      std::vector<int> r2 = rest;
      for (int m = 0; m < n; ++m) {
        r2[s] = m;
        const Expr& tm = t.at(r2);
        if (tm.is_zero()) {
          continue;
        }
        if (t.variance()[s] == Variance::Up) {
          sum += conn(rest[s], d, m) * tm;
        } else {
          sum -= conn(m, d, rest[s]) * tm;
        }
      }
    }
    return sum;
  });
}

}  // namespace sqe
