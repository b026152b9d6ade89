#include "sqe/classify.hpp"

#include <algorithm>

namespace sqe {

namespace {

using Index = std::vector<int>;

const std::vector<Variance> kDown2{Variance::Down, Variance::Down};
const std::vector<Variance> kDown3{Variance::Down, Variance::Down, Variance::Down};

Check make_check(Verdict v, std::string note = {}) {
  Check c;
  c.verdict = v;
  c.note = std::move(note);
  return c;
}

TensorCheck tensor_check(TensorField residual, const Geometry& g) {
  TensorCheck out;
  out.check = check_from(tensor_is_zero(residual, g.ranges(), g.options));
  out.residual = std::move(residual);
  return out;
}

TensorCheck tensor_check(TensorField residual, const SampleRanges& ranges, const ZeroTestOptions& options) {
  TensorCheck out;
  out.check = check_from(tensor_is_zero(residual, ranges, options));
  out.residual = std::move(residual);
  return out;
}

Check scalar_check(const Expr& e, const Geometry& g) { return check_from(is_zero(e, g.ranges(), g.options)); }

bool vanishes(const Expr& e, const SampleRanges& ranges, const ZeroTestOptions& options) {
  return is_zero(e, ranges, options).vanishes();
}

/// T(·, v) for a (down,down) tensor and a vector.
TensorField contract_second(const TensorField& t, const TensorField& v) {
  int n = t.dim();
  return TensorField::generate(n, {Variance::Down}, [&](const Index& x) {
    Expr s;
    for (int l = 0; l < n; ++l) {
      if (!v({l}).is_zero()) {
        s += t({x[0], l}) * v({l});
      }
    }
    return s;
  });
}

Expr bilinear(const TensorField& t, const TensorField& u, const TensorField& v) {
  int n = t.dim();
  Expr s;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!u({i}).is_zero() && !v({j}).is_zero()) {
        s += t({i, j}) * u({i}) * v({j});
      }
    }
  }
  return s;
}

Expr pairing(const TensorField& form, const TensorField& vec) {
  Expr s;
  for (int i = 0; i < form.dim(); ++i) {
    s += form({i}) * vec({i});
  }
  return s;
}

/// S − (n−2)g + (n−2)π⊗π.
TensorField quasi_einstein_form_residual(const Geometry& g) {
  int n = g.chart.dim();
  Expr nm2 = Expr::integer(n - 2);
  const TensorField& s = g.lc_curvature.ricci;
  return TensorField::generate(n, kDown2, [&](const Index& x) {
    return s({x[0], x[1]}) - nm2 * g.chart.metric({x[0], x[1]}) + nm2 * g.pi({x[0]}) * g.pi({x[1]});
  });
}

bool unit_generator(const Geometry& g) { return vanishes(g.pi_P - Expr::integer(1), g.ranges(), g.options); }

const TensorField& s_bar(const Geometry& g) { return g.ss_bundle().ricci; }
const TensorField& s_hat(const Geometry& g) { return g.ss_bundle().ricci_symmetrized; }

NamedCheck named(std::string name, Check c) { return {std::move(name), std::move(c)}; }

std::string join(const Index& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    s += (i ? "," : "") + std::to_string(idx[i]);
  }
  return s + ")";
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Unknown:
      return "unknown";
    case Verdict::HypothesisNotMet:
      return "hypothesis-not-met";
    case Verdict::NotApplicable:
      return "not-applicable";
    case Verdict::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

Check check_from(const TensorVerdict& v) {
  Check c;
  c.verdict = v.vanishes ? Verdict::Pass : Verdict::Fail;
  c.max_residual = v.max_abs;
  c.witness_index = v.witness_index;
  return c;
}

Check check_from(const ZeroVerdict& v) {
  Check c;
  c.verdict = v.vanishes() ? Verdict::Pass : Verdict::Fail;
  c.max_residual = v.vanishes() ? v.max_abs : std::abs(v.witness_value);
  return c;
}

const ConnectionCoefficients& Geometry::ssmc() const {
  if (!ss) {
    throw MissingOneForm();
  }
  return *ss;
}

const CurvatureBundle& Geometry::ss_bundle() const {
  if (!ss_curvature) {
    throw MissingOneForm();
  }
  return *ss_curvature;
}

Geometry analyze(ChartSpec chart, RicciSign sign, const ZeroTestOptions& options) {
  Geometry g;
  g.chart = std::move(chart);
  g.sign = sign;
  g.options = options;
  g.lc = levi_civita(g.chart, options);
  g.lc_curvature = ricci(g.lc, g.chart, sign);
  if (g.chart.one_form) {
    g.ss = semi_symmetric(g.chart, g.lc, options);
    g.ss_curvature = ricci(*g.ss, g.chart, sign);
    g.pi = *g.chart.one_form;
    g.P = generator(g.chart);
    g.pi_P = pairing(g.pi, g.P);
    g.nabla_pi = covariant_derivative(g.lc, g.pi, g.chart.coordinates());
    g.deformation = deformation_tensor(g.chart, g.lc);
  }
  return g;
}

// ------------------------------------------------------ generator checks

TensorCheck killing_check(const Geometry& g) {
  g.ssmc();
  return tensor_check(g.nabla_pi + swap_slots(g.nabla_pi, 0, 1), g);
}

ParallelResult parallel_check(const Geometry& g) {
  g.ssmc();
  ParallelResult out;
  out.parallel = tensor_check(g.nabla_pi, g);
  out.unit_norm = scalar_check(g.pi_P - Expr::integer(1), g);
  return out;
}

TensorCheck closed_check(const Geometry& g) {
  g.ssmc();
  TensorField d = partial_derivative(g.pi, g.chart.coordinates());  // (j, k) = ∂_j π_k
  return tensor_check(d - swap_slots(d, 0, 1), g);
}

// --------------------------------------------------------- Ricci structure

EinsteinResult einstein_check(const CurvatureBundle& bundle, const ChartSpec& c, const ZeroTestOptions& options) {
  EinsteinResult out;
  out.a = bundle.scalar / Expr::integer(c.dim());
  out.check = tensor_check(bundle.ricci_symmetrized - out.a * c.metric, c.sample_ranges, options);
  return out;
}

SqeVerifyResult sqe_verify(const CurvatureBundle& bundle, const ChartSpec& c, const Expr& a, const Expr& b,
                           const TensorField& eta, const ZeroTestOptions& options) {
  SqeVerifyResult out;
  TensorField residual = bundle.ricci_symmetrized - a * c.metric - b * outer(eta, eta);
  out.check = tensor_check(std::move(residual), c.sample_ranges, options);
  out.semi_ricci_flat =
      tensor_is_zero(bundle.ricci_symmetrized, c.sample_ranges, options).vanishes ? Verdict::Pass : Verdict::Fail;
  return out;
}

SqeSolution sqe_solve(const CurvatureBundle& bundle, const ChartSpec& c, const TensorField& eta,
                      const ZeroTestOptions& options) {
  int n = c.dim();
  TensorField eta_up = raise_index(eta, 0, c);
  Expr nu = pairing(eta, eta_up);
  if (vanishes(nu, c.sample_ranges, options)) {
    throw SingularSystem("eta is null: eta(eta#) tests zero");
  }
  const Expr& tr = bundle.scalar;
  Expr s = bilinear(bundle.ricci_symmetrized, eta_up, eta_up);
  Expr nm1 = Expr::integer(n - 1);
  SqeSolution out;
  out.a = (tr * nu - s) / (nm1 * nu);
  out.b = (Expr::integer(n) * s - nu * tr) / (nm1 * nu * nu);
  out.verification = sqe_verify(bundle, c, out.a, out.b, eta, options);
  if (!out.verification.check.check.passed()) {
    throw VerificationFailed("symmetrized Ricci tensor is not of the form a g + b eta x eta",
                             out.verification.check.check);
  }
  return out;
}

RankResult rank_condition_check(const CurvatureBundle& bundle, const ChartSpec& c, const TensorField& P,
                                const std::optional<Expr>& rho, const ZeroTestOptions& options) {
  int n = c.dim();
  const TensorField& s = bundle.ricci_symmetrized;
  const TensorField& g = c.metric;
  std::vector<Variance> down4(4, Variance::Down);
  // slots (x, y, z, w)
  TensorField lhs = TensorField::generate(n, down4, [&](const Index& t) {
    return s({t[1], t[2]}) * s({t[0], t[3]}) - s({t[0], t[2]}) * s({t[1], t[3]});
  });
  TensorField gside = TensorField::generate(n, down4, [&](const Index& t) {
    return g({t[1], t[2]}) * g({t[0], t[3]}) - g({t[0], t[2]}) * g({t[1], t[3]});
  });
  RankResult out;
  if (rho) {
    out.rho = *rho;
  } else {
    bool found = false;
    for (std::size_t k = 0; k < gside.size() && !found; ++k) {
      if (!vanishes(gside.flat(k), c.sample_ranges, options)) {
        out.reference_tuple = gside.index_of(k);
        out.rho = lhs.flat(k) / gside.flat(k);
        found = true;
      }
    }
    if (!found) {
      throw RankConditionError("every g-side component vanishes; rho is undetermined");
    }
  }
  TensorVerdict v = tensor_is_zero(lhs - out.rho * gside, c.sample_ranges, options);
  out.max_residual = v.max_abs;
  out.alpha = bilinear(s, P, P);
  if (!v.vanishes) {
    out.verdict = Verdict::Fail;
    out.conflicting_tuple = v.witness_index;
    out.note = "rho inconsistent at tuple " + join(v.witness_index);
    if (!out.reference_tuple.empty()) {
      out.note += " (read from " + join(out.reference_tuple) + ")";
    }
    return out;
  }
  if (vanishes(*out.alpha, c.sample_ranges, options)) {
    out.verdict = Verdict::Degenerate;
    out.note = "alpha = S^(P,P) vanishes; a = rho/alpha is undefined";
    return out;
  }
  out.a = out.rho / *out.alpha;
  out.b = *out.alpha - *out.a;
  out.verdict = Verdict::Pass;
  return out;
}

// ------------------------------------------------------ theorem instances

NablaBarRicciResult nabla_bar_ricci(const Geometry& g) {
  int n = g.chart.dim();
  const auto& coords = g.chart.coordinates();
  NablaBarRicciResult out;
  out.nabla_bar_s_hat = covariant_derivative(g.ssmc(), s_hat(g), coords);
  out.nabla_s = covariant_derivative(g.lc, g.lc_curvature.ricci, coords);
  out.ricci_symmetric = check_from(tensor_is_zero(out.nabla_s, g.ranges(), g.options));

  const TensorField& sb = s_bar(g);
  const TensorField& metric = g.chart.metric;
  TensorField sb_p = contract_second(sb, g.P);  // S̄(Y, P)
  bool unit = unit_generator(g);
  bool killing = killing_check(g).check.passed();

  if (unit && killing) {
    TensorField bracket = TensorField::generate(n, kDown3, [&](const Index& t) {
      int x = t[0];
      int y = t[1];
      int z = t[2];
      return metric({x, z}) * sb_p({y}) - g.pi({y}) * sb({x, z}) + metric({x, y}) * sb_p({z}) -
             g.pi({z}) * sb({x, y});
    });
    out.theorem41 = tensor_check(out.nabla_bar_s_hat - bracket - out.nabla_s, g);
    // ∇S = 0 ⟺ ∇̄Ŝ equals the bracket, checked in both directions.
    bool lhs = out.ricci_symmetric.passed();
    bool rhs = tensor_is_zero(out.nabla_bar_s_hat - bracket, g.ranges(), g.options).vanishes;
    if (lhs != rhs) {
      out.theorem41.check.verdict = Verdict::Fail;
      out.theorem41.check.note = "Ricci symmetry and the bracket identity disagree";
    } else {
      out.theorem41.check.note = lhs ? "Ricci symmetric" : "not Ricci symmetric";
    }
  } else {
    out.theorem41.check = make_check(Verdict::NotApplicable, unit ? "generator not Killing" : "generator not unit");
  }

  ParallelResult par = parallel_check(g);
  if (par.parallel.check.passed() && par.unit_norm.passed()) {
    TensorField rhs = TensorField::generate(n, kDown3, [&](const Index& t) {
      return -g.pi({t[1]}) * sb({t[0], t[2]}) - g.pi({t[2]}) * sb({t[0], t[1]});
    });
    out.corollary = tensor_check(out.nabla_bar_s_hat - rhs, g);
  } else {
    out.corollary.check =
        make_check(Verdict::NotApplicable, par.parallel.check.passed() ? "generator not unit" : "generator not parallel");
  }
  return out;
}

Theorem31Result theorem_3_1_check(const Geometry& g) {
  int n = g.chart.dim();
  Theorem31Result out;
  if (!killing_check(g).check.passed()) {
    out.verdict = Verdict::HypothesisNotMet;
    out.note = "generator not Killing";
    return out;
  }
  Expr eps = Expr::integer(epsilon(g.sign));
  Expr nm2 = Expr::integer(n - 2);
  TensorField predicted = g.lc_curvature.ricci + eps * (nm2 * outer(g.pi, g.pi) - nm2 * g.pi_P * g.chart.metric);
  out.reduction = tensor_check(s_hat(g) - predicted, g);
  if (!out.reduction.check.passed()) {
    out.verdict = Verdict::Fail;
    out.note = "Killing reduction of the symmetrized Ricci tensor fails";
    return out;
  }
  out.einstein = einstein_check(g.lc_curvature, g.chart, g.options);
  if (!out.einstein->check.check.passed()) {
    out.verdict = Verdict::HypothesisNotMet;
    out.note = "Levi-Civita Ricci tensor not Einstein";
    return out;
  }
  out.a = out.einstein->a - eps * nm2 * g.pi_P;
  out.b = eps * nm2;
  out.sqe = sqe_verify(g.ss_bundle(), g.chart, *out.a, *out.b, g.pi, g.options).check.check;
  out.verdict = out.sqe->passed() ? Verdict::Pass : Verdict::Fail;
  if (tensor_is_zero(g.lc_curvature.ricci, g.ranges(), g.options).vanishes) {
    out.note = "Ricci-flat";
  }
  return out;
}

Theorem42Result theorem_4_2_check(const Geometry& g) {
  Theorem42Result out;
  if (!unit_generator(g)) {
    out.verdict = Verdict::HypothesisNotMet;
    out.note = "generator not unit";
    return out;
  }
  if (!tensor_is_zero(quasi_einstein_form_residual(g), g.ranges(), g.options).vanishes) {
    out.verdict = Verdict::HypothesisNotMet;
    out.note = "S is not (n-2)(g - pi x pi)";
    return out;
  }
  NablaBarRicciResult nb = nabla_bar_ricci(g);
  if (!nb.ricci_symmetric.passed()) {
    out.verdict = Verdict::HypothesisNotMet;
    out.note = "not Ricci symmetric";
    return out;
  }
  out.conclusion = check_from(tensor_is_zero(nb.nabla_bar_s_hat, g.ranges(), g.options));
  out.verdict = out.conclusion.verdict;
  return out;
}

Theorem43Result theorem_4_3_check(const Geometry& g, const Expr& a, const Expr& b, const TensorField& eta) {
  Theorem43Result out;
  if (!sqe_verify(g.ss_bundle(), g.chart, a, b, eta, g.options).check.check.passed()) {
    out.verdict = Verdict::NotApplicable;
    out.note = "sqe form does not hold for the given (a, b, eta)";
    return out;
  }
  Expr norm = pairing(eta, raise_index(eta, 0, g.chart));
  if (!vanishes(norm - Expr::integer(1), g.ranges(), g.options)) {
    out.verdict = Verdict::NotApplicable;
    out.note = "eta not unit";
    return out;
  }
  TensorField nb = covariant_derivative(g.ssmc(), s_hat(g), g.chart.coordinates());
  if (!tensor_is_zero(nb, g.ranges(), g.options).vanishes) {
    out.verdict = Verdict::HypothesisNotMet;
    out.note = "not nabla-bar Ricci symmetric";
    return out;
  }
  TensorField sum = TensorField::scalar(g.chart.dim(), a + b);
  out.conclusion = check_from(tensor_is_zero(partial_derivative(sum, g.chart.coordinates()), g.ranges(), g.options));
  out.verdict = out.conclusion.verdict;
  return out;
}

Theorem44Result theorem_4_4_check(const Geometry& g) {
  int n = g.chart.dim();
  Theorem44Result out;
  out.a = Expr::integer(n - 2);
  out.b = Expr::integer(-(n - 2));
  ParallelResult par = parallel_check(g);
  if (!par.parallel.check.passed() || !par.unit_norm.passed()) {
    out.verdict = Verdict::NotApplicable;
    out.converse = Verdict::NotApplicable;
    out.note = par.parallel.check.passed() ? "generator not unit" : "generator not parallel";
    return out;
  }
  const TensorField& sb = s_bar(g);
  TensorField hyp = r_dot_h(g.ss_bundle().riemann, sb) + q_theta_h(g.chart.metric, sb, g.ranges(), g.options);
  out.hypothesis = tensor_check(std::move(hyp), g);
  out.rs = tensor_check(r_dot_h(g.lc_curvature.riemann, g.lc_curvature.ricci), g);
  out.form = tensor_check(quasi_einstein_form_residual(g), g);
  if (out.hypothesis.check.passed() && out.rs.check.passed()) {
    out.verdict = out.form.check.verdict;
  } else {
    out.verdict = Verdict::HypothesisNotMet;
    out.note = out.hypothesis.check.passed() ? "not Ricci semi-symmetric" : "R-bar.S-bar + Q(g,S-bar) does not vanish";
  }
  out.converse = out.form.check.passed() ? out.rs.check.verdict : Verdict::NotApplicable;
  return out;
}

SemisymmetryFlags semisymmetry_report(const Geometry& g) {
  const auto& coords = g.chart.coordinates();
  SemisymmetryFlags out;
  out.r_dot_s = check_from(
      tensor_is_zero(r_dot_h(g.lc_curvature.riemann, g.lc_curvature.ricci), g.ranges(), g.options));
  if (!g.has_one_form()) {
    Check na = make_check(Verdict::NotApplicable, "no one-form");
    out.r_bar_dot_r_bar = out.r_bar_dot_s_hat = out.nabla_bar_r_bar = out.nabla_bar_s_hat = na;
    return out;
  }
  const TensorField& rb = g.ss_bundle().riemann;
  TensorField rb_low = lower_index(rb, 0, g.chart);
  out.r_bar_dot_r_bar = check_from(tensor_is_zero(r_dot_h(rb, rb_low), g.ranges(), g.options));
  out.r_bar_dot_s_hat = check_from(tensor_is_zero(r_dot_h(rb, s_hat(g)), g.ranges(), g.options));
  out.nabla_bar_r_bar = check_from(tensor_is_zero(covariant_derivative(g.ssmc(), rb, coords), g.ranges(), g.options));
  out.nabla_bar_s_hat =
      check_from(tensor_is_zero(covariant_derivative(g.ssmc(), s_hat(g), coords), g.ranges(), g.options));
  return out;
}

// ---------------------------------------------------------- suites

std::vector<NamedCheck> identity_suite(const Geometry& g) {
  int n = g.chart.dim();
  const auto& coords = g.chart.coordinates();
  const TensorField& r = g.lc_curvature.riemann;
  const TensorField& rb = g.ss_bundle().riemann;
  std::vector<NamedCheck> out;

  RelationCheck curv = verify_curvature_relation(g.chart, r, rb, g.deformation, g.options);
  out.push_back(named("curvature_relation", check_from(curv.verdict)));
  RelationCheck ric =
      verify_ricci_relation(g.chart, g.lc_curvature.ricci, s_bar(g), g.nabla_pi, g.sign, g.options);
  out.push_back(named("ricci_relation", check_from(ric.verdict)));

  TensorField expected = TensorField::generate(n, {Variance::Up, Variance::Down, Variance::Down}, [&](const Index& x) {
    Expr v;
    if (x[0] == x[1]) {
      v += g.pi({x[2]});
    }
    if (x[0] == x[2]) {
      v -= g.pi({x[1]});
    }
    return v;
  });
  out.push_back(named("torsion_form", tensor_check(torsion(g.ssmc()) - expected, g).check));
  out.push_back(named("lc_torsion_free", tensor_check(torsion(g.lc), g).check));
  out.push_back(named("nabla_g", tensor_check(covariant_derivative(g.lc, g.chart.metric, coords), g).check));
  out.push_back(named("nabla_bar_g", tensor_check(covariant_derivative(g.ssmc(), g.chart.metric, coords), g).check));
  out.push_back(named("riemann_antisymmetry", tensor_check(r + swap_slots(r, 1, 2), g).check));
  out.push_back(named("riemann_bar_antisymmetry", tensor_check(rb + swap_slots(rb, 1, 2), g).check));
  out.push_back(named("bianchi_defect", tensor_check(bianchi_cyclic_sum(rb) - bianchi_defect(g.deformation), g).check));
  return out;
}

std::vector<NamedCheck> conditional_suite(const Geometry& g) {
  std::vector<NamedCheck> out;
  const TensorField& sb = s_bar(g);

  bool closed = closed_check(g).check.passed();
  TensorCheck sym = tensor_check(sb - swap_slots(sb, 0, 1), g);
  Check c = make_check(closed == sym.check.passed() ? Verdict::Pass : Verdict::Fail,
                       std::string(closed ? "closed" : "not closed") + ", S-bar " +
                           (sym.check.passed() ? "symmetric" : "not symmetric"));
  out.push_back(named("closed_iff_ricci_bar_symmetric", c));

  bool unit = unit_generator(g);
  bool killing = killing_check(g).check.passed();
  TensorField sb_p = contract_second(sb, g.P);
  if (killing && unit) {
    TensorField s_p = contract_second(g.lc_curvature.ricci, g.P);
    out.push_back(named("killing_ricci_bar_p", tensor_check(sb_p - s_p, g).check));
  } else {
    out.push_back(named("killing_ricci_bar_p",
                        make_check(Verdict::NotApplicable, killing ? "generator not unit" : "generator not Killing")));
  }

  ParallelResult par = parallel_check(g);
  if (par.parallel.check.passed() && par.unit_norm.passed()) {
    out.push_back(named("parallel_bianchi", tensor_check(bianchi_cyclic_sum(g.ss_bundle().riemann), g).check));
    out.push_back(named("parallel_ricci_bar_p", tensor_check(sb_p, g).check));
    out.push_back(named("parallel_ricci_bar_symmetric", sym.check));
    // R̄(X,Y)P with slots (l, x, y)
    int n = g.chart.dim();
    TensorField rp = TensorField::generate(n, {Variance::Up, Variance::Down, Variance::Down}, [&](const Index& x) {
      Expr v;
      for (int k = 0; k < n; ++k) {
        if (!g.P({k}).is_zero()) {
          v += g.ss_bundle().riemann({x[0], x[1], x[2], k}) * g.P({k});
        }
      }
      return v;
    });
    out.push_back(named("parallel_curvature_bar_p", tensor_check(std::move(rp), g).check));
  } else {
    Check na = make_check(Verdict::NotApplicable,
                          par.parallel.check.passed() ? "generator not unit" : "generator not parallel");
    for (const char* name :
         {"parallel_bianchi", "parallel_ricci_bar_p", "parallel_ricci_bar_symmetric", "parallel_curvature_bar_p"}) {
      out.push_back(named(name, na));
    }
  }
  return out;
}

// ---------------------------------------------------------- report

const Check* ClassificationReport::find(std::string_view name) const {
  for (const auto* list : {&flags, &theorems, &semisymmetry, &identities}) {
    for (const auto& nc : *list) {
      if (nc.name == name) {
        return &nc.check;
      }
    }
  }
  return nullptr;
}

const Expr* ClassificationReport::witness(std::string_view name) const {
  for (const auto& [k, v] : witnesses) {
    if (k == name) {
      return &v;
    }
  }
  return nullptr;
}

bool ClassificationReport::verified() const {
  auto failed = [](const std::vector<NamedCheck>& list) {
    return std::any_of(list.begin(), list.end(),
                       [](const NamedCheck& nc) { return nc.check.verdict == Verdict::Fail; });
  };
  return !failed(theorems) && !failed(identities);
}

ClassificationReport classify(const Geometry& g) {
  ClassificationReport rep;
  rep.chart = g.chart.name;
  rep.sign = g.sign;

  EinsteinResult ein = einstein_check(g.lc_curvature, g.chart, g.options);
  SemisymmetryFlags ss_flags = semisymmetry_report(g);
  auto push_semisymmetry = [&] {
    rep.semisymmetry = {named("r_bar_dot_r_bar", ss_flags.r_bar_dot_r_bar),
                        named("r_bar_dot_s_hat", ss_flags.r_bar_dot_s_hat), named("r_dot_s", ss_flags.r_dot_s),
                        named("nabla_bar_r_bar", ss_flags.nabla_bar_r_bar),
                        named("nabla_bar_s_hat", ss_flags.nabla_bar_s_hat)};
  };

  if (!g.has_one_form()) {
    Check na = make_check(Verdict::NotApplicable, "no one-form");
    rep.flags = {named("killing", na), named("parallel", na), named("closed", na), named("unit_norm", na),
                 named("einstein", ein.check.check), named("sqe", na), named("semi_ricci_flat", na)};
    if (ein.check.check.passed()) {
      rep.witnesses.emplace_back("einstein_a", ein.a);
    }
    push_semisymmetry();
    return rep;
  }

  ParallelResult par = parallel_check(g);
  rep.flags.push_back(named("killing", killing_check(g).check));
  rep.flags.push_back(named("parallel", par.parallel.check));
  rep.flags.push_back(named("closed", closed_check(g).check));
  rep.flags.push_back(named("unit_norm", par.unit_norm));
  rep.flags.push_back(named("einstein", ein.check.check));
  if (ein.check.check.passed()) {
    rep.witnesses.emplace_back("einstein_a", ein.a);
  }

  std::optional<SqeSolution> sol;
  Check sqe;
  try {
    sol = sqe_solve(g.ss_bundle(), g.chart, g.pi, g.options);
    sqe = sol->verification.check.check;
    rep.witnesses.emplace_back("sqe_a", sol->a);
    rep.witnesses.emplace_back("sqe_b", sol->b);
    rep.sqe_eta = g.pi.components();
  } catch (const SingularSystem& e) {
    sqe = make_check(Verdict::Unknown, e.what());
  } catch (const VerificationFailed& e) {
    sqe = e.check();
    sqe.note = e.what();
  }
  rep.flags.push_back(named("sqe", sqe));
  Check flat = check_from(tensor_is_zero(s_hat(g), g.ranges(), g.options));
  rep.flags.push_back(named("semi_ricci_flat", flat));

  // theorem instances
  Theorem31Result t31 = theorem_3_1_check(g);
  Check c31 = make_check(t31.verdict, t31.note);
  c31.max_residual = t31.reduction.check.max_residual;
  rep.theorems.push_back(named("theorem_3_1", c31));

  Check c33;
  if (!par.unit_norm.passed()) {
    c33 = make_check(Verdict::NotApplicable, "generator not unit");
  } else {
    try {
      RankResult rr = rank_condition_check(g.ss_bundle(), g.chart, g.P, std::nullopt, g.options);
      rep.witnesses.emplace_back("rho", rr.rho);
      if (rr.alpha) {
        rep.witnesses.emplace_back("alpha", *rr.alpha);
      }
      if (rr.verdict == Verdict::Pass) {
        c33 = sqe_verify(g.ss_bundle(), g.chart, *rr.a, *rr.b, g.pi, g.options).check.check;
      } else if (rr.verdict == Verdict::Fail) {
        c33 = make_check(Verdict::HypothesisNotMet, rr.note);
      } else {
        c33 = make_check(rr.verdict, rr.note);
      }
    } catch (const RankConditionError& e) {
      c33 = make_check(Verdict::Degenerate, e.what());
    }
  }
  rep.theorems.push_back(named("theorem_3_3", c33));

  NablaBarRicciResult nb = nabla_bar_ricci(g);
  rep.theorems.push_back(named("theorem_4_1", nb.theorem41.check));
  rep.theorems.push_back(named("corollary_4_1", nb.corollary.check));

  Theorem42Result t42 = theorem_4_2_check(g);
  Check c42 = t42.conclusion;
  c42.verdict = t42.verdict;
  c42.note = t42.note;
  rep.theorems.push_back(named("theorem_4_2", c42));

  if (sol) {
    Theorem43Result t43 = theorem_4_3_check(g, sol->a, sol->b, g.pi);
    Check c43 = t43.conclusion;
    c43.verdict = t43.verdict;
    c43.note = t43.note;
    rep.theorems.push_back(named("theorem_4_3", c43));
  } else {
    rep.theorems.push_back(named("theorem_4_3", make_check(Verdict::NotApplicable, "no sqe witness")));
  }

  Theorem44Result t44 = theorem_4_4_check(g);
  Check c44 = make_check(t44.verdict, t44.note);
  c44.max_residual = t44.hypothesis.check.max_residual;
  rep.theorems.push_back(named("theorem_4_4", c44));
  rep.theorems.push_back(named("theorem_4_4_converse", make_check(t44.converse)));

  push_semisymmetry();

  rep.identities = identity_suite(g);
  for (auto& nc : conditional_suite(g)) {
    rep.identities.push_back(std::move(nc));
  }
  return rep;
}

}  // namespace sqe
