// Acceptance runner: one PASS/FAIL line per criterion, plus detail lines.
//
// Criteria 2, 4 and 7 contain clauses whose reference values the computation
// does not reproduce (see README, "Known discrepancies"); they are expected to
// FAIL.
// The exit status is 0 exactly when every outcome matches its expectation, so
// an unexpected pass is reported as loudly as an unexpected failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "random_expr.hpp"
#include "sqe/classify.hpp"
#include "sqe/corpus.hpp"
#include "support.hpp"

using namespace sqe;

namespace {

class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    details_.push_back(std::string(ok ? "  ok    " : "  FAIL  ") + what);
    passed_ = passed_ && ok;
  }
  void note(const std::string& what) { details_.push_back("  note  " + what); }
  bool passed() const { return passed_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  bool passed_ = true;
  std::vector<std::string> details_;
};

struct Component {
  const char* k;
  const char* i;
  const char* j;
  const char* value;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

int index_of(const ChartSpec& c, const std::string& name) {
  for (int a = 0; a < c.dim(); ++a) {
    if (c.coordinate(a) == name) {
      return a;
    }
  }
  throw std::invalid_argument("no coordinate " + name);
}

bool exactly(const Expr& e, const std::string& text, const ChartSpec& c) { return testing::same(e, text, c); }

bool vanishes(const TensorField& t, const ChartSpec& c) {
  return tensor_is_zero(t, c.sample_ranges, ZeroTestOptions{}).vanishes;
}

/// Listed components equal in normal form, every other component zero.
/// With symmetric_pairs, (k, j, i) is implied by each listed (k, i, j).
std::size_t table_mismatches(const ConnectionCoefficients& conn, const ChartSpec& c,
                             const std::vector<Component>& table, bool symmetric_pairs) {
  std::map<std::vector<int>, std::string> listed;
  for (const auto& t : table) {
    int k = index_of(c, t.k);
    int i = index_of(c, t.i);
    int j = index_of(c, t.j);
    listed[{k, i, j}] = t.value;
    if (symmetric_pairs) {
      listed[{k, j, i}] = t.value;
    }
  }
  std::size_t bad = 0;
  conn.gamma.for_each([&](const std::vector<int>& idx, const Expr& e) {
    auto it = listed.find(idx);
    bool ok = it == listed.end() ? e.is_zero() : exactly(e, it->second, c);
    bad += ok ? 0 : 1;
  });
  return bad;
}

/// Components of `actual` that differ from the displayed matrix.
std::size_t matrix_mismatches(const TensorField& actual, const std::vector<std::vector<std::string>>& shown,
                              const ChartSpec& c) {
  std::size_t bad = 0;
  for (int i = 0; i < c.dim(); ++i) {
    for (int j = 0; j < c.dim(); ++j) {
      Expr diff = actual({i, j}) - testing::ex(shown[i][j], c);
      bad += is_zero(diff, c.sample_ranges).vanishes() ? 0 : 1;
    }
  }
  return bad;
}

/// S̄(Y,P) − S(Y,P) as a covector.
TensorField ricci_bar_p_defect(const Geometry& g) {
  int n = g.chart.dim();
  TensorField out(n, {Variance::Down});
  for (int y = 0; y < n; ++y) {
    Expr v;
    for (int k = 0; k < n; ++k) {
      v += (g.ss_bundle().ricci({y, k}) - g.lc_curvature.ricci({y, k})) * g.P({k});
    }
    out({y}) = v;
  }
  return out;
}

const std::vector<Component> kSchwarzschildLC{
    {"t", "t", "r", "-m/(2*m*r - r^2)"},
    {"r", "t", "t", "-(2*m^2 - m*r)/r^3"},
    {"r", "r", "r", "m/(2*m*r - r^2)"},
    {"r", "theta", "theta", "2*m - r"},
    {"phi", "theta", "phi", "cos(theta)/sin(theta)"},
    {"r", "phi", "phi", "(2*m - r)*sin(theta)^2"},
    {"theta", "r", "theta", "1/r"},
    {"theta", "phi", "phi", "-cos(theta)*sin(theta)"},
    {"phi", "r", "phi", "1/r"},
};

const std::vector<Component> kSchwarzschildSS{
    {"t", "t", "r", "-m/(2*m*r - r^2)"},
    {"t", "r", "t", "-m/(2*m*r - r^2)"},
    {"t", "r", "r", "r/(2*m - r)"},
    {"t", "theta", "theta", "-r^2"},
    {"t", "phi", "phi", "-r^2*sin(theta)^2"},
    {"r", "t", "t", "-(2*m^2 - m*r)/r^3"},
    {"r", "r", "t", "(2*m - r)/r"},
    {"r", "r", "r", "m/(2*m*r - r^2)"},
    {"r", "theta", "theta", "2*m - r"},
    {"r", "phi", "phi", "(2*m - r)*sin(theta)^2"},
    {"theta", "r", "theta", "1/r"},
    {"theta", "theta", "t", "(2*m - r)/r"},
    {"theta", "theta", "r", "1/r"},
    {"theta", "phi", "phi", "-cos(theta)*sin(theta)"},
    {"phi", "r", "phi", "1/r"},
    {"phi", "theta", "phi", "cos(theta)/sin(theta)"},
    {"phi", "phi", "t", "(2*m - r)/r"},
    {"phi", "phi", "r", "1/r"},
    {"phi", "phi", "theta", "cos(theta)/sin(theta)"},
};

const std::vector<std::vector<std::string>> kSchwarzschildRicciBarShown{
    {"0", "-m/r^2", "0", "0"},
    {"m/r^2", "1", "0", "0"},
    {"0", "0", "r^2 - 2*m*r", "0"},
    {"0", "0", "0", "-(2*m*r - r^2)*sin(theta)^2"},
};

const std::vector<std::vector<std::string>> kKottlerRicciBarShown{
    {"-(Lambda^2*r^3 + 6*Lambda*m - 3*Lambda*r)/(3*r)", "(Lambda*r^3 - 3*m)/(3*r^2)", "0", "0"},
    {"-(Lambda*r^3 - 3*m)/(3*r^2)", "(Lambda*r^3 + 3*(Lambda - 1)*r + 6*m)/(Lambda*r^3 + 6*m - 3*r)", "0", "0"},
    {"0", "0", "-(Lambda*r^4 + 3*(Lambda - 1)*r^2 + 6*m*r)/3", "0"},
    {"0", "0", "0", "-(Lambda*r^4 + 3*(Lambda - 1)*r^2 + 6*m*r)*sin(theta)^2/3"},
};

// ------------------------------------------------------------------ criteria

Criterion schwarzschild_levi_civita() {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  ChartSpec chart = load_corpus("schwarzschild");
  ConnectionCoefficients lc = levi_civita(chart);
  std::size_t bad = table_mismatches(lc, chart, kSchwarzschildLC, true);
  c.require(bad == 0, "Christoffel symbols: 9 displayed components exact, all others zero (" +
                          std::to_string(bad) + " mismatches)");
  CurvatureBundle b = ricci(lc, chart);
  c.require(std::all_of(b.ricci.components().begin(), b.ricci.components().end(),
                        [](const Expr& e) { return e.is_zero(); }),
            "Ricci tensor is identically zero");
  double s = seconds_since(t0);
  c.require(s < 5.0, "runtime " + fixed(s) + " s < 5 s");
  return c;
}

Criterion schwarzschild_semi_symmetric() {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  ChartSpec chart = load_corpus("schwarzschild");
  ConnectionCoefficients ss = semi_symmetric(chart);
  std::size_t bad = table_mismatches(ss, chart, kSchwarzschildSS, false);
  c.require(bad == 0, "semi-symmetric connection: 19 displayed components exact, all others zero (" +
                          std::to_string(bad) + " mismatches)");
  CurvatureBundle b = ricci(ss, chart);
  std::size_t shown = matrix_mismatches(b.ricci, kSchwarzschildRicciBarShown, chart);
  c.require(shown == 0, "S-bar against the displayed matrix: " + std::to_string(shown) + " of 16 components differ");
  c.note("computed S-bar(t,r) = " + b.ricci({0, 1}).str() + ", S-bar(r,r) = " + b.ricci({1, 1}).str() +
         "; the displayed correction to S is half of the computed one");
  double s = seconds_since(t0);
  c.require(s < 10.0, "runtime " + fixed(s) + " s < 10 s");
  return c;
}

Criterion schwarzschild_sqe() {
  Criterion c;
  Geometry g = analyze(load_corpus("schwarzschild"));
  SqeVerifyResult pinned =
      sqe_verify(g.ss_bundle(), g.chart, testing::ex("2*(r - 2*m)/r", g.chart), Expr::integer(2), g.pi);
  c.require(pinned.check.check.passed(), "sqe_verify with a = 2(r-2m)/r, b = 2, eta = pi passes");
  SqeSolution solved = sqe_solve(g.ss_bundle(), g.chart, g.pi);
  c.require(exactly(solved.a, "2*(r - 2*m)/r", g.chart) && solved.b == Expr::integer(2),
            "sqe_solve recovers a = " + solved.a.str() + ", b = " + solved.b.str());
  SqeVerifyResult printed =
      sqe_verify(g.ss_bundle(), g.chart, testing::ex("(r - 2*m)/r", g.chart), Expr::integer(1), g.pi);
  c.note(std::string("the pair a = (r-2m)/r, b = 1 ") +
         (printed.check.check.passed() ? "also passes" : "fails (it fits only the halved S-bar table)"));
  return c;
}

Criterion kottler() {
  Criterion c;
  Geometry minus = analyze(load_corpus("kottler"), RicciSign::Paper);
  EinsteinResult ein = einstein_check(minus.lc_curvature, minus.chart);
  c.require(ein.check.check.passed() && exactly(ein.a, "-Lambda", minus.chart),
            "einstein_check passes with a = " + ein.a.str() + " (contraction sign: paper)");

  Geometry g = analyze(load_corpus("kottler"));
  for (const auto& [label, geom] : {std::pair<const char*, const Geometry*>{"standard", &g}, {"paper", &minus}}) {
    std::size_t shown = matrix_mismatches(geom->ss_bundle().ricci, kKottlerRicciBarShown, geom->chart);
    c.require(shown == 0, std::string("S-bar against the displayed matrix (") + label +
                              " sign): " + std::to_string(shown) + " of 16 components differ");
  }

  const char* a_solved = "Lambda - 2*(Lambda*r^3 + 6*m - 3*r)/(3*r)";
  SqeVerifyResult pinned = sqe_verify(g.ss_bundle(), g.chart, testing::ex(a_solved, g.chart), Expr::integer(2), g.pi);
  c.require(pinned.check.check.passed(), std::string("sqe_verify with a = ") + a_solved + ", b = 2 passes");
  for (const char* a : {"-Lambda - (Lambda*r^2 + 6*m - 3*r)/(3*r)", "-Lambda - (Lambda*r^3 + 6*m - 3*r)/(3*r)"}) {
    SqeVerifyResult printed = sqe_verify(g.ss_bundle(), g.chart, testing::ex(a, g.chart), Expr::integer(1), g.pi);
    c.note(std::string("a = ") + a + ", b = 1 " + (printed.check.check.passed() ? "passes" : "fails"));
  }
  return c;
}

Criterion example3() {
  Criterion c;
  Geometry g = analyze(load_corpus("example3"));
  c.require(vanishes(g.lc_curvature.ricci, g.chart), "Levi-Civita Ricci tensor vanishes");
  ParallelResult par = parallel_check(g);
  c.require(par.parallel.check.passed(), "pi is parallel");
  c.require(par.unit_norm.passed(), "pi is unit");

  const TensorField& sb = g.ss_bundle().ricci;
  static const std::vector<std::pair<std::vector<int>, std::string>> shown{
      {{0, 0}, "-exp(x1) + exp(x1 - x2)"},     {{0, 1}, "-exp(x1 - x2)"},
      {{0, 2}, "exp(x1/2 - x2/2)"},            {{1, 1}, "exp(x1) + exp(x1 - x2)"},
      {{1, 2}, "-exp(x1/2 - x2/2)"},           {{2, 2}, "0"},
  };
  int ok = 0;
  for (const auto& [idx, text] : shown) {
    Expr want = testing::ex(text, g.chart);
    int i = idx[0];
    int j = idx[1];
    Expr form = -g.chart.metric({i, j}) + g.pi({i}) * g.pi({j});
    bool both = is_zero(sb({i, j}) - want, g.ranges()).vanishes() && is_zero(form - want, g.ranges()).vanishes() &&
                is_zero(sb({j, i}) - want, g.ranges()).vanishes();
    ok += both ? 1 : 0;
  }
  c.require(ok == 6, "S-bar = -g + pi pi on the six displayed equations (" + std::to_string(ok) + "/6)");

  SqeSolution s = sqe_solve(g.ss_bundle(), g.chart, g.pi);
  c.require(s.a == Expr::integer(-1) && s.b == Expr::integer(1),
            "sqe_solve returns a = " + s.a.str() + ", b = " + s.b.str());
  return c;
}

Criterion identities() {
  Criterion c;
  for (const auto& name : corpus_names()) {
    Geometry g = analyze(load_corpus(name));
    int total = 0;
    int passed = 0;
    std::string failed;
    for (const auto& nc : identity_suite(g)) {
      ++total;
      if (nc.check.passed()) {
        ++passed;
      } else {
        failed += " " + nc.name;
      }
    }
    c.require(passed == total && total > 0,
              name + ": " + std::to_string(passed) + "/" + std::to_string(total) + " identities" + failed);
  }
  return c;
}

Criterion conditional() {
  Criterion c;
  auto find = [](const std::vector<NamedCheck>& v, const std::string& name) {
    for (const auto& nc : v) {
      if (nc.name == name) {
        return nc.check;
      }
    }
    throw std::logic_error("missing check " + name);
  };

  auto e = conditional_suite(analyze(load_corpus("example3")));
  Check e_closed = find(e, "closed_iff_ricci_bar_symmetric");
  c.require(e_closed.passed() && e_closed.note == "closed, S-bar symmetric", "example3: " + e_closed.note);
  auto s = conditional_suite(analyze(load_corpus("schwarzschild")));
  Check s_closed = find(s, "closed_iff_ricci_bar_symmetric");
  c.require(s_closed.passed() && s_closed.note == "not closed, S-bar not symmetric", "schwarzschild: " + s_closed.note);

  for (const char* name : {"schwarzschild", "kottler"}) {
    Geometry g = analyze(load_corpus(name));
    bool killing = killing_check(g).check.passed();
    TensorField defect = ricci_bar_p_defect(g);
    bool holds = vanishes(defect, g.chart);
    c.require(killing && holds, std::string(name) + ": P Killing " + (killing ? "yes" : "no") +
                                    "; S-bar(r,P) - S(r,P) = " + defect({1}).str());
    c.note(std::string(name) + ": pi(P) = " + g.pi_P.str() + "; the identity needs a unit generator");
  }

  Geometry g3 = analyze(load_corpus("example3"));
  c.require(vanishes(bianchi_cyclic_sum(g3.ss_bundle().riemann), g3.chart),
            "example3: first-Bianchi cyclic sum of R-bar vanishes");
  c.require(find(e, "parallel_ricci_bar_p").passed(), "example3: S-bar(Y,P) = 0");
  return c;
}

Criterion theorems() {
  Criterion c;
  Theorem31Result s = theorem_3_1_check(analyze(load_corpus("schwarzschild")));
  c.require(s.verdict == Verdict::Pass && s.note == "Ricci-flat",
            "theorem_3_1_check on schwarzschild: " + std::string(to_string(s.verdict)) + " (" + s.note + ")");
  Theorem31Result k = theorem_3_1_check(analyze(load_corpus("kottler")));
  c.require(k.verdict == Verdict::Pass && k.einstein.has_value(),
            "theorem_3_1_check on kottler: " + std::string(to_string(k.verdict)) + " (Einstein branch)");

  NablaBarRicciResult e3 = nabla_bar_ricci(analyze(load_corpus("example3")));
  c.require(e3.corollary.check.passed(), "unit parallel identity on example3");
  NablaBarRicciResult flat = nabla_bar_ricci(analyze(testing::flat(3, std::vector<std::string>{"1", "0", "0"})));
  c.require(flat.corollary.check.passed(), "unit parallel identity on the flat chart with pi = dx1");

  // S^2 x R with pi = dz: S = g - dz dz = (n-2)(g - pi pi) for n = 3
  Geometry sl = analyze(testing::sphere_line());
  Theorem44Result t44 = theorem_4_4_check(sl);
  c.require(t44.form.check.passed(), "S^2 x R: S = (n-2)(g - pi pi)");
  c.require(t44.converse == Verdict::Pass, "theorem_4_4_check converse on S^2 x R: " +
                                               std::string(to_string(t44.converse)));
  return c;
}

Criterion properties() {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  int reported = 0;
  testing::PropertyTally t = testing::run_properties(1000, [&](const testing::PropertyFailure& f) {
    if (reported++ < 5) {
      c.note(f.property + " failed on case " + std::to_string(f.index) + ": " + f.raw);
    }
  });
  auto line = [&](const char* what, int n) {
    c.require(n == t.cases, std::string(what) + ": " + std::to_string(n) + "/" + std::to_string(t.cases));
  };
  line("normalize idempotent", t.idempotent);
  line("normal form agrees numerically", t.agree);
  line("derivative within 1e-6 of finite differences", t.derivative);
  line("print/parse round trip", t.round_trip);
  line("differentiate commutes with normalize", t.commute);
  c.note("property run " + fixed(seconds_since(t0)) + " s; whole-suite time is reported by ctest");
  return c;
}

struct Entry {
  int number;
  const char* title;
  std::function<Criterion()> run;
  /// Why the criterion is expected to fail; null when it should pass.
  const char* known_failure = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  const std::vector<Entry> entries{
      {1, "Schwarzschild Levi-Civita connection and Ricci flatness", schwarzschild_levi_civita},
      {2, "Schwarzschild semi-symmetric connection and displayed S-bar", schwarzschild_semi_symmetric,
       "displayed S-bar carries half the semi-symmetric correction"},
      {3, "Schwarzschild semi-quasi-Einstein pair", schwarzschild_sqe},
      {4, "Kottler Einstein check, displayed S-bar and (a, b)", kottler,
       "displayed S-bar carries half the semi-symmetric correction"},
      {5, "three-dimensional example", example3},
      {6, "identity suite on the corpus", identities},
      {7, "conditional-structure suite", conditional, "Killing clause requires a unit generator"},
      {8, "theorem instances", theorems},
      {9, "engine properties", properties},
  };

  int unexpected = 0;
  for (const auto& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.require(false, std::string("exception: ") + ex.what());
    }
    bool expected_pass = e.known_failure == nullptr;
    bool as_expected = c.passed() == expected_pass;
    unexpected += as_expected ? 0 : 1;
    std::cout << (c.passed() ? "PASS" : "FAIL") << "  criterion " << e.number << ": " << e.title << " ("
              << fixed(seconds_since(t0)) << " s)";
    if (!expected_pass) {
      std::cout << (as_expected ? std::string("  [expected: ") + e.known_failure + "]" : "  [UNEXPECTED PASS]");
    } else if (!as_expected) {
      std::cout << "  [UNEXPECTED FAIL]";
    }
    std::cout << '\n';
    if (verbose || !c.passed()) {
      for (const auto& d : c.details()) {
        std::cout << d << '\n';
      }
    }
  }
  std::cout << (unexpected == 0 ? "all outcomes as expected" : std::to_string(unexpected) + " unexpected outcome(s)")
            << '\n';
  return unexpected == 0 ? 0 : 1;
}
