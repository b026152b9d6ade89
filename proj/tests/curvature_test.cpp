#include <doctest.h>

#include "sqe/corpus.hpp"
#include "sqe/curvature.hpp"
#include "support.hpp"

using namespace sqe;
using testing::same;

namespace {

bool all_zero(const TensorField& t, const ChartSpec& c) { return tensor_is_zero(t, c.sample_ranges, {}).vanishes; }

std::size_t nonzero_count(const TensorField& t) {
  std::size_t n = 0;
  for (const auto& e : t.components()) {
    n += e.is_zero() ? 0 : 1;
  }
  return n;
}

CurvatureBundle lc_bundle(const ChartSpec& c, RicciSign s = RicciSign::Standard) {
  return ricci(levi_civita(c), c, s);
}

CurvatureBundle ss_bundle(const ChartSpec& c, RicciSign s = RicciSign::Standard) {
  return ricci(semi_symmetric(c), c, s);
}

}  // namespace

TEST_SUITE("riemann") {
  TEST_CASE("flat chart has no curvature") {
    ChartSpec c = testing::flat(3);
    CHECK(nonzero_count(riemann(levi_civita(c), c.coordinates())) == 0);
  }

  TEST_CASE("round sphere") {
    ChartSpec c = testing::round_sphere();
    TensorField r = riemann(levi_civita(c), c.coordinates());
    // R(∂θ, ∂φ)∂φ = sin²θ ∂θ, and antisymmetry in the first two lower slots
    CHECK(same(r({0, 0, 1, 1}), "sin(theta)^2", c));
    CHECK(same(r({0, 1, 0, 1}), "-sin(theta)^2", c));
    CHECK(r({1, 1, 0, 0}).is_one());
    CHECK(same(r({1, 0, 1, 0}), "-1", c));
    CHECK(nonzero_count(r) == 4);
    CurvatureBundle b = lc_bundle(c);
    CHECK(same(b.ricci({0, 0}), "1", c));
    CHECK(same(b.ricci({1, 1}), "sin(theta)^2", c));
    CHECK(same(b.scalar, "2", c));
  }

  TEST_CASE("antisymmetry for both connections") {
    for (const auto& name : corpus_names()) {
      ChartSpec c = load_corpus(name);
      for (const auto& conn : {levi_civita(c), semi_symmetric(c)}) {
        TensorField r = riemann(conn, c.coordinates());
        CHECK(all_zero(r + swap_slots(r, 1, 2), c));
      }
    }
  }
}

TEST_SUITE("ricci") {
  TEST_CASE("schwarzschild is Ricci-flat") {
    ChartSpec c = load_corpus("schwarzschild");
    CurvatureBundle b = lc_bundle(c);
    CHECK(nonzero_count(b.ricci) == 0);
    CHECK(b.scalar.is_zero());
  }

  TEST_CASE("kottler is Einstein, sign by convention") {
    ChartSpec c = load_corpus("kottler");
    Expr lambda = testing::ex("Lambda", c);
    CurvatureBundle standard = lc_bundle(c);
    CurvatureBundle paper = lc_bundle(c, RicciSign::Paper);
    CHECK(all_zero(standard.ricci - lambda * c.metric, c));
    CHECK(all_zero(paper.ricci + lambda * c.metric, c));
    CHECK(same(paper.ricci({2, 2}), "-Lambda*r^2", c));
    CHECK(same(paper.ricci({0, 0}), "-(Lambda^2*r^3 + 6*Lambda*m - 3*Lambda*r)/(3*r)", c));
    CHECK(same(standard.scalar, "4*Lambda", c));
  }

  TEST_CASE("schwarzschild semi-symmetric Ricci") {
    ChartSpec c = load_corpus("schwarzschild");
    CurvatureBundle b = ss_bundle(c);
    CHECK(b.ricci({0, 0}).is_zero());
    CHECK(same(b.ricci({0, 1}), "-2*m/r^2", c));
    CHECK(same(b.ricci({1, 0}), "2*m/r^2", c));
    CHECK(same(b.ricci({1, 1}), "2", c));
    CHECK(same(b.ricci({2, 2}), "2*r^2 - 4*m*r", c));
    CHECK(same(b.ricci({3, 3}), "(2*r^2 - 4*m*r)*sin(theta)^2", c));
    CHECK(nonzero_count(b.ricci) == 5);
    // the symmetrized part drops the antisymmetric pair
    CHECK(b.ricci_symmetrized({0, 1}).is_zero());
    CHECK(same(b.ricci_symmetrized({1, 1}), "2", c));
  }

  TEST_CASE("kottler semi-symmetric off-diagonal pair") {
    ChartSpec c = load_corpus("kottler");
    CurvatureBundle b = ss_bundle(c);
    CHECK(same(b.ricci({0, 1}), "2*Lambda*r/3 - 2*m/r^2", c));
    CHECK(same(b.ricci({1, 0}), "-2*Lambda*r/3 + 2*m/r^2", c));
  }

  TEST_CASE("example3 is Ricci-flat and its semi-symmetric Ricci is -g + pi pi") {
    ChartSpec c = load_corpus("example3");
    CHECK(nonzero_count(lc_bundle(c).ricci) == 0);
    CurvatureBundle b = ss_bundle(c);
    TensorField expected = outer(c.pi(), c.pi()) - c.metric;
    CHECK(all_zero(b.ricci - expected, c));
    CHECK(all_zero(b.ricci_symmetrized - expected, c));
    CHECK(same(b.ricci({0, 1}), "-exp(x1 - x2)", c));
    CHECK(same(b.ricci({2, 2}), "0", c));
  }

  TEST_CASE("symmetrization is exact") {
    ChartSpec c = load_corpus("kottler");
    CurvatureBundle b = ss_bundle(c);
    TensorField half = Expr::number(Rational(1, 2)) * (b.ricci + swap_slots(b.ricci, 0, 1));
    for (std::size_t k = 0; k < half.size(); ++k) {
      CHECK(half.flat(k) == b.ricci_symmetrized.flat(k));
    }
  }
}

TEST_SUITE("deformation") {
  TEST_CASE("zero one-form") {
    ChartSpec c = with_one_form(load_corpus("schwarzschild"), TensorField(4, {Variance::Down}));
    CHECK(nonzero_count(deformation_tensor(c)) == 0);
  }

  TEST_CASE("parallel case") {
    ChartSpec c = load_corpus("example3");
    TensorField expected = Expr::number(Rational(1, 2)) * c.metric - outer(c.pi(), c.pi());
    CHECK(all_zero(deformation_tensor(c) - expected, c));
  }

  TEST_CASE("symmetric exactly when the one-form is closed") {
    ChartSpec s = load_corpus("schwarzschild");
    TensorField a = deformation_tensor(s);
    CHECK_FALSE(all_zero(a - swap_slots(a, 0, 1), s));
    ChartSpec f = testing::flat(2, std::vector<std::string>{"x2", "x1"});  // d(x1 x2)
    TensorField af = deformation_tensor(f);
    CHECK(all_zero(af - swap_slots(af, 0, 1), f));
  }

  TEST_CASE("missing one-form") { CHECK_THROWS_AS(deformation_tensor(testing::round_sphere()), MissingOneForm); }
}

TEST_SUITE("relations") {
  TEST_CASE("curvature relation on the corpus") {
    for (const auto& name : corpus_names()) {
      CAPTURE(name);
      CHECK(verify_curvature_relation(load_corpus(name)).passed());
    }
  }

  TEST_CASE("Ricci relation on the corpus, both signs") {
    for (const auto& name : corpus_names()) {
      CAPTURE(name);
      ChartSpec c = load_corpus(name);
      CHECK(verify_ricci_relation(c, RicciSign::Standard).passed());
      CHECK(verify_ricci_relation(c, RicciSign::Paper).passed());
    }
  }

  TEST_CASE("relations hold off the corpus") {
    ChartSpec c = testing::chart("warped", {"u", "v"}, {{"1", "0"}, {"0", "u^2 + 1"}},
                                 std::vector<std::string>{"v", "u*v"}, {{"u", {0.2, 2}}, {"v", {-1, 1}}});
    CHECK(verify_curvature_relation(c).passed());
    CHECK(verify_ricci_relation(c).passed());
  }

  TEST_CASE("a wrong Ricci tensor is caught") {
    ChartSpec c = load_corpus("example3");
    CurvatureBundle lc = lc_bundle(c);
    CurvatureBundle ss = ss_bundle(c);
    TensorField nabla_pi = covariant_derivative(levi_civita(c), c.pi(), c.coordinates());
    RelationCheck bad = verify_ricci_relation(c, lc.ricci, ss.ricci + c.metric, nabla_pi, RicciSign::Standard, {});
    CHECK_FALSE(bad.passed());
    CHECK(bad.verdict.failing > 0);
  }

  TEST_CASE("zero one-form: semi-symmetric Ricci equals Ricci") {
    ChartSpec c = with_one_form(load_corpus("kottler"), TensorField(4, {Variance::Down}));
    CurvatureBundle lc = lc_bundle(c);
    CurvatureBundle ss = ss_bundle(c);
    for (std::size_t k = 0; k < lc.ricci.size(); ++k) {
      CHECK(lc.ricci.flat(k) == ss.ricci.flat(k));
    }
  }
}

TEST_SUITE("bianchi") {
  TEST_CASE("cyclic sum of R-bar is the deformation defect") {
    for (const auto& name : corpus_names()) {
      ChartSpec c = load_corpus(name);
      TensorField sum = bianchi_cyclic_sum(riemann(semi_symmetric(c), c.coordinates()));
      CHECK(all_zero(sum - bianchi_defect(deformation_tensor(c)), c));
    }
  }

  TEST_CASE("nonzero for schwarzschild, zero for the parallel example") {
    ChartSpec s = load_corpus("schwarzschild");
    CHECK(nonzero_count(bianchi_cyclic_sum(riemann(semi_symmetric(s), s.coordinates()))) == 12);
    ChartSpec e = load_corpus("example3");
    CHECK(all_zero(bianchi_cyclic_sum(riemann(semi_symmetric(e), e.coordinates())), e));
  }

  TEST_CASE("Levi-Civita satisfies the first identity") {
    ChartSpec c = load_corpus("kottler");
    CHECK(all_zero(bianchi_cyclic_sum(riemann(levi_civita(c), c.coordinates())), c));
  }
}

TEST_SUITE("curvature action") {
  TEST_CASE("flat chart annihilates everything") {
    ChartSpec c = testing::flat(3);
    TensorField r = riemann(levi_civita(c), c.coordinates());
    TensorField h(3, {Variance::Down, Variance::Down});
    h({0, 1}) = testing::ex("x1*x2", c);
    TensorField out = r_dot_h(r, h);
    CHECK(out.rank() == 4);
    CHECK(nonzero_count(out) == 0);
  }

  TEST_CASE("metric is annihilated by its own curvature") {
    ChartSpec c = load_corpus("schwarzschild");
    CHECK(all_zero(r_dot_h(riemann(levi_civita(c), c.coordinates()), c.metric), c));
    // also by a metric connection with torsion
    CHECK(all_zero(r_dot_h(riemann(semi_symmetric(c), c.coordinates()), c.metric), c));
  }

  TEST_CASE("R.H on the sphere matches the derivation by hand") {
    // (R(X,Y)·h)(W1,W2) = −h(R(X,Y)W1, W2) − h(W1, R(X,Y)W2), with h = dθ⊗dθ:
    // at (W1,W2;X,Y) = (θ,φ;θ,φ), R(∂θ,∂φ)∂φ = sin²θ ∂θ so the value is −sin²θ.
    ChartSpec c = testing::round_sphere();
    TensorField h(2, {Variance::Down, Variance::Down});
    h({0, 0}) = Expr::integer(1);
    TensorField out = r_dot_h(riemann(levi_civita(c), c.coordinates()), h);
    CHECK(same(out({0, 1, 0, 1}), "-sin(theta)^2", c));
    CHECK(same(out({1, 0, 0, 1}), "-sin(theta)^2", c));
    CHECK(out({0, 0, 0, 1}).is_zero());
  }

  TEST_CASE("Q(g, g) vanishes") {
    ChartSpec c = load_corpus("kottler");
    CHECK(nonzero_count(q_theta_h(c.metric, c.metric, c.sample_ranges)) == 0);
  }

  TEST_CASE("Q(g, pi pi) expansion") {
    // Q(g, π⊗π)(W1, W2; X, Y) = [g(X,W1)π(Y) − g(Y,W1)π(X)]π(W2)
    //                          + π(W1)[g(X,W2)π(Y) − g(Y,W2)π(X)]
    ChartSpec c = load_corpus("example3");
    const TensorField& g = c.metric;
    const TensorField& pi = c.pi();
    TensorField q = q_theta_h(g, outer(pi, pi), c.sample_ranges);
    TensorField expected = TensorField::generate(3, q.variance(), [&](const std::vector<int>& i) {
      int w1 = i[0], w2 = i[1], x = i[2], y = i[3];
      return (g({x, w1}) * pi({y}) - g({y, w1}) * pi({x})) * pi({w2}) +
             pi({w1}) * (g({x, w2}) * pi({y}) - g({y, w2}) * pi({x}));
    });
    CHECK(all_zero(q - expected, c));
  }

  TEST_CASE("Q(g, S-bar) on the parallel example is the pi pi part") {
    // with S = 0 and S̄ = (n−2)(π⊗π − g), only the π⊗π part survives
    ChartSpec c = load_corpus("example3");
    CurvatureBundle b = ss_bundle(c);
    TensorField lhs = q_theta_h(c.metric, b.ricci, c.sample_ranges);
    TensorField rhs = q_theta_h(c.metric, outer(c.pi(), c.pi()), c.sample_ranges);
    CHECK(all_zero(lhs - rhs, c));
    CHECK(nonzero_count(lhs) > 0);
  }

  TEST_CASE("asymmetric theta is rejected") {
    ChartSpec c = load_corpus("schwarzschild");
    CurvatureBundle b = ss_bundle(c);
    CHECK_THROWS_AS(q_theta_h(b.ricci, c.metric, c.sample_ranges), AsymmetryError);
    CHECK_NOTHROW(q_theta_h(b.ricci_symmetrized, c.metric, c.sample_ranges));
  }
}

TEST_CASE("ricci sign names") {
  CHECK(epsilon(RicciSign::Standard) == 1);
  CHECK(epsilon(RicciSign::Paper) == -1);
  CHECK(ricci_sign_from_string("paper") == RicciSign::Paper);
  CHECK(ricci_sign_from_string("standard") == RicciSign::Standard);
  CHECK_FALSE(ricci_sign_from_string("other").has_value());
  CHECK(to_string(RicciSign::Paper) == "paper");
}
