#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqe/chart.hpp"
#include "sqe/connection.hpp"
#include "sqe/curvature.hpp"

namespace sqe {

enum class Verdict : std::uint8_t { Pass, Fail, Unknown, HypothesisNotMet, NotApplicable, Degenerate };

std::string_view to_string(Verdict v);

struct Check {
  Verdict verdict = Verdict::Unknown;
  /// Largest |residual| over accepted sample points.
  double max_residual = 0.0;
  std::string note;
  /// First failing component, when the residual is a tensor.
  std::vector<int> witness_index;

  bool passed() const { return verdict == Verdict::Pass; }
};

Check check_from(const TensorVerdict& v);
Check check_from(const ZeroVerdict& v);

struct TensorCheck {
  Check check;
  TensorField residual;
};

/// Everything derived from a chart once: both connections, their curvature,
/// and the one-form data (π, P = π♯, π(P), ∇π, A).
struct Geometry {
  ChartSpec chart;
  RicciSign sign = RicciSign::Standard;
  ZeroTestOptions options;
  ConnectionCoefficients lc;
  CurvatureBundle lc_curvature;
  std::optional<ConnectionCoefficients> ss;
  std::optional<CurvatureBundle> ss_curvature;
  TensorField pi;
  TensorField P;
  Expr pi_P;
  TensorField nabla_pi;
  TensorField deformation;

  bool has_one_form() const { return ss.has_value(); }
  const ConnectionCoefficients& ssmc() const;
  const CurvatureBundle& ss_bundle() const;
  const SampleRanges& ranges() const { return chart.sample_ranges; }
};

Geometry analyze(ChartSpec chart, RicciSign sign = RicciSign::Standard, const ZeroTestOptions& options = {});

// ------------------------------------------------------ generator checks

/// (∇_j π)_k + (∇_k π)_j.
TensorCheck killing_check(const Geometry& g);

struct ParallelResult {
  TensorCheck parallel;
  Check unit_norm;  // π(P) − 1
};
ParallelResult parallel_check(const Geometry& g);

/// (dπ)_jk = ∂_j π_k − ∂_k π_j.
TensorCheck closed_check(const Geometry& g);

// --------------------------------------------------------- Ricci structure

struct EinsteinResult {
  TensorCheck check;
  Expr a;  // scalar / n
};
EinsteinResult einstein_check(const CurvatureBundle& bundle, const ChartSpec& c, const ZeroTestOptions& options = {});

struct SqeVerifyResult {
  TensorCheck check;
  Verdict semi_ricci_flat = Verdict::Unknown;
};
SqeVerifyResult sqe_verify(const CurvatureBundle& bundle, const ChartSpec& c, const Expr& a, const Expr& b,
                           const TensorField& eta, const ZeroTestOptions& options = {});

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailed : public std::runtime_error {
 public:
  VerificationFailed(const std::string& what, Check check) : std::runtime_error(what), check_(std::move(check)) {}
  const Check& check() const { return check_; }

 private:
  Check check_;
};

struct SqeSolution {
  Expr a;
  Expr b;
  SqeVerifyResult verification;
};
/// Solves the trace pair for (a, b) given η, then verifies. Throws
/// SingularSystem for null η and VerificationFailed when Ŝ is not of the form.
SqeSolution sqe_solve(const CurvatureBundle& bundle, const ChartSpec& c, const TensorField& eta,
                      const ZeroTestOptions& options = {});

struct RankResult {
  Verdict verdict = Verdict::Unknown;
  Expr rho;
  std::optional<Expr> alpha;
  std::optional<Expr> a;
  std::optional<Expr> b;
  double max_residual = 0.0;
  std::vector<int> reference_tuple;    // tuple ρ was read from
  std::vector<int> conflicting_tuple;  // first tuple violating it
  std::string note;
};

class RankConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ŝ(Y,Z)Ŝ(X,W) − Ŝ(X,Z)Ŝ(Y,W) = ρ(g(Y,Z)g(X,W) − g(X,Z)g(Y,W)) over all
/// (X,Y,Z,W). With rho unset, ρ is read off the first tuple whose g-side is
/// nonzero. α = Ŝ(P,P) is always reported; on pass it gives a = ρ/α,
/// b = α − ρ/α, and α = 0 is reported as Degenerate. Throws RankConditionError when every g-side
/// component vanishes.
RankResult rank_condition_check(const CurvatureBundle& bundle, const ChartSpec& c, const TensorField& P,
                                const std::optional<Expr>& rho, const ZeroTestOptions& options = {});

// ------------------------------------------------------ theorem instances

struct NablaBarRicciResult {
  TensorField nabla_bar_s_hat;
  TensorField nabla_s;
  Check ricci_symmetric;  // ∇S = 0
  TensorCheck theorem41;  // residual of the unit-Killing identity
  TensorCheck corollary;  // residual of the unit-parallel identity
};
NablaBarRicciResult nabla_bar_ricci(const Geometry& g);

struct Theorem31Result {
  Verdict verdict = Verdict::Unknown;
  TensorCheck reduction;
  std::optional<EinsteinResult> einstein;
  std::optional<Expr> a;
  std::optional<Expr> b;
  std::optional<Check> sqe;
  std::string note;
};
Theorem31Result theorem_3_1_check(const Geometry& g);

struct Theorem42Result {
  Verdict verdict = Verdict::Unknown;
  Check conclusion;  // ∇̄Ŝ = 0
  std::string note;
};
Theorem42Result theorem_4_2_check(const Geometry& g);

struct Theorem43Result {
  Verdict verdict = Verdict::Unknown;
  Check conclusion;  // d(a + b) = 0
  std::string note;
};
Theorem43Result theorem_4_3_check(const Geometry& g, const Expr& a, const Expr& b, const TensorField& eta);

struct Theorem44Result {
  Verdict verdict = Verdict::Unknown;
  Verdict converse = Verdict::Unknown;
  TensorCheck hypothesis;  // R̄·S̄ + Q(g, S̄)
  TensorCheck rs;          // R·S
  TensorCheck form;        // S − (n−2)g + (n−2)π⊗π
  Expr a;                  // recovered quasi-Einstein scalars (n−2, −(n−2))
  Expr b;
  std::string note;
};
Theorem44Result theorem_4_4_check(const Geometry& g);

struct SemisymmetryFlags {
  Check r_bar_dot_r_bar;
  Check r_bar_dot_s_hat;
  Check r_dot_s;
  Check nabla_bar_r_bar;
  Check nabla_bar_s_hat;
};
SemisymmetryFlags semisymmetry_report(const Geometry& g);

// ---------------------------------------------------------- suites

struct NamedCheck {
  std::string name;
  Check check;
};

/// Curvature and Ricci relations, torsion form, ∇g, ∇̄g, antisymmetry of R̄
/// and the first-Bianchi defect.
std::vector<NamedCheck> identity_suite(const Geometry& g);

/// Conditional identities tied to closed / Killing / parallel generators.
std::vector<NamedCheck> conditional_suite(const Geometry& g);

struct ClassificationReport {
  std::string chart;
  RicciSign sign = RicciSign::Standard;
  std::vector<NamedCheck> flags;
  std::vector<std::pair<std::string, Expr>> witnesses;
  std::vector<Expr> sqe_eta;
  std::vector<NamedCheck> theorems;
  std::vector<NamedCheck> semisymmetry;
  std::vector<NamedCheck> identities;

  const Check* find(std::string_view name) const;
  const Expr* witness(std::string_view name) const;
  /// True when no theorem instance or identity check failed.
  bool verified() const;
};

ClassificationReport classify(const Geometry& g);

}  // namespace sqe
