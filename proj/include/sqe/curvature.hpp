#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "sqe/chart.hpp"
#include "sqe/connection.hpp"

namespace sqe {

/// Overall sign of the Ricci contraction S_jk = ε R^i_{ijk}.
/// Standard: ε = +1. Paper: ε = −1, the convention under which the Kottler
/// chart displays S = −Λg.
enum class RicciSign : std::uint8_t { Paper, Standard };

int epsilon(RicciSign s);
std::string_view to_string(RicciSign s);
std::optional<RicciSign> ricci_sign_from_string(std::string_view s);

/// R^l_{ijk} at (l, i, j, k): R(∂_i, ∂_j)∂_k = R^l_{ijk} ∂_l.
TensorField riemann(const ConnectionCoefficients& conn, const std::vector<std::string>& coordinates);

struct CurvatureBundle {
  ConnectionKind kind = ConnectionKind::LeviCivita;
  RicciSign sign = RicciSign::Standard;
  TensorField riemann;
  TensorField ricci;              // S_jk, possibly non-symmetric
  TensorField ricci_symmetrized;  // ½(S_jk + S_kj)
  Expr scalar;                    // g^{jk} Ŝ_jk
};

CurvatureBundle ricci(const ConnectionCoefficients& conn, const ChartSpec& c, RicciSign sign = RicciSign::Standard);

/// A_jk = (∇_j π)_k − π_j π_k + ½ π(P) g_jk, ∇ Levi-Civita.
TensorField deformation_tensor(const ChartSpec& c);
TensorField deformation_tensor(const ChartSpec& c, const ConnectionCoefficients& lc);

struct RelationCheck {
  TensorField residual;
  TensorVerdict verdict;
  bool passed() const { return verdict.vanishes; }
};

/// R̄ against R + A-terms.
RelationCheck verify_curvature_relation(const ChartSpec& c, const ZeroTestOptions& options = {});
RelationCheck verify_curvature_relation(const ChartSpec& c, const TensorField& r, const TensorField& r_bar,
                                        const TensorField& a, const ZeroTestOptions& options);

/// S̄ against S − (n−2)∇π + (n−2)π⊗π − ((n−2)π(P) + div P) g, the bracket
/// scaled by the contraction sign.
RelationCheck verify_ricci_relation(const ChartSpec& c, RicciSign sign = RicciSign::Standard,
                                    const ZeroTestOptions& options = {});
RelationCheck verify_ricci_relation(const ChartSpec& c, const TensorField& s, const TensorField& s_bar,
                                    const TensorField& nabla_pi, RicciSign sign, const ZeroTestOptions& options);

/// R^l_{ijk} + R^l_{jki} + R^l_{kij}.
TensorField bianchi_cyclic_sum(const TensorField& riemann);
/// (A_kj − A_jk)δ^l_i + (A_ik − A_ki)δ^l_j + (A_ji − A_ij)δ^l_k.
TensorField bianchi_defect(const TensorField& a);

/// (R(X,Y)·H)(W_1..W_k) = −Σ_s H(.., R(X,Y)W_s, ..), slots (W_1..W_k, X, Y).
TensorField r_dot_h(const TensorField& riemann, const TensorField& h);

class AsymmetryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Q(θ,H)(W_1..W_k; X, Y) = −Σ_s H(.., (X ∧_θ Y)W_s, ..) with
/// (X ∧_θ Y)W = θ(Y,W)X − θ(X,W)Y. θ must test symmetric.
TensorField q_theta_h(const TensorField& theta, const TensorField& h, const SampleRanges& ranges,
                      const ZeroTestOptions& options = {});

}  // namespace sqe
