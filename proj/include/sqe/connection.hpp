#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "sqe/chart.hpp"
#include "sqe/tensor.hpp"

namespace sqe {

enum class ConnectionKind : std::uint8_t { LeviCivita, SemiSymmetric };

std::string_view to_string(ConnectionKind k);

/// Raised when a freshly built connection fails its metric-compatibility
/// self-check (a formula or input bug, never an expected outcome).
class ConnectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Γ^k_{ij} stored at (k, i, j): ∇_{∂_i} ∂_j = Γ^k_{ij} ∂_k, so i is the
/// direction and j the argument.
struct ConnectionCoefficients {
  ConnectionKind kind = ConnectionKind::LeviCivita;
  TensorField gamma;
  std::optional<TensorField> one_form;

  int dim() const { return gamma.dim(); }
  const Expr& operator()(int k, int i, int j) const { return gamma({k, i, j}); }
};

ConnectionCoefficients levi_civita(const ChartSpec& c, const ZeroTestOptions& options = {});

/// Γ̄^k_{ij} = Γ^k_{ij} + π_j δ^k_i − g_{ij} π^k for the chart's one-form.
ConnectionCoefficients semi_symmetric(const ChartSpec& c, const ZeroTestOptions& options = {});
ConnectionCoefficients semi_symmetric(const ChartSpec& c, const ConnectionCoefficients& lc,
                                      const ZeroTestOptions& options = {});

/// T^k_{ij} = Γ^k_{ij} − Γ^k_{ji}.
TensorField torsion(const ConnectionCoefficients& conn);

/// ∇t with the derivative slot prepended.
TensorField covariant_derivative(const ConnectionCoefficients& conn, const TensorField& t,
                                 const std::vector<std::string>& coordinates);

/// Plain partial derivative with the derivative slot prepended.
TensorField partial_derivative(const TensorField& t, const std::vector<std::string>& coordinates);

}  // namespace sqe
