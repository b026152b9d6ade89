#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqe/expr.hpp"

namespace sqe {

struct SampleRange {
  double lo = 0.0;
  double hi = 0.0;
};

using SampleRanges = std::map<std::string, SampleRange, std::less<>>;

struct ZeroTestOptions {
  int points = 16;
  std::uint64_t seed = 42;
  double tol = 1e-9;
};

enum class ZeroKind : std::uint8_t { ProvedZero, NumericallyZero, Nonzero };

std::string_view to_string(ZeroKind k);

struct ZeroVerdict {
  ZeroKind kind = ZeroKind::ProvedZero;
  /// Largest |value| seen over the accepted sample points (0 when proved).
  double max_abs = 0.0;
  /// First failing point and value, for Nonzero.
  Bindings witness;
  double witness_value = 0.0;

  bool vanishes() const { return kind != ZeroKind::Nonzero; }
};

class SamplingExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic stream of sample points over `ranges`. Every point binds
/// every symbol in `ranges`, drawn in name order, so the n-th point does not
/// depend on which expression is being tested.
class PointSampler {
 public:
  PointSampler(const SampleRanges& ranges, std::uint64_t seed);
  Bindings next();

 private:
  const SampleRanges& ranges_;
  std::mt19937_64 engine_;
};

/// Two-tier zero test: ProvedZero when the normal form is the zero constant,
/// otherwise `points` accepted samples with |value| <= tol * (1 + scale),
/// scale being the largest subexpression magnitude at that point. Draws that
/// hit a DomainError are rejected; 100 * points consecutive rejections throw
/// SamplingExhausted. Every symbol of e must have a range
/// (std::invalid_argument otherwise).
ZeroVerdict is_zero(const Expr& e, const SampleRanges& ranges, const ZeroTestOptions& options = {});

}  // namespace sqe
