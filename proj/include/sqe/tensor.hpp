#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "sqe/expr.hpp"
#include "sqe/zero_test.hpp"

namespace sqe {

enum class Variance : std::uint8_t { Up, Down };

/// Dense component array over a chart of dimension n, one index per slot.
/// Components are stored row-major in slot order.
class TensorField {
 public:
  TensorField() = default;
  /// All-zero tensor.
  TensorField(int dim, std::vector<Variance> variance);
  TensorField(int dim, std::vector<Variance> variance, std::vector<Expr> components);

  static TensorField scalar(int dim, Expr value);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }
  std::size_t size() const { return components_.size(); }

  const Expr& at(std::span<const int> index) const { return components_[offset(index)]; }
  Expr& at(std::span<const int> index) { return components_[offset(index)]; }
  const Expr& operator()(std::initializer_list<int> index) const { return at({index.begin(), index.size()}); }
  Expr& operator()(std::initializer_list<int> index) { return at({index.begin(), index.size()}); }

  const std::vector<Expr>& components() const { return components_; }
  const Expr& flat(std::size_t k) const { return components_[k]; }
  Expr& flat(std::size_t k) { return components_[k]; }

  std::size_t offset(std::span<const int> index) const;
  std::vector<int> index_of(std::size_t flat) const;

  /// Calls f(index, component) for every component in storage order.
  void for_each(const std::function<void(const std::vector<int>&, const Expr&)>& f) const;

  /// Builds a tensor by evaluating f at every multi-index.
  static TensorField generate(int dim, std::vector<Variance> variance,
                              const std::function<Expr(const std::vector<int>&)>& f);

 private:
  int dim_ = 0;
  std::vector<Variance> variance_;
  std::vector<Expr> components_;
};

TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
TensorField operator*(const Expr& s, const TensorField& t);

/// Swaps two slots (e.g. transpose of a rank-2 tensor).
TensorField swap_slots(const TensorField& t, int a, int b);

/// Outer product a ⊗ b.
TensorField outer(const TensorField& a, const TensorField& b);

/// Zero-test over every component.
struct TensorVerdict {
  bool vanishes = true;
  /// Largest |component| over accepted sample points.
  double max_abs = 0.0;
  /// Components that are not identically zero in normal form.
  std::size_t nonzero_normal_forms = 0;
  /// Components that failed the zero test.
  std::size_t failing = 0;
  /// First failing component, if any.
  std::vector<int> witness_index;
  ZeroVerdict witness;
};

TensorVerdict tensor_is_zero(const TensorField& t, const SampleRanges& ranges, const ZeroTestOptions& options);

}  // namespace sqe
