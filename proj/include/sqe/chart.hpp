#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqe/expr.hpp"
#include "sqe/tensor.hpp"
#include "sqe/zero_test.hpp"

namespace sqe {

class ChartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed spec document; path is a JSON pointer such as "/metric/1/0".
class FormatError : public ChartError {
 public:
  FormatError(const std::string& path, const std::string& message)
      : ChartError(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class SymmetryError : public ChartError {
 public:
  SymmetryError(int i, int j)
      : ChartError("metric is not symmetric: g[" + std::to_string(i) + "][" + std::to_string(j) + "] != g[" +
                   std::to_string(j) + "][" + std::to_string(i) + "]"),
        i_(i), j_(j) {}
  int i() const { return i_; }
  int j() const { return j_; }

 private:
  int i_;
  int j_;
};

class DegeneracyError : public ChartError {
 public:
  DegeneracyError(const std::string& message, Bindings witness) : ChartError(message), witness_(std::move(witness)) {}
  const Bindings& witness() const { return witness_; }

 private:
  Bindings witness_;
};

class MissingOneForm : public ChartError {
 public:
  MissingOneForm() : ChartError("chart has no one-form") {}
};

/// Source form of a chart, before parsing and validation.
struct ChartSource {
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<Parameter> parameters;
  std::vector<std::vector<std::string>> metric;
  std::optional<std::vector<std::string>> one_form;
  SampleRanges sample_ranges;
};

/// A validated coordinate chart: metric (down,down), its inverse (up,up), and
/// an optional one-form (down).
struct ChartSpec {
  std::string name;
  SymbolTable symbols;
  TensorField metric;
  TensorField inverse;
  std::optional<TensorField> one_form;
  SampleRanges sample_ranges;

  int dim() const { return metric.dim(); }
  const std::vector<std::string>& coordinates() const { return symbols.coordinates(); }
  const std::string& coordinate(int i) const { return symbols.coordinates()[static_cast<std::size_t>(i)]; }
  const TensorField& pi() const;
};

/// Parses and validates a JSON spec document.
ChartSpec load_spec(std::string_view document, const ZeroTestOptions& options = {});

/// Validates an in-memory source (same checks as load_spec).
ChartSpec build_chart(const ChartSource& source, const ZeroTestOptions& options = {});

/// Same chart with a different (or no) one-form.
ChartSpec with_one_form(const ChartSpec& chart, std::optional<TensorField> one_form);

/// Determinant by cofactor expansion.
Expr determinant(const TensorField& m);

/// g^{ij}; throws DegeneracyError when det g normalizes to zero.
TensorField inverse_metric(const ChartSpec& c);

TensorField raise_index(const TensorField& t, int slot, const ChartSpec& c);
TensorField lower_index(const TensorField& t, int slot, const ChartSpec& c);

/// P = π♯.
TensorField generator(const ChartSpec& c);

}  // namespace sqe
