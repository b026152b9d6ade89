#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqe/chart.hpp"
#include "sqe/corpus.hpp"
#include "sqe/expr.hpp"

namespace testing {

inline sqe::ChartSpec chart(std::string name, std::vector<std::string> coords,
                            std::vector<std::vector<std::string>> metric,
                            std::optional<std::vector<std::string>> one_form, sqe::SampleRanges ranges,
                            std::vector<sqe::Parameter> params = {}) {
  sqe::ChartSource src;
  src.name = std::move(name);
  src.coordinates = std::move(coords);
  src.parameters = std::move(params);
  src.metric = std::move(metric);
  src.one_form = std::move(one_form);
  src.sample_ranges = std::move(ranges);
  return sqe::build_chart(src);
}

/// Euclidean chart on x1..xn with an optional one-form.
inline sqe::ChartSpec flat(int n, std::optional<std::vector<std::string>> one_form = std::nullopt) {
  std::vector<std::string> coords;
  std::vector<std::vector<std::string>> g(static_cast<std::size_t>(n), std::vector<std::string>(n, "0"));
  sqe::SampleRanges ranges;
  for (int i = 0; i < n; ++i) {
    coords.push_back("x" + std::to_string(i + 1));
    g[i][i] = "1";
    ranges[coords.back()] = {-1.0, 1.0};
  }
  return chart("flat", coords, g, std::move(one_form), ranges);
}

/// S^2 x R with the unit parallel form dz; its Ricci tensor is g - dz⊗dz.
inline sqe::ChartSpec sphere_line() {
  return chart("s2xr", {"theta", "phi", "z"}, {{"1", "0", "0"}, {"0", "sin(theta)^2", "0"}, {"0", "0", "1"}},
               std::vector<std::string>{"0", "0", "1"},
               {{"theta", {0.3, 2.8}}, {"phi", {0.1, 6.0}}, {"z", {-1.0, 1.0}}});
}

inline sqe::ChartSpec round_sphere() {
  return chart("sphere", {"theta", "phi"}, {{"1", "0"}, {"0", "sin(theta)^2"}}, std::nullopt,
               {{"theta", {0.3, 2.8}}, {"phi", {0.1, 6.0}}});
}

/// Exact equality of normal forms.
inline bool same(const sqe::Expr& e, const std::string& text, const sqe::ChartSpec& c) {
  return (e - sqe::parse(text, c.symbols)).is_zero();
}

/// Zero test at the default options over the chart's ranges.
inline bool vanishes(const sqe::Expr& e, const sqe::ChartSpec& c) {
  return sqe::is_zero(e, c.sample_ranges).vanishes();
}

inline sqe::Expr ex(const std::string& text, const sqe::ChartSpec& c) { return sqe::parse(text, c.symbols); }

}  // namespace testing
