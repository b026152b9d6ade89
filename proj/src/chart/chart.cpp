#include "sqe/chart.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace sqe {

using nlohmann::json;

namespace {

Expr parse_at(const std::string& text, const SymbolTable& symbols, const std::string& path) {
  try {
    return parse(text, symbols);
  } catch (const ParseError& e) {
    throw FormatError(path, e.what());
  } catch (const ExprError& e) {
    throw FormatError(path, e.what());
  }
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(std::string("/") + key, "missing required key");
  }
  return *it;
}

std::string expect_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    throw FormatError(path, "expected a string");
  }
  return v.get<std::string>();
}

double expect_number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    throw FormatError(path, "expected a number");
  }
  return v.get<double>();
}

std::vector<std::string> string_array(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw FormatError(path, "expected an array");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(expect_string(v[i], path + "/" + std::to_string(i)));
  }
  return out;
}

ChartSource source_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw FormatError("", "top level must be an object");
  }
  static const std::vector<std::string> kKeys{"name", "coordinates", "parameters", "metric", "one_form", "sample_ranges"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw FormatError("/" + key, "unknown key");
    }
  }
  ChartSource src;
  src.name = expect_string(require(doc, "name"), "/name");
  src.coordinates = string_array(require(doc, "coordinates"), "/coordinates");
  if (auto it = doc.find("parameters"); it != doc.end()) {
    if (!it->is_object()) {
      throw FormatError("/parameters", "expected an object");
    }
    for (const auto& [name, flags] : it->items()) {
      std::string path = "/parameters/" + name;
      if (!flags.is_object()) {
        throw FormatError(path, "expected an object");
      }
      Parameter p{name, false, false};
      for (const auto& [flag, value] : flags.items()) {
        if (!value.is_boolean()) {
          throw FormatError(path + "/" + flag, "expected a boolean");
        }
        if (flag == "positive") {
          p.positive = value.get<bool>();
        } else if (flag == "nonzero") {
          p.nonzero = value.get<bool>();
        } else {
          throw FormatError(path + "/" + flag, "unknown key");
        }
      }
      p.nonzero = p.nonzero || p.positive;
      src.parameters.push_back(p);
    }
  }
  const json& metric = require(doc, "metric");
  if (!metric.is_array()) {
    throw FormatError("/metric", "expected an array");
  }
  for (std::size_t i = 0; i < metric.size(); ++i) {
    src.metric.push_back(string_array(metric[i], "/metric/" + std::to_string(i)));
  }
  if (auto it = doc.find("one_form"); it != doc.end()) {
    src.one_form = string_array(*it, "/one_form");
  }
  const json& ranges = require(doc, "sample_ranges");
  if (!ranges.is_object()) {
    throw FormatError("/sample_ranges", "expected an object");
  }
  for (const auto& [name, range] : ranges.items()) {
    std::string path = "/sample_ranges/" + name;
    if (!range.is_array() || range.size() != 2) {
      throw FormatError(path, "expected [lo, hi]");
    }
    src.sample_ranges[name] = SampleRange{expect_number(range[0], path + "/0"), expect_number(range[1], path + "/1")};
  }
  return src;
}

std::vector<std::vector<Expr>> minor(const std::vector<std::vector<Expr>>& m, std::size_t row, std::size_t col) {
  std::vector<std::vector<Expr>> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) {
      continue;
    }
    std::vector<Expr> r;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) {
        r.push_back(m[i][j]);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

Expr det_rec(const std::vector<std::vector<Expr>>& m) {
  if (m.empty()) {
    return Expr::integer(1);
  }
  if (m.size() == 1) {
    return m[0][0];
  }
  Expr total;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[0][j].is_zero()) {
      continue;
    }
    Expr term = m[0][j] * det_rec(minor(m, 0, j));
    total = (j % 2 == 0) ? total + term : total - term;
  }
  return total;
}

std::vector<std::vector<Expr>> to_rows(const TensorField& m) {
  std::vector<std::vector<Expr>> rows(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      rows[static_cast<std::size_t>(i)].push_back(m({i, j}));
    }
  }
  return rows;
}

TensorField compute_inverse(const TensorField& g, const Expr& det) {
  auto rows = to_rows(g);
  int n = g.dim();
  return TensorField::generate(n, {Variance::Up, Variance::Up}, [&](const std::vector<int>& idx) {
    auto i = static_cast<std::size_t>(idx[0]);
    auto j = static_cast<std::size_t>(idx[1]);
    Expr cof = det_rec(minor(rows, j, i));
    if ((i + j) % 2 == 1) {
      cof = -cof;
    }
    return cof / det;
  });
}

/// Contracts slot `slot` of t with the first slot of a rank-2 tensor m.
TensorField contract_slot(const TensorField& t, int slot, const TensorField& m, Variance result) {
  std::vector<Variance> v = t.variance();
  v[static_cast<std::size_t>(slot)] = result;
  return TensorField::generate(t.dim(), v, [&](const std::vector<int>& idx) {
    std::vector<int> j = idx;
    Expr sum;
    for (int k = 0; k < t.dim(); ++k) {
      const Expr& mk = m({idx[static_cast<std::size_t>(slot)], k});
      if (mk.is_zero()) {
        continue;
      }
      j[static_cast<std::size_t>(slot)] = k;
      sum += mk * t.at(j);
    }
    return sum;
  });
}

}  // namespace

const TensorField& ChartSpec::pi() const {
  if (!one_form) {
    throw MissingOneForm();
  }
  return *one_form;
}

ChartSpec load_spec(std::string_view document, const ZeroTestOptions& options) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw FormatError("", std::string("invalid JSON: ") + e.what());
  }
  return build_chart(source_from_json(doc), options);
}

ChartSpec build_chart(const ChartSource& src, const ZeroTestOptions& options) {
  ChartSpec c;
  c.name = src.name;
  std::size_t n = src.coordinates.size();
  if (n < 2) {
    throw FormatError("/coordinates", "dimension must be at least 2");
  }
  try {
    for (const auto& x : src.coordinates) {
      c.symbols.add_coordinate(x);
    }
  } catch (const ExprError& e) {
    throw FormatError("/coordinates", e.what());
  }
  for (const auto& p : src.parameters) {
    try {
      c.symbols.add_parameter(p);
    } catch (const ExprError& e) {
      throw FormatError("/parameters/" + p.name, e.what());
    }
  }
  for (const auto& name : c.symbols.all_names()) {
    if (src.sample_ranges.find(name) == src.sample_ranges.end()) {
      throw FormatError("/sample_ranges", "missing range for '" + name + "'");
    }
  }
  for (const auto& [name, range] : src.sample_ranges) {
    if (!c.symbols.contains(name)) {
      throw FormatError("/sample_ranges/" + name, "range for undeclared symbol");
    }
    if (!(range.lo < range.hi) || !std::isfinite(range.lo) || !std::isfinite(range.hi)) {
      throw FormatError("/sample_ranges/" + name, "expected lo < hi");
    }
    const Parameter* p = c.symbols.parameter(name);
    if (p && p->positive && range.lo <= 0) {
      throw FormatError("/sample_ranges/" + name, "range of a positive parameter must be positive");
    }
  }
  c.sample_ranges = src.sample_ranges;

  if (src.metric.size() != n) {
    throw FormatError("/metric", "expected " + std::to_string(n) + " rows");
  }
  c.metric = TensorField(static_cast<int>(n), {Variance::Down, Variance::Down});
  for (std::size_t i = 0; i < n; ++i) {
    if (src.metric[i].size() != n) {
      throw FormatError("/metric/" + std::to_string(i), "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      c.metric({static_cast<int>(i), static_cast<int>(j)}) =
          parse_at(src.metric[i][j], c.symbols, "/metric/" + std::to_string(i) + "/" + std::to_string(j));
    }
  }
  if (src.one_form) {
    if (src.one_form->size() != n) {
      throw FormatError("/one_form", "expected " + std::to_string(n) + " entries");
    }
    TensorField pi(static_cast<int>(n), {Variance::Down});
    for (std::size_t i = 0; i < n; ++i) {
      pi({static_cast<int>(i)}) = parse_at((*src.one_form)[i], c.symbols, "/one_form/" + std::to_string(i));
    }
    c.one_form = std::move(pi);
  }

  for (int i = 0; i < static_cast<int>(n); ++i) {
    for (int j = i + 1; j < static_cast<int>(n); ++j) {
      if (!is_zero(c.metric({i, j}) - c.metric({j, i}), c.sample_ranges, options).vanishes()) {
        throw SymmetryError(i, j);
      }
    }
  }

  Expr det = determinant(c.metric);
  if (det.is_zero()) {
    throw DegeneracyError("metric determinant is identically zero", {});
  }
  PointSampler sampler(c.sample_ranges, options.seed);
  int accepted = 0;
  int rejected = 0;
  while (accepted < options.points) {
    Bindings point = sampler.next();
    double v = 0.0;
    try {
      v = eval_numeric(det, point);
    } catch (const DomainError&) {
      if (++rejected >= 100 * options.points) {
        throw SamplingExhausted("no valid sample point for the metric determinant");
      }
      continue;
    }
    rejected = 0;
    ++accepted;
    if (std::fabs(v) <= options.tol) {
      throw DegeneracyError("metric is degenerate at a sample point", point);
    }
  }
  c.inverse = compute_inverse(c.metric, det);
  return c;
}

ChartSpec with_one_form(const ChartSpec& chart, std::optional<TensorField> one_form) {
  ChartSpec c = chart;
  if (one_form && (one_form->dim() != c.dim() || one_form->variance() != std::vector<Variance>{Variance::Down})) {
    throw std::invalid_argument("one-form has the wrong shape");
  }
  c.one_form = std::move(one_form);
  return c;
}

Expr determinant(const TensorField& m) {
  if (m.rank() != 2) {
    throw std::invalid_argument("determinant needs a rank-2 tensor");
  }
  return det_rec(to_rows(m));
}

TensorField inverse_metric(const ChartSpec& c) { return c.inverse; }

TensorField raise_index(const TensorField& t, int slot, const ChartSpec& c) {
  if (t.variance().at(static_cast<std::size_t>(slot)) != Variance::Down) {
    throw std::invalid_argument("slot is already contravariant");
  }
  return contract_slot(t, slot, c.inverse, Variance::Up);
}

TensorField lower_index(const TensorField& t, int slot, const ChartSpec& c) {
  if (t.variance().at(static_cast<std::size_t>(slot)) != Variance::Up) {
    throw std::invalid_argument("slot is already covariant");
  }
  return contract_slot(t, slot, c.metric, Variance::Down);
}

TensorField generator(const ChartSpec& c) { return raise_index(c.pi(), 0, c); }

}  // namespace sqe
