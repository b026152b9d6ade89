#include "sqe/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "sqe/corpus.hpp"

namespace sqe {

namespace {

using ojson = nlohmann::ordered_json;

struct Tables {
  std::string connection;
  const ConnectionCoefficients* conn = nullptr;
  const CurvatureBundle* bundle = nullptr;
};

bool wants(ReportKind requested, ReportKind section) {
  return requested == ReportKind::All || requested == section;
}

std::vector<std::string> index_names(const ChartSpec& c, const std::vector<int>& idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int i : idx) {
    out.push_back(c.coordinate(i));
  }
  return out;
}

std::string latex_name(const ChartSpec& c, int i) { return Expr::symbol(c.coordinate(i)).latex(); }

/// Nonzero Γ^k_ij in storage order.
std::vector<std::pair<std::vector<int>, Expr>> christoffel_entries(const ConnectionCoefficients& conn) {
  std::vector<std::pair<std::vector<int>, Expr>> out;
  conn.gamma.for_each([&](const std::vector<int>& idx, const Expr& e) {
    if (!e.is_zero()) {
      out.emplace_back(idx, e);
    }
  });
  return out;
}

/// Nonzero R^l_ijk with i < j (the rest follow by antisymmetry).
std::vector<std::pair<std::vector<int>, Expr>> riemann_entries(const TensorField& r) {
  std::vector<std::pair<std::vector<int>, Expr>> out;
  r.for_each([&](const std::vector<int>& idx, const Expr& e) {
    if (idx[1] < idx[2] && !e.is_zero()) {
      out.emplace_back(idx, e);
    }
  });
  return out;
}

ojson check_json(const Check& c) {
  ojson j;
  j["verdict"] = std::string(to_string(c.verdict));
  j["max_residual"] = c.max_residual;
  if (!c.note.empty()) {
    j["note"] = c.note;
  }
  if (!c.witness_index.empty()) {
    j["witness_index"] = c.witness_index;
  }
  return j;
}

ojson checks_json(const std::vector<NamedCheck>& list) {
  ojson j = ojson::object();
  for (const auto& nc : list) {
    j[nc.name] = check_json(nc.check);
  }
  return j;
}

ojson classification_json(const ClassificationReport& rep) {
  ojson j;
  j["ricci_sign"] = std::string(to_string(rep.sign));
  j["flags"] = checks_json(rep.flags);
  ojson w = ojson::object();
  for (const auto& [name, e] : rep.witnesses) {
    w[name] = e.str();
  }
  if (!rep.sqe_eta.empty()) {
    ojson eta = ojson::array();
    for (const auto& e : rep.sqe_eta) {
      eta.push_back(e.str());
    }
    w["sqe_eta"] = eta;
  }
  j["witnesses"] = w;
  j["theorems"] = checks_json(rep.theorems);
  j["semisymmetry"] = checks_json(rep.semisymmetry);
  j["identities"] = checks_json(rep.identities);
  return j;
}

ojson residual_summaries(const ClassificationReport& rep) {
  ojson j = ojson::object();
  for (const auto* list : {&rep.flags, &rep.theorems, &rep.semisymmetry, &rep.identities}) {
    for (const auto& nc : *list) {
      j[nc.name] = nc.check.max_residual;
    }
  }
  return j;
}

// ------------------------------------------------------------- text

void text_checks(std::ostream& out, const char* title, const std::vector<NamedCheck>& list) {
  out << title << ":\n";
  for (const auto& nc : list) {
    out << "  " << std::left << std::setw(32) << nc.name << std::setw(20) << to_string(nc.check.verdict);
    if (nc.check.max_residual > 0) {
      out << " max|res| " << std::scientific << std::setprecision(2) << nc.check.max_residual << std::defaultfloat;
    }
    if (!nc.check.note.empty()) {
      out << "  (" << nc.check.note << ")";
    }
    out << '\n';
  }
}

void text_report(std::ostream& out, const ChartSpec& c, const RunConfig& cfg, const Tables& t,
                 const std::optional<ClassificationReport>& rep) {
  out << "chart: " << c.name << "  (n = " << c.dim() << ")\n";
  out << "connection: " << t.connection << "\n";
  if (wants(cfg.report, ReportKind::Christoffel)) {
    out << "\nchristoffel (nonzero):\n";
    for (const auto& [idx, e] : christoffel_entries(*t.conn)) {
      auto n = index_names(c, idx);
      out << "  Gamma^" << n[0] << "_" << n[1] << " " << n[2] << " = " << e.str() << '\n';
    }
  }
  if (wants(cfg.report, ReportKind::Riemann)) {
    out << "\nriemann (nonzero, i < j):\n";
    for (const auto& [idx, e] : riemann_entries(t.bundle->riemann)) {
      auto n = index_names(c, idx);
      out << "  R^" << n[0] << "_" << n[1] << " " << n[2] << " " << n[3] << " = " << e.str() << '\n';
    }
  }
  if (wants(cfg.report, ReportKind::Ricci)) {
    out << "\nricci (sign " << to_string(cfg.sign) << "):\n";
    int n = c.dim();
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        out << "  S_" << c.coordinate(j) << " " << c.coordinate(k) << " = " << t.bundle->ricci({j, k}).str() << '\n';
      }
    }
    out << "  scalar = " << t.bundle->scalar.str() << '\n';
  }
  if (rep) {
    out << '\n';
    text_checks(out, "flags", rep->flags);
    out << "witnesses:\n";
    for (const auto& [name, e] : rep->witnesses) {
      out << "  " << name << " = " << e.str() << '\n';
    }
    text_checks(out, "theorems", rep->theorems);
    text_checks(out, "semisymmetry", rep->semisymmetry);
    text_checks(out, "identities", rep->identities);
  }
}

// ------------------------------------------------------------ latex

void latex_report(std::ostream& out, const ChartSpec& c, const RunConfig& cfg, const Tables& t,
                  const std::optional<ClassificationReport>& rep) {
  const char* gamma = cfg.connection == ConnectionChoice::SemiSymmetric ? "\\bar{\\Gamma}" : "\\Gamma";
  out << "% chart: " << c.name << ", connection: " << t.connection << "\n";
  if (wants(cfg.report, ReportKind::Christoffel)) {
    out << "\\begin{align*}\n";
    for (const auto& [idx, e] : christoffel_entries(*t.conn)) {
      out << "  " << gamma << "^{" << latex_name(c, idx[0]) << "}_{" << latex_name(c, idx[1]) << " "
          << latex_name(c, idx[2]) << "} &= " << e.latex() << " \\\\\n";
    }
    out << "\\end{align*}\n";
  }
  if (wants(cfg.report, ReportKind::Riemann)) {
    out << "\\begin{align*}\n";
    for (const auto& [idx, e] : riemann_entries(t.bundle->riemann)) {
      out << "  R^{" << latex_name(c, idx[0]) << "}_{" << latex_name(c, idx[1]) << " " << latex_name(c, idx[2])
          << " " << latex_name(c, idx[3]) << "} &= " << e.latex() << " \\\\\n";
    }
    out << "\\end{align*}\n";
  }
  if (wants(cfg.report, ReportKind::Ricci)) {
    int n = c.dim();
    out << "S = \\begin{pmatrix}\n";
    for (int j = 0; j < n; ++j) {
      out << "  ";
      for (int k = 0; k < n; ++k) {
        out << t.bundle->ricci({j, k}).latex() << (k + 1 < n ? " & " : "");
      }
      out << (j + 1 < n ? " \\\\\n" : "\n");
    }
    out << "\\end{pmatrix}\n";
  }
  if (rep) {
    out << "\\begin{tabular}{ll}\n";
    for (const auto* list : {&rep->flags, &rep->theorems, &rep->semisymmetry, &rep->identities}) {
      for (const auto& nc : *list) {
        std::string name = nc.name;
        for (std::size_t p = name.find('_'); p != std::string::npos; p = name.find('_', p + 2)) {
          name.replace(p, 1, "\\_");
        }
        out << "  " << name << " & " << to_string(nc.check.verdict) << " \\\\\n";
      }
    }
    out << "\\end{tabular}\n";
    for (const auto& [name, e] : rep->witnesses) {
      out << "% " << name << ": $" << e.latex() << "$\n";
    }
  }
}

// ------------------------------------------------------------- json

void json_report(std::ostream& out, const ChartSpec& c, const RunConfig& cfg, const Tables& t,
                 const std::optional<ClassificationReport>& rep) {
  ojson j;
  j["chart"] = c.name;
  j["connection"] = t.connection;
  ojson tables = ojson::object();
  if (wants(cfg.report, ReportKind::Christoffel)) {
    ojson list = ojson::array();
    for (const auto& [idx, e] : christoffel_entries(*t.conn)) {
      list.push_back({{"indices", index_names(c, idx)}, {"expr", e.str()}});
    }
    tables["christoffel"] = list;
  }
  if (wants(cfg.report, ReportKind::Riemann)) {
    ojson list = ojson::array();
    for (const auto& [idx, e] : riemann_entries(t.bundle->riemann)) {
      list.push_back({{"indices", index_names(c, idx)}, {"expr", e.str()}});
    }
    tables["riemann"] = list;
  }
  if (wants(cfg.report, ReportKind::Ricci)) {
    int n = c.dim();
    ojson m = ojson::array();
    for (int r = 0; r < n; ++r) {
      ojson row = ojson::array();
      for (int k = 0; k < n; ++k) {
        row.push_back(t.bundle->ricci({r, k}).str());
      }
      m.push_back(row);
    }
    tables["ricci"] = m;
    tables["ricci_sign"] = std::string(to_string(cfg.sign));
    tables["scalar"] = t.bundle->scalar.str();
  }
  j["tables"] = tables;
  if (rep) {
    j["classification"] = classification_json(*rep);
    j["residual_summaries"] = residual_summaries(*rep);
  } else {
    j["classification"] = nullptr;
    j["residual_summaries"] = ojson::object();
  }
  out << j.dump(2) << '\n';
}

}  // namespace

ChartSpec resolve_input(const std::string& input, const ZeroTestOptions& options) {
  if (is_corpus_name(input)) {
    return load_corpus(input, options);
  }
  std::ifstream in(input, std::ios::binary);
  if (!in) {
    throw InputError("cannot open '" + input + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_spec(buf.str(), options);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    ChartSpec chart = resolve_input(cfg.input, cfg.options);
    if (cfg.connection == ConnectionChoice::SemiSymmetric && !chart.one_form) {
      throw MissingOneForm();
    }
    Geometry g = analyze(std::move(chart), cfg.sign, cfg.options);
    Tables t;
    if (cfg.connection == ConnectionChoice::SemiSymmetric) {
      t.connection = std::string(to_string(ConnectionKind::SemiSymmetric));
      t.conn = &g.ssmc();
      t.bundle = &g.ss_bundle();
    } else {
      t.connection = std::string(to_string(ConnectionKind::LeviCivita));
      t.conn = &g.lc;
      t.bundle = &g.lc_curvature;
    }
    std::optional<ClassificationReport> rep;
    if (wants(cfg.report, ReportKind::Classify)) {
      rep = classify(g);
    }
    switch (cfg.format) {
      case OutputFormat::Text:
        text_report(out, g.chart, cfg, t, rep);
        break;
      case OutputFormat::Json:
        json_report(out, g.chart, cfg, t, rep);
        break;
      case OutputFormat::Latex:
        latex_report(out, g.chart, cfg, t, rep);
        break;
    }
    return rep && !rep->verified() ? 1 : 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ChartError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ExprError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const SamplingExhausted& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace sqe
