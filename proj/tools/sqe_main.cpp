#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "sqe/corpus.hpp"
#include "sqe/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Levi-Civita and semi-symmetric metric connections, curvature and semi-quasi-Einstein checks"};
  app.require_subcommand(1);

  sqe::RunConfig cfg;
  if (const char* env = std::getenv("SQE_TOL")) {
    try {
      cfg.options.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: SQE_TOL is not a number: " << env << '\n';
      return 2;
    }
  }

  const std::map<std::string, sqe::ConnectionChoice> connections{{"lc", sqe::ConnectionChoice::LeviCivita},
                                                                  {"ssmc", sqe::ConnectionChoice::SemiSymmetric}};
  const std::map<std::string, sqe::ReportKind> reports{{"christoffel", sqe::ReportKind::Christoffel},
                                                       {"riemann", sqe::ReportKind::Riemann},
                                                       {"ricci", sqe::ReportKind::Ricci},
                                                       {"classify", sqe::ReportKind::Classify},
                                                       {"all", sqe::ReportKind::All}};
  const std::map<std::string, sqe::OutputFormat> formats{
      {"text", sqe::OutputFormat::Text}, {"json", sqe::OutputFormat::Json}, {"latex", sqe::OutputFormat::Latex}};

  auto* compute = app.add_subcommand("compute", "Compute tables and checks for a spec file or built-in chart");
  compute->add_option("input", cfg.input, "Spec file path or built-in name (schwarzschild, kottler, example3)")
      ->required();
  std::string connection = "lc";
  std::string report = "all";
  std::string format = "text";
  compute->add_option("--connection", connection, "lc or ssmc")
      ->transform(CLI::IsMember(connections, CLI::ignore_case));
  compute->add_option("--report", report, "christoffel, riemann, ricci, classify or all")
      ->transform(CLI::IsMember(reports, CLI::ignore_case));
  compute->add_option("--format", format, "text, json or latex")
      ->transform(CLI::IsMember(formats, CLI::ignore_case));
  compute->add_option("--points", cfg.options.points, "Sample points per zero test")->check(CLI::PositiveNumber);
  compute->add_option("--seed", cfg.options.seed, "Sampling seed");
  compute->add_option("--tol", cfg.options.tol, "Relative zero-test tolerance (overrides SQE_TOL)")
      ->check(CLI::PositiveNumber);
  std::string sign = "standard";
  compute->add_option("--ricci-sign", sign, "Ricci contraction sign: standard (+1, default) or paper (-1)")
      ->check(CLI::IsMember({"standard", "paper"}));

  std::string corpus_name;
  auto* corpus = app.add_subcommand("corpus", "Print the spec file of a built-in chart");
  corpus->add_option("name", corpus_name, "schwarzschild, kottler or example3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*corpus) {
    try {
      std::cout << sqe::emit_corpus(corpus_name);
      return 0;
    } catch (const sqe::UnknownCorpusEntry& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }
  cfg.connection = connections.at(connection);
  cfg.report = reports.at(report);
  cfg.format = formats.at(format);
  cfg.sign = *sqe::ricci_sign_from_string(sign);
  return sqe::run(cfg, std::cout, std::cerr);
}
