#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqe/corpus.hpp"
#include "sqe/report.hpp"

using namespace sqe;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_with(RunConfig cfg) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = run(cfg, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

RunConfig config(std::string input, ReportKind report, OutputFormat format = OutputFormat::Json,
                 ConnectionChoice conn = ConnectionChoice::LeviCivita) {
  RunConfig cfg;
  cfg.input = std::move(input);
  cfg.report = report;
  cfg.format = format;
  cfg.connection = conn;
  return cfg;
}

/// Runs the installed binary through the shell; stdout is captured.
Outcome shell(const std::string& args, const std::string& env = "") {
  Outcome o;
  std::string cmd = (env.empty() ? "" : "env " + env + " ") + SQE_BINARY + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
    o.out.append(buf.data(), n);
  }
  int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

const json* flag(const json& report, const std::string& name) {
  const json& flags = report.at("classification").at("flags");
  auto it = flags.find(name);
  return it == flags.end() ? nullptr : &*it;
}

}  // namespace

TEST_SUITE("run") {
  TEST_CASE("schwarzschild semi-symmetric Ricci as JSON") {
    Outcome o = run_with(
        config("schwarzschild", ReportKind::Ricci, OutputFormat::Json, ConnectionChoice::SemiSymmetric));
    CHECK(o.code == 0);
    json j = json::parse(o.out);
    CHECK(j.at("chart") == "schwarzschild");
    CHECK(j.at("connection") == "semi-symmetric");
    const json& ricci = j.at("tables").at("ricci");
    REQUIRE(ricci.size() == 4);
    CHECK(ricci[1][1] == "2");
    CHECK(ricci[0][1] == "-2*m/r^2");
    CHECK(ricci[1][0] == "2*m/r^2");
    CHECK(ricci[0][0] == "0");
  }

  TEST_CASE("christoffel table omits zeros and names coordinates") {
    Outcome o = run_with(config("schwarzschild", ReportKind::Christoffel));
    json j = json::parse(o.out);
    const json& table = j.at("tables").at("christoffel");
    CHECK(table.size() == 13);
    bool found = false;
    for (const auto& row : table) {
      if (row.at("indices") == json::array({"r", "theta", "theta"})) {
        CHECK(row.at("expr") == "2*m - r");
        found = true;
      }
    }
    CHECK(found);
  }

  TEST_CASE("example3 classification") {
    Outcome o = run_with(config("example3", ReportKind::Classify));
    CHECK(o.code == 0);
    json j = json::parse(o.out);
    REQUIRE(flag(j, "sqe"));
    CHECK(flag(j, "sqe")->at("verdict") == "pass");
    const json& w = j.at("classification").at("witnesses");
    CHECK(w.at("sqe_a") == "-1");
    CHECK(w.at("sqe_b") == "1");
    CHECK(j.at("residual_summaries").contains("sqe"));
  }

  TEST_CASE("json expressions re-parse") {
    Outcome o = run_with(config("kottler", ReportKind::All));
    json j = json::parse(o.out);
    ChartSpec c = load_corpus("kottler");
    for (const auto& row : j.at("tables").at("christoffel")) {
      CHECK_NOTHROW(parse(row.at("expr").get<std::string>(), c.symbols));
    }
  }

  TEST_CASE("json output is deterministic") {
    RunConfig cfg = config("kottler", ReportKind::All, OutputFormat::Json, ConnectionChoice::SemiSymmetric);
    CHECK(run_with(cfg).out == run_with(cfg).out);
  }

  TEST_CASE("text and latex formats") {
    Outcome t = run_with(config("example3", ReportKind::Christoffel, OutputFormat::Text));
    CHECK(t.code == 0);
    CHECK(t.out.find("x1") != std::string::npos);
    Outcome l = run_with(config("schwarzschild", ReportKind::Christoffel, OutputFormat::Latex));
    CHECK(l.code == 0);
    CHECK(l.out.find("\\Gamma") != std::string::npos);
    CHECK(l.out.find("\\frac") != std::string::npos);
  }

  TEST_CASE("missing file") {
    Outcome o = run_with(config("missing.json", ReportKind::All));
    CHECK(o.code == 2);
    CHECK(o.err.find("cannot open") != std::string::npos);
    CHECK(o.out.empty());
  }

  TEST_CASE("malformed file") {
    std::string path = "cli_test_bad_spec.json";
    {
      std::ofstream f(path);
      f << R"({"name": "bad", "coordinates": ["x", "y"], "metric": [["1", "x"], ["y", "1"]],
              "sample_ranges": {"x": [0, 1], "y": [0, 1]}})";
    }
    Outcome o = run_with(config(path, ReportKind::All));
    CHECK(o.code == 2);
    CHECK(o.err.find("symmetric") != std::string::npos);
    std::remove(path.c_str());
  }

  TEST_CASE("spec files load like the corpus") {
    std::string path = "cli_test_kottler.json";
    {
      std::ofstream f(path);
      f << emit_corpus("kottler");
    }
    RunConfig from_file = config(path, ReportKind::Ricci);
    RunConfig builtin = config("kottler", ReportKind::Ricci);
    CHECK(run_with(from_file).out == run_with(builtin).out);
    std::remove(path.c_str());
  }

  TEST_CASE("ricci sign is reported and applied") {
    RunConfig cfg = config("kottler", ReportKind::Ricci);
    cfg.sign = RicciSign::Paper;
    json j = json::parse(run_with(cfg).out);
    CHECK(j.at("tables").at("ricci_sign") == "paper");
    CHECK(j.at("tables").at("ricci")[2][2] == "-Lambda*r^2");
  }
}

TEST_SUITE("binary") {
  TEST_CASE("compute and exit codes") {
    Outcome ok = shell("compute example3 --report classify --format json");
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out).at("classification").at("witnesses").at("sqe_a") == "-1");
    CHECK(shell("compute missing.json").code == 2);
    CHECK(shell("compute example3 --connection other").code == 2);
    CHECK(shell("compute example3 --ricci-sign other").code == 2);
    CHECK(shell("").code == 2);
    Outcome upper = shell("compute example3 --connection SSMC --report RICCI --format JSON");
    CHECK(upper.code == 0);
    CHECK(json::parse(upper.out).at("connection") == "semi-symmetric");
  }

  TEST_CASE("corpus subcommand") {
    Outcome o = shell("corpus schwarzschild");
    CHECK(o.code == 0);
    CHECK(o.out == emit_corpus("schwarzschild"));
    CHECK(shell("corpus nope").code == 2);
  }

  TEST_CASE("SQE_TOL sets the default tolerance") {
    auto parallel = [](const Outcome& o) {
      return json::parse(o.out).at("classification").at("flags").at("parallel").at("verdict").get<std::string>();
    };
    const std::string args = "compute schwarzschild --report classify --format json";
    CHECK(parallel(shell(args)) == "fail");
    CHECK(parallel(shell(args, "SQE_TOL=10")) == "pass");
    // an explicit --tol wins over the environment
    CHECK(parallel(shell(args + " --tol 1e-9", "SQE_TOL=10")) == "fail");
    CHECK(shell(args, "SQE_TOL=abc").code == 2);
  }
}
