#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "sqe/classify.hpp"

namespace sqe {

enum class ConnectionChoice : std::uint8_t { LeviCivita, SemiSymmetric };
enum class ReportKind : std::uint8_t { Christoffel, Riemann, Ricci, Classify, All };
enum class OutputFormat : std::uint8_t { Text, Json, Latex };

struct RunConfig {
  std::string input;  // path or built-in name
  ConnectionChoice connection = ConnectionChoice::LeviCivita;
  ReportKind report = ReportKind::All;
  OutputFormat format = OutputFormat::Text;
  ZeroTestOptions options;
  RicciSign sign = RicciSign::Standard;
};

/// Input could not be resolved or parsed (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolves a built-in name or reads a spec file.
ChartSpec resolve_input(const std::string& input, const ZeroTestOptions& options);

/// Runs the pipeline and writes the report to out, diagnostics to err.
/// Returns 0 on success or report-only, 1 when a verification failed,
/// 2 on input or format errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sqe
