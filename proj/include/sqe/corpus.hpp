#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqe/chart.hpp"

namespace sqe {

class UnknownCorpusEntry : public std::invalid_argument {
 public:
  explicit UnknownCorpusEntry(const std::string& name)
      : std::invalid_argument("unknown corpus entry '" + name + "' (expected schwarzschild, kottler or example3)") {}
};

/// Built-in example names, in display order.
const std::vector<std::string>& corpus_names();

bool is_corpus_name(std::string_view name);

/// Spec-file JSON for a built-in example, byte-for-byte stable.
const std::string& emit_corpus(std::string_view name);

ChartSpec load_corpus(std::string_view name, const ZeroTestOptions& options = {});

}  // namespace sqe
