#include "sqe/corpus.hpp"

#include <map>

namespace sqe {

namespace {

// Schwarzschild in the (+,-,-,-) form with the Killing generator of ∂_t.
const std::string kSchwarzschild = R"json({
  "name": "schwarzschild",
  "coordinates": ["t", "r", "theta", "phi"],
  "parameters": {"m": {"positive": true}},
  "metric": [
    ["2*m/r - 1", "0", "0", "0"],
    ["0", "-1/(2*m/r - 1)", "0", "0"],
    ["0", "0", "r^2", "0"],
    ["0", "0", "0", "r^2*sin(theta)^2"]
  ],
  "one_form": ["(2*m - r)/r", "0", "0", "0"],
  "sample_ranges": {
    "t": [-1.0, 1.0],
    "r": [3.0, 10.0],
    "theta": [0.3, 2.8],
    "phi": [0.1, 6.0],
    "m": [0.5, 1.0]
  }
}
)json";

const std::string kKottler = R"json({
  "name": "kottler",
  "coordinates": ["t", "r", "theta", "phi"],
  "parameters": {"m": {"positive": true}, "Lambda": {"positive": true}},
  "metric": [
    ["Lambda*r^2/3 + 2*m/r - 1", "0", "0", "0"],
    ["0", "-3/(Lambda*r^2 + 6*m/r - 3)", "0", "0"],
    ["0", "0", "r^2", "0"],
    ["0", "0", "0", "r^2*sin(theta)^2"]
  ],
  "one_form": ["(Lambda*r^3 + 6*m - 3*r)/(3*r)", "0", "0", "0"],
  "sample_ranges": {
    "t": [-1.0, 1.0],
    "r": [3.0, 10.0],
    "theta": [0.3, 2.8],
    "phi": [0.1, 6.0],
    "m": [0.5, 1.0],
    "Lambda": [0.1, 0.5]
  }
}
)json";

const std::string kExample3 = R"json({
  "name": "example3",
  "coordinates": ["x1", "x2", "x3"],
  "metric": [
    ["exp(x1)", "0", "0"],
    ["0", "-exp(x1)", "0"],
    ["0", "0", "1"]
  ],
  "one_form": ["exp(x1/2 - x2/2)", "-exp(x1/2 - x2/2)", "1"],
  "sample_ranges": {
    "x1": [-1.0, 1.0],
    "x2": [-1.0, 1.0],
    "x3": [-1.0, 1.0]
  }
}
)json";

const std::map<std::string, const std::string*, std::less<>>& table() {
  static const std::map<std::string, const std::string*, std::less<>> t{
      {"schwarzschild", &kSchwarzschild}, {"kottler", &kKottler}, {"example3", &kExample3}};
  return t;
}

}  // namespace

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{"schwarzschild", "kottler", "example3"};
  return names;
}

bool is_corpus_name(std::string_view name) { return table().contains(name); }

const std::string& emit_corpus(std::string_view name) {
  auto it = table().find(name);
  if (it == table().end()) {
    throw UnknownCorpusEntry(std::string(name));
  }
  return *it->second;
}

ChartSpec load_corpus(std::string_view name, const ZeroTestOptions& options) {
  return load_spec(emit_corpus(name), options);
}

}  // namespace sqe
