#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regal/engine.hpp"
#include "regal/grammar.hpp"
#include "regal/restriction.hpp"
#include "regal/term.hpp"

namespace regal {

enum class ReportFormat { text, json };

// One predicate's directional type: its Ca and Su rules rendered against the
// final grammar's canonical variable names.
struct DirectionalType {
  FunctionSymbol pred;
  std::optional<std::string> call;    // e.g. "app(V1, V1, any)"
  std::optional<std::string> success; // e.g. "app(V1, V1, V1)"
};

struct AnalysisReport {
  std::string program_path;
  WideningConfig config;
  uint32_t iterations = 0;
  std::vector<DirectionalType> types;
  std::vector<Warning> warnings;
  std::vector<TraceStep> trace;
  TermGrammar grammar;
  // Wall time; rendered only when show_timing is set, so that reports stay
  // byte-identical across runs.
  double elapsed_ms = 0.0;
  bool show_timing = false;
  bool show_trace = false;
};

AnalysisReport make_report(std::string program_path, const Program& program,
                           const AnalysisResult& result,
                           const WideningConfig& cfg);

std::string render(const AnalysisReport& report, ReportFormat format);

struct CheckReport {
  std::string program_path;
  std::string spec_path;
  CheckResult result;
};

std::string render_check(const CheckReport& report, ReportFormat format);

} // namespace regal
