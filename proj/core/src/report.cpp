#include "regal/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace regal {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string kind_name(Warning::Kind kind) {
  switch (kind) {
    case Warning::Kind::constraint_call_violation: return "constraint-call";
    case Warning::Kind::iteration_cap_reached: return "iteration-cap";
  }
  return "unknown";
}

std::string render_rule(const RuleRecord& r) {
  std::string out = r.symbol;
  if (!r.children.empty()) {
    out += "(";
    for (size_t i = 0; i < r.children.size(); ++i) {
      if (i) out += ", ";
      out += r.children[i];
    }
    out += ")";
  }
  return out;
}

ordered_json warning_json(const Warning& w) {
  ordered_json j;
  j["kind"] = kind_name(w.kind);
  j["description"] = w.description;
  j["witness"] = w.witness ? ordered_json(w.witness->str()) : ordered_json();
  return j;
}

ordered_json warnings_json(const std::vector<Warning>& warnings) {
  ordered_json arr = ordered_json::array();
  for (const Warning& w : warnings) arr.push_back(warning_json(w));
  return arr;
}

void render_warnings_text(std::ostringstream& os,
                          const std::vector<Warning>& warnings) {
  if (warnings.empty()) return;
  os << "warnings: " << warnings.size() << "\n";
  for (const Warning& w : warnings) os << "  " << w.str() << "\n";
}

} // namespace

AnalysisReport make_report(std::string program_path, const Program& program,
                           const AnalysisResult& result,
                           const WideningConfig& cfg) {
  AnalysisReport report;
  report.program_path = std::move(program_path);
  report.config = cfg;
  report.iterations = result.iterations;
  report.warnings = result.warnings;
  report.trace = result.trace;
  report.grammar = result.grammar;

  std::map<std::pair<std::string, uint32_t>, DirectionalType> types;
  auto slot = [&](const FunctionSymbol& pred) -> DirectionalType& {
    auto key = std::make_pair(pred.name, pred.arity);
    auto it = types.find(key);
    if (it == types.end())
      it = types.emplace(key, DirectionalType{pred, {}, {}}).first;
    return it->second;
  };
  for (const FunctionSymbol& p : program.defined_preds()) slot(p);
  for (const FunctionSymbol& p : program.constraint_preds()) slot(p);

  for (const RuleRecord& r : to_records(result.grammar)) {
    if (r.lhs != "ca" && r.lhs != "su") continue;
    DirectionalType& t = slot(FunctionSymbol{r.symbol, r.arity});
    if (r.lhs == "ca")
      t.call = render_rule(r);
    else
      t.success = render_rule(r);
  }

  report.types.reserve(types.size());
  for (auto& [key, t] : types) report.types.push_back(std::move(t));
  return report;
}

std::string render(const AnalysisReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    ordered_json j;
    j["program"] = report.program_path;
    j["widening"] = {{"variant", variant_name(report.config.variant)},
                     {"k", report.config.k}};
    j["iterations"] = report.iterations;
    ordered_json types = ordered_json::array();
    for (const DirectionalType& t : report.types) {
      ordered_json jt;
      jt["predicate"] = t.pred.name;
      jt["arity"] = t.pred.arity;
      jt["call"] = t.call ? ordered_json(*t.call) : ordered_json();
      jt["success"] = t.success ? ordered_json(*t.success) : ordered_json();
      types.push_back(std::move(jt));
    }
    j["types"] = std::move(types);
    j["warnings"] = warnings_json(report.warnings);
    ordered_json rules = ordered_json::array();
    for (const RuleRecord& r : to_records(report.grammar)) {
      ordered_json jr;
      jr["lhs"] = r.lhs;
      jr["symbol"] = r.symbol;
      jr["arity"] = r.arity;
      jr["children"] = r.children;
      rules.push_back(std::move(jr));
    }
    j["grammar"] = std::move(rules);
    j["grammar_text"] = to_text(report.grammar);
    if (report.show_trace) {
      ordered_json steps = ordered_json::array();
      for (const TraceStep& t : report.trace) {
        ordered_json jt;
        jt["step"] = t.step;
        jt["contributions"] = t.contributions;
        jt["vars"] = t.vars;
        jt["rules"] = t.rules;
        jt["warnings"] = t.warnings;
        steps.push_back(std::move(jt));
      }
      j["trace"] = std::move(steps);
    }
    if (report.show_timing) j["elapsed_ms"] = report.elapsed_ms;
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "program: " << report.program_path << "\n";
  os << "widening: " << variant_name(report.config.variant)
     << " (k=" << report.config.k << ")\n";
  os << "iterations: " << report.iterations << "\n";
  os << "directional types:\n";
  for (const DirectionalType& t : report.types) {
    os << "  " << t.pred.name << "/" << t.pred.arity << " : "
       << (t.call ? *t.call : "(none)") << " -> "
       << (t.success ? *t.success : "(none)") << "\n";
  }
  render_warnings_text(os, report.warnings);
  if (report.show_trace) {
    os << "trace:\n";
    for (const TraceStep& t : report.trace) os << "  " << t.str() << "\n";
  }
  os << "grammar:\n" << to_text(report.grammar);
  if (report.show_timing) os << "elapsed: " << report.elapsed_ms << " ms\n";
  return os.str();
}

std::string render_check(const CheckReport& report, ReportFormat format) {
  const CheckResult& r = report.result;
  if (format == ReportFormat::json) {
    ordered_json j;
    j["program"] = report.program_path;
    j["specification"] = report.spec_path;
    j["verified"] = r.correct;
    j["reasons"] = r.reasons;
    j["call_witness"] =
        r.call_witness ? ordered_json(r.call_witness->str()) : ordered_json();
    j["success_witness"] = r.success_witness
                               ? ordered_json(r.success_witness->str())
                               : ordered_json();
    j["warnings"] = warnings_json(r.warnings);
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "program: " << report.program_path << "\n";
  os << "specification: " << report.spec_path << "\n";
  os << "result: " << (r.correct ? "verified" : "not verified") << "\n";
  if (!r.reasons.empty()) {
    os << "reasons:\n";
    for (const std::string& reason : r.reasons) os << "  - " << reason << "\n";
  }
  render_warnings_text(os, r.warnings);
  return os.str();
}

} // namespace regal
