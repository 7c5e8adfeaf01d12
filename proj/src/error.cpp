#include "godelgen/error.hpp"

namespace godelgen {

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out = "signature rejected:";
  for (const auto& d : diags) {
    out += "\n  " + to_string(d.pos) + ": [" + d.rule + "] " + d.message;
  }
  return out;
}

std::string join_classes(const std::vector<std::string>& classes) {
  std::string out = "no well-founded tag assignment for:";
  for (const auto& c : classes) out += " " + c;
  return out;
}

}  // namespace

std::string to_string(const SourcePos& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

ParseError::ParseError(SourcePos pos, const std::string& message)
    : Error(to_string(pos) + ": " + message), pos_(pos), detail_(message) {}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

TermError::TermError(SourcePos pos, const std::string& message)
    : Error(pos.line == 0 ? message : to_string(pos) + ": " + message), pos_(pos) {}

FuelExhausted::FuelExhausted(const std::string& where)
    : Error("decode fuel exhausted at " + where) {}

NoWellFoundedPlan::NoWellFoundedPlan(std::vector<std::string> classes)
    : Error(join_classes(classes)), classes_(std::move(classes)) {}

}  // namespace godelgen
