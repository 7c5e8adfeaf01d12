#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace godelgen {

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(const SourcePos& pos);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed signature text, or a reference to an undeclared name.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message);
  const SourcePos& pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  SourcePos pos_;
  std::string detail_;
};

// One violated acceptance rule. `rule` is a stable identifier such as
// "finite-variable" or "nonuniform".
struct Diagnostic {
  std::string rule;
  std::string message;
  SourcePos pos;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Bad term text or an ill-typed term.
class TermError : public Error {
 public:
  TermError(SourcePos pos, const std::string& message);
  explicit TermError(const std::string& message) : TermError(SourcePos{}, message) {}
  const SourcePos& pos() const { return pos_; }

 private:
  SourcePos pos_;
};

// Decoding ran out of its step budget: the plan is not well founded.
class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(const std::string& where);
};

// A code outside the range of a finite (or empty) class.
class CodeOutOfRange : public Error {
 public:
  using Error::Error;
};

// assign_tags found no tag order whose trial decodes all terminate.
class NoWellFoundedPlan : public Error {
 public:
  explicit NoWellFoundedPlan(std::vector<std::string> classes);
  const std::vector<std::string>& classes() const { return classes_; }

 private:
  std::vector<std::string> classes_;
};

// A signature the codec cannot handle for structural reasons (too many tags).
class PlanError : public Error {
 public:
  using Error::Error;
};

}  // namespace godelgen
