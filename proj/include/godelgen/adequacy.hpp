#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "godelgen/codec.hpp"
#include "godelgen/nat.hpp"
#include "godelgen/term.hpp"

namespace godelgen {

struct EnumBudget {
  std::size_t max_size = 6;
  Nat max_code = 10000;
  // Concrete indices checked for nat-indexed families.
  std::vector<Nat> nat_indices{0, 1, 2};
  // Per-class overrides keyed by "type" or "type/class-label".
  std::map<std::string, std::size_t> max_size_for;
  std::map<std::string, Nat> max_code_for;
  std::uint64_t fuel = kDefaultFuel;
  // Workers for the onto check; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  // Throws std::invalid_argument unless max_size >= 1 and max_code >= 2.
  void check() const;
};

struct Verdict {
  bool pass = true;
  // Replayable witness: a term in surface syntax or a code, with evidence.
  std::optional<std::string> witness;
  std::optional<std::string> detail;

  static Verdict ok() { return {}; }
  static Verdict fail(std::string witness, std::string detail) { return {false, std::move(witness), std::move(detail)}; }
};

struct ClassReport {
  std::string type;
  std::string index_class;  // class label: "unit", "z", "s", or a constant
  Nat index;                // concrete index exercised
  std::string cardinality;
  Verdict total;
  Verdict unique;
  Verdict onto;
  Verdict one_to_one;
  std::size_t terms_checked = 0;
  Nat codes_checked;

  bool passed() const { return total.pass && unique.pass && onto.pass && one_to_one.pass; }
};

struct AdequacyReport {
  std::size_t max_size = 0;
  Nat max_code;
  std::vector<ClassReport> classes;
  double elapsed_seconds = 0;  // not serialized

  bool passed() const;
};

// Every closed, well-typed term of (type, index) with at most max_size
// nodes, built constructor by constructor without the codec. Deterministic
// order, no duplicates.
std::vector<Term> enumerate_terms(const ValidatedSignature& sig, std::string_view type, const Nat& index,
                                  std::size_t max_size);

// Every closed term whose code is below `bound`, built structurally. Each
// payload slot of a constructor is at most the payload, which is below
// (bound - offset) / I, so argument search is bounded the same way.
std::vector<Term> enumerate_terms_below_code(const CodecPlan& plan, std::string_view type, const Nat& index,
                                             const Nat& bound);

// Each verifier enumerates the class under the budget's size bound. The
// overloads taking `terms` reuse an enumeration.
Verdict verify_total_unique(const CodecPlan& plan, std::string_view type, const Nat& index,
                            const EnumBudget& budget);
Verdict verify_total_unique(const CodecPlan& plan, std::string_view type, const Nat& index,
                            const std::vector<Term>& terms);
// Codes [0, max_code), clamped to the class size.
Verdict verify_onto(const CodecPlan& plan, std::string_view type, const Nat& index, const EnumBudget& budget,
                    Nat* codes_checked = nullptr);
Verdict verify_one_to_one(const CodecPlan& plan, std::string_view type, const Nat& index,
                          const EnumBudget& budget);
Verdict verify_one_to_one(const CodecPlan& plan, std::string_view type, const Nat& index,
                          const std::vector<Term>& terms);

ClassReport verify_class(const CodecPlan& plan, std::string_view type, const Nat& index, const EnumBudget& budget);
AdequacyReport verify_all(const CodecPlan& plan, const EnumBudget& budget);

// {"signature", "passed", "max_size", "max_code", "classes": [...]}; stable
// key order, byte-identical for equal reports.
std::string report_json(const AdequacyReport& report, std::string_view signature_path);

}  // namespace godelgen
