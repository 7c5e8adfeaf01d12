#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "godelgen/nat.hpp"
#include "godelgen/signature.hpp"
#include "godelgen/term.hpp"

namespace godelgen {

inline constexpr std::uint64_t kDefaultFuel = 100000;
inline constexpr std::uint64_t kTrialFuel = 10000;
inline constexpr std::size_t kMaxTags = 12;

// Decode step budget. Every recursive decode step spends one unit.
class Fuel {
 public:
  explicit Fuel(std::uint64_t steps = kDefaultFuel) : remaining_(steps) {}
  void spend(std::string_view where);
  // Spends one unit; false when none is left.
  bool try_spend() {
    if (remaining_ == 0) return false;
    --remaining_;
    return true;
  }
  std::uint64_t remaining() const { return remaining_; }

 private:
  std::uint64_t remaining_;
};

// Reads GODELGEN_FUEL, falling back to kDefaultFuel.
std::uint64_t default_fuel();

struct CtorPlan {
  std::size_t ctor = 0;
  std::size_t tag = 0;
  // Payload slots in mingle order: explicit index parameters, then infinite
  // arguments left to right.
  std::vector<std::size_t> index_slots;     // into Ctor::index_params
  std::vector<std::size_t> infinite_slots;  // into Ctor::args
  // Finite arguments folded into the payload, left to right, with radices.
  std::vector<std::size_t> finite_args;
  std::vector<Nat> radices;
};

struct ClassPlan {
  std::size_t type = 0;
  std::size_t cls = 0;
  bool infinite = false;  // variables only live in infinite classes
  Nat finite_count;
  std::vector<ClassCtors::FiniteCtor> finite;  // offsets in order
  std::vector<CtorPlan> tags;                  // indexed by tag
};

// Tag orders to start from, keyed by "type" or "type/class-label" and
// listing constructor names. Used to reproduce a particular declaration
// order in tests.
using TagOverrides = std::map<std::string, std::vector<std::string>>;

class CodecPlan {
 public:
  const ValidatedSignature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  const ClassPlan& plan_for(std::size_t type, std::size_t cls) const { return classes_[type][cls]; }
  const ClassPlan& plan_at(std::size_t type, const Nat& index) const;
  // Constructor names in tag order.
  std::vector<std::string> tag_order(std::string_view type, std::size_t cls = 0) const;

 private:
  friend CodecPlan make_plan(SignaturePtr, const TagOverrides&);
  friend CodecPlan assign_tags(SignaturePtr, const TagOverrides&);

  SignaturePtr sig_;
  std::vector<std::vector<ClassPlan>> classes_;  // [type][class]
};

// Builds the plan starting from declaration order (or the overrides) and
// permutes tags of classes whose trial decodes of codes 0 and 1 do not
// terminate. Throws NoWellFoundedPlan or PlanError.
CodecPlan assign_tags(SignaturePtr sig, const TagOverrides& overrides = {});

// The starting plan with no trial decoding. Decoding with it may exhaust fuel.
CodecPlan make_plan(SignaturePtr sig, const TagOverrides& overrides = {});

Nat encode(const CodecPlan& plan, std::string_view type, const Nat& index, const CountVector& counts,
           const Term& term);
// Throws FuelExhausted, CodeOutOfRange.
Term decode(const CodecPlan& plan, std::string_view type, const Nat& index, const CountVector& counts,
            const Nat& code, Fuel& fuel);
Term decode(const CodecPlan& plan, std::string_view type, const Nat& index, const CountVector& counts,
            const Nat& code);

Nat encode_closed(const CodecPlan& plan, std::string_view type, const Nat& index, const Term& term);
Term decode_closed(const CodecPlan& plan, std::string_view type, const Nat& index, const Nat& code);

// Orders closed terms by code; equal exactly for alpha-equivalent terms.
std::strong_ordering compare(const CodecPlan& plan, std::string_view type, const Nat& index, const Term& a,
                             const Term& b);

// Size of the code space of (type, index) under V: nullopt when infinite.
std::optional<Nat> code_space(const CodecPlan& plan, std::string_view type, const Nat& index,
                              const CountVector& counts);

}  // namespace godelgen
