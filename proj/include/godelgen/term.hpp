#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "godelgen/nat.hpp"
#include "godelgen/signature.hpp"

namespace godelgen {

struct TermArg;

// Level-based term. A variable is identified by the (type, index) class it
// belongs to and its de Bruijn level within that class: the number of
// variables of the same class bound outside it. Alpha-equivalent surface
// terms therefore have identical representations.
struct Term {
  enum class Kind { Var, Con };

  Kind kind = Kind::Con;
  std::string name;  // type name for Var, constructor name for Con
  Nat index;         // Var: concrete index of its class
  Nat level;         // Var
  std::vector<Nat> index_args;  // Con: values of explicit index abstractions
  std::vector<TermArg> args;    // Con: regular arguments, declaration order

  static Term var(std::string type, Nat index, Nat level);
  static Term con(std::string ctor, std::vector<TermArg> args = {}, std::vector<Nat> index_args = {});

  bool is_var() const { return kind == Kind::Var; }
};

struct TermArg {
  std::size_t binders = 0;
  Term body;
};

bool operator==(const Term& a, const Term& b);
inline bool operator==(const TermArg& a, const TermArg& b) {
  return a.binders == b.binders && a.body == b.body;
}

// Free-variable counts per (type, concrete index). Absent keys read as 0.
class CountVector {
 public:
  using Key = std::pair<std::string, Nat>;

  Nat get(std::string_view type, const Nat& index) const;
  CountVector extended(const std::string& type, const Nat& index) const;
  void increment(const std::string& type, const Nat& index);
  const std::map<Key, Nat>& entries() const { return counts_; }
  bool empty() const { return counts_.empty(); }

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  std::map<Key, Nat> counts_;
};

// Named free variables for parsing and printing open terms.
struct FreeVar {
  std::string type;
  Nat index;
  Nat level;
};

struct TermEnv {
  CountVector counts;
  std::map<std::string, FreeVar> names;

  // Adds a fresh free variable of the class; its level is the current count.
  void bind(const std::string& name, const std::string& type, const Nat& index);
};

// Parses surface syntax (`app (lam [x] x) (lam [y] y)`) at the expected type
// and index, resolving binder names to levels. Throws TermError.
Term parse_term(const ValidatedSignature& sig, std::string_view type, const Nat& index,
                std::string_view text, const TermEnv& env = {});

struct BinderName {
  std::string type;
  Nat index;
  Nat level;
  std::size_t depth = 0;  // number of enclosing binders, any class
};

struct PrintOptions {
  // Defaults to x<level>, with a class suffix when several classes of
  // variables occur in the printed term.
  std::function<std::string(const BinderName&)> binder_name;
  // Print closed z/s chains as decimal numerals.
  bool numerals = true;
};

std::string print_term(const ValidatedSignature& sig, std::string_view type, const Nat& index,
                       const Term& term, const TermEnv& env = {}, const PrintOptions& options = {});

// Throws TermError describing the first mismatch.
void check_term(const ValidatedSignature& sig, std::string_view type, const Nat& index,
                const CountVector& counts, const Term& term);
bool well_typed(const ValidatedSignature& sig, std::string_view type, const Nat& index,
                const CountVector& counts, const Term& term);

// Con and Var nodes, through binders. An explicit index value v counts as the
// v + 1 nodes of its z/s spelling.
Nat term_size(const Term& term);

}  // namespace godelgen
