#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "godelgen/error.hpp"
#include "godelgen/nat.hpp"

namespace godelgen {

// An index term as written in a type: `z`, `s N`, `N`, or a finite-index
// constant. Numerals are desugared to iterated `s` of `z` during parsing.
struct IndexExpr {
  enum class Kind { Var, Con };
  Kind kind = Kind::Con;
  std::string name;
  std::vector<IndexExpr> args;
  SourcePos pos;

  bool is_var() const { return kind == Kind::Var; }
  friend bool operator==(const IndexExpr& a, const IndexExpr& b) {
    return a.kind == b.kind && a.name == b.name && a.args == b.args;
  }
};

// `T` or `T e1 .. en`.
struct TypeRef {
  std::string type;
  std::vector<IndexExpr> indices;
  SourcePos pos;
  std::size_t id = 0;  // position of `type`; filled in by validation
};

// A constructor argument: `T e`, or a HOAS function `(B1 -> .. -> Bk -> T e)`.
struct Arg {
  std::vector<TypeRef> binders;
  TypeRef target;
};

// An explicit index abstraction `{M:nat}`.
struct IndexParam {
  std::string var;
  std::string type;
  SourcePos pos;
};

// Position of a parameter in the surface syntax of a constructor.
struct ParamRef {
  bool is_index = false;
  std::size_t slot = 0;  // into Ctor::index_params or Ctor::args
};

struct Ctor {
  std::string name;
  TypeRef result;
  std::vector<IndexParam> index_params;
  std::vector<Arg> args;
  std::vector<ParamRef> order;
  SourcePos pos;
  bool builtin = false;
};

struct TypeDecl {
  std::string name;
  std::vector<std::string> index_types;
  std::vector<std::size_t> ctors;  // into Signature::ctors, declaration order
  SourcePos pos;
  bool builtin = false;
};

// `%abbrev name : T = body.` The body is kept as text and elaborated at use sites.
struct Abbrev {
  std::string name;
  TypeRef type;
  std::string body;
  SourcePos body_pos;
  SourcePos pos;
};

struct Signature {
  std::vector<TypeDecl> types;
  std::vector<Ctor> ctors;
  std::vector<Abbrev> abbrevs;

  std::optional<std::size_t> find_type(std::string_view name) const;
  std::optional<std::size_t> find_ctor(std::string_view name) const;
  std::optional<std::size_t> find_abbrev(std::string_view name) const;

  // True when `nat` is declared with exactly `z : nat` and `s : nat -> nat`.
  bool has_standard_nat() const;
};

// Parses the signature DSL (a subset of LF concrete syntax). When `nat`
// is referenced but not declared, the standard `nat`/`z`/`s` declarations
// are supplied as builtins. Throws ParseError.
Signature parse_signature(std::string_view text);

struct Cardinality {
  enum class Kind { Empty, Finite, Infinite };
  Kind kind = Kind::Empty;
  Nat count;  // meaningful for Finite only

  static Cardinality empty() { return {}; }
  static Cardinality finite(Nat n) { return {Kind::Finite, std::move(n)}; }
  static Cardinality infinite() { return {Kind::Infinite, Nat{}}; }

  bool is_empty() const { return kind == Kind::Empty; }
  bool is_finite() const { return kind == Kind::Finite; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  std::string str() const;

  friend bool operator==(const Cardinality& a, const Cardinality& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.count == b.count);
  }
};

// Finite-count cutoff: a finite class larger than this is classified Infinite.
inline constexpr std::uint64_t kFiniteCutoff = 1ull << 16;

enum class IndexKind { None, Nat, Finite };

struct TypeCardinality {
  std::string type;
  IndexKind index_kind = IndexKind::None;
  std::vector<std::string> class_labels;
  std::vector<Cardinality> classes;
};

// Per (type, index class) cardinality; total over any parsed signature.
struct CardinalityTable {
  std::vector<TypeCardinality> types;  // parallel to Signature::types
};

CardinalityTable compute_cardinality(const Signature& sig);

// Every violated acceptance rule, in a deterministic order. Empty iff the
// signature is accepted.
std::vector<Diagnostic> diagnose(const Signature& sig);

// Constructors applicable at one index class, split into finite instances and
// infinite constructors (declaration order; the codec permutes the latter).
struct ClassCtors {
  struct FiniteCtor {
    std::size_t ctor = 0;
    Nat instances;             // product of radices
    std::vector<Nat> radices;  // per argument, left to right
  };
  std::vector<FiniteCtor> finite;
  Nat finite_count;
  std::vector<std::size_t> infinite;
};

// One concrete instance of a finite constructor: the chosen finite code of
// each argument.
struct FiniteInstance {
  std::size_t ctor = 0;
  std::vector<Nat> digits;
};

using IndexBindings = std::map<std::string, Nat>;

class ValidatedSignature;
using SignaturePtr = std::shared_ptr<const ValidatedSignature>;

// Throws ValidationError carrying every diagnostic.
SignaturePtr validate(Signature sig);
SignaturePtr load_signature(std::string_view text);

class ValidatedSignature {
 public:
  struct TypeInfo {
    IndexKind index_kind = IndexKind::None;
    std::size_t index_type = 0;  // meaningful when index_kind != None
    std::size_t class_count = 1;
    std::vector<std::string> class_labels;
    std::vector<Cardinality> classes;
    Cardinality uniform;
    std::vector<ClassCtors> ctors;  // per class
  };

  const Signature& signature() const { return sig_; }
  const TypeDecl& type(std::size_t id) const { return sig_.types[id]; }
  const Ctor& ctor(std::size_t id) const { return sig_.ctors[id]; }
  const TypeInfo& info(std::size_t type_id) const { return info_[type_id]; }
  std::size_t type_count() const { return sig_.types.size(); }

  // Throws TermError for an unknown name.
  std::size_t type_id(std::string_view name) const;
  std::size_t ctor_id(std::string_view name) const;
  std::size_t ctor_type(std::size_t ctor) const { return ctor_type_[ctor]; }

  const Cardinality& cardinality(std::size_t type_id) const { return info_[type_id].uniform; }

  // Index values are codes in the index type's own bijection: the numeral for
  // a nat index, the finite code for a finite index, 0 for unindexed types.
  bool index_in_range(std::size_t type_id, const Nat& index) const;
  // Throws TermError when the index is out of range.
  std::size_t class_of(std::size_t type_id, const Nat& index) const;
  std::string class_label(std::size_t type_id, std::size_t cls) const;
  std::string index_label(std::size_t type_id, const Nat& index) const;
  // Concrete indices standing for a class in trial decoding and verification.
  std::vector<Nat> class_representatives(std::size_t type_id, std::size_t cls) const;
  // Parses a decimal index or a finite-index constant name; throws TermError.
  Nat parse_index(std::size_t type_id, std::string_view text) const;

  const ClassCtors& ctors_for_class(std::size_t type_id, std::size_t cls) const {
    return info_[type_id].ctors[cls];
  }
  std::vector<FiniteInstance> finite_instances(std::size_t type_id, std::size_t cls) const;

  // Matches the constructor's result pattern against a concrete index.
  std::optional<IndexBindings> match_result(std::size_t ctor, const Nat& index) const;
  // Evaluates an index expression written at the index position of `family`;
  // throws TermError on an unbound variable.
  Nat eval_index(std::size_t family, const IndexExpr& e, const IndexBindings& b) const;
  // Index value of a TypeRef under bindings (0 for unindexed types).
  Nat eval_type_index(const TypeRef& ref, const IndexBindings& b) const;

  // An argument is an infinite slot when it has binders or an Infinite target.
  bool arg_is_infinite(std::size_t ctor, std::size_t arg) const;
  // Finite radix of a finite argument.
  const Nat& arg_radix(std::size_t ctor, std::size_t arg) const;

  // Standard z/s nat, when present.
  std::optional<std::size_t> nat_type() const { return nat_type_; }
  bool is_nat_index_type(std::size_t type_id) const { return nat_type_ && *nat_type_ == type_id; }

  // Offset of a nullary constructor of a finite (unindexed) type.
  Nat constant_code(std::size_t ctor) const;

  ValidatedSignature(const ValidatedSignature&) = delete;
  ValidatedSignature& operator=(const ValidatedSignature&) = delete;

 private:
  friend SignaturePtr validate(Signature sig);
  ValidatedSignature() = default;

  Signature sig_;
  std::vector<TypeInfo> info_;
  std::vector<std::size_t> ctor_type_;
  std::optional<std::size_t> nat_type_;
  std::unordered_map<std::string_view, std::size_t> type_ids_;  // views into sig_
  std::unordered_map<std::string_view, std::size_t> ctor_ids_;
};

}  // namespace godelgen
