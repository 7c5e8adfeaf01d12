#include <algorithm>
#include <cctype>

#include "godelgen/signature.hpp"

namespace godelgen {

std::size_t ValidatedSignature::type_id(std::string_view name) const {
  auto it = type_ids_.find(name);
  if (it == type_ids_.end()) throw TermError("unknown type '" + std::string(name) + "'");
  return it->second;
}

std::size_t ValidatedSignature::ctor_id(std::string_view name) const {
  auto it = ctor_ids_.find(name);
  if (it == ctor_ids_.end()) throw TermError("unknown constructor '" + std::string(name) + "'");
  return it->second;
}

bool ValidatedSignature::index_in_range(std::size_t type_id, const Nat& index) const {
  const TypeInfo& ti = info_[type_id];
  switch (ti.index_kind) {
    case IndexKind::None:
      return index.is_zero();
    case IndexKind::Nat:
      return true;
    case IndexKind::Finite:
      return index < Nat(ti.class_count);
  }
  return false;
}

std::size_t ValidatedSignature::class_of(std::size_t type_id, const Nat& index) const {
  if (!index_in_range(type_id, index)) {
    throw TermError("index " + index.str() + " is out of range for type '" + sig_.types[type_id].name + "'");
  }
  const TypeInfo& ti = info_[type_id];
  switch (ti.index_kind) {
    case IndexKind::None:
      return 0;
    case IndexKind::Nat:
      return index.is_zero() ? 0 : 1;
    case IndexKind::Finite:
      return static_cast<std::size_t>(index.to_u64());
  }
  return 0;
}

std::string ValidatedSignature::class_label(std::size_t type_id, std::size_t cls) const {
  return info_[type_id].class_labels.at(cls);
}

std::string ValidatedSignature::index_label(std::size_t type_id, const Nat& index) const {
  const TypeInfo& ti = info_[type_id];
  switch (ti.index_kind) {
    case IndexKind::None:
      return "";
    case IndexKind::Nat:
      return index.str();
    case IndexKind::Finite:
      return ti.class_labels.at(class_of(type_id, index));
  }
  return "";
}

std::vector<Nat> ValidatedSignature::class_representatives(std::size_t type_id, std::size_t cls) const {
  const TypeInfo& ti = info_[type_id];
  switch (ti.index_kind) {
    case IndexKind::None:
      return {Nat(0)};
    case IndexKind::Nat:
      return cls == 0 ? std::vector<Nat>{Nat(0)} : std::vector<Nat>{Nat(1), Nat(2)};
    case IndexKind::Finite:
      return {Nat(cls)};
  }
  return {};
}

Nat ValidatedSignature::parse_index(std::size_t type_id, std::string_view text) const {
  const TypeInfo& ti = info_[type_id];
  const bool numeric = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
  Nat value;
  if (numeric) {
    value = Nat::parse(text);
  } else if (ti.index_kind == IndexKind::Finite) {
    auto it = std::find(ti.class_labels.begin(), ti.class_labels.end(), text);
    if (it == ti.class_labels.end()) {
      throw TermError("'" + std::string(text) + "' is not an index of type '" + sig_.types[type_id].name + "'");
    }
    value = Nat(static_cast<std::uint64_t>(it - ti.class_labels.begin()));
  } else if (text.empty() && ti.index_kind == IndexKind::None) {
    value = 0;
  } else {
    throw TermError("malformed index '" + std::string(text) + "'");
  }
  if (!index_in_range(type_id, value)) {
    throw TermError("index " + value.str() + " is out of range for type '" + sig_.types[type_id].name + "'");
  }
  return value;
}

std::vector<FiniteInstance> ValidatedSignature::finite_instances(std::size_t type_id, std::size_t cls) const {
  // Mixed radix over the argument codes, leftmost most significant.
  auto increment = [](std::vector<Nat>& digits, const std::vector<Nat>& radices) {
    for (std::size_t i = digits.size(); i-- > 0;) {
      digits[i] += 1;
      if (digits[i] < radices[i]) return true;
      digits[i] = 0;
    }
    return false;
  };
  std::vector<FiniteInstance> out;
  for (const auto& fc : ctors_for_class(type_id, cls).finite) {
    std::vector<Nat> digits(fc.radices.size());
    do {
      out.push_back({fc.ctor, digits});
    } while (increment(digits, fc.radices));
  }
  return out;
}

std::optional<IndexBindings> ValidatedSignature::match_result(std::size_t ctor, const Nat& index) const {
  const Ctor& c = sig_.ctors[ctor];
  const std::size_t t = ctor_type_[ctor];
  const TypeInfo& ti = info_[t];
  if (!index_in_range(t, index)) return std::nullopt;
  IndexBindings b;
  if (ti.index_kind == IndexKind::None) return b;
  const IndexExpr& p = c.result.indices[0];
  if (p.is_var()) {
    b[p.name] = index;
    return b;
  }
  if (ti.index_kind == IndexKind::Nat) {
    if (p.name == "z") {
      if (!index.is_zero()) return std::nullopt;
      return b;
    }
    if (index.is_zero()) return std::nullopt;
    b[p.args[0].name] = index - Nat(1);
    return b;
  }
  if (constant_code(*sig_.find_ctor(p.name)) != index) return std::nullopt;
  return b;
}

Nat ValidatedSignature::eval_index(std::size_t family, const IndexExpr& e, const IndexBindings& b) const {
  if (e.is_var()) {
    auto it = b.find(e.name);
    if (it == b.end()) throw TermError(e.pos, "unbound index variable '" + e.name + "'");
    return it->second;
  }
  const TypeInfo& ti = info_[family];
  if (ti.index_kind == IndexKind::Nat) {
    // Iterative over the s-chain.
    Nat n;
    const IndexExpr* cur = &e;
    while (!cur->is_var() && cur->name == "s") {
      n += 1;
      cur = &cur->args[0];
    }
    if (cur->is_var()) return n + eval_index(family, *cur, b);
    return n;
  }
  return constant_code(*sig_.find_ctor(e.name));
}

Nat ValidatedSignature::eval_type_index(const TypeRef& ref, const IndexBindings& b) const {
  if (ref.indices.empty()) return Nat(0);
  return eval_index(ref.id, ref.indices[0], b);
}

bool ValidatedSignature::arg_is_infinite(std::size_t ctor, std::size_t arg) const {
  const Arg& a = sig_.ctors[ctor].args[arg];
  if (!a.binders.empty()) return true;
  return cardinality(a.target.id).is_infinite();
}

const Nat& ValidatedSignature::arg_radix(std::size_t ctor, std::size_t arg) const {
  return cardinality(sig_.ctors[ctor].args[arg].target.id).count;
}

Nat ValidatedSignature::constant_code(std::size_t ctor) const {
  const std::size_t t = ctor_type_[ctor];
  Nat offset;
  for (const auto& fc : ctors_for_class(t, 0).finite) {
    if (fc.ctor == ctor) return offset;
    offset += fc.instances;
  }
  throw TermError("'" + sig_.ctors[ctor].name + "' is not a finite constant");
}

}  // namespace godelgen
