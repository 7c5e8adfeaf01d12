#include "godelgen/codec.hpp"

#include <algorithm>
#include <cstdlib>

namespace godelgen {

void Fuel::spend(std::string_view where) {
  if (remaining_ == 0) throw FuelExhausted(std::string(where));
  --remaining_;
}

std::uint64_t default_fuel() {
  const char* env = std::getenv("GODELGEN_FUEL");
  if (env == nullptr || *env == '\0') return kDefaultFuel;
  try {
    const Nat n = Nat::parse(env);
    if (n.fits_u64()) return n.to_u64();
  } catch (const std::exception&) {
  }
  throw Error("GODELGEN_FUEL must be a decimal step count");
}

const ClassPlan& CodecPlan::plan_at(std::size_t type, const Nat& index) const {
  return classes_[type][sig_->class_of(type, index)];
}

std::vector<std::string> CodecPlan::tag_order(std::string_view type, std::size_t cls) const {
  std::vector<std::string> out;
  for (const CtorPlan& cp : plan_for(sig_->type_id(type), cls).tags) out.push_back(sig_->ctor(cp.ctor).name);
  return out;
}

namespace {

std::string class_name(const ValidatedSignature& sig, std::size_t type, std::size_t cls) {
  const std::string& t = sig.type(type).name;
  if (sig.info(type).index_kind == IndexKind::None) return t;
  return t + "/" + sig.class_label(type, cls);
}

CtorPlan ctor_plan(const ValidatedSignature& sig, std::size_t ctor) {
  const Ctor& c = sig.ctor(ctor);
  CtorPlan p;
  p.ctor = ctor;
  for (std::size_t k = 0; k < c.index_params.size(); ++k) p.index_slots.push_back(k);
  for (std::size_t k = 0; k < c.args.size(); ++k) {
    if (sig.arg_is_infinite(ctor, k)) {
      p.infinite_slots.push_back(k);
    } else {
      p.finite_args.push_back(k);
      p.radices.push_back(sig.arg_radix(ctor, k));
    }
  }
  if (p.index_slots.empty() && p.infinite_slots.empty()) {
    throw PlanError("constructor '" + c.name + "' has no infinite argument");
  }
  return p;
}

void set_order(ClassPlan& cp, std::vector<CtorPlan> ordered) {
  for (std::size_t i = 0; i < ordered.size(); ++i) ordered[i].tag = i;
  cp.tags = std::move(ordered);
}

std::vector<CtorPlan> apply_override(const ValidatedSignature& sig, const std::string& label,
                                     std::vector<CtorPlan> tags, const std::vector<std::string>& names) {
  std::vector<CtorPlan> out;
  for (const std::string& n : names) {
    auto it = std::find_if(tags.begin(), tags.end(), [&](const CtorPlan& p) { return sig.ctor(p.ctor).name == n; });
    if (it == tags.end()) throw PlanError("tag order for " + label + " names unknown constructor '" + n + "'");
    out.push_back(std::move(*it));
    tags.erase(it);
  }
  if (!tags.empty()) throw PlanError("tag order for " + label + " must list every infinite constructor");
  return out;
}

class Codec {
 public:
  Codec(const CodecPlan& plan) : plan_(plan), sig_(plan.signature()) {}

  Nat encode(std::size_t type, const Nat& index, const CountVector& counts, const Term& t) const {
    const ClassPlan& cp = plan_.plan_at(type, index);
    const std::string& tname = sig_.type(type).name;
    const Nat v = cp.infinite ? counts.get(tname, index) : Nat(0);
    if (t.is_var()) {
      if (t.name != tname || t.index != index) throw TermError("variable of the wrong class in '" + tname + "'");
      if (!(t.level < v)) throw TermError("variable level " + t.level.str() + " is not below count " + v.str());
      return t.level;
    }
    const std::size_t cid = sig_.ctor_id(t.name);
    const Ctor& c = sig_.ctor(cid);
    auto b = sig_.match_result(cid, index);
    if (sig_.ctor_type(cid) != type || !b) {
      throw TermError("constructor '" + c.name + "' does not build '" + tname + "' at index " + index.str());
    }
    if (t.args.size() != c.args.size() || t.index_args.size() != c.index_params.size()) {
      throw TermError("wrong number of arguments to '" + c.name + "'");
    }
    for (std::size_t k = 0; k < c.index_params.size(); ++k) (*b)[c.index_params[k].var] = t.index_args[k];

    Nat offset;
    for (const auto& fc : cp.finite) {
      if (fc.ctor == cid) {
        Nat digits;
        for (std::size_t k = 0; k < c.args.size(); ++k) {
          digits *= fc.radices[k];
          digits += encode_arg(c.args[k], *b, counts, t.args[k]);
        }
        return v + offset + digits;
      }
      offset += fc.instances;
    }
    const CtorPlan* p = nullptr;
    for (const CtorPlan& q : cp.tags) {
      if (q.ctor == cid) p = &q;
    }
    if (p == nullptr) throw TermError("constructor '" + c.name + "' is not applicable at index " + index.str());

    Nat payload;
    if (p->index_slots.empty() && p->infinite_slots.size() == 1) {
      const std::size_t k = p->infinite_slots.front();
      payload = encode_arg(c.args[k], *b, counts, t.args[k]);
    } else {
      std::vector<Nat> slots;
      slots.reserve(p->index_slots.size() + p->infinite_slots.size());
      for (std::size_t k : p->index_slots) slots.push_back(t.index_args[k]);
      for (std::size_t k : p->infinite_slots) slots.push_back(encode_arg(c.args[k], *b, counts, t.args[k]));
      payload = mingle_fold(slots);
    }
    for (std::size_t j = 0; j < p->finite_args.size(); ++j) {
      payload *= p->radices[j];
      payload += encode_arg(c.args[p->finite_args[j]], *b, counts, t.args[p->finite_args[j]]);
    }
    return v + cp.finite_count + Nat(cp.tags.size()) * payload + Nat(p->tag);
  }

  Term decode(std::size_t type, const Nat& index, const CountVector& counts, const Nat& code, Fuel& fuel) const {
    const std::string& tname = sig_.type(type).name;
    if (!fuel.try_spend()) {
      throw FuelExhausted(tname + (sig_.info(type).index_kind == IndexKind::None ? "" : " " + index.str()));
    }
    const ClassPlan& cp = plan_.plan_at(type, index);
    const Nat v = cp.infinite ? counts.get(tname, index) : Nat(0);
    if (code < v) return Term::var(tname, index, code);
    Nat c = code - v;
    if (c < cp.finite_count) return decode_finite(cp, index, counts, c, fuel);
    if (cp.tags.empty()) {
      throw CodeOutOfRange("code " + code.str() + " is out of range for '" + class_name(sig_, type, cp.cls) +
                           "', which has " + (v + cp.finite_count).str() + " element(s)");
    }
    c -= cp.finite_count;
    auto [q, tag] = c.divmod(Nat(cp.tags.size()));
    const CtorPlan& p = cp.tags[static_cast<std::size_t>(tag.to_u64())];
    const Ctor& ctor = sig_.ctor(p.ctor);
    IndexBindings b = *sig_.match_result(p.ctor, index);

    std::vector<TermArg> args(ctor.args.size());
    std::vector<Nat> finite_codes(p.finite_args.size());
    for (std::size_t j = p.finite_args.size(); j-- > 0;) {
      auto [rest, digit] = q.divmod(p.radices[j]);
      finite_codes[j] = std::move(digit);
      q = std::move(rest);
    }
    std::vector<Nat> index_args(ctor.index_params.size());
    if (p.index_slots.empty() && p.infinite_slots.size() == 1) {
      const std::size_t a = p.infinite_slots.front();
      args[a] = decode_arg(ctor.args[a], b, counts, q, fuel);
      for (std::size_t j = 0; j < p.finite_args.size(); ++j) {
        const std::size_t f = p.finite_args[j];
        args[f] = decode_arg(ctor.args[f], b, counts, finite_codes[j], fuel);
      }
      return Term::con(ctor.name, std::move(args), std::move(index_args));
    }
    std::vector<Nat> slots = unmingle_fold(q, p.index_slots.size() + p.infinite_slots.size());
    for (std::size_t k = 0; k < p.index_slots.size(); ++k) {
      index_args[p.index_slots[k]] = slots[k];
      b[ctor.index_params[p.index_slots[k]].var] = slots[k];
    }
    for (std::size_t k = 0; k < p.infinite_slots.size(); ++k) {
      const std::size_t a = p.infinite_slots[k];
      args[a] = decode_arg(ctor.args[a], b, counts, slots[p.index_slots.size() + k], fuel);
    }
    for (std::size_t j = 0; j < p.finite_args.size(); ++j) {
      const std::size_t a = p.finite_args[j];
      args[a] = decode_arg(ctor.args[a], b, counts, finite_codes[j], fuel);
    }
    return Term::con(ctor.name, std::move(args), std::move(index_args));
  }

 private:
  Nat encode_arg(const Arg& a, const IndexBindings& b, const CountVector& counts, const TermArg& t) const {
    if (t.binders != a.binders.size()) throw TermError("binder count mismatch");
    if (a.binders.empty()) return encode(a.target.id, sig_.eval_type_index(a.target, b), counts, t.body);
    CountVector inner = counts;
    for (const TypeRef& bt : a.binders) inner.increment(bt.type, sig_.eval_type_index(bt, b));
    return encode(a.target.id, sig_.eval_type_index(a.target, b), inner, t.body);
  }

  TermArg decode_arg(const Arg& a, const IndexBindings& b, const CountVector& counts, const Nat& code,
                     Fuel& fuel) const {
    const std::size_t t = a.target.id;
    const Nat idx = sig_.eval_type_index(a.target, b);
    if (a.binders.empty()) return TermArg{0, decode(t, idx, counts, code, fuel)};
    CountVector inner = counts;
    for (const TypeRef& bt : a.binders) inner.increment(bt.type, sig_.eval_type_index(bt, b));
    return TermArg{a.binders.size(), decode(t, idx, inner, code, fuel)};
  }

  Term decode_finite(const ClassPlan& cp, const Nat& index, const CountVector& counts, Nat c, Fuel& fuel) const {
    for (const auto& fc : cp.finite) {
      if (c < fc.instances) {
        const Ctor& ctor = sig_.ctor(fc.ctor);
        IndexBindings b = *sig_.match_result(fc.ctor, index);
        std::vector<TermArg> args(ctor.args.size());
        for (std::size_t k = ctor.args.size(); k-- > 0;) {
          auto [rest, digit] = c.divmod(fc.radices[k]);
          args[k] = decode_arg(ctor.args[k], b, counts, digit, fuel);
          c = std::move(rest);
        }
        return Term::con(ctor.name, std::move(args));
      }
      c -= fc.instances;
    }
    throw CodeOutOfRange("finite code out of range");
  }

  const CodecPlan& plan_;
  const ValidatedSignature& sig_;
};

bool trial_ok(const CodecPlan& plan, std::size_t type, std::size_t cls) {
  const ValidatedSignature& sig = plan.signature();
  Codec codec(plan);
  for (const Nat& index : sig.class_representatives(type, cls)) {
    for (std::uint64_t code = 0; code < 2; ++code) {
      Fuel fuel(kTrialFuel);
      try {
        (void)codec.decode(type, index, CountVector{}, Nat(code), fuel);
      } catch (const FuelExhausted&) {
        return false;
      } catch (const CodeOutOfRange&) {
      }
    }
  }
  return true;
}

}  // namespace

CodecPlan make_plan(SignaturePtr sig, const TagOverrides& overrides) {
  CodecPlan plan;
  plan.sig_ = sig;
  const ValidatedSignature& s = *sig;
  plan.classes_.resize(s.type_count());
  for (std::size_t t = 0; t < s.type_count(); ++t) {
    const auto& info = s.info(t);
    for (std::size_t k = 0; k < info.class_count; ++k) {
      const ClassCtors& cc = s.ctors_for_class(t, k);
      ClassPlan cp;
      cp.type = t;
      cp.cls = k;
      cp.infinite = info.classes[k].is_infinite();
      cp.finite_count = cc.finite_count;
      cp.finite = cc.finite;
      std::vector<CtorPlan> tags;
      for (std::size_t c : cc.infinite) tags.push_back(ctor_plan(s, c));
      const std::string label = class_name(s, t, k);
      if (auto it = overrides.find(label); it != overrides.end()) {
        tags = apply_override(s, label, std::move(tags), it->second);
      } else if (auto it2 = overrides.find(s.type(t).name); it2 != overrides.end()) {
        tags = apply_override(s, label, std::move(tags), it2->second);
      }
      if (tags.size() > kMaxTags) {
        throw PlanError(label + " has " + std::to_string(tags.size()) + " infinite constructors; at most " +
                        std::to_string(kMaxTags) + " are supported");
      }
      set_order(cp, std::move(tags));
      plan.classes_[t].push_back(std::move(cp));
    }
  }
  return plan;
}

CodecPlan assign_tags(SignaturePtr sig, const TagOverrides& overrides) {
  CodecPlan plan = make_plan(sig, overrides);
  const ValidatedSignature& s = *sig;

  // Permuting one class can change whether another class's trial decode
  // terminates, so sweep until nothing changes.
  std::vector<std::string> failed;
  const std::size_t max_sweeps = 4;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    failed.clear();
    for (std::size_t t = 0; t < s.type_count(); ++t) {
      for (std::size_t k = 0; k < plan.classes_[t].size(); ++k) {
        if (trial_ok(plan, t, k)) continue;
        ClassPlan& cp = plan.classes_[t][k];
        const std::vector<CtorPlan> start = cp.tags;
        std::vector<std::size_t> order(cp.tags.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        bool found = false;
        while (std::next_permutation(order.begin(), order.end())) {
          std::vector<CtorPlan> tags;
          for (std::size_t i : order) tags.push_back(start[i]);
          set_order(cp, std::move(tags));
          if (trial_ok(plan, t, k)) {
            found = true;
            break;
          }
        }
        if (found) {
          changed = true;
        } else {
          set_order(cp, start);
          failed.push_back(class_name(s, t, k));
        }
      }
    }
    if (!changed) break;
  }
  if (!failed.empty()) throw NoWellFoundedPlan(failed);
  return plan;
}

Nat encode(const CodecPlan& plan, std::string_view type, const Nat& index, const CountVector& counts,
           const Term& term) {
  return Codec(plan).encode(plan.signature().type_id(type), index, counts, term);
}

Term decode(const CodecPlan& plan, std::string_view type, const Nat& index, const CountVector& counts,
            const Nat& code, Fuel& fuel) {
  return Codec(plan).decode(plan.signature().type_id(type), index, counts, code, fuel);
}

Term decode(const CodecPlan& plan, std::string_view type, const Nat& index, const CountVector& counts,
            const Nat& code) {
  Fuel fuel(default_fuel());
  return decode(plan, type, index, counts, code, fuel);
}

Nat encode_closed(const CodecPlan& plan, std::string_view type, const Nat& index, const Term& term) {
  return encode(plan, type, index, CountVector{}, term);
}

Term decode_closed(const CodecPlan& plan, std::string_view type, const Nat& index, const Nat& code) {
  return decode(plan, type, index, CountVector{}, code);
}

std::strong_ordering compare(const CodecPlan& plan, std::string_view type, const Nat& index, const Term& a,
                             const Term& b) {
  check_term(plan.signature(), type, index, CountVector{}, a);
  check_term(plan.signature(), type, index, CountVector{}, b);
  return encode_closed(plan, type, index, a) <=> encode_closed(plan, type, index, b);
}

std::optional<Nat> code_space(const CodecPlan& plan, std::string_view type, const Nat& index,
                              const CountVector& counts) {
  const std::size_t t = plan.signature().type_id(type);
  const ClassPlan& cp = plan.plan_at(t, index);
  if (!cp.tags.empty()) return std::nullopt;
  const Nat v = cp.infinite ? counts.get(type, index) : Nat(0);
  return v + cp.finite_count;
}

}  // namespace godelgen
