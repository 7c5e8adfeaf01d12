#include "godelgen/adequacy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <memory>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "godelgen/stack.hpp"

namespace godelgen {

namespace {

using CountKey = std::map<CountVector::Key, Nat>;

// Size-bounded structural enumeration. Terms of each exact size are built
// from the constructor declarations, never from the codec.
class SizeEnumerator {
 public:
  explicit SizeEnumerator(const ValidatedSignature& sig) : sig_(sig) {}

  const std::vector<Term>& exact(std::size_t type, const Nat& index, const CountVector& counts, std::size_t size) {
    auto key = std::make_tuple(type, index, counts.entries(), size);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Term> out;
    const std::string& tname = sig_.type(type).name;
    if (size == 1) {
      const Nat v = counts.get(tname, index);
      for (Nat level; level < v; level += Nat(1)) out.push_back(Term::var(tname, index, level));
    }
    for (std::size_t cid : sig_.type(type).ctors) {
      auto b = sig_.match_result(cid, index);
      if (!b) continue;
      Partial p{cid, *b, {}, {}};
      fill(p, 0, size - 1, counts, out);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  struct Partial {
    std::size_t ctor;
    IndexBindings bindings;
    std::vector<Nat> index_args;
    std::vector<TermArg> args;
  };

  // Distributes `remaining` nodes over the parameters from slot `k` on:
  // explicit index values first, then arguments.
  void fill(Partial& p, std::size_t k, std::size_t remaining, const CountVector& counts, std::vector<Term>& out) {
    const Ctor& c = sig_.ctor(p.ctor);
    const std::size_t slots = c.index_params.size() + c.args.size();
    if (k == slots) {
      if (remaining == 0) out.push_back(Term::con(c.name, p.args, p.index_args));
      return;
    }
    const std::size_t later = slots - k - 1;
    if (remaining < later + 1) return;
    const std::size_t most = remaining - later;
    if (k < c.index_params.size()) {
      const std::string& var = c.index_params[k].var;
      for (std::size_t cost = 1; cost <= most; ++cost) {
        const Nat value(cost - 1);
        p.bindings[var] = value;
        p.index_args.push_back(value);
        fill(p, k + 1, remaining - cost, counts, out);
        p.index_args.pop_back();
      }
      p.bindings.erase(var);
      return;
    }
    const Arg& a = c.args[k - c.index_params.size()];
    CountVector inner = counts;
    for (const TypeRef& bt : a.binders) inner.increment(bt.type, sig_.eval_type_index(bt, p.bindings));
    const std::size_t target = a.target.id;
    const Nat idx = sig_.eval_type_index(a.target, p.bindings);
    if (!sig_.index_in_range(target, idx)) return;
    for (std::size_t cost = 1; cost <= most; ++cost) {
      const std::vector<Term>& bodies = exact(target, idx, inner, cost);
      for (const Term& body : bodies) {
        p.args.push_back(TermArg{a.binders.size(), body});
        fill(p, k + 1, remaining - cost, counts, out);
        p.args.pop_back();
      }
    }
  }

  const ValidatedSignature& sig_;
  std::map<std::tuple<std::size_t, Nat, CountKey, std::size_t>, std::vector<Term>> memo_;
};

// Terms below a code bound, generated constructor by constructor. Subterms
// are shared and carry their codes. The payload is monotone in every slot
// (mingle and p * c + e both are), so each slot is searched in code order and
// the search stops once the smallest completion reaches the bound.
class CodeEnumerator {
 public:
  explicit CodeEnumerator(const CodecPlan& plan) : plan_(plan), sig_(plan.signature()) {}

  std::vector<Term> run(std::size_t type, const Nat& index, const Nat& bound) {
    std::vector<Term> out;
    for (const Cand& c : *below(type, index, CountVector{}, bound)) {
      Term t = to_term(*c.node);
      if (encode(plan_, sig_.type(type).name, index, CountVector{}, t) != c.code) {
        throw Error("code-bounded enumeration disagrees with the encoder");
      }
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  struct Node {
    bool var = false;
    std::string name;
    Nat index;
    Nat level;
    std::vector<Nat> index_args;
    std::vector<std::pair<std::size_t, NodePtr>> args;
  };
  struct Cand {
    NodePtr node;
    Nat code;
  };
  using List = std::shared_ptr<const std::vector<Cand>>;
  using Key = std::tuple<std::size_t, Nat, CountKey, Nat>;

  static Term to_term(const Node& n) {
    if (n.var) return Term::var(n.name, n.index, n.level);
    std::vector<TermArg> args;
    for (const auto& [binders, child] : n.args) args.push_back(TermArg{binders, to_term(*child)});
    return Term::con(n.name, std::move(args), n.index_args);
  }

  List below(std::size_t type, const Nat& index, const CountVector& counts, const Nat& bound) {
    Key key{type, index, counts.entries(), bound};
    // A cached run for a larger bound of the same class holds the answer as a prefix.
    if (auto it = memo_.lower_bound(key); it != memo_.end() && std::get<0>(it->first) == type &&
                                          std::get<1>(it->first) == index &&
                                          std::get<2>(it->first) == std::get<2>(key)) {
      if (std::get<3>(it->first) == bound) return it->second;
      auto prefix = std::make_shared<std::vector<Cand>>();
      for (const Cand& c : *it->second) {
        if (!(c.code < bound)) break;
        prefix->push_back(c);
      }
      return memo_.emplace(key, std::move(prefix)).first->second;
    }
    if (!active_.insert(key).second) {
      throw Error("code-bounded enumeration of '" + sig_.type(type).name + "' does not terminate");
    }
    auto out = std::make_shared<std::vector<Cand>>();
    const std::string& tname = sig_.type(type).name;
    const ClassPlan& cp = plan_.plan_at(type, index);
    const Nat v = cp.infinite ? counts.get(tname, index) : Nat(0);
    for (Nat level; level < v && level < bound; level += Nat(1)) {
      auto n = std::make_shared<Node>();
      n->var = true;
      n->name = tname;
      n->index = index;
      n->level = level;
      out->push_back(Cand{std::move(n), level});
    }

    Nat offset = v;
    for (const auto& fc : cp.finite) {
      if (!(offset < bound)) break;
      const Ctor& c = sig_.ctor(fc.ctor);
      IndexBindings b = *sig_.match_result(fc.ctor, index);
      Search s{c, b, counts, {}, {}, {}};
      for (std::size_t k = 0; k < c.args.size(); ++k) s.args.push_back(arg_list(c.args[k], b, counts, fc.radices[k]));
      // Mixed radix, leftmost digit most significant.
      s.code = [&, offset](const std::vector<Nat>&, const std::vector<Nat>& digits) {
        Nat d;
        for (std::size_t k = 0; k < digits.size(); ++k) d = d * fc.radices[k] + digits[k];
        return offset + d;
      };
      collect(s, bound, *out);
      offset += fc.instances;
    }

    const Nat base = v + cp.finite_count;
    const Nat tags(cp.tags.size());
    for (const CtorPlan& p : cp.tags) {
      const Nat first = base + Nat(p.tag);
      if (!(first < bound)) continue;
      const Nat slot_bound = (bound - first - Nat(1)).divmod(tags).quot + Nat(1);
      const Ctor& c = sig_.ctor(p.ctor);
      IndexBindings b = *sig_.match_result(p.ctor, index);
      Search s{c, b, counts, {}, {}, {}};
      s.slot_bound = slot_bound;
      s.plan = &p;
      s.code = [&, first, tags](const std::vector<Nat>& index_args, const std::vector<Nat>& codes) {
        std::vector<Nat> slots;
        for (std::size_t k : p.index_slots) slots.push_back(index_args[k]);
        for (std::size_t k : p.infinite_slots) slots.push_back(codes[k]);
        Nat payload = mingle_fold(slots);
        for (std::size_t j = 0; j < p.finite_args.size(); ++j) payload = payload * p.radices[j] + codes[p.finite_args[j]];
        return first + tags * payload;
      };
      collect(s, bound, *out);
    }
    std::sort(out->begin(), out->end(), [](const Cand& a, const Cand& b) { return a.code < b.code; });
    active_.erase(key);
    List result = std::move(out);
    memo_.emplace(key, result);
    return result;
  }

  struct Search {
    const Ctor& ctor;
    IndexBindings& bindings;
    const CountVector& counts;
    std::vector<List> args;  // filled once the index values are chosen
    std::function<Nat(const std::vector<Nat>&, const std::vector<Nat>&)> code;
    Nat slot_bound;
    const CtorPlan* plan = nullptr;
  };

  List arg_list(const Arg& a, const IndexBindings& b, const CountVector& counts, const Nat& bound) {
    CountVector inner = counts;
    for (const TypeRef& bt : a.binders) inner.increment(bt.type, sig_.eval_type_index(bt, b));
    const std::size_t target = a.target.id;
    const Nat idx = sig_.eval_type_index(a.target, b);
    if (!sig_.index_in_range(target, idx)) return std::make_shared<std::vector<Cand>>();
    return below(target, idx, inner, bound);
  }

  // Chooses index values (infinite constructors only), then one argument at a
  // time in code order. Unchosen coordinates count as 0 in the lower bound.
  void collect(Search& s, const Nat& bound, std::vector<Cand>& out) {
    std::vector<Nat> index_args;
    choose_index(s, index_args, bound, out);
  }

  void choose_index(Search& s, std::vector<Nat>& index_args, const Nat& bound, std::vector<Cand>& out) {
    const std::size_t k = index_args.size();
    if (k == s.ctor.index_params.size()) {
      if (s.plan != nullptr) {
        s.args.clear();
        for (std::size_t a = 0; a < s.ctor.args.size(); ++a) {
          Nat arg_bound = s.slot_bound;
          for (std::size_t j = 0; j < s.plan->finite_args.size(); ++j) {
            if (s.plan->finite_args[j] == a) arg_bound = s.plan->radices[j];
          }
          s.args.push_back(arg_list(s.ctor.args[a], s.bindings, s.counts, arg_bound));
        }
      }
      std::vector<Nat> codes(s.ctor.args.size());
      std::vector<NodePtr> picked(s.ctor.args.size());
      choose_arg(s, index_args, codes, picked, 0, bound, out);
      return;
    }
    const std::string& var = s.ctor.index_params[k].var;
    for (Nat value; value < s.slot_bound; value += Nat(1)) {
      index_args.push_back(value);
      std::vector<Nat> low = index_args;
      low.resize(s.ctor.index_params.size());
      const bool fits = s.code(low, std::vector<Nat>(s.ctor.args.size())) < bound;
      if (fits) {
        s.bindings[var] = value;
        choose_index(s, index_args, bound, out);
      }
      index_args.pop_back();
      if (!fits) break;
    }
    s.bindings.erase(var);
  }

  void choose_arg(Search& s, const std::vector<Nat>& index_args, std::vector<Nat>& codes,
                  std::vector<NodePtr>& picked, std::size_t k, const Nat& bound, std::vector<Cand>& out) {
    if (k == s.ctor.args.size()) {
      const Nat code = s.code(index_args, codes);
      if (!(code < bound)) return;
      auto n = std::make_shared<Node>();
      n->name = s.ctor.name;
      n->index_args = index_args;
      for (std::size_t a = 0; a < picked.size(); ++a) n->args.emplace_back(s.ctor.args[a].binders.size(), picked[a]);
      out.push_back(Cand{std::move(n), code});
      return;
    }
    for (const Cand& c : *s.args[k]) {
      codes[k] = c.code;
      const bool fits = s.code(index_args, codes) < bound;
      if (fits) {
        picked[k] = c.node;
        choose_arg(s, index_args, codes, picked, k + 1, bound, out);
      }
      if (!fits) break;
    }
    codes[k] = Nat(0);
  }

  const CodecPlan& plan_;
  const ValidatedSignature& sig_;
  std::map<Key, List> memo_;
  std::set<Key> active_;
};

std::string show(const CodecPlan& plan, std::string_view type, const Nat& index, const Term& t) {
  try {
    return print_term(plan.signature(), type, index, t);
  } catch (const std::exception& e) {
    return std::string("<unprintable term: ") + e.what() + ">";
  }
}

// Binder renamings: each binder gets a name unique along its scope chain.
PrintOptions variant(std::size_t k) {
  PrintOptions o;
  o.binder_name = [k](const BinderName& b) {
    return k == 0 ? "v" + std::to_string(b.depth) : "b_" + b.type + "_" + std::to_string(b.depth);
  };
  return o;
}

std::size_t size_for(const EnumBudget& budget, const std::string& type, const std::string& cls) {
  if (auto it = budget.max_size_for.find(type + "/" + cls); it != budget.max_size_for.end()) return it->second;
  if (auto it = budget.max_size_for.find(type); it != budget.max_size_for.end()) return it->second;
  return budget.max_size;
}

Nat code_for(const EnumBudget& budget, const std::string& type, const std::string& cls) {
  if (auto it = budget.max_code_for.find(type + "/" + cls); it != budget.max_code_for.end()) return it->second;
  if (auto it = budget.max_code_for.find(type); it != budget.max_code_for.end()) return it->second;
  return budget.max_code;
}

std::string label_of(const ValidatedSignature& sig, std::size_t t, const Nat& index) {
  return sig.class_label(t, sig.class_of(t, index));
}

struct OntoFailure {
  std::uint64_t code = std::numeric_limits<std::uint64_t>::max();
  Verdict verdict;
};

std::optional<Verdict> check_code(const CodecPlan& plan, std::string_view type, const Nat& index,
                                  std::uint64_t code, std::uint64_t fuel_steps) {
  const std::string witness = "code " + std::to_string(code);
  try {
    Fuel fuel(fuel_steps);
    const Term t = decode(plan, type, index, CountVector{}, Nat(code), fuel);
    const Nat back = encode_closed(plan, type, index, t);
    if (back != Nat(code)) {
      return Verdict::fail(witness, "decodes to " + show(plan, type, index, t) + ", which encodes to " + back.str());
    }
  } catch (const FuelExhausted& e) {
    return Verdict::fail(witness, "decoding exhausted " + std::to_string(fuel_steps) + " steps of fuel: " + e.what());
  } catch (const std::exception& e) {
    return Verdict::fail(witness, std::string("decoding failed: ") + e.what());
  }
  return std::nullopt;
}

}  // namespace

void EnumBudget::check() const {
  if (max_size < 1) throw std::invalid_argument("max_size must be at least 1");
  if (max_code < Nat(2)) throw std::invalid_argument("max_code must be at least 2");
  for (const auto& [k, v] : max_size_for) {
    if (v < 1) throw std::invalid_argument("max_size for " + k + " must be at least 1");
  }
  for (const auto& [k, v] : max_code_for) {
    if (v < Nat(2)) throw std::invalid_argument("max_code for " + k + " must be at least 2");
  }
  if (fuel < 1) throw std::invalid_argument("fuel must be at least 1");
}

bool AdequacyReport::passed() const {
  return std::all_of(classes.begin(), classes.end(), [](const ClassReport& c) { return c.passed(); });
}

std::vector<Term> enumerate_terms(const ValidatedSignature& sig, std::string_view type, const Nat& index,
                                  std::size_t max_size) {
  const std::size_t t = sig.type_id(type);
  if (!sig.index_in_range(t, index)) throw TermError("index " + index.str() + " is out of range");
  SizeEnumerator e(sig);
  std::vector<Term> out;
  for (std::size_t size = 1; size <= max_size; ++size) {
    const std::vector<Term>& layer = e.exact(t, index, CountVector{}, size);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Term> enumerate_terms_below_code(const CodecPlan& plan, std::string_view type, const Nat& index,
                                             const Nat& bound) {
  const std::size_t t = plan.signature().type_id(type);
  if (!plan.signature().index_in_range(t, index)) throw TermError("index " + index.str() + " is out of range");
  return CodeEnumerator(plan).run(t, index, bound);
}

namespace {

struct TotalUnique {
  Verdict total;
  Verdict unique;
};

TotalUnique check_total_unique(const CodecPlan& plan, std::string_view type, const Nat& index,
                               const std::vector<Term>& terms) {
  const ValidatedSignature& sig = plan.signature();
  TotalUnique r;
  for (const Term& t : terms) {
    const std::string text = show(plan, type, index, t);
    Nat code;
    try {
      code = encode_closed(plan, type, index, t);
    } catch (const std::exception& e) {
      if (r.total.pass) r.total = Verdict::fail(text, std::string("encoding failed: ") + e.what());
      continue;
    }
    if (!r.unique.pass) continue;
    std::vector<std::string> spellings{text};
    for (std::size_t k = 0; k < 2; ++k) spellings.push_back(print_term(sig, type, index, t, {}, variant(k)));
    for (const std::string& s : spellings) {
      try {
        const Term again = parse_term(sig, type, index, s);
        if (!(again == t)) {
          r.unique = Verdict::fail(text, "'" + s + "' parses to a different term");
        } else if (const Nat c = encode_closed(plan, type, index, again); c != code) {
          r.unique = Verdict::fail(text, "'" + s + "' encodes to " + c.str() + ", not " + code.str());
        }
      } catch (const std::exception& e) {
        r.unique = Verdict::fail(text, "'" + s + "' does not re-parse: " + e.what());
      }
      if (!r.unique.pass) break;
    }
    if (!r.total.pass && !r.unique.pass) break;
  }
  return r;
}

}  // namespace

Verdict verify_total_unique(const CodecPlan& plan, std::string_view type, const Nat& index,
                            const std::vector<Term>& terms) {
  TotalUnique r = check_total_unique(plan, type, index, terms);
  return r.total.pass ? r.unique : r.total;
}

Verdict verify_total_unique(const CodecPlan& plan, std::string_view type, const Nat& index,
                            const EnumBudget& budget) {
  budget.check();
  const std::size_t t = plan.signature().type_id(type);
  const std::size_t size = size_for(budget, std::string(type), label_of(plan.signature(), t, index));
  return verify_total_unique(plan, type, index, enumerate_terms(plan.signature(), type, index, size));
}

Verdict verify_one_to_one(const CodecPlan& plan, std::string_view type, const Nat& index,
                          const std::vector<Term>& terms) {
  std::map<Nat, const Term*> seen;
  for (const Term& t : terms) {
    const std::string text = show(plan, type, index, t);
    try {
      const Nat code = encode_closed(plan, type, index, t);
      auto [it, fresh] = seen.emplace(code, &t);
      if (!fresh) {
        return Verdict::fail(text, "shares code " + code.str() + " with " + show(plan, type, index, *it->second));
      }
      Fuel fuel(default_fuel());
      const Term back = decode(plan, type, index, CountVector{}, code, fuel);
      if (!(back == t)) {
        return Verdict::fail(text, "code " + code.str() + " decodes to " + show(plan, type, index, back));
      }
    } catch (const std::exception& e) {
      return Verdict::fail(text, std::string("round trip failed: ") + e.what());
    }
  }
  return Verdict::ok();
}

Verdict verify_one_to_one(const CodecPlan& plan, std::string_view type, const Nat& index,
                          const EnumBudget& budget) {
  budget.check();
  const std::size_t t = plan.signature().type_id(type);
  const std::size_t size = size_for(budget, std::string(type), label_of(plan.signature(), t, index));
  return verify_one_to_one(plan, type, index, enumerate_terms(plan.signature(), type, index, size));
}

Verdict verify_onto(const CodecPlan& plan, std::string_view type, const Nat& index, const EnumBudget& budget,
                    Nat* codes_checked) {
  budget.check();
  const ValidatedSignature& sig = plan.signature();
  const std::size_t t = sig.type_id(type);
  Nat limit = code_for(budget, std::string(type), label_of(sig, t, index));
  if (auto space = code_space(plan, type, index, CountVector{})) limit = std::min(limit, *space);
  const std::uint64_t end = limit.fits_u64() ? limit.to_u64() : std::numeric_limits<std::uint64_t>::max();

  constexpr std::uint64_t kBlock = 256;
  const std::uint64_t blocks = (end + kBlock - 1) / kBlock;
  std::size_t workers = budget.threads != 0 ? budget.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<std::size_t>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));

  std::atomic<std::uint64_t> first_fail{std::numeric_limits<std::uint64_t>::max()};
  std::vector<OntoFailure> failures(workers);
  run_workers(workers, [&](std::size_t w) {
    for (std::uint64_t blk = w; blk < blocks; blk += workers) {
      const std::uint64_t lo = blk * kBlock;
      if (lo >= first_fail.load()) return;
      const std::uint64_t hi = std::min(end, lo + kBlock);
      for (std::uint64_t code = lo; code < hi; ++code) {
        if (auto v = check_code(plan, type, index, code, budget.fuel)) {
          failures[w] = OntoFailure{code, std::move(*v)};
          std::uint64_t cur = first_fail.load();
          while (code < cur && !first_fail.compare_exchange_weak(cur, code)) {
          }
          return;
        }
      }
    }
  });

  const auto best = std::min_element(failures.begin(), failures.end(),
                                     [](const OntoFailure& a, const OntoFailure& b) { return a.code < b.code; });
  if (best != failures.end() && !best->verdict.pass) {
    if (codes_checked != nullptr) *codes_checked = Nat(best->code + 1);
    return best->verdict;
  }
  if (codes_checked != nullptr) *codes_checked = Nat(end);
  return Verdict::ok();
}

ClassReport verify_class(const CodecPlan& plan, std::string_view type, const Nat& index, const EnumBudget& budget) {
  budget.check();
  const ValidatedSignature& sig = plan.signature();
  const std::size_t t = sig.type_id(type);
  const std::size_t cls = sig.class_of(t, index);
  ClassReport r;
  r.type = std::string(type);
  r.index_class = sig.class_label(t, cls);
  r.index = index;
  r.cardinality = sig.info(t).classes[cls].str();
  const std::vector<Term> terms = enumerate_terms(sig, type, index, size_for(budget, r.type, r.index_class));
  r.terms_checked = terms.size();
  TotalUnique tu = check_total_unique(plan, type, index, terms);
  r.total = std::move(tu.total);
  r.unique = std::move(tu.unique);
  r.onto = verify_onto(plan, type, index, budget, &r.codes_checked);
  r.one_to_one = verify_one_to_one(plan, type, index, terms);
  return r;
}

AdequacyReport verify_all(const CodecPlan& plan, const EnumBudget& budget) {
  budget.check();
  const auto start = std::chrono::steady_clock::now();
  const ValidatedSignature& sig = plan.signature();
  AdequacyReport report;
  report.max_size = budget.max_size;
  report.max_code = budget.max_code;
  for (std::size_t t = 0; t < sig.type_count(); ++t) {
    const auto& info = sig.info(t);
    const std::string& name = sig.type(t).name;
    for (std::size_t k = 0; k < info.class_count; ++k) {
      std::vector<Nat> indices;
      if (info.index_kind == IndexKind::Nat) {
        for (const Nat& i : budget.nat_indices) {
          if (sig.class_of(t, i) == k) indices.push_back(i);
        }
      } else {
        indices = sig.class_representatives(t, k);
      }
      for (const Nat& i : indices) report.classes.push_back(verify_class(plan, name, i, budget));
    }
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_json(const AdequacyReport& report, std::string_view signature_path) {
  using Json = nlohmann::ordered_json;
  auto nat = [](const Nat& n) -> Json {
    if (n.fits_u64()) return n.to_u64();
    return n.str();
  };
  Json classes = Json::array();
  for (const ClassReport& c : report.classes) {
    Json j;
    j["type"] = c.type;
    j["index_class"] = c.index_class;
    j["index"] = nat(c.index);
    j["cardinality"] = c.cardinality;
    const std::pair<const char*, const Verdict*> verdicts[] = {
        {"total", &c.total}, {"unique", &c.unique}, {"onto", &c.onto}, {"one_to_one", &c.one_to_one}};
    for (const auto& [key, v] : verdicts) j[key] = v->pass ? "pass" : "fail";
    j["terms_checked"] = c.terms_checked;
    j["codes_checked"] = nat(c.codes_checked);
    Json cex = Json::object();
    for (const auto& [key, v] : verdicts) {
      if (v->pass) continue;
      cex[key] = Json{{"witness", v->witness.value_or("")}, {"detail", v->detail.value_or("")}};
    }
    if (!cex.empty()) j["counterexample"] = cex;
    classes.push_back(std::move(j));
  }
  Json root;
  root["signature"] = std::string(signature_path);
  root["passed"] = report.passed();
  root["max_size"] = report.max_size;
  root["max_code"] = nat(report.max_code);
  root["classes"] = std::move(classes);
  return root.dump(2) + "\n";
}

}  // namespace godelgen
