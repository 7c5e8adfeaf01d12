// Cardinality analysis and validation.
//
// Each type is split into index classes: {z, s} for a nat index (sound
// because result patterns are at most one `s` deep), one class per value for
// a finite index, and a single class otherwise. Index variables that the
// result class does not pin down (the N in `term (s N)`, explicit `{M:nat}`
// abstractions) range over every class of their index type, and a
// constructor must be well formed under every such instantiation.

#include <algorithm>
#include <functional>
#include <set>

#include "godelgen/signature.hpp"

namespace godelgen {

std::string Cardinality::str() const {
  switch (kind) {
    case Kind::Empty:
      return "Empty";
    case Kind::Finite:
      return "Finite(" + count.str() + ")";
    case Kind::Infinite:
      return "Infinite";
  }
  return "?";
}

namespace {

constexpr std::size_t kZ = 0;
constexpr std::size_t kS = 1;

struct TypeSetup {
  IndexKind kind = IndexKind::None;
  std::size_t index_type = 0;
  std::size_t classes = 1;
  std::vector<std::string> labels{"unit"};
};

// Where an argument's index sits relative to the result index of a
// constructor at the successor class: one below, the same, or elsewhere.
enum class Level { Other, Same, Below };

struct ArgNodes {
  std::vector<std::size_t> binders;
  std::size_t target = 0;
  Level level = Level::Other;
};

struct Inst {
  std::vector<ArgNodes> args;
};

struct Applicable {
  std::size_t ctor = 0;
  std::vector<Inst> insts;
};

void collect_vars(const IndexExpr& e, std::size_t type_of_position, const Signature& sig,
                  std::map<std::string, std::set<std::size_t>>& out) {
  if (e.is_var()) {
    out[e.name].insert(type_of_position);
    return;
  }
  auto c = sig.find_ctor(e.name);
  if (!c) return;
  const Ctor& ctor = sig.ctors[*c];
  for (std::size_t i = 0; i < e.args.size() && i < ctor.args.size(); ++i) {
    if (auto t = sig.find_type(ctor.args[i].target.type)) collect_vars(e.args[i], *t, sig, out);
  }
}

void collect_ref_vars(const TypeRef& ref, const Signature& sig,
                      std::map<std::string, std::set<std::size_t>>& out) {
  auto t = sig.find_type(ref.type);
  if (!t) return;
  const TypeDecl& decl = sig.types[*t];
  for (std::size_t i = 0; i < ref.indices.size() && i < decl.index_types.size(); ++i) {
    if (auto it = sig.find_type(decl.index_types[i])) collect_vars(ref.indices[i], *it, sig, out);
  }
}

class Analyzer {
 public:
  Analyzer(const Signature& sig, std::vector<TypeSetup> setup, std::map<std::size_t, Nat> const_codes,
           std::optional<std::size_t> nat)
      : sig_(sig), setup_(std::move(setup)), const_codes_(std::move(const_codes)), nat_(nat) {
    base_.resize(sig_.types.size());
    std::size_t n = 0;
    for (std::size_t t = 0; t < sig_.types.size(); ++t) {
      base_[t] = n;
      n += setup_[t].classes;
      for (std::size_t k = 0; k < setup_[t].classes; ++k) node_type_.push_back(t);
    }
    nodes_ = n;
    proven_.assign(nodes_, false);
    build_applicable();
    compute();
  }

  std::size_t node(std::size_t type, std::size_t cls) const { return base_[type] + cls; }
  std::size_t node_count() const { return nodes_; }
  const Cardinality& card(std::size_t n) const { return card_[n]; }
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  const TypeSetup& setup(std::size_t t) const { return setup_[t]; }

  ClassCtors class_ctors(std::size_t n) const {
    ClassCtors out;
    for (std::size_t a = 0; a < applicable_[n].size(); ++a) {
      if (!alive_[n][a]) continue;
      const Applicable& ap = applicable_[n][a];
      const Ctor& c = sig_.ctors[ap.ctor];
      bool finite = c.index_params.empty();
      for (const auto& arg : ap.insts.front().args) {
        if (!arg.binders.empty() || !card_[arg.target].is_finite()) finite = false;
      }
      if (!finite) {
        out.infinite.push_back(ap.ctor);
        continue;
      }
      ClassCtors::FiniteCtor fc;
      fc.ctor = ap.ctor;
      fc.instances = 1;
      for (const auto& arg : ap.insts.front().args) {
        fc.radices.push_back(card_[arg.target].count);
        fc.instances *= card_[arg.target].count;
      }
      out.finite_count += fc.instances;
      out.finite.push_back(std::move(fc));
    }
    return out;
  }

 private:
  const Signature& sig_;
  std::vector<TypeSetup> setup_;
  std::map<std::size_t, Nat> const_codes_;
  std::optional<std::size_t> nat_;
  std::vector<std::size_t> base_;
  std::vector<std::size_t> node_type_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<Applicable>> applicable_;
  std::vector<std::vector<bool>> alive_;
  std::vector<Cardinality> card_;
  std::vector<Diagnostic> diags_;
  std::map<std::vector<std::size_t>, std::vector<bool>> inhabited_memo_;
  std::vector<bool> proven_;  // established facts seeding every context

  // Number of classes a variable of the given index type ranges over.
  std::size_t var_space(std::size_t index_type) const {
    if (nat_ && index_type == *nat_) return 2;
    for (std::size_t t = 0; t < setup_.size(); ++t) {
      if (setup_[t].kind == IndexKind::Finite && setup_[t].index_type == index_type) return setup_[t].classes;
    }
    return 1;
  }

  std::size_t abstract_index(const TypeSetup& st, const IndexExpr& e,
                             const std::map<std::string, std::size_t>& assign) const {
    if (e.is_var()) {
      auto it = assign.find(e.name);
      if (it == assign.end()) return 0;
      return std::min(it->second, st.classes - 1);
    }
    if (st.kind == IndexKind::Nat) return e.name == "z" ? kZ : kS;
    auto c = sig_.find_ctor(e.name);
    if (c) {
      auto it = const_codes_.find(*c);
      if (it != const_codes_.end() && it->second.fits_u64() && it->second.to_u64() < st.classes) {
        return static_cast<std::size_t>(it->second.to_u64());
      }
    }
    return 0;
  }

  std::size_t ref_node(const TypeRef& ref, const std::map<std::string, std::size_t>& assign) const {
    const std::size_t t = *sig_.find_type(ref.type);
    const TypeSetup& st = setup_[t];
    if (st.kind == IndexKind::None || ref.indices.empty()) return node(t, 0);
    return node(t, abstract_index(st, ref.indices[0], assign));
  }

  void build_applicable() {
    applicable_.assign(nodes_, {});
    for (std::size_t t = 0; t < sig_.types.size(); ++t) {
      const TypeSetup& st = setup_[t];
      for (std::size_t cls = 0; cls < st.classes; ++cls) {
        for (std::size_t ci : sig_.types[t].ctors) {
          const Ctor& c = sig_.ctors[ci];
          std::map<std::string, std::size_t> fixed;
          std::vector<std::pair<std::string, std::size_t>> free;  // name, space
          bool applies = true;
          std::set<std::string> bound;
          if (st.kind != IndexKind::None && !c.result.indices.empty()) {
            const IndexExpr& p = c.result.indices[0];
            if (p.is_var()) {
              fixed[p.name] = cls;
              bound.insert(p.name);
            } else if (st.kind == IndexKind::Nat) {
              if (p.name == "z") {
                applies = cls == kZ;
              } else {
                applies = cls == kS;
                if (!p.args.empty() && p.args[0].is_var()) {
                  free.emplace_back(p.args[0].name, 2);
                  bound.insert(p.args[0].name);
                }
              }
            } else {
              applies = abstract_index(st, p, {}) == cls;
            }
          }
          if (!applies) continue;

          std::map<std::string, std::set<std::size_t>> var_types;
          for (const auto& a : c.args) {
            for (const auto& b : a.binders) collect_ref_vars(b, sig_, var_types);
            collect_ref_vars(a.target, sig_, var_types);
          }
          for (const auto& ip : c.index_params) {
            if (bound.insert(ip.var).second) {
              auto it = sig_.find_type(ip.type);
              free.emplace_back(ip.var, it ? var_space(*it) : 1);
            }
          }
          for (const auto& [name, types] : var_types) {
            if (bound.insert(name).second) free.emplace_back(name, var_space(*types.begin()));
          }

          // Offset of `s^j V` from the result index, when V is the pattern variable.
          std::string pattern_var;
          int pattern_shift = 0;
          if (st.kind == IndexKind::Nat && cls == kS && !c.result.indices.empty()) {
            const IndexExpr& p = c.result.indices[0];
            if (p.is_var()) {
              pattern_var = p.name;
            } else if (p.name == "s" && !p.args.empty() && p.args[0].is_var()) {
              pattern_var = p.args[0].name;
              pattern_shift = 1;
            }
          }
          auto level_of = [&](const TypeRef& ref) {
            auto rt = sig_.find_type(ref.type);
            if (pattern_var.empty() || !rt || setup_[*rt].kind != IndexKind::Nat || ref.indices.empty()) {
              return Level::Other;
            }
            int j = 0;
            const IndexExpr* e = &ref.indices[0];
            while (!e->is_var() && e->name == "s" && !e->args.empty()) {
              ++j;
              e = &e->args[0];
            }
            if (!e->is_var() || e->name != pattern_var) return Level::Other;
            const int offset = j - pattern_shift;
            return offset == 0 ? Level::Same : offset == -1 ? Level::Below : Level::Other;
          };

          Applicable ap;
          ap.ctor = ci;
          std::vector<std::size_t> counter(free.size(), 0);
          for (;;) {
            std::map<std::string, std::size_t> assign = fixed;
            for (std::size_t i = 0; i < free.size(); ++i) assign[free[i].first] = counter[i];
            Inst inst;
            for (const auto& a : c.args) {
              ArgNodes an;
              for (const auto& b : a.binders) an.binders.push_back(ref_node(b, assign));
              an.target = ref_node(a.target, assign);
              an.level = level_of(a.target);
              inst.args.push_back(std::move(an));
            }
            ap.insts.push_back(std::move(inst));
            std::size_t i = 0;
            while (i < free.size() && ++counter[i] == free[i].second) counter[i++] = 0;
            if (i == free.size()) break;
          }
          applicable_[node(t, cls)].push_back(std::move(ap));
        }
      }
    }
  }

  const std::vector<bool>& inhabited(const std::vector<std::size_t>& gamma) {
    if (auto it = inhabited_memo_.find(gamma); it != inhabited_memo_.end()) return it->second;
    std::vector<bool> inh = proven_;
    for (std::size_t g : gamma) inh[g] = true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t n = 0; n < nodes_; ++n) {
        if (inh[n]) continue;
        for (const auto& ap : applicable_[n]) {
          if (ctor_alive(ap, gamma, inh)) {
            inh[n] = true;
            changed = true;
            break;
          }
        }
      }
    }
    return inhabited_memo_[gamma] = std::move(inh);
  }

  bool ctor_alive(const Applicable& ap, const std::vector<std::size_t>& gamma, const std::vector<bool>& inh) {
    for (const auto& inst : ap.insts) {
      for (const auto& arg : inst.args) {
        std::vector<std::size_t> extended = gamma;
        for (std::size_t b : arg.binders) extended.push_back(b);
        std::sort(extended.begin(), extended.end());
        extended.erase(std::unique(extended.begin(), extended.end()), extended.end());
        if (extended == gamma) {
          if (!inh[arg.target]) return false;
        } else if (!inhabited(extended)[arg.target]) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_successor(std::size_t n) const {
    const std::size_t t = node_type_[n];
    return setup_[t].kind == IndexKind::Nat && n - base_[t] == kS;
  }

  // Successor classes whose inhabitation follows by induction on the index:
  // at index k, an argument one level below may assume the class is
  // inhabited at k - 1 (the hypothesis set), an argument at the same level
  // may use what is being derived at k, and anything else must already be
  // established. The hypothesis set shrinks to a fixed point.
  std::vector<bool> inductive(const std::vector<bool>& strong) {
    std::vector<bool> hyp(nodes_, false);
    for (std::size_t n = 0; n < nodes_; ++n) hyp[n] = is_successor(n);
    for (;;) {
      std::vector<bool> weak = strong;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t n = 0; n < nodes_; ++n) {
          if (weak[n] || !is_successor(n)) continue;
          for (const auto& ap : applicable_[n]) {
            if (inductive_alive(ap, strong, weak, hyp)) {
              weak[n] = true;
              changed = true;
              break;
            }
          }
        }
      }
      std::vector<bool> next(nodes_, false);
      for (std::size_t n = 0; n < nodes_; ++n) next[n] = is_successor(n) && weak[n];
      if (next == hyp) return weak;
      hyp = std::move(next);
    }
  }

  bool inductive_alive(const Applicable& ap, const std::vector<bool>& strong, const std::vector<bool>& weak,
                       const std::vector<bool>& hyp) {
    for (const auto& inst : ap.insts) {
      for (const auto& arg : inst.args) {
        bool ok = false;
        if (!arg.binders.empty()) {
          std::vector<std::size_t> ctx = arg.binders;
          std::sort(ctx.begin(), ctx.end());
          ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
          ok = inhabited(ctx)[arg.target];
        } else if (arg.level == Level::Same) {
          ok = weak[arg.target];
        } else if (arg.level == Level::Below) {
          ok = is_successor(arg.target) ? hyp[arg.target] : strong[arg.target];
        } else {
          ok = strong[arg.target];
        }
        if (!ok) return false;
      }
    }
    return true;
  }

  // Least fixed point over contexts, extended by inductive facts about
  // successor classes until nothing new is established.
  std::vector<bool> inhabited_closed() {
    proven_.assign(nodes_, false);
    for (;;) {
      const std::vector<bool> strong = inhabited({});
      std::vector<bool> all = inductive(strong);
      if (all == proven_) return all;
      proven_ = std::move(all);
      inhabited_memo_.clear();
    }
  }

  std::string node_name(std::size_t n) const {
    const std::size_t t = node_type_[n];
    const TypeSetup& st = setup_[t];
    if (st.kind == IndexKind::None) return sig_.types[t].name;
    return sig_.types[t].name + "[" + st.labels[n - base_[t]] + "]";
  }

  void compute() {
    const std::vector<bool> inh = inhabited_closed();
    alive_.assign(nodes_, {});
    for (std::size_t n = 0; n < nodes_; ++n) {
      for (const auto& ap : applicable_[n]) {
        const bool alive = inh[n] && ctor_alive(ap, {}, inh);
        alive_[n].push_back(alive);
        if (inh[n] && !alive) {
          const Ctor& c = sig_.ctors[ap.ctor];
          diags_.push_back({"empty-argument",
                            "constructor '" + c.name + "' at " + node_name(n) +
                                " has an argument of an uninhabited type",
                            c.pos});
        }
      }
    }

    // Structural infiniteness: binders, explicit abstractions, cycles.
    std::vector<std::vector<std::size_t>> succ(nodes_);
    std::vector<bool> inf(nodes_, false);
    for (std::size_t n = 0; n < nodes_; ++n) {
      if (!inh[n]) continue;
      for (std::size_t a = 0; a < applicable_[n].size(); ++a) {
        if (!alive_[n][a]) continue;
        const Applicable& ap = applicable_[n][a];
        if (!sig_.ctors[ap.ctor].index_params.empty()) inf[n] = true;
        for (const auto& inst : ap.insts) {
          for (const auto& arg : inst.args) {
            if (!arg.binders.empty()) inf[n] = true;
            succ[n].push_back(arg.target);
          }
        }
      }
    }
    mark_cycles(succ, inh, inf);

    card_.assign(nodes_, Cardinality::empty());
    std::vector<int> state(nodes_, 0);  // 0 new, 1 in progress, 2 done
    std::function<void(std::size_t)> visit = [&](std::size_t n) {
      if (state[n] == 2) return;
      state[n] = 1;
      for (std::size_t m : succ[n]) {
        if (state[m] == 0) visit(m);
      }
      state[n] = 2;
      if (!inh[n]) return;
      bool infinite = inf[n];
      for (std::size_t m : succ[n]) {
        if (card_[m].is_infinite()) infinite = true;
      }
      if (infinite) {
        card_[n] = Cardinality::infinite();
        return;
      }
      Nat total;
      for (std::size_t a = 0; a < applicable_[n].size(); ++a) {
        if (!alive_[n][a]) continue;
        const Applicable& ap = applicable_[n][a];
        std::optional<Nat> product;
        for (const auto& inst : ap.insts) {
          Nat p = 1;
          for (const auto& arg : inst.args) p *= card_[arg.target].count;
          if (product && *product != p) {
            diags_.push_back({"nonuniform",
                              "constructor '" + sig_.ctors[ap.ctor].name + "' at " + node_name(n) +
                                  " has an index-dependent number of instances",
                              sig_.ctors[ap.ctor].pos});
          }
          if (!product) product = p;
        }
        total += *product;
      }
      if (total > Nat(kFiniteCutoff)) {
        card_[n] = Cardinality::infinite();
      } else {
        card_[n] = Cardinality::finite(total);
      }
    };
    for (std::size_t n = 0; n < nodes_; ++n) visit(n);
  }

  // Tarjan's SCC: nodes on a cycle of inhabited nodes are infinite.
  void mark_cycles(const std::vector<std::vector<std::size_t>>& succ, const std::vector<bool>& inh,
                   std::vector<bool>& inf) {
    std::vector<int> index(nodes_, -1);
    std::vector<int> low(nodes_, 0);
    std::vector<bool> on_stack(nodes_, false);
    std::vector<std::size_t> stack;
    int counter = 0;
    std::function<void(std::size_t)> strong = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (std::size_t w : succ[v]) {
        if (!inh[w]) continue;
        if (index[w] < 0) {
          strong(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        const bool self_loop = std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
        if (comp.size() > 1 || self_loop) {
          for (std::size_t c : comp) inf[c] = true;
        }
      }
    };
    for (std::size_t n = 0; n < nodes_; ++n) {
      if (inh[n] && index[n] < 0) strong(n);
    }
  }

 public:
  // Node-level checks that need cardinalities.
  void check_binders() {
    for (std::size_t n = 0; n < nodes_; ++n) {
      for (std::size_t a = 0; a < applicable_[n].size(); ++a) {
        const Applicable& ap = applicable_[n][a];
        const Ctor& c = sig_.ctors[ap.ctor];
        std::set<std::size_t> reported;
        for (const auto& inst : ap.insts) {
          for (std::size_t ai = 0; ai < inst.args.size(); ++ai) {
            const ArgNodes& arg = inst.args[ai];
            if (arg.binders.empty()) continue;
            for (std::size_t b : arg.binders) {
              if (!card_[b].is_infinite() && reported.insert(b).second) {
                diags_.push_back({"finite-variable",
                                  "Variables can only be of infinite type: constructor '" + c.name +
                                      "' binds a variable of " + node_name(b) + ", which is " +
                                      card_[b].str(),
                                  c.pos});
              }
            }
            if (card_[arg.target].is_finite() && reported.insert(nodes_ + ai).second) {
              diags_.push_back({"finite-binder-body",
                                "constructor '" + c.name + "' abstracts over a body of finite type " +
                                    node_name(arg.target) + "; binder bodies must be infinite",
                                c.pos});
            }
          }
        }
      }
    }
  }

  void check_uniform() {
    for (std::size_t t = 0; t < sig_.types.size(); ++t) {
      const TypeSetup& st = setup_[t];
      if (st.classes < 2) continue;
      const Cardinality& first = card_[node(t, 0)];
      for (std::size_t k = 1; k < st.classes; ++k) {
        if (!(card_[node(t, k)] == first)) {
          diags_.push_back({"nonuniform",
                            "Indexed types must be uniform: '" + sig_.types[t].name + "' is " +
                                first.str() + " at " + st.labels[0] + " but " + card_[node(t, k)].str() +
                                " at " + st.labels[k],
                            sig_.types[t].pos});
          break;
        }
      }
    }
  }
};

// Types reachable from `t` through constructor arguments.
std::set<std::size_t> reachable_types(const Signature& sig, std::size_t t) {
  std::set<std::size_t> seen{t};
  std::vector<std::size_t> work{t};
  while (!work.empty()) {
    const std::size_t cur = work.back();
    work.pop_back();
    for (std::size_t ci : sig.types[cur].ctors) {
      const Ctor& c = sig.ctors[ci];
      auto add = [&](const std::string& name) {
        if (auto id = sig.find_type(name); id && seen.insert(*id).second) work.push_back(*id);
      };
      for (const auto& ip : c.index_params) add(ip.type);
      for (const auto& a : c.args) {
        for (const auto& b : a.binders) add(b.type);
        add(a.target.type);
      }
    }
  }
  return seen;
}

bool uses_binders(const Signature& sig, const std::set<std::size_t>& types) {
  for (std::size_t t : types) {
    for (std::size_t ci : sig.types[t].ctors) {
      for (const auto& a : sig.ctors[ci].args) {
        if (!a.binders.empty()) return true;
      }
    }
  }
  return false;
}

struct Model {
  std::vector<TypeSetup> setup;
  std::map<std::size_t, Nat> const_codes;
  std::optional<std::size_t> nat;
  std::unique_ptr<Analyzer> analyzer;
  std::vector<Diagnostic> diags;
};

void structural_checks(const Signature& sig, const Model& m, std::vector<Diagnostic>& diags) {
  for (const auto& c : sig.ctors) {
    const std::size_t t = *sig.find_type(c.result.type);
    const TypeSetup& st = m.setup[t];
    std::set<std::string> pattern_vars;
    std::map<std::string, std::set<std::size_t>> pvars;
    collect_ref_vars(c.result, sig, pvars);
    for (const auto& [name, _] : pvars) pattern_vars.insert(name);

    if (!c.result.indices.empty() && st.kind == IndexKind::Nat) {
      const IndexExpr& p = c.result.indices[0];
      const bool ok = p.is_var() || (p.name == "z" && p.args.empty()) ||
                      (p.name == "s" && p.args.size() == 1 && p.args[0].is_var());
      if (!ok) {
        diags.push_back({"pattern-depth",
                         "constructor '" + c.name +
                             "': the result index of a nat-indexed type may use only one level of "
                             "pattern matching (z, N or s N)",
                         p.pos});
      }
    }
    auto check_finite_expr = [&](const TypeRef& ref) {
      auto rt = sig.find_type(ref.type);
      if (!rt || ref.indices.empty() || m.setup[*rt].kind != IndexKind::Finite) return;
      const IndexExpr& e = ref.indices[0];
      if (!e.is_var() && !e.args.empty()) {
        diags.push_back({"pattern-depth",
                         "constructor '" + c.name +
                             "': a finite index must be written as a constant or a variable",
                         e.pos});
      }
    };
    check_finite_expr(c.result);

    std::set<std::string> explicit_vars;
    for (const auto& ip : c.index_params) {
      explicit_vars.insert(ip.var);
      auto it = sig.find_type(ip.type);
      if (!(m.nat && it && *it == *m.nat)) {
        diags.push_back({"explicit-abstraction",
                         "constructor '" + c.name + "': explicit abstraction {" + ip.var + ":" + ip.type +
                             "} must range over the nat index type",
                         ip.pos});
      }
      if (pattern_vars.count(ip.var)) {
        diags.push_back({"explicit-abstraction",
                         "constructor '" + c.name + "': explicitly abstracted variable '" + ip.var +
                             "' must not occur in the result type",
                         ip.pos});
      }
    }

    std::map<std::string, std::set<std::size_t>> vars = pvars;
    for (const auto& ip : c.index_params) {
      if (auto it = sig.find_type(ip.type)) vars[ip.var].insert(*it);
    }
    for (const auto& a : c.args) {
      for (const auto& b : a.binders) {
        collect_ref_vars(b, sig, vars);
        check_finite_expr(b);
      }
      collect_ref_vars(a.target, sig, vars);
      check_finite_expr(a.target);
    }
    for (const auto& [name, types] : vars) {
      if (!pattern_vars.count(name) && !explicit_vars.count(name)) {
        diags.push_back({"unbound-index-variable",
                         "constructor '" + c.name + "': index variable '" + name +
                             "' must be bound by the result type or an explicit abstraction",
                         c.pos});
      }
      if (types.size() > 1) {
        diags.push_back({"index-variable-type",
                         "constructor '" + c.name + "': index variable '" + name +
                             "' is used at different index types",
                         c.pos});
      }
    }
  }
}

Model build_model(const Signature& sig) {
  Model m;
  if (sig.has_standard_nat()) m.nat = sig.find_type("nat");

  m.setup.resize(sig.types.size());
  for (std::size_t t = 0; t < sig.types.size(); ++t) {
    const TypeDecl& d = sig.types[t];
    if (d.index_types.size() > 1) {
      m.diags.push_back({"single-index",
                         "Indexed types must have only a single index: '" + d.name + "' has " +
                             std::to_string(d.index_types.size()),
                         d.pos});
      continue;
    }
    if (d.index_types.size() == 1) {
      const std::size_t it = *sig.find_type(d.index_types[0]);
      if (m.nat && it == *m.nat) {
        m.setup[t] = {IndexKind::Nat, it, 2, {"z", "s"}};
      }
    }
  }

  // First pass: every non-nat index is collapsed to a single class, which is
  // exact for the (unindexed) index types themselves.
  Analyzer first(sig, m.setup, {}, m.nat);
  for (std::size_t t = 0; t < sig.types.size(); ++t) {
    const TypeDecl& d = sig.types[t];
    if (d.index_types.size() != 1) continue;
    const std::size_t it = *sig.find_type(d.index_types[0]);
    if (m.nat && it == *m.nat) continue;
    const TypeDecl& idx = sig.types[it];
    const auto reach = reachable_types(sig, it);
    bool indexed = false;
    for (std::size_t r : reach) indexed = indexed || !sig.types[r].index_types.empty();
    if (indexed || uses_binders(sig, reach)) {
      m.diags.push_back({"index-type",
                         "The index type must not itself be indexed or be defined with HOAS: '" +
                             idx.name + "' (index of '" + d.name + "')",
                         d.pos});
      continue;
    }
    const Cardinality& card = first.card(first.node(it, 0));
    if (!card.is_finite()) {
      m.diags.push_back({"index-type",
                         "index type '" + idx.name + "' of '" + d.name + "' is " + card.str() +
                             "; an index type must be nat or finite",
                         d.pos});
      continue;
    }
    TypeSetup st;
    st.kind = IndexKind::Finite;
    st.index_type = it;
    st.classes = static_cast<std::size_t>(card.count.to_u64());
    st.labels.clear();
    const ClassCtors cc = first.class_ctors(first.node(it, 0));
    Nat offset;
    std::vector<std::string> names(st.classes);
    for (const auto& fc : cc.finite) {
      if (fc.radices.empty()) {
        m.const_codes[fc.ctor] = offset;
        names[offset.to_u64()] = sig.ctors[fc.ctor].name;
      }
      offset += fc.instances;
    }
    for (std::size_t k = 0; k < st.classes; ++k) {
      st.labels.push_back(names[k].empty() ? std::to_string(k) : names[k]);
    }
    m.setup[t] = std::move(st);
  }

  structural_checks(sig, m, m.diags);
  m.analyzer = std::make_unique<Analyzer>(sig, m.setup, m.const_codes, m.nat);
  m.analyzer->check_binders();
  m.analyzer->check_uniform();
  for (const auto& d : m.analyzer->diagnostics()) m.diags.push_back(d);
  return m;
}

}  // namespace

CardinalityTable compute_cardinality(const Signature& sig) {
  Model m = build_model(sig);
  CardinalityTable table;
  for (std::size_t t = 0; t < sig.types.size(); ++t) {
    TypeCardinality tc;
    tc.type = sig.types[t].name;
    tc.index_kind = m.setup[t].kind;
    tc.class_labels = m.setup[t].labels;
    for (std::size_t k = 0; k < m.setup[t].classes; ++k) {
      tc.classes.push_back(m.analyzer->card(m.analyzer->node(t, k)));
    }
    table.types.push_back(std::move(tc));
  }
  return table;
}

std::vector<Diagnostic> diagnose(const Signature& sig) { return build_model(sig).diags; }

SignaturePtr validate(Signature sig) {
  Model m = build_model(sig);
  if (!m.diags.empty()) throw ValidationError(std::move(m.diags));

  std::shared_ptr<ValidatedSignature> v(new ValidatedSignature());
  v->nat_type_ = m.nat;
  v->ctor_type_.resize(sig.ctors.size());
  for (std::size_t t = 0; t < sig.types.size(); ++t) {
    for (std::size_t c : sig.types[t].ctors) v->ctor_type_[c] = t;
    ValidatedSignature::TypeInfo info;
    info.index_kind = m.setup[t].kind;
    info.index_type = m.setup[t].index_type;
    info.class_count = m.setup[t].classes;
    info.class_labels = m.setup[t].labels;
    for (std::size_t k = 0; k < info.class_count; ++k) {
      const std::size_t n = m.analyzer->node(t, k);
      info.classes.push_back(m.analyzer->card(n));
      info.ctors.push_back(m.analyzer->class_ctors(n));
    }
    info.uniform = info.classes.front();
    v->info_.push_back(std::move(info));
  }
  v->sig_ = std::move(sig);
  for (std::size_t t = 0; t < v->sig_.types.size(); ++t) v->type_ids_.emplace(v->sig_.types[t].name, t);
  for (std::size_t c = 0; c < v->sig_.ctors.size(); ++c) v->ctor_ids_.emplace(v->sig_.ctors[c].name, c);
  for (Ctor& c : v->sig_.ctors) {
    c.result.id = v->type_ids_.at(c.result.type);
    for (Arg& a : c.args) {
      a.target.id = v->type_ids_.at(a.target.type);
      for (TypeRef& bt : a.binders) bt.id = v->type_ids_.at(bt.type);
    }
  }
  return v;
}

SignaturePtr load_signature(std::string_view text) { return validate(parse_signature(text)); }

}  // namespace godelgen
