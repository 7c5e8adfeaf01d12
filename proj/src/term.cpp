#include "godelgen/term.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "lexer.hpp"

namespace godelgen {

Term Term::var(std::string type, Nat index, Nat level) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(type);
  t.index = std::move(index);
  t.level = std::move(level);
  return t;
}

Term Term::con(std::string ctor, std::vector<TermArg> args, std::vector<Nat> index_args) {
  Term t;
  t.kind = Kind::Con;
  t.name = std::move(ctor);
  t.args = std::move(args);
  t.index_args = std::move(index_args);
  return t;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (a.kind == Term::Kind::Var) return a.index == b.index && a.level == b.level;
  return a.index_args == b.index_args && a.args == b.args;
}

Nat CountVector::get(std::string_view type, const Nat& index) const {
  if (counts_.empty()) return Nat(0);
  auto it = counts_.find(Key(std::string(type), index));
  return it == counts_.end() ? Nat(0) : it->second;
}

CountVector CountVector::extended(const std::string& type, const Nat& index) const {
  CountVector v = *this;
  v.increment(type, index);
  return v;
}

void CountVector::increment(const std::string& type, const Nat& index) {
  counts_[Key(type, index)] += 1;
}

void TermEnv::bind(const std::string& name, const std::string& type, const Nat& index) {
  names[name] = FreeVar{type, index, counts.get(type, index)};
  counts.increment(type, index);
}

namespace {

constexpr std::uint64_t kMaxNumeral = 1u << 20;
constexpr int kMaxAbbrevDepth = 64;

bool is_numeral(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

// Surface syntax tree before name resolution.
struct Raw {
  enum class Kind { Name, Binder };
  Kind kind = Kind::Name;
  std::string name;  // head identifier, or the bound name
  SourcePos pos;
  std::vector<Raw> args;  // Name: arguments; Binder: the body
  std::string annotation;  // Binder: type named in `[x:t]`, if any
  SourcePos annotation_pos;
};

class TermParser {
 public:
  TermParser(std::string_view text, SourcePos origin) : lex_(text, LexMode::Term, origin) {}

  Raw parse_all() {
    Raw r = term();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) throw TermError(t.pos, "unexpected " + describe(t));
    return r;
  }

 private:
  Raw term() {
    if (lex_.peek().kind == Tok::LBracket) return binder();
    const bool applicable = lex_.peek().kind == Tok::Ident;
    Raw head = atom();
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind != Tok::LBracket && t.kind != Tok::Ident && t.kind != Tok::LParen) return head;
      if (!applicable) throw TermError(t.pos, "only a constructor name can be applied");
      if (t.kind == Tok::LBracket) {
        head.args.push_back(binder());
        return head;
      }
      head.args.push_back(atom());
    }
  }

  Raw binder() {
    Token open = lex_.next();
    Token name = lex_.next();
    if (name.kind != Tok::Ident) throw TermError(name.pos, "expected a binder name, found " + describe(name));
    Raw r;
    r.kind = Raw::Kind::Binder;
    r.name = name.text;
    r.pos = open.pos;
    if (lex_.peek().kind == Tok::Colon) {
      lex_.next();
      Token ty = lex_.next();
      if (ty.kind != Tok::Ident) throw TermError(ty.pos, "expected a type after ':'");
      r.annotation = ty.text;
      r.annotation_pos = ty.pos;
      // Index arguments of the annotation are accepted and not checked.
      int depth = 0;
      while (depth > 0 || lex_.peek().kind != Tok::RBracket) {
        Token t = lex_.next();
        if (t.kind == Tok::End) throw TermError(t.pos, "unterminated binder");
        if (t.kind == Tok::LParen) ++depth;
        if (t.kind == Tok::RParen) --depth;
      }
    }
    Token close = lex_.next();
    if (close.kind != Tok::RBracket) throw TermError(close.pos, "expected ']', found " + describe(close));
    r.args.push_back(term());
    return r;
  }

  Raw atom() {
    Token t = lex_.next();
    if (t.kind == Tok::Ident) {
      Raw r;
      r.name = t.text;
      r.pos = t.pos;
      return r;
    }
    if (t.kind == Tok::LParen) {
      Raw r = term();
      Token close = lex_.next();
      if (close.kind != Tok::RParen) throw TermError(close.pos, "expected ')', found " + describe(close));
      return r;
    }
    throw TermError(t.pos, "expected a term, found " + describe(t));
  }

  Lexer lex_;
};

Raw parse_raw(std::string_view text, SourcePos origin = {1, 1}) {
  return TermParser(text, origin).parse_all();
}

class Elaborator {
 public:
  Elaborator(const ValidatedSignature& sig, const TermEnv& env) : sig_(sig), counts_(env.counts) {
    for (const auto& [name, fv] : env.names) scope_[name].push_back(fv);
  }

  Term elab(const Raw& r, std::size_t type, const Nat& index) {
    const std::string& tname = sig_.type(type).name;
    if (r.kind == Raw::Kind::Binder) {
      throw TermError(r.pos, "unexpected binder where a term of type " + where(type, index) + " is expected");
    }
    if (auto it = scope_.find(r.name); it != scope_.end() && !it->second.empty()) {
      const FreeVar& v = it->second.back();
      if (!r.args.empty()) throw TermError(r.pos, "variable '" + r.name + "' cannot be applied");
      if (v.type != tname || v.index != index) {
        throw TermError(r.pos, "variable '" + r.name + "' has type " + where(sig_.type_id(v.type), v.index) +
                                   ", expected " + where(type, index));
      }
      return Term::var(v.type, v.index, v.level);
    }
    if (is_numeral(r.name)) return numeral(r, type, index);
    if (auto cid = sig_.signature().find_ctor(r.name)) return constructor(r, *cid, type, index);
    if (auto aid = sig_.signature().find_abbrev(r.name)) return abbrev(r, *aid, type, index);
    throw TermError(r.pos, "unbound name '" + r.name + "'");
  }

 private:
  std::string where(std::size_t type, const Nat& index) const {
    std::string s = "'" + sig_.type(type).name;
    if (sig_.info(type).index_kind != IndexKind::None) s += " " + sig_.index_label(type, index);
    return s + "'";
  }

  Term numeral(const Raw& r, std::size_t type, const Nat& index) {
    if (!sig_.is_nat_index_type(type)) {
      throw TermError(r.pos, "numeral where a term of type " + where(type, index) + " is expected");
    }
    if (!r.args.empty()) throw TermError(r.pos, "a numeral cannot be applied");
    const Nat n = Nat::parse(r.name);
    if (!n.fits_u64() || n.to_u64() > kMaxNumeral) throw TermError(r.pos, "numeral " + r.name + " is too large");
    Term t = Term::con("z");
    for (std::uint64_t i = n.to_u64(); i > 0; --i) {
      std::vector<TermArg> a;
      a.push_back(TermArg{0, std::move(t)});
      t = Term::con("s", std::move(a));
    }
    return t;
  }

  Nat index_value(const Raw& r, std::size_t index_type) {
    if (r.kind == Raw::Kind::Binder) throw TermError(r.pos, "expected an index value");
    if (sig_.is_nat_index_type(index_type)) {
      if (is_numeral(r.name) && r.args.empty()) return Nat::parse(r.name);
      if (r.name == "z" && r.args.empty()) return Nat(0);
      if (r.name == "s" && r.args.size() == 1) return index_value(r.args[0], index_type) + Nat(1);
      throw TermError(r.pos, "expected a nat index value");
    }
    auto cid = sig_.signature().find_ctor(r.name);
    if (!cid || !r.args.empty() || sig_.ctor_type(*cid) != index_type) {
      throw TermError(r.pos, "expected a constant of type '" + sig_.type(index_type).name + "'");
    }
    return sig_.constant_code(*cid);
  }

  Term constructor(const Raw& r, std::size_t cid, std::size_t type, const Nat& index) {
    const Ctor& c = sig_.ctor(cid);
    if (sig_.ctor_type(cid) != type) {
      throw TermError(r.pos, "constructor '" + c.name + "' builds '" + c.result.type + "', expected " +
                                 where(type, index));
    }
    auto bindings = sig_.match_result(cid, index);
    if (!bindings) {
      throw TermError(r.pos, "constructor '" + c.name + "' does not build " + where(type, index));
    }
    if (r.args.size() != c.order.size()) {
      throw TermError(r.pos, "constructor '" + c.name + "' expects " + std::to_string(c.order.size()) +
                                 " argument(s), got " + std::to_string(r.args.size()));
    }
    // Explicit index values first: argument types may mention them.
    std::vector<Nat> index_args(c.index_params.size());
    for (std::size_t k = 0; k < c.order.size(); ++k) {
      const ParamRef& p = c.order[k];
      if (!p.is_index) continue;
      const IndexParam& ip = c.index_params[p.slot];
      index_args[p.slot] = index_value(r.args[k], sig_.type_id(ip.type));
      (*bindings)[ip.var] = index_args[p.slot];
    }
    std::vector<TermArg> args(c.args.size());
    for (std::size_t k = 0; k < c.order.size(); ++k) {
      const ParamRef& p = c.order[k];
      if (p.is_index) continue;
      args[p.slot] = argument(r.args[k], c.args[p.slot], *bindings);
    }
    return Term::con(c.name, std::move(args), std::move(index_args));
  }

  TermArg argument(const Raw& r, const Arg& a, const IndexBindings& b) {
    const Raw* cur = &r;
    std::vector<std::pair<std::string, std::string>> pushed;
    const CountVector saved = counts_;
    for (const TypeRef& bt : a.binders) {
      if (cur->kind != Raw::Kind::Binder) {
        throw TermError(cur->pos, "expected a binder of type '" + bt.type + "'");
      }
      if (!cur->annotation.empty() && cur->annotation != bt.type) {
        throw TermError(cur->annotation_pos, "binder annotated '" + cur->annotation + "', expected '" + bt.type + "'");
      }
      const Nat idx = sig_.eval_type_index(bt, b);
      scope_[cur->name].push_back(FreeVar{bt.type, idx, counts_.get(bt.type, idx)});
      counts_.increment(bt.type, idx);
      pushed.emplace_back(cur->name, bt.type);
      cur = &cur->args[0];
    }
    const std::size_t t = a.target.id;
    TermArg out{a.binders.size(), elab(*cur, t, sig_.eval_type_index(a.target, b))};
    for (auto it = pushed.rbegin(); it != pushed.rend(); ++it) {
      auto& stack = scope_[it->first];
      stack.pop_back();
      if (stack.empty()) scope_.erase(it->first);
    }
    counts_ = saved;
    return out;
  }

  Term abbrev(const Raw& r, std::size_t aid, std::size_t type, const Nat& index) {
    const Abbrev& ab = sig_.signature().abbrevs[aid];
    if (!r.args.empty()) throw TermError(r.pos, "abbreviation '" + ab.name + "' cannot be applied");
    if (ab.type.type != sig_.type(type).name || sig_.eval_type_index(ab.type, {}) != index) {
      throw TermError(r.pos, "abbreviation '" + ab.name + "' does not have type " + where(type, index));
    }
    if (abbrev_depth_ >= kMaxAbbrevDepth) throw TermError(r.pos, "abbreviation '" + ab.name + "' is recursive");
    // Abbreviation bodies are closed: outer names are hidden, but levels
    // continue from the current counts.
    auto saved_scope = std::move(scope_);
    scope_.clear();
    ++abbrev_depth_;
    Term t = elab(parse_raw(ab.body, ab.body_pos), type, index);
    --abbrev_depth_;
    scope_ = std::move(saved_scope);
    return t;
  }

  const ValidatedSignature& sig_;
  std::map<std::string, std::vector<FreeVar>> scope_;
  CountVector counts_;
  int abbrev_depth_ = 0;
};

using ClassKey = std::pair<std::string, Nat>;

class Printer {
 public:
  Printer(const ValidatedSignature& sig, const TermEnv& env, const PrintOptions& options)
      : sig_(sig), options_(options), counts_(env.counts) {
    for (const auto& [name, fv] : env.names) names_[{fv.type, fv.index, fv.level}] = name;
  }

  void collect_classes(const Term& t, const Nat& index) {
    if (t.is_var()) {
      classes_.insert({t.name, t.index});
      return;
    }
    const std::size_t cid = sig_.ctor_id(t.name);
    const Ctor& c = sig_.ctor(cid);
    IndexBindings b = bindings(cid, index, t);
    for (std::size_t k = 0; k < c.args.size() && k < t.args.size(); ++k) {
      const Arg& a = c.args[k];
      for (const TypeRef& bt : a.binders) classes_.insert({bt.type, sig_.eval_type_index(bt, b)});
      collect_classes(t.args[k].body, sig_.eval_type_index(a.target, b));
    }
  }

  std::string show(const Term& t, const Nat& index, bool as_arg) {
    if (t.is_var()) return var_name(t);
    if (options_.numerals) {
      if (auto n = numeral(t)) return *n;
    }
    const std::size_t cid = sig_.ctor_id(t.name);
    const Ctor& c = sig_.ctor(cid);
    if (c.order.empty()) return c.name;
    IndexBindings b = bindings(cid, index, t);
    std::string s = c.name;
    for (std::size_t k = 0; k < c.order.size(); ++k) {
      const ParamRef& p = c.order[k];
      s += ' ';
      if (p.is_index) {
        s += t.index_args.at(p.slot).str();
        continue;
      }
      const bool last = k + 1 == c.order.size();
      s += argument(t.args.at(p.slot), c.args[p.slot], b, last);
    }
    return as_arg ? "(" + s + ")" : s;
  }

 private:
  IndexBindings bindings(std::size_t cid, const Nat& index, const Term& t) const {
    const Ctor& c = sig_.ctor(cid);
    auto b = sig_.match_result(cid, index);
    if (!b) throw TermError("constructor '" + c.name + "' does not build index " + index.str());
    for (std::size_t k = 0; k < c.index_params.size() && k < t.index_args.size(); ++k) {
      (*b)[c.index_params[k].var] = t.index_args[k];
    }
    return *b;
  }

  std::optional<std::string> numeral(const Term& t) const {
    auto nat = sig_.nat_type();
    if (!nat) return std::nullopt;
    Nat n;
    const Term* cur = &t;
    while (!cur->is_var() && cur->name == "s" && cur->args.size() == 1) {
      n += 1;
      cur = &cur->args[0].body;
    }
    if (cur->is_var() || cur->name != "z") return std::nullopt;
    return n.str();
  }

  std::string argument(const TermArg& a, const Arg& shape, const IndexBindings& b, bool last) {
    if (shape.binders.empty()) return show(a.body, sig_.eval_type_index(shape.target, b), true);
    const CountVector saved = counts_;
    std::vector<std::tuple<std::string, Nat, Nat>> bound;
    std::string s;
    for (const TypeRef& bt : shape.binders) {
      const Nat idx = sig_.eval_type_index(bt, b);
      const Nat level = counts_.get(bt.type, idx);
      std::string name = binder_name(bt.type, idx, level);
      names_[{bt.type, idx, level}] = name;
      bound.emplace_back(bt.type, idx, level);
      counts_.increment(bt.type, idx);
      ++depth_;
      s += "[" + name + "] ";
    }
    s += show(a.body, sig_.eval_type_index(shape.target, b), false);
    for (const auto& key : bound) names_.erase(key);
    depth_ -= shape.binders.size();
    counts_ = saved;
    return last ? s : "(" + s + ")";
  }

  std::string binder_name(const std::string& type, const Nat& index, const Nat& level) const {
    if (options_.binder_name) return options_.binder_name(BinderName{type, index, level, depth_});
    std::string s = "x" + level.str();
    if (classes_.size() > 1) {
      s += "_" + type;
      if (sig_.info(sig_.type_id(type)).index_kind != IndexKind::None) s += index.str();
    }
    return s;
  }

  std::string var_name(const Term& t) const {
    auto it = names_.find({t.name, t.index, t.level});
    if (it != names_.end()) return it->second;
    return binder_name(t.name, t.index, t.level);
  }

  const ValidatedSignature& sig_;
  const PrintOptions& options_;
  CountVector counts_;
  std::map<std::tuple<std::string, Nat, Nat>, std::string> names_;
  std::set<ClassKey> classes_;
  std::size_t depth_ = 0;
};

void check_rec(const ValidatedSignature& sig, std::size_t type, const Nat& index, const CountVector& counts,
               const Term& t, const std::string& path) {
  const std::string& tname = sig.type(type).name;
  auto fail = [&](const std::string& msg) {
    throw TermError((path.empty() ? std::string("at root") : "at " + path) + ": " + msg);
  };
  if (!sig.index_in_range(type, index)) fail("index " + index.str() + " out of range for '" + tname + "'");
  if (t.is_var()) {
    if (t.name != tname || t.index != index) {
      fail("variable of class (" + t.name + ", " + t.index.str() + ") where (" + tname + ", " + index.str() +
           ") is expected");
    }
    const Nat have = counts.get(tname, index);
    if (!(t.level < have)) fail("variable level " + t.level.str() + " is not below count " + have.str());
    return;
  }
  auto cid = sig.signature().find_ctor(t.name);
  if (!cid) fail("unknown constructor '" + t.name + "'");
  const Ctor& c = sig.ctor(*cid);
  if (sig.ctor_type(*cid) != type) fail("constructor '" + c.name + "' does not build '" + tname + "'");
  auto b = sig.match_result(*cid, index);
  if (!b) fail("constructor '" + c.name + "' does not build index " + index.str());
  if (t.index_args.size() != c.index_params.size()) fail("wrong number of index arguments to '" + c.name + "'");
  if (t.args.size() != c.args.size()) fail("wrong number of arguments to '" + c.name + "'");
  for (std::size_t k = 0; k < c.index_params.size(); ++k) {
    const Cardinality& range = sig.cardinality(sig.type_id(c.index_params[k].type));
    if (range.is_finite() && !(t.index_args[k] < range.count)) fail("index argument out of range");
    (*b)[c.index_params[k].var] = t.index_args[k];
  }
  for (std::size_t k = 0; k < c.args.size(); ++k) {
    const Arg& a = c.args[k];
    if (t.args[k].binders != a.binders.size()) {
      fail("argument " + std::to_string(k + 1) + " of '" + c.name + "' needs " + std::to_string(a.binders.size()) +
           " binder(s)");
    }
    CountVector inner = counts;
    for (const TypeRef& bt : a.binders) inner.increment(bt.type, sig.eval_type_index(bt, *b));
    check_rec(sig, a.target.id, sig.eval_type_index(a.target, *b), inner, t.args[k].body,
              path + "/" + c.name + "." + std::to_string(k + 1));
  }
}

}  // namespace

Term parse_term(const ValidatedSignature& sig, std::string_view type, const Nat& index, std::string_view text,
                const TermEnv& env) {
  const std::size_t t = sig.type_id(type);
  if (!sig.index_in_range(t, index)) {
    throw TermError("index " + index.str() + " is out of range for type '" + std::string(type) + "'");
  }
  const Raw raw = parse_raw(text);
  Elaborator e(sig, env);
  return e.elab(raw, t, index);
}

std::string print_term(const ValidatedSignature& sig, std::string_view type, const Nat& index, const Term& term,
                       const TermEnv& env, const PrintOptions& options) {
  Printer p(sig, env, options);
  (void)sig.type_id(type);
  p.collect_classes(term, index);
  return p.show(term, index, false);
}

void check_term(const ValidatedSignature& sig, std::string_view type, const Nat& index, const CountVector& counts,
                const Term& term) {
  check_rec(sig, sig.type_id(type), index, counts, term, "");
}

bool well_typed(const ValidatedSignature& sig, std::string_view type, const Nat& index, const CountVector& counts,
                const Term& term) {
  try {
    check_term(sig, type, index, counts, term);
    return true;
  } catch (const TermError&) {
    return false;
  }
}

Nat term_size(const Term& term) {
  if (term.is_var()) return Nat(1);
  Nat n(1);
  for (const Nat& v : term.index_args) n += v + Nat(1);
  for (const TermArg& a : term.args) n += term_size(a.body);
  return n;
}

}  // namespace godelgen
