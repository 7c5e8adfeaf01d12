// Recursive-descent parser for the signature DSL.
//
//   decl   := ident ':' texpr '.'
//           | '%abbrev' ident ':' texpr '=' term '.'
//           | '%abbrev' ident '=' texpr '.'
//           | '%name' ... '.'
//   texpr  := '{' ident ':' texpr '}' texpr | app [ '->' texpr ]
//   app    := atom { atom }
//   atom   := ident | '(' texpr ')'
//
// Comments: `%%` or `% ` to end of line, and `%{ ... }%` blocks.

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "godelgen/signature.hpp"
#include "lexer.hpp"

namespace godelgen {

namespace {

struct TExpr {
  enum class Kind { Atom, App, Arrow, Pi };
  Kind kind = Kind::Atom;
  std::string name;                  // Atom ident, Pi variable
  std::vector<std::unique_ptr<TExpr>> parts;  // App: head + args; Arrow: lhs, rhs; Pi: type, body
  SourcePos pos;
};

using TExprPtr = std::unique_ptr<TExpr>;

class SigParser {
 public:
  explicit SigParser(std::string_view text) : text_(text), lex_(text, LexMode::Signature) {}

  Signature run() {
    while (lex_.peek().kind != Tok::End) parse_decl();
    resolve();
    return std::move(sig_);
  }

 private:
  std::string_view text_;
  Lexer lex_;
  Signature sig_;
  std::map<std::string, TypeRef> type_abbrevs_;
  std::set<std::string> names_;

  [[noreturn]] void fail(SourcePos pos, const std::string& msg) { throw ParseError(pos, msg); }

  Token expect(Tok kind, const char* what) {
    Token t = lex_.next();
    if (t.kind != kind) fail(t.pos, std::string("expected ") + what + ", found " + describe(t));
    return t;
  }

  void claim_name(const std::string& name, SourcePos pos) {
    if (!names_.insert(name).second) fail(pos, "duplicate declaration of '" + name + "'");
  }

  void parse_decl() {
    Token t = lex_.next();
    if (t.kind == Tok::Directive) {
      if (t.text == "%abbrev") return parse_abbrev(t.pos);
      if (t.text == "%name") {
        while (lex_.peek().kind != Tok::Dot && lex_.peek().kind != Tok::End) lex_.next();
        expect(Tok::Dot, "'.'");
        return;
      }
      fail(t.pos, "unsupported directive " + t.text);
    }
    if (t.kind != Tok::Ident) fail(t.pos, "expected a declaration, found " + describe(t));
    expect(Tok::Colon, "':'");
    TExprPtr body = parse_texpr();
    expect(Tok::Dot, "'.' ending the declaration");
    claim_name(t.text, t.pos);
    declare(t.text, t.pos, *body);
  }

  void parse_abbrev(SourcePos pos) {
    Token name = expect(Tok::Ident, "abbreviation name");
    claim_name(name.text, name.pos);
    if (lex_.peek().kind == Tok::Equals) {
      lex_.next();
      TExprPtr body = parse_texpr();
      expect(Tok::Dot, "'.'");
      type_abbrevs_[name.text] = to_typeref(*body);
      return;
    }
    expect(Tok::Colon, "':' or '='");
    TExprPtr type = parse_texpr();
    Token eq = expect(Tok::Equals, "'='");
    (void)eq;
    // Raw text of the term body up to the closing '.' at bracket depth 0.
    const Token& first = lex_.peek();
    const std::size_t begin = first.offset;
    const SourcePos body_pos = first.pos;
    int depth = 0;
    std::size_t end = begin;
    for (;;) {
      Token tok = lex_.next();
      if (tok.kind == Tok::End) fail(tok.pos, "unterminated %abbrev");
      if (tok.kind == Tok::LParen || tok.kind == Tok::LBracket) ++depth;
      if (tok.kind == Tok::RParen || tok.kind == Tok::RBracket) --depth;
      if (tok.kind == Tok::Dot && depth <= 0) {
        end = tok.offset;
        break;
      }
    }
    Abbrev ab;
    ab.name = name.text;
    ab.type = to_typeref(*type);
    ab.body = std::string(text_.substr(begin, end - begin));
    ab.body_pos = body_pos;
    ab.pos = pos;
    sig_.abbrevs.push_back(std::move(ab));
  }

  TExprPtr parse_texpr() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LBrace) {
      auto node = std::make_unique<TExpr>();
      node->kind = TExpr::Kind::Pi;
      node->pos = lex_.next().pos;
      node->name = expect(Tok::Ident, "variable name").text;
      expect(Tok::Colon, "':' (explicit abstractions must be typed)");
      node->parts.push_back(parse_texpr());
      expect(Tok::RBrace, "'}'");
      node->parts.push_back(parse_texpr());
      return node;
    }
    TExprPtr lhs = parse_app();
    if (lex_.peek().kind == Tok::Arrow) {
      auto node = std::make_unique<TExpr>();
      node->kind = TExpr::Kind::Arrow;
      node->pos = lhs->pos;
      lex_.next();
      node->parts.push_back(std::move(lhs));
      node->parts.push_back(parse_texpr());
      return node;
    }
    if (lex_.peek().kind == Tok::BackArrow) fail(lex_.peek().pos, "'<-' is not supported");
    return lhs;
  }

  TExprPtr parse_app() {
    TExprPtr head = parse_atom();
    std::vector<TExprPtr> args;
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k != Tok::Ident && k != Tok::LParen) break;
      args.push_back(parse_atom());
    }
    if (args.empty()) return head;
    auto node = std::make_unique<TExpr>();
    node->kind = TExpr::Kind::App;
    node->pos = head->pos;
    node->parts.push_back(std::move(head));
    for (auto& a : args) node->parts.push_back(std::move(a));
    return node;
  }

  TExprPtr parse_atom() {
    Token t = lex_.next();
    if (t.kind == Tok::Ident) {
      auto node = std::make_unique<TExpr>();
      node->name = t.text;
      node->pos = t.pos;
      return node;
    }
    if (t.kind == Tok::LParen) {
      TExprPtr inner = parse_texpr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail(t.pos, "expected a type expression, found " + describe(t));
  }

  IndexExpr to_index(const TExpr& e) {
    IndexExpr out;
    out.pos = e.pos;
    switch (e.kind) {
      case TExpr::Kind::Atom:
        out.name = e.name;
        return out;
      case TExpr::Kind::App:
        if (e.parts[0]->kind != TExpr::Kind::Atom) fail(e.pos, "malformed index expression");
        out.name = e.parts[0]->name;
        for (std::size_t i = 1; i < e.parts.size(); ++i) out.args.push_back(to_index(*e.parts[i]));
        return out;
      default:
        fail(e.pos, "an index expression cannot be a function type");
    }
  }

  TypeRef to_typeref(const TExpr& e) {
    TypeRef ref;
    ref.pos = e.pos;
    if (e.kind == TExpr::Kind::Atom) {
      if (auto it = type_abbrevs_.find(e.name); it != type_abbrevs_.end()) {
        TypeRef expanded = it->second;
        expanded.pos = e.pos;
        return expanded;
      }
      ref.type = e.name;
      return ref;
    }
    if (e.kind == TExpr::Kind::App && e.parts[0]->kind == TExpr::Kind::Atom) {
      ref.type = e.parts[0]->name;
      for (std::size_t i = 1; i < e.parts.size(); ++i) ref.indices.push_back(to_index(*e.parts[i]));
      return ref;
    }
    fail(e.pos, "expected an atomic type");
  }

  void declare(const std::string& name, SourcePos pos, const TExpr& body) {
    // Flatten the Pi/arrow spine.
    std::vector<const TExpr*> params;
    std::vector<bool> is_pi;
    const TExpr* cur = &body;
    for (;;) {
      if (cur->kind == TExpr::Kind::Pi) {
        params.push_back(cur);
        is_pi.push_back(true);
        cur = cur->parts[1].get();
      } else if (cur->kind == TExpr::Kind::Arrow) {
        params.push_back(cur->parts[0].get());
        is_pi.push_back(false);
        cur = cur->parts[1].get();
      } else {
        break;
      }
    }

    if (cur->kind == TExpr::Kind::Atom && cur->name == "type") {
      TypeDecl decl;
      decl.name = name;
      decl.pos = pos;
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (is_pi[i]) fail(params[i]->pos, "dependent kinds are not supported");
        if (params[i]->kind != TExpr::Kind::Atom) {
          fail(params[i]->pos, "an index type must be a plain type name");
        }
        decl.index_types.push_back(params[i]->name);
      }
      sig_.types.push_back(std::move(decl));
      return;
    }

    Ctor ctor;
    ctor.name = name;
    ctor.pos = pos;
    ctor.result = to_typeref(*cur);
    if (ctor.result.type == "type") fail(cur->pos, "malformed kind");
    for (std::size_t i = 0; i < params.size(); ++i) {
      const TExpr& p = *params[i];
      if (is_pi[i]) {
        const TExpr& ty = *p.parts[0];
        if (ty.kind != TExpr::Kind::Atom) {
          fail(ty.pos, "explicit abstraction must range over a plain type name");
        }
        ctor.order.push_back({true, ctor.index_params.size()});
        ctor.index_params.push_back({p.name, ty.name, p.pos});
        continue;
      }
      Arg arg;
      const TExpr* a = &p;
      while (a->kind == TExpr::Kind::Arrow) {
        const TExpr& b = *a->parts[0];
        if (b.kind == TExpr::Kind::Arrow || b.kind == TExpr::Kind::Pi) {
          fail(b.pos, "binders of function type are not supported");
        }
        arg.binders.push_back(to_typeref(b));
        a = a->parts[1].get();
      }
      if (a->kind == TExpr::Kind::Pi) fail(a->pos, "explicit abstraction inside an argument is not supported");
      arg.target = to_typeref(*a);
      ctor.order.push_back({false, ctor.args.size()});
      ctor.args.push_back(std::move(arg));
    }
    sig_.ctors.push_back(std::move(ctor));
  }

  // --- resolution -------------------------------------------------------

  bool mentions_nat() const {
    auto ref_is_nat = [](const TypeRef& r) { return r.type == "nat"; };
    for (const auto& t : sig_.types) {
      for (const auto& i : t.index_types) {
        if (i == "nat") return true;
      }
    }
    for (const auto& c : sig_.ctors) {
      if (ref_is_nat(c.result)) return true;
      for (const auto& p : c.index_params) {
        if (p.type == "nat") return true;
      }
      for (const auto& a : c.args) {
        if (ref_is_nat(a.target)) return true;
        for (const auto& b : a.binders) {
          if (ref_is_nat(b)) return true;
        }
      }
    }
    for (const auto& a : sig_.abbrevs) {
      if (ref_is_nat(a.type)) return true;
    }
    return false;
  }

  void add_nat_prelude() {
    if (names_.count("z") || names_.count("s")) {
      fail({1, 1}, "'nat' is used but not declared, and 'z'/'s' are taken by other declarations");
    }
    TypeDecl nat;
    nat.name = "nat";
    nat.builtin = true;
    Ctor z;
    z.name = "z";
    z.result.type = "nat";
    z.builtin = true;
    Ctor s;
    s.name = "s";
    s.result.type = "nat";
    s.args.push_back(Arg{{}, TypeRef{"nat", {}, {}}});
    s.order.push_back({false, 0});
    s.builtin = true;
    sig_.types.insert(sig_.types.begin(), std::move(nat));
    sig_.ctors.insert(sig_.ctors.begin(), std::move(s));
    sig_.ctors.insert(sig_.ctors.begin(), std::move(z));
  }

  const TypeDecl& type_of(const std::string& name, SourcePos pos) {
    auto id = sig_.find_type(name);
    if (!id) fail(pos, "unknown type '" + name + "'");
    return sig_.types[*id];
  }

  void resolve_typeref(TypeRef& ref) {
    const TypeDecl& decl = type_of(ref.type, ref.pos);
    if (ref.indices.size() != decl.index_types.size()) {
      fail(ref.pos, "type '" + ref.type + "' expects " + std::to_string(decl.index_types.size()) +
                        " index argument(s), given " + std::to_string(ref.indices.size()));
    }
    for (std::size_t i = 0; i < ref.indices.size(); ++i) {
      resolve_index(ref.indices[i], decl.index_types[i]);
    }
  }

  void resolve_index(IndexExpr& e, const std::string& index_type) {
    const bool numeral = !e.name.empty() && std::all_of(e.name.begin(), e.name.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    if (auto c = sig_.find_ctor(e.name)) {
      e.kind = IndexExpr::Kind::Con;
      const Ctor& ctor = sig_.ctors[*c];
      if (ctor.result.type != index_type) {
        fail(e.pos, "'" + e.name + "' is not a constructor of index type '" + index_type + "'");
      }
      if (e.args.size() != ctor.args.size() || !ctor.index_params.empty()) {
        fail(e.pos, "'" + e.name + "' applied to the wrong number of arguments");
      }
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (!ctor.args[i].binders.empty()) fail(e.pos, "higher-order index terms are not supported");
        resolve_index(e.args[i], ctor.args[i].target.type);
      }
      return;
    }
    if (numeral) {
      if (index_type != "nat" || !sig_.has_standard_nat()) {
        fail(e.pos, "numeral used where '" + index_type + "' is expected");
      }
      if (!e.args.empty()) fail(e.pos, "a numeral cannot be applied");
      const Nat n = Nat::parse(e.name);
      if (!n.fits_u64() || n.to_u64() > 4096) fail(e.pos, "numeral too large in an index position");
      IndexExpr out;
      out.kind = IndexExpr::Kind::Con;
      out.name = "z";
      out.pos = e.pos;
      for (std::uint64_t i = 0; i < n.to_u64(); ++i) {
        IndexExpr succ;
        succ.kind = IndexExpr::Kind::Con;
        succ.name = "s";
        succ.pos = e.pos;
        succ.args.push_back(std::move(out));
        out = std::move(succ);
      }
      e = std::move(out);
      return;
    }
    const unsigned char first = static_cast<unsigned char>(e.name.front());
    if (std::isupper(first) || first == '_') {
      if (!e.args.empty()) fail(e.pos, "index variable '" + e.name + "' cannot be applied");
      e.kind = IndexExpr::Kind::Var;
      return;
    }
    fail(e.pos, "unknown constant '" + e.name + "'");
  }

  void resolve() {
    if (!sig_.find_type("nat") && mentions_nat()) add_nat_prelude();

    for (auto& t : sig_.types) {
      for (const auto& i : t.index_types) type_of(i, t.pos);
    }
    for (std::size_t ci = 0; ci < sig_.ctors.size(); ++ci) {
      Ctor& c = sig_.ctors[ci];
      resolve_typeref(c.result);
      for (const auto& p : c.index_params) type_of(p.type, p.pos);
      for (auto& a : c.args) {
        for (auto& b : a.binders) resolve_typeref(b);
        resolve_typeref(a.target);
      }
      auto tid = sig_.find_type(c.result.type);
      sig_.types[*tid].ctors.push_back(ci);
    }
    for (auto& a : sig_.abbrevs) resolve_typeref(a.type);
  }
};

}  // namespace

std::optional<std::size_t> Signature::find_type(std::string_view name) const {
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Signature::find_ctor(std::string_view name) const {
  for (std::size_t i = 0; i < ctors.size(); ++i) {
    if (ctors[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Signature::find_abbrev(std::string_view name) const {
  for (std::size_t i = 0; i < abbrevs.size(); ++i) {
    if (abbrevs[i].name == name) return i;
  }
  return std::nullopt;
}

bool Signature::has_standard_nat() const {
  auto nat = find_type("nat");
  if (!nat || !types[*nat].index_types.empty()) return false;
  std::size_t zs = 0;
  bool z_ok = false;
  bool s_ok = false;
  for (const auto& c : ctors) {
    if (c.result.type != "nat") continue;
    ++zs;
    if (c.name == "z") z_ok = c.args.empty() && c.index_params.empty();
    if (c.name == "s") {
      s_ok = c.args.size() == 1 && c.index_params.empty() && c.args[0].binders.empty() &&
             c.args[0].target.type == "nat";
    }
  }
  return zs == 2 && z_ok && s_ok;
}

Signature parse_signature(std::string_view text) { return SigParser(text).run(); }

}  // namespace godelgen
