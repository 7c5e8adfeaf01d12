#include <fstream>
#include <sstream>

#include "doctest.h"
#include "godelgen/signature.hpp"

using namespace godelgen;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(GODELGEN_SIGNATURE_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> rules(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& d : diagnose(parse_signature(text))) out.push_back(d.rule);
  return out;
}

bool has_rule(const std::string& text, const std::string& rule) {
  const auto r = rules(text);
  return std::find(r.begin(), r.end(), rule) != r.end();
}

std::vector<std::string> names(const ValidatedSignature& vs, const std::vector<std::size_t>& ids) {
  std::vector<std::string> out;
  for (std::size_t id : ids) out.push_back(vs.ctor(id).name);
  return out;
}

}  // namespace

TEST_CASE("parse the HOAS example") {
  const Signature s = parse_signature("t : type. lam : (t -> t) -> t. app : t -> t -> t.");
  REQUIRE(s.types.size() == 1);
  REQUIRE(s.ctors.size() == 2);
  CHECK(s.ctors[0].args.size() == 1);
  CHECK(s.ctors[0].args[0].binders.size() == 1);
  CHECK(s.ctors[1].args.size() == 2);
}

TEST_CASE("parse errors") {
  CHECK(parse_signature("").types.empty());
  CHECK_THROWS_AS(parse_signature("t : type. lam : (u -> t) -> t."), ParseError);
  CHECK_THROWS_AS(parse_signature("t : type. t : type."), ParseError);
  CHECK_THROWS_AS(parse_signature(slurp("garbage.sig")), ParseError);
  try {
    parse_signature("t : type.\nc : u.");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 2);
  }
}

TEST_CASE("comments and abbreviations") {
  const Signature s = parse_signature(slurp("lambda.sig"));
  CHECK(s.types.size() == 1);
  CHECK(s.abbrevs.size() == 2);
  CHECK(parse_signature("%% a comment\nt : type. %{ block\n comment }% c : t.").ctors.size() == 1);
}

TEST_CASE("builtin nat") {
  const Signature s = parse_signature(slurp("natlist.sig"));
  REQUIRE(s.find_type("nat"));
  CHECK(s.has_standard_nat());
  CHECK(s.types[*s.find_type("nat")].builtin);
}

TEST_CASE("cardinalities") {
  auto card = [](const std::string& text, const std::string& type) {
    const Signature s = parse_signature(text);
    const CardinalityTable t = compute_cardinality(s);
    return t.types[*s.find_type(type)].classes;
  };
  CHECK(card(slurp("bool.sig"), "bool") == std::vector{Cardinality::finite(2)});
  CHECK(card("e : type.", "e") == std::vector{Cardinality::empty()});
  CHECK(card(slurp("nat.sig"), "nat") == std::vector{Cardinality::infinite()});
  CHECK(card(slurp("term.sig"), "term") == std::vector{Cardinality::infinite(), Cardinality::infinite()});
  CHECK(card(slurp("nonuniform.sig"), "actuals") == std::vector{Cardinality::finite(1), Cardinality::infinite()});
  CHECK(card("b : type. x : b. y : b. p : type. mk : b -> b -> p.", "p") == std::vector{Cardinality::finite(4)});
}

TEST_CASE("accepted signatures") {
  for (const char* name : {"nat.sig", "bool.sig", "natlist.sig", "rat.sig", "rat_fracfirst.sig", "lambda.sig",
                           "term.sig", "pair.sig", "exists.sig", "empty.sig"}) {
    INFO(name);
    CHECK(rules(slurp(name)).empty());
  }
}

TEST_CASE("limitations are diagnosed") {
  CHECK(has_rule(slurp("nonuniform.sig"), "nonuniform"));
  CHECK(has_rule(slurp("finite_binder.sig"), "finite-variable"));
  CHECK(has_rule(slurp("plus.sig"), "single-index"));
  CHECK(has_rule(slurp("argindex.sig"), "index-type"));
  CHECK(has_rule("t : nat -> type. c : t (s (s N)).", "pattern-depth"));
  CHECK(has_rule("e : type. one : e. u : type. c : u -> e.", "empty-argument"));
  CHECK(has_rule("t : nat -> type. c : t N -> t z.", "unbound-index-variable"));
  CHECK(has_rule("t : nat -> type. s2 : type. c : {M:nat} t M -> t M.", "explicit-abstraction"));
  try {
    validate(parse_signature(slurp("finite_binder.sig")));
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    REQUIRE(!e.diagnostics().empty());
    CHECK(e.diagnostics()[0].message.rfind("Variables can only be of infinite type", 0) == 0);
  }
  try {
    validate(parse_signature(slurp("nonuniform.sig")));
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    bool found = false;
    for (const auto& d : e.diagnostics()) found |= d.message.rfind("Indexed types must be uniform", 0) == 0;
    CHECK(found);
  }
}

TEST_CASE("validation is deterministic") {
  for (const char* name : {"nonuniform.sig", "finite_binder.sig", "plus.sig", "argindex.sig"}) {
    const auto a = diagnose(parse_signature(slurp(name)));
    const auto b = diagnose(parse_signature(slurp(name)));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].rule == b[i].rule);
      CHECK(a[i].message == b[i].message);
    }
  }
}

TEST_CASE("constructors per class") {
  const SignaturePtr term = load_signature(slurp("term.sig"));
  const std::size_t t = term->type_id("term");
  const ClassCtors& z = term->ctors_for_class(t, 0);
  REQUIRE(z.finite.size() == 1);
  CHECK(term->ctor(z.finite[0].ctor).name == "unit");
  CHECK(names(*term, z.infinite) == std::vector<std::string>{"app", "rec"});
  const ClassCtors& s = term->ctors_for_class(t, 1);
  CHECK(s.finite.empty());
  CHECK(names(*term, s.infinite) == std::vector<std::string>{"lam", "app", "rec"});

  const SignaturePtr natlist = load_signature(slurp("natlist.sig"));
  const ClassCtors& nl = natlist->ctors_for_class(natlist->type_id("natlist"), 0);
  REQUIRE(nl.finite.size() == 1);
  CHECK(natlist->ctor(nl.finite[0].ctor).name == "natlist/0");
  CHECK(names(*natlist, nl.infinite) == std::vector<std::string>{"natlist/+"});
}

TEST_CASE("finite instances are mixed radix, leftmost most significant") {
  const SignaturePtr s =
      load_signature("b : type. x : b. y : b. c3 : type. p : c3. q : c3. r : c3. pr : type. mk : b -> c3 -> pr.");
  const auto inst = s->finite_instances(s->type_id("pr"), 0);
  REQUIRE(inst.size() == 6);
  CHECK(inst[1].digits == std::vector<Nat>{0, 1});
  CHECK(inst[3].digits == std::vector<Nat>{1, 0});
}

TEST_CASE("index classes") {
  const SignaturePtr s = load_signature(slurp("term.sig"));
  const std::size_t t = s->type_id("term");
  CHECK(s->class_of(t, 0) == 0);
  CHECK(s->class_of(t, 1) == 1);
  CHECK(s->class_of(t, 57) == 1);
  CHECK(s->parse_index(t, "3") == Nat(3));
  CHECK_THROWS_AS(s->parse_index(t, "x"), TermError);
}
