#include <algorithm>
#include <set>

#include "doctest.h"
#include "godelgen/adequacy.hpp"
#include "sig_files.hpp"

using namespace godelgen;

namespace {

std::vector<std::string> printed(const ValidatedSignature& sig, const char* type, const Nat& index,
                                 const std::vector<Term>& terms) {
  std::vector<std::string> out;
  for (const Term& t : terms) out.push_back(print_term(sig, type, index, t));
  return out;
}

// Closed lambda terms by node count, counted by a recurrence over the number
// of variables in scope.
std::uint64_t lambda_count(std::size_t size, std::uint64_t scope) {
  if (size == 0) return 0;
  if (size == 1) return scope;
  std::uint64_t n = lambda_count(size - 1, scope + 1);
  for (std::size_t a = 1; a + 1 < size; ++a) n += lambda_count(a, scope) * lambda_count(size - 1 - a, scope);
  return n;
}

EnumBudget small_budget() {
  EnumBudget b;
  b.max_size = 5;
  b.max_code = 500;
  return b;
}

}  // namespace

TEST_CASE("structural enumeration") {
  const auto lambda = load("lambda.sig");
  CHECK(printed(*lambda, "t", 0, enumerate_terms(*lambda, "t", 0, 2)) == std::vector<std::string>{"lam [x0] x0"});
  const auto bools = load("bool.sig");
  CHECK(printed(*bools, "bool", 0, enumerate_terms(*bools, "bool", 0, 1)) ==
        std::vector<std::string>{"true", "false"});
  const auto empty = load("empty.sig");
  CHECK(enumerate_terms(*empty, "void", 0, 6).empty());

  for (std::size_t size = 1; size <= 8; ++size) {
    std::uint64_t expected = 0;
    for (std::size_t k = 1; k <= size; ++k) expected += lambda_count(k, 0);
    const auto terms = enumerate_terms(*lambda, "t", 0, size);
    CHECK(terms.size() == expected);
    for (const Term& t : terms) {
      REQUIRE(well_typed(*lambda, "t", 0, {}, t));
      REQUIRE(term_size(t) <= Nat(size));
    }
  }
  // Deterministic and duplicate free.
  const auto a = printed(*lambda, "t", 0, enumerate_terms(*lambda, "t", 0, 6));
  CHECK(a == printed(*lambda, "t", 0, enumerate_terms(*lambda, "t", 0, 6)));
  CHECK(std::set<std::string>(a.begin(), a.end()).size() == a.size());

  const auto term = load("term.sig");
  for (const Term& t : enumerate_terms(*term, "term", 1, 6)) REQUIRE(well_typed(*term, "term", 1, {}, t));
  const auto exists = load("exists.sig");
  const auto packs = printed(*exists, "some", 0, enumerate_terms(*exists, "some", 0, 4));
  CHECK(std::find(packs.begin(), packs.end(), "pack 1 leaf") != packs.end());
  CHECK(std::find(packs.begin(), packs.end(), "pack 0 (grow leaf)") == packs.end());
}

TEST_CASE("budget bounds") {
  EnumBudget b;
  CHECK_NOTHROW(b.check());
  b.max_code = 0;
  CHECK_THROWS_AS(b.check(), std::invalid_argument);
  b.max_code = 2;
  b.max_size = 0;
  CHECK_THROWS_AS(b.check(), std::invalid_argument);
  const CodecPlan plan = assign_tags(load("lambda.sig"));
  EnumBudget bad;
  bad.max_code = 1;
  CHECK_THROWS_AS(verify_all(plan, bad), std::invalid_argument);
}

TEST_CASE("lambda calculus is adequate") {
  const CodecPlan plan = assign_tags(load("lambda.sig"));
  const AdequacyReport r = verify_all(plan, EnumBudget{});
  REQUIRE(r.classes.size() == 1);
  const ClassReport& c = r.classes[0];
  CHECK(c.passed());
  CHECK(c.codes_checked == Nat(10000));
  std::uint64_t expected = 0;
  for (std::size_t k = 1; k <= 6; ++k) expected += lambda_count(k, 0);
  CHECK(c.terms_checked == expected);
  CHECK_FALSE(c.total.witness.has_value());
}

TEST_CASE("example signatures are adequate") {
  for (const char* file : {"nat.sig", "bool.sig", "natlist.sig", "rat.sig", "term.sig", "pair.sig", "exists.sig"}) {
    CAPTURE(file);
    const CodecPlan plan = assign_tags(load(file));
    const AdequacyReport r = verify_all(plan, small_budget());
    for (const ClassReport& c : r.classes) {
      CAPTURE(c.type);
      CAPTURE(c.index);
      CHECK(c.passed());
    }
  }
}

TEST_CASE("indexed family classes") {
  const CodecPlan plan = assign_tags(load("term.sig"));
  EnumBudget b = small_budget();
  const AdequacyReport r = verify_all(plan, b);
  std::vector<std::string> seen;
  for (const ClassReport& c : r.classes) {
    if (c.type == "term") seen.push_back(c.index_class + ":" + c.index.str());
  }
  CHECK(seen == std::vector<std::string>{"z:0", "s:1", "s:2"});
}

TEST_CASE("finite classes clamp the code range") {
  const CodecPlan plan = assign_tags(load("bool.sig"));
  Nat checked;
  CHECK(verify_onto(plan, "bool", 0, EnumBudget{}, &checked).pass);
  CHECK(checked == Nat(2));
  const CodecPlan empty = assign_tags(load("empty.sig"));
  const ClassReport c = verify_class(empty, "void", 0, EnumBudget{});
  CHECK(c.passed());
  CHECK(c.terms_checked == 0);
  CHECK(c.codes_checked == Nat(0));
}

TEST_CASE("an ill-founded plan fails onto at code 0") {
  const CodecPlan bad = make_plan(load("rat.sig"), {{"rat", {"frac", "whole"}}});
  EnumBudget b;
  b.fuel = 1000;
  b.threads = 2;
  Nat checked;
  const Verdict v = verify_onto(bad, "rat", 0, b, &checked);
  CHECK_FALSE(v.pass);
  CHECK(v.witness == std::optional<std::string>("code 0"));
  REQUIRE(v.detail.has_value());
  CHECK(v.detail->find("fuel") != std::string::npos);
  CHECK(checked == Nat(1));

  const CodecPlan good = assign_tags(load("rat.sig"));
  EnumBudget wide;
  wide.max_code = 1001;
  CHECK(verify_onto(good, "rat", 0, wide).pass);
}

TEST_CASE("collisions are reported with both terms") {
  const CodecPlan plan = assign_tags(load("lambda.sig"));
  const auto& sig = plan.signature();
  const std::vector<Term> twice{parse_term(sig, "t", 0, "lam [x] x"), parse_term(sig, "t", 0, "lam [y] y")};
  const Verdict v = verify_one_to_one(plan, "t", 0, twice);
  CHECK_FALSE(v.pass);
  CHECK(v.witness == std::optional<std::string>("lam [x0] x0"));
  CHECK(verify_one_to_one(plan, "t", 0, std::vector<Term>{twice[0]}).pass);
  CHECK(verify_total_unique(plan, "t", 0, std::vector<Term>{}).pass);
}

TEST_CASE("reports are reproducible") {
  const CodecPlan plan = assign_tags(load("term.sig"));
  EnumBudget one = small_budget();
  one.threads = 1;
  EnumBudget many = small_budget();
  many.threads = 3;
  const std::string a = report_json(verify_all(plan, one), "term.sig");
  CHECK(a == report_json(verify_all(plan, many), "term.sig"));
  CHECK(a.find("\"index_class\": \"s\"") != std::string::npos);

  const CodecPlan bad = make_plan(load("rat.sig"), {{"rat", {"frac", "whole"}}});
  EnumBudget b = small_budget();
  b.fuel = 500;
  const std::string j = report_json(verify_all(bad, b), "rat.sig");
  CHECK(j.find("\"counterexample\"") != std::string::npos);
  CHECK(j.find("\"witness\": \"code 0\"") != std::string::npos);
  CHECK(j.find("\"passed\": false") != std::string::npos);
}

TEST_CASE("code-bounded enumeration agrees with decoding") {
  for (const char* file : {"lambda.sig", "nat.sig", "natlist.sig", "rat.sig", "term.sig", "pair.sig", "exists.sig"}) {
    CAPTURE(file);
    const CodecPlan plan = assign_tags(load(file));
    const auto& sig = plan.signature();
    for (std::size_t t = 0; t < sig.type_count(); ++t) {
      const std::string& type = sig.type(t).name;
      std::vector<Nat> indices{0};
      if (sig.info(t).index_kind == IndexKind::Nat) indices = {0, 1, 2};
      for (const Nat& index : indices) {
        CAPTURE(type);
        CAPTURE(index);
        const Nat bound = std::min(Nat(200), code_space(plan, type, index, {}).value_or(Nat(200)));
        std::set<std::string> from_decode;
        for (Nat n; n < bound; n += Nat(1)) from_decode.insert(print_term(sig, type, index, decode_closed(plan, type, index, n)));
        const auto terms = enumerate_terms_below_code(plan, type, index, Nat(200));
        const auto listed = printed(sig, type.c_str(), index, terms);
        CHECK(std::set<std::string>(listed.begin(), listed.end()) == from_decode);
        CHECK(listed.size() == from_decode.size());
      }
    }
  }
}
