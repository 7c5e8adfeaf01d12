#include "doctest.h"
#include "godelgen/codec.hpp"
#include "sig_files.hpp"

using namespace godelgen;

namespace {

Nat code_of(const CodecPlan& plan, const char* type, const Nat& index, const char* text) {
  return encode_closed(plan, type, index, parse_term(plan.signature(), type, index, text));
}

std::string decoded(const CodecPlan& plan, const char* type, const Nat& index, const Nat& code) {
  return print_term(plan.signature(), type, index, decode_closed(plan, type, index, code));
}

}  // namespace

TEST_CASE("lambda calculus") {
  const CodecPlan plan = assign_tags(load("lambda.sig"));
  CHECK(plan.tag_order("t") == std::vector<std::string>{"lam", "app"});
  CHECK(code_of(plan, "t", 0, "lam [x] x") == Nat(0));
  CHECK(code_of(plan, "t", 0, "app (lam [x] x) (lam [x] x)") == Nat(1));
  CHECK(code_of(plan, "t", 0, "lam [x] lam [y] x") == Nat(2));
  CHECK(code_of(plan, "t", 0, "lam [x] lam [y] y") == Nat(6));
  CHECK(decoded(plan, "t", 0, 0) == "lam [x0] x0");
  CHECK(decoded(plan, "t", 0, 1) == "app (lam [x0] x0) (lam [x0] x0)");
}

TEST_CASE("lists and rationals") {
  const CodecPlan nl = assign_tags(load("natlist.sig"));
  CHECK(code_of(nl, "natlist", 0, "natlist/0") == Nat(0));
  CHECK(code_of(nl, "natlist", 0, "natlist/+ z natlist/0") == Nat(1));
  CHECK(code_of(nl, "natlist", 0, "natlist/+ 2 (natlist/+ 1 natlist/0)") ==
        Nat(1) + mingle(2, Nat(1) + mingle(1, 0)));

  const CodecPlan rat = assign_tags(load("rat.sig"));
  CHECK(rat.tag_order("rat") == std::vector<std::string>{"whole", "frac"});
  CHECK(code_of(rat, "rat", 0, "whole 3") == Nat(6));
  CHECK(code_of(rat, "rat", 0, "frac 2 (whole 3)") == Nat(2) * mingle(2, 6) + Nat(1));
}

TEST_CASE("frac-first rationals are reordered") {
  const SignaturePtr s = load("rat_fracfirst.sig");
  const CodecPlan bad = make_plan(s);
  CHECK(bad.tag_order("rat") == std::vector<std::string>{"frac", "whole"});
  Fuel fuel(kTrialFuel);
  CHECK_THROWS_AS(decode(bad, "rat", 0, {}, 0, fuel), FuelExhausted);
  const CodecPlan good = assign_tags(s);
  CHECK(good.tag_order("rat") == std::vector<std::string>{"whole", "frac"});
  CHECK(code_of(good, "rat", 0, "whole 3") == Nat(6));
}

TEST_CASE("overrides reproduce a given order") {
  const SignaturePtr s = load("rat.sig");
  const CodecPlan forced = make_plan(s, {{"rat", {"frac", "whole"}}});
  CHECK(forced.tag_order("rat") == std::vector<std::string>{"frac", "whole"});
  CHECK_THROWS_AS(make_plan(s, {{"rat", {"frac"}}}), PlanError);
  // The override is only a starting point for assign_tags.
  CHECK(assign_tags(s, {{"rat", {"frac", "whole"}}}).tag_order("rat") ==
        std::vector<std::string>{"whole", "frac"});
}

TEST_CASE("indexed term family") {
  const CodecPlan plan = assign_tags(load("term.sig"));
  CHECK(plan.tag_order("term", 0) == std::vector<std::string>{"app", "rec"});
  CHECK(plan.tag_order("term", 1) == std::vector<std::string>{"lam", "app", "rec"});
  CHECK(code_of(plan, "term", 0, "unit") == Nat(0));
  CHECK(code_of(plan, "term", 0, "rec [f] f") == Nat(2));
  CHECK(decoded(plan, "term", 0, 1) == "app (lam [x0] x0) unit");
}

TEST_CASE("nat is the identity") {
  const CodecPlan plan = assign_tags(load("nat.sig"));
  for (std::uint64_t n = 0; n <= 1024; ++n) {
    const Term t = parse_term(plan.signature(), "nat", 0, std::to_string(n));
    REQUIRE(encode_closed(plan, "nat", 0, t) == Nat(n));
    REQUIRE(decode_closed(plan, "nat", 0, n) == t);
  }
}

TEST_CASE("finite classes") {
  const CodecPlan plan = assign_tags(load("bool.sig"));
  CHECK(decoded(plan, "bool", 0, 0) == "true");
  CHECK(decoded(plan, "bool", 0, 1) == "false");
  CHECK_THROWS_AS(decode_closed(plan, "bool", 0, 2), CodeOutOfRange);
  CHECK(code_space(plan, "bool", 0, {}) == Nat(2));

  const CodecPlan empty = assign_tags(load("empty.sig"));
  CHECK_THROWS_AS(decode_closed(empty, "void", 0, 0), CodeOutOfRange);
}

TEST_CASE("finite arguments of infinite constructors") {
  const CodecPlan plan = assign_tags(load("pair.sig"));
  // both: 4 finite instances, then tag: payload n folded with one bool digit.
  CHECK(code_of(plan, "tagged", 0, "both true true") == Nat(0));
  CHECK(code_of(plan, "tagged", 0, "both false false") == Nat(3));
  CHECK(code_of(plan, "tagged", 0, "tag true 0") == Nat(4));
  CHECK(code_of(plan, "tagged", 0, "tag false 0") == Nat(5));
  CHECK(code_of(plan, "tagged", 0, "tag true 1") == Nat(4 + 2));
  for (std::uint64_t n = 0; n < 500; ++n) {
    REQUIRE(encode_closed(plan, "tagged", 0, decode_closed(plan, "tagged", 0, n)) == Nat(n));
  }
}

TEST_CASE("explicit index abstraction round trips") {
  const CodecPlan plan = assign_tags(load("exists.sig"));
  for (std::uint64_t n = 0; n < 2000; ++n) {
    const Term t = decode_closed(plan, "some", 0, n);
    REQUIRE(well_typed(plan.signature(), "some", 0, {}, t));
    REQUIRE(encode_closed(plan, "some", 0, t) == Nat(n));
  }
}

TEST_CASE("round trips at every class") {
  for (const char* name : {"lambda.sig", "term.sig", "natlist.sig", "rat.sig", "rat_fracfirst.sig"}) {
    const CodecPlan plan = assign_tags(load(name));
    const ValidatedSignature& s = plan.signature();
    for (std::size_t t = 0; t < s.type_count(); ++t) {
      const std::string type = s.type(t).name;
      for (std::size_t k = 0; k < s.info(t).class_count; ++k) {
        for (const Nat& index : s.class_representatives(t, k)) {
          for (std::uint64_t n = 0; n < 1000; ++n) {
            INFO(name << " " << type << " " << index << " " << n);
            const Term term = decode_closed(plan, type, index, n);
            REQUIRE(well_typed(s, type, index, {}, term));
            REQUIRE(encode_closed(plan, type, index, term) == Nat(n));
          }
        }
      }
    }
  }
}

TEST_CASE("open terms") {
  const CodecPlan plan = assign_tags(load("lambda.sig"));
  for (std::uint64_t vars = 0; vars < 4; ++vars) {
    CountVector v;
    for (std::uint64_t i = 0; i < vars; ++i) v.increment("t", 0);
    for (std::uint64_t n = 0; n < 300; ++n) {
      const Term t = decode(plan, "t", 0, v, n);
      REQUIRE(well_typed(plan.signature(), "t", 0, v, t));
      REQUIRE(encode(plan, "t", 0, v, t) == Nat(n));
    }
  }
}

TEST_CASE("compare") {
  const CodecPlan plan = assign_tags(load("lambda.sig"));
  const ValidatedSignature& s = plan.signature();
  const Term id1 = parse_term(s, "t", 0, "lam [x] x");
  const Term id2 = parse_term(s, "t", 0, "lam [y] y");
  const Term app = parse_term(s, "t", 0, "app (lam [x] x) (lam [x] x)");
  CHECK(compare(plan, "t", 0, id1, id2) == std::strong_ordering::equal);
  CHECK(compare(plan, "t", 0, id1, app) == std::strong_ordering::less);
  CHECK(compare(plan, "t", 0, app, app) == std::strong_ordering::equal);
}

TEST_CASE("payload slots are smaller than the code") {
  const CodecPlan plan = assign_tags(load("natlist.sig"));
  for (std::uint64_t c = 2; c < 2000; ++c) {
    const Term t = decode_closed(plan, "natlist", 0, c);
    if (t.name != "natlist/+") continue;
    const Nat head = encode_closed(plan, "nat", 0, t.args[0].body);
    const Nat tail = encode_closed(plan, "natlist", 0, t.args[1].body);
    REQUIRE(head < Nat(c));
    REQUIRE(tail < Nat(c));
  }
}

TEST_CASE("fuel") {
  const CodecPlan plan = assign_tags(load("nat.sig"));
  Fuel small(10);
  CHECK_THROWS_AS(decode(plan, "nat", 0, {}, 50, small), FuelExhausted);
}
