// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "godelgen/adequacy.hpp"
#include "godelgen/codec.hpp"
#include "godelgen/natcollections.hpp"
#include "godelgen/stack.hpp"

using namespace godelgen;

namespace {

// Wall-clock limits, in seconds.
constexpr double kMingleSeconds = 1.0;
constexpr double kLambdaSeconds = 30.0;
constexpr double kTermSeconds = 60.0;

constexpr std::uint64_t kMingleRoundTrip = 4096;
constexpr int kRandomLists = 200;
constexpr std::uint64_t kNatIdentity = 1024;
constexpr std::uint64_t kWholeMax = 100;
constexpr int kRandomLambdaTerms = 500;
constexpr int kTermSetVariants = 100;
constexpr std::uint64_t kOracleBound = 200;
constexpr std::uint64_t kSeed = 20240601;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(GODELGEN_SIGNATURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing signature file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SignaturePtr load(const std::string& name) { return load_signature(slurp(name)); }

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Nat code_of(const CodecPlan& plan, const std::string& type, const Nat& index, const std::string& text) {
  return encode_closed(plan, type, index, parse_term(plan.signature(), type, index, text));
}

std::string decoded(const CodecPlan& plan, const std::string& type, const Nat& index, const Nat& code) {
  return print_term(plan.signature(), type, index, decode_closed(plan, type, index, code));
}

void criterion_1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t table[4][4] = {{0, 1, 4, 5}, {2, 3, 6, 7}, {8, 9, 12, 13}, {10, 11, 14, 15}};
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) {
      o.require(mingle(a, b) == Nat(table[a][b]),
                std::to_string(a) + "$" + std::to_string(b) + " != " + std::to_string(table[a][b]));
    }
  }
  for (std::uint64_t a = 0; a < kMingleRoundTrip && o.pass; ++a) {
    for (std::uint64_t b = 0; b < kMingleRoundTrip; ++b) {
      if (unmingle(mingle(a, b)) != std::pair<Nat, Nat>(a, b)) {
        o.require(false, "round trip fails at " + std::to_string(a) + ", " + std::to_string(b));
        break;
      }
    }
  }
  const double s = seconds_since(t0);
  o.require(s < kMingleSeconds, "took " + std::to_string(s) + " s");
}

void criterion_2(Outcome& o) {
  struct Row {
    std::vector<Nat> elements;
    std::vector<Nat> gaps;
  };
  const std::vector<Row> rows = {
      {{}, {}},
      {{0}, {0}},
      {{3}, {3}},
      {{0, 5}, {0, 4}},
      {{1, 5}, {1, 3}},
      {{2, 5}, {2, 2}},
      {{4, 5}, {4, 0}},
      {{0, 2, 4}, {0, 1, 1}},
      {{2, 3, 4}, {2, 0, 0}},
      {{4, 11, 96}, {4, 6, 84}},
  };
  for (const Row& r : rows) {
    const GapSet s = GapSet::from_elements(r.elements);
    o.require(s.gaps() == r.gaps, "encoding of " + format_elements(s));
    o.require(GapSet(r.gaps).elements() == r.elements, "decoding of " + format_gaps(GapSet(r.gaps)));
  }
}

void criterion_3(Outcome& o) {
  const CodecPlan rat = assign_tags(load("rat.sig"));
  for (std::uint64_t n = 0; n <= kWholeMax; ++n) {
    o.require(code_of(rat, "rat", 0, "whole " + std::to_string(n)) == Nat(2 * n), "whole " + std::to_string(n));
  }

  const CodecPlan nl = assign_tags(load("natlist.sig"));
  o.require(code_of(nl, "natlist", 0, "natlist/0") == Nat(0), "natlist/0");
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < kRandomLists; ++i) {
    std::vector<std::uint64_t> xs(rng() % 8);
    for (auto& x : xs) x = rng() % 64;
    std::string text = "natlist/0";
    Nat expected = 0;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
      text = "natlist/+ " + std::to_string(*it) + " (" + text + ")";
      expected = Nat(1) + mingle(*it, expected);
    }
    o.require(code_of(nl, "natlist", 0, text) == expected, text);
  }

  const CodecPlan nat = assign_tags(load("nat.sig"));
  for (std::uint64_t n = 0; n <= kNatIdentity; ++n) {
    o.require(code_of(nat, "nat", 0, std::to_string(n)) == Nat(n), "encode " + std::to_string(n));
    o.require(decoded(nat, "nat", 0, n) == std::to_string(n), "decode " + std::to_string(n));
  }
}

void criterion_4(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const CodecPlan plan = assign_tags(load("lambda.sig"));
  EnumBudget budget;
  budget.max_size = 6;
  budget.max_code = 10000;
  const AdequacyReport r = verify_all(plan, budget);
  o.require(!r.classes.empty() && r.passed(), "verify_all failed");
  o.require(code_of(plan, "t", 0, "lam [x] x") == Nat(0), "lam [x] x");
  o.require(decoded(plan, "t", 0, 1) == "app (lam [x0] x0) (lam [x0] x0)", "decode 1");
  const double s = seconds_since(t0);
  o.require(s < kLambdaSeconds, "took " + std::to_string(s) + " s");
}

void criterion_5(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const CodecPlan plan = assign_tags(load("term.sig"));
  EnumBudget budget;
  budget.max_code = 10000;
  budget.nat_indices = {0, 1, 2};
  const AdequacyReport r = verify_all(plan, budget);
  std::set<std::uint64_t> indices;
  for (const ClassReport& c : r.classes) {
    if (c.type != "term") continue;
    o.require(c.passed(), "term at " + c.index.str());
    indices.insert(c.index.to_u64());
  }
  o.require(indices == std::set<std::uint64_t>{0, 1, 2}, "indices 0, 1, 2 not all checked");
  o.require(code_of(plan, "term", 0, "unit") == Nat(0), "unit");
  o.require(code_of(plan, "term", 0, "rec [f] f") == Nat(2), "rec [f] f");
  const double s = seconds_since(t0);
  o.require(s < kTermSeconds, "took " + std::to_string(s) + " s");
}

void criterion_6(Outcome& o) {
  const CodecPlan reversed = make_plan(load("rat.sig"), {{"rat", {"frac", "whole"}}});
  Nat checked;
  const Verdict v = verify_onto(reversed, "rat", 0, EnumBudget{}, &checked);
  o.require(!v.pass, "reversed plan passed onto");
  o.require(v.witness == std::optional<std::string>("code 0"), "witness is not code 0");
  o.require(v.detail && v.detail->find("fuel") != std::string::npos, "failure is not fuel exhaustion");

  const CodecPlan recovered = assign_tags(load("rat_fracfirst.sig"));
  o.require(recovered.tag_order("rat") == std::vector<std::string>{"whole", "frac"}, "tags not reordered");
  o.require(verify_onto(recovered, "rat", 0, EnumBudget{}).pass, "recovered plan fails onto");
  o.require(code_of(recovered, "rat", 0, "whole 3") == Nat(6), "whole 3");
}

void criterion_7(Outcome& o) {
  const auto rejected_for = [&](const std::string& file, const std::string& rule) {
    try {
      (void)load(file);
      o.require(false, file + " accepted");
    } catch (const ValidationError& e) {
      bool found = false;
      for (const Diagnostic& d : e.diagnostics()) found = found || d.rule == rule;
      o.require(found, file + " lacks the " + rule + " diagnostic");
    }
  };
  rejected_for("nonuniform.sig", "nonuniform");
  rejected_for("finite_binder.sig", "finite-variable");
  rejected_for("plus.sig", "single-index");
}

// Random closed lambda term in surface syntax, binder names drawn from a pool.
std::string random_lambda(std::mt19937_64& rng, std::vector<std::string>& scope, int depth) {
  static const std::vector<std::string> pool = {"x", "y", "z", "f", "g", "a", "b", "k"};
  const auto pick = rng() % 10;
  if (!scope.empty() && (depth >= 5 || pick < 3)) return scope[rng() % scope.size()];
  if (depth >= 5 || pick < 6) {
    std::string name = pool[rng() % pool.size()];
    scope.push_back(name);
    std::string body = random_lambda(rng, scope, depth + 1);
    scope.pop_back();
    return "lam [" + name + "] " + (body.find(' ') != std::string::npos ? "(" + body + ")" : body);
  }
  const std::string f = random_lambda(rng, scope, depth + 1);
  const std::string a = random_lambda(rng, scope, depth + 1);
  auto wrap = [](const std::string& s) { return s.find(' ') != std::string::npos ? "(" + s + ")" : s; };
  return "app " + wrap(f) + " " + wrap(a);
}

// Renames every binder to a fresh name along its scope chain.
std::string renamed(const ValidatedSignature& sig, const Term& t, std::mt19937_64& rng) {
  const std::string prefix = std::string(1, static_cast<char>('a' + rng() % 26)) + std::to_string(rng() % 1000);
  PrintOptions o;
  o.binder_name = [prefix](const BinderName& b) { return prefix + "_" + std::to_string(b.depth); };
  return print_term(sig, "t", 0, t, {}, o);
}

void criterion_8(Outcome& o) {
  const auto plan = std::make_shared<const CodecPlan>(assign_tags(load("lambda.sig")));
  const ValidatedSignature& sig = plan->signature();
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < kRandomLambdaTerms; ++i) {
    std::vector<std::string> scope;
    std::string text = random_lambda(rng, scope, 0);
    if (text.rfind("lam", 0) != 0 && text.rfind("app", 0) != 0) text = "lam [x] x";
    const Term t = parse_term(sig, "t", 0, text);
    const Nat code = encode_closed(*plan, "t", 0, t);
    const std::string variant = renamed(sig, t, rng);
    o.require(encode_closed(*plan, "t", 0, parse_term(sig, "t", 0, variant)) == code, text + " vs " + variant);
  }

  const std::vector<Term> bases = {parse_term(sig, "t", 0, "lam [x] x"), parse_term(sig, "t", 0, "lam [x] lam [y] x"),
                                   parse_term(sig, "t", 0, "app (lam [x] x) (lam [x] x)")};
  TermSet set(plan, "t", 0);
  for (int i = 0; i < kTermSetVariants; ++i) {
    const Term& base = bases[static_cast<std::size_t>(i) % bases.size()];
    set = set.insert(parse_term(sig, "t", 0, renamed(sig, base, rng)));
  }
  o.require(set.size() == Nat(3), "term set has size " + set.size().str());
}

void criterion_9(Outcome& o) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(GODELGEN_SIGNATURE_DIR)) {
    if (entry.path().extension() == ".sig") files.push_back(entry.path().filename().string());
  }
  std::sort(files.begin(), files.end());
  std::size_t checked = 0;
  for (const std::string& file : files) {
    SignaturePtr sig;
    try {
      sig = load(file);
    } catch (const Error&) {
      continue;  // rejected examples have no codec
    }
    const CodecPlan plan = assign_tags(sig);
    for (std::size_t t = 0; t < sig->type_count(); ++t) {
      const std::string& type = sig->type(t).name;
      std::vector<Nat> indices;
      if (sig->info(t).index_kind == IndexKind::Nat) {
        indices = {0, 1, 2};
      } else {
        for (std::size_t k = 0; k < sig->info(t).class_count; ++k) {
          for (const Nat& i : sig->class_representatives(t, k)) indices.push_back(i);
        }
      }
      for (const Nat& index : indices) {
        const Nat bound = std::min(Nat(kOracleBound), code_space(plan, type, index, {}).value_or(Nat(kOracleBound)));
        std::set<std::string> from_decode;
        for (Nat n; n < bound; n += Nat(1)) from_decode.insert(decoded(plan, type, index, n));
        std::set<std::string> from_enum;
        for (const Term& term : enumerate_terms_below_code(plan, type, index, Nat(kOracleBound))) {
          from_enum.insert(print_term(*sig, type, index, term));
        }
        o.require(from_decode == from_enum, file + ": " + type + " at " + index.str());
        ++checked;
      }
    }
  }
  o.require(checked > 0, "no classes checked");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"mingle table and inverse", criterion_1},
      {"set figure encodings", criterion_2},
      {"closed-form codes for rat, natlist, nat", criterion_3},
      {"lambda calculus adequacy", criterion_4},
      {"indexed term family adequacy", criterion_5},
      {"ill-founded tag order detected and repaired", criterion_6},
      {"limitation diagnostics", criterion_7},
      {"alpha-equivalence invariance", criterion_8},
      {"decode agrees with code-bounded enumeration", criterion_9},
  };
  int failed = 0;
  run_with_stack([&] {
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      Outcome o;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        criteria[i].second(o);
      } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
      }
      char elapsed[32];
      std::snprintf(elapsed, sizeof elapsed, "%.2f s", seconds_since(t0));
      std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
                << elapsed << ")";
      if (!o.pass) std::cout << ": " << o.note;
      std::cout << std::endl;
      if (!o.pass) ++failed;
    }
  });
  return failed;
}
