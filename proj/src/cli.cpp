#include "godelgen/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "godelgen/adequacy.hpp"
#include "godelgen/codec.hpp"
#include "godelgen/natcollections.hpp"
#include "godelgen/signature.hpp"
#include "godelgen/term.hpp"

namespace godelgen {

namespace {

struct Config {
  std::string sig_path;
  std::string type;
  std::string index = "0";
  std::optional<std::uint64_t> fuel;
  std::size_t max_size = 6;
  std::string max_code = "10000";
  std::size_t threads = 0;
  bool json = false;
  std::vector<std::string> force_tags;
  std::vector<std::string> operands;
};

// Reading failures are reported like parse errors.
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(SourcePos{}, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TagOverrides parse_force_tags(const std::vector<std::string>& specs) {
  TagOverrides out;
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw PlanError("--force-tags expects CLASS=CTOR,CTOR,...");
    std::vector<std::string> names;
    std::stringstream ss(spec.substr(eq + 1));
    for (std::string n; std::getline(ss, n, ',');) names.push_back(n);
    out[spec.substr(0, eq)] = names;
  }
  return out;
}

class Session {
 public:
  Session(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  int check() {
    const Signature sig = parse_signature(read_file(cfg_.sig_path));
    const CardinalityTable table = compute_cardinality(sig);
    for (const TypeCardinality& t : table.types) {
      for (std::size_t k = 0; k < t.classes.size(); ++k) {
        const std::string name = t.index_kind == IndexKind::None ? t.type : t.type + "/" + t.class_labels[k];
        out_ << name << ": " << t.classes[k].str() << "\n";
      }
    }
    const std::vector<Diagnostic> diags = diagnose(sig);
    if (!diags.empty()) throw ValidationError(diags);
    return kExitOk;
  }

  int encode_cmd() {
    load();
    const Term t = parse_term(plan_->signature(), cfg_.type, index_, cfg_.operands.at(0));
    out_ << encode_closed(*plan_, cfg_.type, index_, t) << "\n";
    return kExitOk;
  }

  int decode_cmd() {
    load();
    const Nat code = parse_code(cfg_.operands.at(0));
    out_ << show(decode_one(code)) << "\n";
    return kExitOk;
  }

  int enumerate() {
    load();
    Nat count = parse_code(cfg_.operands.at(0));
    if (auto space = code_space(*plan_, cfg_.type, index_, CountVector{})) count = std::min(count, *space);
    for (Nat n; n < count; n += Nat(1)) out_ << n << "\t" << show(decode_one(n)) << "\n";
    return kExitOk;
  }

  int compare_cmd() {
    load();
    const ValidatedSignature& sig = plan_->signature();
    const Term a = parse_term(sig, cfg_.type, index_, cfg_.operands.at(0));
    const Term b = parse_term(sig, cfg_.type, index_, cfg_.operands.at(1));
    const auto c = compare(*plan_, cfg_.type, index_, a, b);
    out_ << (c < 0 ? "LT" : c > 0 ? "GT" : "EQ") << "\n";
    return kExitOk;
  }

  int verify() {
    EnumBudget budget;
    budget.max_size = cfg_.max_size;
    budget.max_code = Nat::parse(cfg_.max_code);
    budget.fuel = fuel();
    budget.threads = cfg_.threads;
    try {
      budget.check();
    } catch (const std::invalid_argument& e) {
      throw Error(std::string("invalid budget: ") + e.what());
    }
    load(false);
    const AdequacyReport report = verify_all(*plan_, budget);
    if (cfg_.json) {
      out_ << report_json(report, cfg_.sig_path);
    } else {
      print_report(report);
    }
    return report.passed() ? kExitOk : kExitVerifyFailed;
  }

 private:
  void load(bool need_type = true) {
    SignaturePtr sig = load_signature(read_file(cfg_.sig_path));
    const TagOverrides forced = parse_force_tags(cfg_.force_tags);
    plan_ = std::make_shared<const CodecPlan>(forced.empty() ? assign_tags(sig) : make_plan(sig, forced));
    if (!need_type) return;
    if (cfg_.type.empty()) throw TermError("--type is required");
    index_ = sig->parse_index(sig->type_id(cfg_.type), cfg_.index);
  }

  std::uint64_t fuel() const { return cfg_.fuel ? *cfg_.fuel : default_fuel(); }

  static Nat parse_code(const std::string& text) {
    try {
      return Nat::parse(text);
    } catch (const std::exception&) {
      throw TermError("expected a decimal code, got '" + text + "'");
    }
  }

  Term decode_one(const Nat& code) const {
    Fuel f(fuel());
    return decode(*plan_, cfg_.type, index_, CountVector{}, code, f);
  }

  std::string show(const Term& t) const { return print_term(plan_->signature(), cfg_.type, index_, t); }

  void print_report(const AdequacyReport& r) {
    out_ << "signature " << cfg_.sig_path << " (max size " << r.max_size << ", max code " << r.max_code << ")\n";
    for (const ClassReport& c : r.classes) {
      out_ << c.type;
      if (c.index_class != "unit") out_ << "/" << c.index_class << " at " << c.index;
      out_ << ": " << c.cardinality << ", " << c.terms_checked << " terms, " << c.codes_checked << " codes\n";
      const std::pair<const char*, const Verdict*> verdicts[] = {
          {"total", &c.total}, {"unique", &c.unique}, {"onto", &c.onto}, {"one_to_one", &c.one_to_one}};
      out_ << " ";
      for (const auto& [name, v] : verdicts) out_ << " " << name << " " << (v->pass ? "pass" : "FAIL");
      out_ << "\n";
      for (const auto& [name, v] : verdicts) {
        if (!v->pass) out_ << "  " << name << " counterexample: " << v->witness.value_or("") << ": " << v->detail.value_or("") << "\n";
      }
    }
    out_ << (r.passed() ? "adequate within the stated bounds" : "adequacy check failed") << "\n";
  }

  const Config& cfg_;
  std::ostream& out_;
  std::shared_ptr<const CodecPlan> plan_;
  Nat index_;
};

int set_cmd(const std::string& literal, std::ostream& out) {
  std::string trimmed = literal;
  trimmed.erase(0, trimmed.find_first_not_of(" \t"));
  if (!trimmed.empty() && trimmed[0] == '[') {
    out << format_elements(parse_gap_literal(trimmed)) << "\n";
  } else {
    out << format_gaps(parse_element_literal(trimmed)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Bijective codes for terms of LF signatures", "godelgen"};
  app.require_subcommand(1);

  auto add_sig = [&](CLI::App* cmd) { cmd->add_option("signature", cfg.sig_path, "Signature file")->required(); };
  auto add_class = [&](CLI::App* cmd) {
    cmd->add_option("--type", cfg.type, "Type name")->required();
    cmd->add_option("--index", cfg.index, "Index: decimal, or a finite-index constructor name");
  };
  auto add_fuel = [&](CLI::App* cmd) {
    cmd->add_option("--fuel", cfg.fuel, "Decode step budget (default 100000 or GODELGEN_FUEL)")
        ->check(CLI::PositiveNumber);
  };
  auto add_forced = [&](CLI::App* cmd) {
    cmd->add_option("--force-tags", cfg.force_tags)->group("");
  };

  CLI::App* check = app.add_subcommand("check", "Parse and validate a signature; print cardinalities");
  add_sig(check);

  CLI::App* enc = app.add_subcommand("encode", "Print the code of a closed term");
  add_sig(enc);
  enc->add_option("term", cfg.operands, "Term text")->required()->expected(1);
  add_class(enc);
  add_forced(enc);

  CLI::App* dec = app.add_subcommand("decode", "Print the term with a given code");
  add_sig(dec);
  dec->add_option("code", cfg.operands, "Decimal code")->required()->expected(1);
  add_class(dec);
  add_fuel(dec);
  add_forced(dec);

  CLI::App* en = app.add_subcommand("enumerate", "Print the first COUNT terms in code order");
  add_sig(en);
  en->add_option("count", cfg.operands, "Number of terms")->required()->expected(1);
  add_class(en);
  add_fuel(en);
  add_forced(en);

  CLI::App* cmp = app.add_subcommand("compare", "Compare two closed terms by code: LT, EQ or GT");
  add_sig(cmp);
  cmp->add_option("terms", cfg.operands, "Two terms")->required()->expected(2);
  add_class(cmp);
  add_forced(cmp);

  CLI::App* ver = app.add_subcommand("verify", "Check the codec is total, unique, onto and one-to-one");
  add_sig(ver);
  ver->add_option("--max-size", cfg.max_size, "Largest term size enumerated (default 6)")->check(CLI::PositiveNumber);
  ver->add_option("--max-code", cfg.max_code, "Codes below this are decoded (default 10000)")
      ->check(CLI::Validator(
          [](std::string& s) {
            try {
              (void)Nat::parse(s);
              return std::string();
            } catch (const std::exception&) {
              return "expected a decimal number, got '" + s + "'";
            }
          },
          "NAT"));
  ver->add_option("--threads", cfg.threads, "Workers for the onto check (default: all cores)");
  ver->add_flag("--json", cfg.json, "Print the report as JSON");
  add_fuel(ver);
  add_forced(ver);

  std::string literal;
  CLI::App* set = app.add_subcommand("set", "Convert a set literal {4,11,96} to gap form [4,6,84] and back");
  set->add_option("literal", literal, "Set or gap literal")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "godelgen: " << e.what() << "\nrun 'godelgen --help' for usage\n";
    return kExitParseError;
  }

  Session s(cfg, out);
  try {
    if (check->parsed()) return s.check();
    if (enc->parsed()) return s.encode_cmd();
    if (dec->parsed()) return s.decode_cmd();
    if (en->parsed()) return s.enumerate();
    if (cmp->parsed()) return s.compare_cmd();
    if (ver->parsed()) return s.verify();
    if (set->parsed()) {
      try {
        return set_cmd(literal, out);
      } catch (const std::invalid_argument& e) {
        err << "godelgen: " << e.what() << "\n";
        return kExitParseError;
      }
    }
  } catch (const ParseError& e) {
    err << cfg.sig_path << ":" << e.what() << "\n";
    return kExitParseError;
  } catch (const ValidationError& e) {
    for (const Diagnostic& d : e.diagnostics()) {
      err << cfg.sig_path << ":" << to_string(d.pos) << ": [" << d.rule << "] " << d.message << "\n";
    }
    return kExitRejected;
  } catch (const TermError& e) {
    err << "godelgen: " << e.what() << "\n";
    return kExitParseError;
  } catch (const FuelExhausted& e) {
    err << "godelgen: " << e.what() << "\n";
    return kExitFuel;
  } catch (const Error& e) {
    err << "godelgen: " << e.what() << "\n";
    return kExitRejected;
  }
  return kExitParseError;
}

}  // namespace godelgen
