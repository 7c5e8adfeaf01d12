#include "godelgen/natcollections.hpp"

#include <algorithm>
#include <cctype>

namespace godelgen {

namespace {

// Walks the elements of a gap sequence in increasing order.
class Cursor {
 public:
  explicit Cursor(const GapSet& s) : gaps_(s.gaps()) { load(); }
  bool done() const { return i_ >= gaps_.size(); }
  const Nat& value() const { return value_; }
  void next() {
    ++i_;
    load();
  }

 private:
  void load() {
    if (done()) return;
    value_ = i_ == 0 ? gaps_[0] : value_ + gaps_[i_] + Nat(1);
  }

  const std::vector<Nat>& gaps_;
  std::size_t i_ = 0;
  Nat value_;
};

// Appends elements in increasing order, producing gaps.
class Builder {
 public:
  void push(const Nat& x) {
    gaps_.push_back(first_ ? x : x - last_ - Nat(1));
    last_ = x;
    first_ = false;
  }
  GapSet finish() { return GapSet(std::move(gaps_)); }

 private:
  std::vector<Nat> gaps_;
  Nat last_;
  bool first_ = true;
};

enum class Keep { Union, Intersection, Difference };

GapSet merge(const GapSet& a, const GapSet& b, Keep keep) {
  Cursor x(a);
  Cursor y(b);
  Builder out;
  while (!x.done() || !y.done()) {
    if (y.done() || (!x.done() && x.value() < y.value())) {
      if (keep != Keep::Intersection) out.push(x.value());
      x.next();
    } else if (x.done() || y.value() < x.value()) {
      if (keep == Keep::Union) out.push(y.value());
      y.next();
    } else {
      if (keep != Keep::Difference) out.push(x.value());
      x.next();
      y.next();
    }
  }
  return out.finish();
}

std::vector<Nat> parse_list(std::string_view text, char open, char close) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("malformed literal '" + std::string(text) + "': " + why);
  };
  skip();
  if (i >= text.size() || text[i] != open) throw bad(std::string("expected '") + open + "'");
  ++i;
  std::vector<Nat> out;
  skip();
  if (i < text.size() && text[i] == close) {
    ++i;
  } else {
    for (;;) {
      skip();
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw bad("expected a number");
      out.push_back(Nat::parse(text.substr(start, i - start)));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == close) {
        ++i;
        break;
      }
      throw bad(std::string("expected ',' or '") + close + "'");
    }
  }
  skip();
  if (i != text.size()) throw bad("trailing characters");
  return out;
}

std::string join(const std::vector<Nat>& xs, char open, char close) {
  std::string s(1, open);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += ',';
    s += xs[i].str();
  }
  return s + close;
}

}  // namespace

GapSet GapSet::from_elements(std::span<const Nat> xs) {
  std::vector<Nat> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Builder b;
  for (const Nat& x : sorted) b.push(x);
  return b.finish();
}

std::vector<Nat> GapSet::elements() const {
  std::vector<Nat> out;
  for (Cursor c(*this); !c.done(); c.next()) out.push_back(c.value());
  return out;
}

bool GapSet::member(const Nat& x) const {
  for (Cursor c(*this); !c.done(); c.next()) {
    if (c.value() == x) return true;
    if (c.value() > x) return false;
  }
  return false;
}

GapSet GapSet::insert(const Nat& x) const { return merge(*this, GapSet(std::vector<Nat>{x}), Keep::Union); }

GapSet GapSet::remove(const Nat& x) const { return merge(*this, GapSet(std::vector<Nat>{x}), Keep::Difference); }

GapMap<Unit> GapSet::as_map() const {
  std::vector<GapMap<Unit>::Entry> entries;
  for (const Nat& g : gaps_) entries.push_back({g, Unit{}});
  return GapMap<Unit>(std::move(entries));
}

GapSet GapSet::from_map(const GapMap<Unit>& m) {
  std::vector<Nat> gaps;
  for (const auto& e : m.entries()) gaps.push_back(e.gap);
  return GapSet(std::move(gaps));
}

GapSet set_union(const GapSet& a, const GapSet& b) { return merge(a, b, Keep::Union); }
GapSet set_intersection(const GapSet& a, const GapSet& b) { return merge(a, b, Keep::Intersection); }
GapSet set_difference(const GapSet& a, const GapSet& b) { return merge(a, b, Keep::Difference); }
bool is_subset(const GapSet& a, const GapSet& b) { return set_difference(a, b).empty(); }

std::string format_elements(const GapSet& s) { return join(s.elements(), '{', '}'); }
std::string format_gaps(const GapSet& s) { return join(s.gaps(), '[', ']'); }

GapSet parse_element_literal(std::string_view text) {
  const std::vector<Nat> xs = parse_list(text, '{', '}');
  return GapSet::from_elements(xs);
}

GapSet parse_gap_literal(std::string_view text) { return GapSet(parse_list(text, '[', ']')); }

TermSet::TermSet(PlanPtr plan, std::string type, Nat index)
    : plan_(std::move(plan)), type_(std::move(type)), index_(std::move(index)) {
  const std::size_t t = plan_->signature().type_id(type_);
  if (!plan_->signature().index_in_range(t, index_)) {
    throw TermError("index " + index_.str() + " is out of range for type '" + type_ + "'");
  }
}

Nat TermSet::code(const Term& t) const {
  check_term(plan_->signature(), type_, index_, CountVector{}, t);
  return encode_closed(*plan_, type_, index_, t);
}

void TermSet::require_compatible(const TermSet& o) const {
  if (plan_ != o.plan_ || type_ != o.type_ || index_ != o.index_) {
    throw TermError("term sets over different types cannot be combined");
  }
}

TermSet TermSet::insert(const Term& t) const { return with_codes(codes_.insert(code(t))); }
TermSet TermSet::remove(const Term& t) const { return with_codes(codes_.remove(code(t))); }
bool TermSet::member(const Term& t) const { return codes_.member(code(t)); }

std::vector<Term> TermSet::elements() const {
  std::vector<Term> out;
  for (const Nat& c : codes_.elements()) out.push_back(decode_closed(*plan_, type_, index_, c));
  return out;
}

TermSet TermSet::with_codes(GapSet codes) const {
  TermSet s = *this;
  s.codes_ = std::move(codes);
  return s;
}

TermSet set_union(const TermSet& a, const TermSet& b) {
  a.require_compatible(b);
  return a.with_codes(set_union(a.codes_, b.codes_));
}

TermSet set_intersection(const TermSet& a, const TermSet& b) {
  a.require_compatible(b);
  return a.with_codes(set_intersection(a.codes_, b.codes_));
}

TermSet set_difference(const TermSet& a, const TermSet& b) {
  a.require_compatible(b);
  return a.with_codes(set_difference(a.codes_, b.codes_));
}

bool is_subset(const TermSet& a, const TermSet& b) {
  a.require_compatible(b);
  return is_subset(a.codes_, b.codes_);
}

bool operator==(const TermSet& a, const TermSet& b) {
  return a.plan_ == b.plan_ && a.type_ == b.type_ && a.index_ == b.index_ && a.codes_ == b.codes_;
}

}  // namespace godelgen
