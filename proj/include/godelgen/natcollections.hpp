#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "godelgen/codec.hpp"
#include "godelgen/nat.hpp"
#include "godelgen/term.hpp"

namespace godelgen {

// Finite map from naturals, stored as (gap, value) pairs: the first key is
// the first gap, each later key is the previous key plus gap plus one. Every
// sequence of pairs is a valid map and each map has exactly one sequence.
template <class V>
class GapMap {
 public:
  struct Entry {
    Nat gap;
    V value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  GapMap() = default;
  explicit GapMap(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  // Later pairs win on duplicate keys.
  static GapMap from_items(std::vector<std::pair<Nat, V>> items) {
    GapMap m;
    for (auto& [k, v] : items) m = m.insert(k, std::move(v));
    return m;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  Nat size() const { return Nat(entries_.size()); }

  std::vector<std::pair<Nat, V>> items() const {
    std::vector<std::pair<Nat, V>> out;
    Nat key;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      key = i == 0 ? entries_[i].gap : key + entries_[i].gap + Nat(1);
      out.emplace_back(key, entries_[i].value);
    }
    return out;
  }

  std::vector<Nat> keys() const {
    std::vector<Nat> out;
    for (auto& [k, v] : items()) out.push_back(k);
    return out;
  }

  std::optional<V> lookup(const Nat& key) const {
    Nat k;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      k = i == 0 ? entries_[i].gap : k + entries_[i].gap + Nat(1);
      if (k == key) return entries_[i].value;
      if (k > key) break;
    }
    return std::nullopt;
  }

  GapMap insert(const Nat& key, V value) const {
    auto all = items();
    auto it = all.begin();
    while (it != all.end() && it->first < key) ++it;
    if (it != all.end() && it->first == key) {
      it->second = std::move(value);
    } else {
      all.insert(it, {key, std::move(value)});
    }
    return from_sorted(std::move(all));
  }

  GapMap remove(const Nat& key) const {
    auto all = items();
    std::erase_if(all, [&](const auto& kv) { return kv.first == key; });
    return from_sorted(std::move(all));
  }

  // Keys must be strictly increasing.
  static GapMap from_sorted(std::vector<std::pair<Nat, V>> items) {
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0 && !(items[i - 1].first < items[i].first)) {
        throw std::invalid_argument("GapMap keys must be strictly increasing");
      }
      Nat gap = i == 0 ? items[i].first : items[i].first - items[i - 1].first - Nat(1);
      entries.push_back(Entry{std::move(gap), std::move(items[i].second)});
    }
    return GapMap(std::move(entries));
  }

  friend bool operator==(const GapMap&, const GapMap&) = default;

 private:
  std::vector<Entry> entries_;
};

struct Unit {
  friend bool operator==(Unit, Unit) = default;
};

// Finite set of naturals in gap form: {4, 11, 96} is [4, 6, 84].
class GapSet {
 public:
  GapSet() = default;
  // Any sequence of naturals is a set.
  explicit GapSet(std::vector<Nat> gaps) : gaps_(std::move(gaps)) {}

  // Duplicates collapse; order does not matter.
  static GapSet from_elements(std::span<const Nat> xs);
  std::vector<Nat> elements() const;
  const std::vector<Nat>& gaps() const { return gaps_; }

  bool member(const Nat& x) const;
  GapSet insert(const Nat& x) const;
  GapSet remove(const Nat& x) const;
  Nat size() const { return Nat(gaps_.size()); }
  bool empty() const { return gaps_.empty(); }

  GapMap<Unit> as_map() const;
  static GapSet from_map(const GapMap<Unit>& m);

  friend bool operator==(const GapSet&, const GapSet&) = default;

 private:
  std::vector<Nat> gaps_;
};

GapSet set_union(const GapSet& a, const GapSet& b);
GapSet set_intersection(const GapSet& a, const GapSet& b);
GapSet set_difference(const GapSet& a, const GapSet& b);
bool is_subset(const GapSet& a, const GapSet& b);

// `{4,11,96}` and `[4,6,84]`. Parsing accepts optional whitespace and throws
// std::invalid_argument on malformed input.
std::string format_elements(const GapSet& s);
std::string format_gaps(const GapSet& s);
GapSet parse_element_literal(std::string_view text);
GapSet parse_gap_literal(std::string_view text);

using PlanPtr = std::shared_ptr<const CodecPlan>;

// Set of closed terms of one (type, index), held as the set of their codes.
class TermSet {
 public:
  TermSet(PlanPtr plan, std::string type, Nat index);

  TermSet insert(const Term& t) const;
  TermSet remove(const Term& t) const;
  bool member(const Term& t) const;
  Nat size() const { return codes_.size(); }
  // Canonical (decoded) terms in code order.
  std::vector<Term> elements() const;
  const GapSet& codes() const { return codes_; }
  TermSet with_codes(GapSet codes) const;

  friend TermSet set_union(const TermSet& a, const TermSet& b);
  friend TermSet set_intersection(const TermSet& a, const TermSet& b);
  friend TermSet set_difference(const TermSet& a, const TermSet& b);
  friend bool is_subset(const TermSet& a, const TermSet& b);
  friend bool operator==(const TermSet& a, const TermSet& b);

 private:
  Nat code(const Term& t) const;
  void require_compatible(const TermSet& o) const;

  PlanPtr plan_;
  std::string type_;
  Nat index_;
  GapSet codes_;
};

// Map keyed by closed terms of one (type, index).
template <class V>
class TermMap {
 public:
  TermMap(PlanPtr plan, std::string type, Nat index)
      : plan_(std::move(plan)), type_(std::move(type)), index_(std::move(index)) {}

  TermMap insert(const Term& key, V value) const {
    TermMap m = *this;
    m.map_ = map_.insert(code(key), std::move(value));
    return m;
  }
  TermMap remove(const Term& key) const {
    TermMap m = *this;
    m.map_ = map_.remove(code(key));
    return m;
  }
  std::optional<V> lookup(const Term& key) const { return map_.lookup(code(key)); }
  Nat size() const { return map_.size(); }
  const GapMap<V>& codes() const { return map_; }

  std::vector<std::pair<Term, V>> items() const {
    std::vector<std::pair<Term, V>> out;
    for (auto& [k, v] : map_.items()) out.emplace_back(decode_closed(*plan_, type_, index_, k), v);
    return out;
  }

 private:
  Nat code(const Term& t) const {
    check_term(plan_->signature(), type_, index_, CountVector{}, t);
    return encode_closed(*plan_, type_, index_, t);
  }

  PlanPtr plan_;
  std::string type_;
  Nat index_;
  GapMap<V> map_;
};

}  // namespace godelgen
