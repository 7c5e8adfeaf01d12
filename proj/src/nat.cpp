#include "godelgen/nat.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace godelgen {

namespace {

using Int = Nat::Int;

std::uint64_t spread_bits(std::uint32_t x) {
  std::uint64_t v = x;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v << 2)) & 0x3333333333333333ull;
  v = (v | (v << 1)) & 0x5555555555555555ull;
  return v;
}

std::uint32_t compact_bits(std::uint64_t v) {
  v &= 0x5555555555555555ull;
  v = (v | (v >> 1)) & 0x3333333333333333ull;
  v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v >> 4)) & 0x00FF00FF00FF00FFull;
  v = (v | (v >> 8)) & 0x0000FFFF0000FFFFull;
  v = (v | (v >> 16)) & 0x00000000FFFFFFFFull;
  return static_cast<std::uint32_t>(v);
}

// Little-endian limbs, least significant first.
template <typename Limb>
std::vector<Limb> limbs_of(const Int& v) {
  std::vector<Limb> out;
  boost::multiprecision::export_bits(v, std::back_inserter(out), sizeof(Limb) * 8, false);
  return out;
}

template <typename Limb>
Int from_limbs(const std::vector<Limb>& limbs) {
  Int v;
  if (!limbs.empty()) {
    boost::multiprecision::import_bits(v, limbs.begin(), limbs.end(), sizeof(Limb) * 8, false);
  }
  return v;
}

}  // namespace

Nat::Nat(const Int& v) {
  if (v.sign() < 0) throw std::domain_error("Nat: negative value");
  assign(v);
}

void Nat::assign(Int v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) {
    small_ = v.convert_to<std::uint64_t>();
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_shared<const Int>(std::move(v));
  }
}

Nat Nat::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Nat: empty numeral");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("Nat: not a decimal numeral: '" + std::string(text) + "'");
    }
  }
  return Nat(Int(std::string(text)));
}

std::string Nat::str() const { return big_ ? big_->str() : std::to_string(small_); }

std::size_t Nat::bit_length() const {
  if (big_) return boost::multiprecision::msb(*big_) + 1;
  return small_ == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(small_));
}

bool Nat::bit(std::size_t k) const {
  if (big_) return boost::multiprecision::bit_test(*big_, k);
  return k < 64 && ((small_ >> k) & 1) != 0;
}

std::uint64_t Nat::to_u64() const {
  if (big_) throw std::overflow_error("Nat: value exceeds 64 bits: " + str());
  return small_;
}

Nat& Nat::add_slow(const Nat& o) {
  assign(value() + o.value());
  return *this;
}

Nat& Nat::sub_slow(const Nat& o) {
  if (*this < o) throw std::domain_error("Nat: subtraction underflow");
  assign(value() - o.value());
  return *this;
}

Nat& Nat::operator*=(const Nat& o) {
  std::uint64_t r;
  if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  assign(value() * o.value());
  return *this;
}

Nat::DivMod Nat::divmod(const Nat& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("Nat: division by zero");
  if (!big_ && !divisor.big_) return {Nat(small_ / divisor.small_), Nat(small_ % divisor.small_)};
  Int q;
  Int r;
  boost::multiprecision::divide_qr(value(), divisor.value(), q, r);
  return {Nat(q), Nat(r)};
}

std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.str(); }

Nat mingle(const Nat& a, const Nat& b) {
  if (a.fits_u32() && b.fits_u32()) {
    return Nat((spread_bits(static_cast<std::uint32_t>(a.to_u64())) << 1) | spread_bits(static_cast<std::uint32_t>(b.to_u64())));
  }
  const auto la = limbs_of<std::uint32_t>(a.value());
  const auto lb = limbs_of<std::uint32_t>(b.value());
  std::vector<std::uint64_t> out(std::max(la.size(), lb.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t hi = i < la.size() ? la[i] : 0;
    const std::uint32_t lo = i < lb.size() ? lb[i] : 0;
    out[i] = (spread_bits(hi) << 1) | spread_bits(lo);
  }
  return Nat(from_limbs(out));
}

std::pair<Nat, Nat> unmingle(const Nat& n) {
  if (n.fits_u64()) {
    const std::uint64_t v = n.to_u64();
    return {Nat(compact_bits(v >> 1)), Nat(compact_bits(v))};
  }
  const auto limbs = limbs_of<std::uint64_t>(n.value());
  std::vector<std::uint32_t> odd(limbs.size());
  std::vector<std::uint32_t> even(limbs.size());
  for (std::size_t i = 0; i < limbs.size(); ++i) {
    odd[i] = compact_bits(limbs[i] >> 1);
    even[i] = compact_bits(limbs[i]);
  }
  return {Nat(from_limbs(odd)), Nat(from_limbs(even))};
}

Nat mingle_fold(std::span<const Nat> codes) {
  if (codes.empty()) throw std::invalid_argument("mingle_fold: empty sequence");
  Nat acc = codes.front();
  for (std::size_t i = 1; i < codes.size(); ++i) acc = mingle(acc, codes[i]);
  return acc;
}

std::vector<Nat> unmingle_fold(const Nat& n, std::size_t arity) {
  if (arity == 0) throw std::invalid_argument("unmingle_fold: arity must be positive");
  std::vector<Nat> out(arity);
  Nat rest = n;
  for (std::size_t i = arity - 1; i > 0; --i) {
    auto [front, last] = unmingle(rest);
    out[i] = std::move(last);
    rest = std::move(front);
  }
  out[0] = std::move(rest);
  return out;
}

}  // namespace godelgen
