#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace godelgen {

// Arbitrary-precision natural number. Every code, level, count and index
// value in the library is a Nat; there is no fixed-width fallback because
// mingle doubles the bit length of its operands. Values below 2^64 are held
// inline, larger ones in a shared immutable cpp_int.
class Nat {
 public:
  using Int = boost::multiprecision::cpp_int;

  Nat() = default;
  Nat(std::uint64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Nat(const Int& v);

  // Decimal digits only; throws std::invalid_argument otherwise.
  static Nat parse(std::string_view text);

  std::string str() const;
  bool is_zero() const { return !big_ && small_ == 0; }
  std::size_t bit_length() const;
  bool bit(std::size_t k) const;

  bool fits_u64() const { return !big_; }
  bool fits_u32() const { return !big_ && small_ <= 0xffffffffu; }
  // Throws std::overflow_error when the value needs more than 64 bits.
  std::uint64_t to_u64() const;

  Nat& operator+=(const Nat& o) {
    if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &small_)) return *this;
    return add_slow(o);
  }
  // Throws std::domain_error when the result would be negative.
  Nat& operator-=(const Nat& o) {
    if (!big_ && !o.big_ && small_ >= o.small_) {
      small_ -= o.small_;
      return *this;
    }
    return sub_slow(o);
  }
  Nat& operator*=(const Nat& o);

  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator-(Nat a, const Nat& b) { return a -= b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }

  struct DivMod;
  // Throws std::domain_error on a zero divisor.
  DivMod divmod(const Nat& divisor) const;

  friend bool operator==(const Nat& a, const Nat& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    return a.big_ && b.big_ && *a.big_ == *b.big_;
  }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    if (!a.big_) return std::strong_ordering::less;
    if (!b.big_) return std::strong_ordering::greater;
    const int c = a.big_->compare(*b.big_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  Int value() const { return big_ ? *big_ : Int(small_); }

 private:
  Nat& add_slow(const Nat& o);
  Nat& sub_slow(const Nat& o);
  void assign(Int v);

  std::uint64_t small_ = 0;
  std::shared_ptr<const Int> big_;  // set exactly when the value exceeds 64 bits
};

struct Nat::DivMod {
  Nat quot;
  Nat rem;
};

std::ostream& operator<<(std::ostream& os, const Nat& n);

// Interleaves bits: bit 2k of the result is bit k of `b`, bit 2k+1 is bit k
// of `a`. So mingle(1, 0) = 2 and mingle(0, 1) = 1.
Nat mingle(const Nat& a, const Nat& b);

// Inverse of mingle: `first` from the odd bit positions, `second` from the even.
std::pair<Nat, Nat> unmingle(const Nat& n);

// Left fold: [x] -> x, [x1..xk] -> mingle(fold([x1..xk-1]), xk).
// Throws std::invalid_argument on an empty sequence.
Nat mingle_fold(std::span<const Nat> codes);

// Inverse of mingle_fold for a fixed arity >= 1.
std::vector<Nat> unmingle_fold(const Nat& n, std::size_t arity);

}  // namespace godelgen
