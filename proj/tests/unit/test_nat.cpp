#include <random>

#include "doctest.h"
#include "godelgen/nat.hpp"

using godelgen::Nat;

namespace {

// Bit-by-bit interleave, independent of the limb-based implementation.
Nat oracle_mingle(const Nat& a, const Nat& b) {
  Nat out;
  Nat weight(1);
  const std::size_t n = std::max(a.bit_length(), b.bit_length());
  for (std::size_t k = 0; k < n; ++k) {
    if (b.bit(k)) out += weight;
    weight *= Nat(2);
    if (a.bit(k)) out += weight;
    weight *= Nat(2);
  }
  return out;
}

Nat random_nat(std::mt19937_64& rng, std::size_t limbs) {
  Nat n;
  for (std::size_t i = 0; i < limbs; ++i) {
    n *= Nat(1ull << 32);
    n *= Nat(1ull << 32);
    n += Nat(rng());
  }
  return n;
}

}  // namespace

TEST_CASE("mingle table") {
  // Row a, column b.
  const std::uint64_t table[4][4] = {{0, 1, 4, 5}, {2, 3, 6, 7}, {8, 9, 12, 13}, {10, 11, 14, 15}};
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) CHECK(godelgen::mingle(a, b) == Nat(table[a][b]));
  }
  CHECK(godelgen::mingle(2, 3) == Nat(13));
  CHECK(godelgen::mingle(3, 2) == Nat(14));
}

TEST_CASE("unmingle examples") {
  CHECK(godelgen::unmingle(13) == std::pair<Nat, Nat>(2, 3));
  CHECK(godelgen::unmingle(1) == std::pair<Nat, Nat>(0, 1));
  CHECK(godelgen::unmingle(0) == std::pair<Nat, Nat>(0, 0));
}

TEST_CASE("mingle agrees with the bitwise oracle") {
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) CHECK(godelgen::mingle(a, b) == oracle_mingle(a, b));
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Nat a = random_nat(rng, 1 + i % 5);
    const Nat b = random_nat(rng, 1 + (i / 5) % 5);
    CHECK(godelgen::mingle(a, b) == oracle_mingle(a, b));
    CHECK(godelgen::unmingle(godelgen::mingle(a, b)) == std::pair<Nat, Nat>(a, b));
  }
}

TEST_CASE("mingle is a bijection on small values") {
  for (std::uint64_t n = 0; n < 4096; ++n) {
    auto [a, b] = godelgen::unmingle(n);
    REQUIRE(godelgen::mingle(a, b) == Nat(n));
  }
  for (std::uint64_t a = 0; a < 4096; a += 7) {
    for (std::uint64_t b = 0; b < 4096; b += 5) {
      REQUIRE(godelgen::unmingle(godelgen::mingle(a, b)) == std::pair<Nat, Nat>(a, b));
    }
  }
}

TEST_CASE("mingle grows except at 0 and 1") {
  for (std::uint64_t a = 0; a < 128; ++a) {
    for (std::uint64_t b = 0; b < 128; ++b) {
      const Nat m = godelgen::mingle(a, b);
      CHECK(m >= Nat(std::max(a, b)));
      if (m >= Nat(2)) CHECK(m > Nat(std::max(a, b)));
    }
  }
}

TEST_CASE("mingle_fold") {
  const std::vector<Nat> seven{7};
  CHECK(godelgen::mingle_fold(seven) == Nat(7));
  const std::vector<Nat> pair{2, 3};
  CHECK(godelgen::mingle_fold(pair) == Nat(13));
  const std::vector<Nat> triple{0, 0, 1};
  CHECK(godelgen::mingle_fold(triple) == Nat(1));
  CHECK(godelgen::unmingle_fold(13, 2) == pair);
  CHECK(godelgen::unmingle_fold(7, 1) == seven);
  CHECK(godelgen::unmingle_fold(1, 3) == triple);
  CHECK_THROWS_AS(godelgen::mingle_fold(std::vector<Nat>{}), std::invalid_argument);

  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::uint64_t n = 0; n < 2048; ++n) {
      const auto parts = godelgen::unmingle_fold(n, k);
      REQUIRE(parts.size() == k);
      REQUIRE(godelgen::mingle_fold(parts) == Nat(n));
    }
  }
}

TEST_CASE("arithmetic") {
  const Nat big = Nat::parse("340282366920938463463374607431768211456");  // 2^128
  CHECK(big.bit_length() == 129);
  CHECK((big - Nat(1)).bit_length() == 128);
  auto [q, r] = (big + Nat(5)).divmod(Nat(3));
  CHECK(q * Nat(3) + r == big + Nat(5));
  CHECK(r < Nat(3));
  CHECK_THROWS_AS(Nat(1) - Nat(2), std::domain_error);
  CHECK_THROWS_AS(Nat(1).divmod(Nat(0)), std::domain_error);
  CHECK_THROWS(Nat::parse("12a"));
  CHECK(Nat::parse("0").is_zero());
  CHECK(big.str() == "340282366920938463463374607431768211456");
  CHECK_THROWS_AS(big.to_u64(), std::overflow_error);
}
