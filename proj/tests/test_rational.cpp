#include <doctest.h>

#include "dcc/rational.hpp"

using dcc::Amount;
using dcc::DccError;
using dcc::Rational;

TEST_CASE("rationals normalize on construction") {
  CHECK(Rational(4, 8) == Rational(1, 2));
  CHECK(Rational(-4, 8) == Rational(-1, 2));
  CHECK(Rational(4, -8) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(7, 7).is_integer());
}

TEST_CASE("arithmetic stays exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(a.inverse() == Rational(3));
  CHECK(Rational(2) * (Rational(1) + Rational(1, 2) * Rational(20, 120)) ==
        Rational(13, 6));
}

TEST_CASE("ordering crosses denominators") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 3) > Rational(3, 5));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(5, 10) == Rational(1, 2));
}

TEST_CASE("parse and print round-trip") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational::parse("x/y"), DccError);
  CHECK_THROWS_AS(Rational::parse("1/0"), DccError);
  CHECK_THROWS_AS(Rational::parse(""), DccError);
}

TEST_CASE("floor_mul and floor_div match 128-bit integer oracle") {
  // independent oracle: full-width product/quotient with explicit floor
  auto oracle_mul = [](Amount a, std::int64_t num, std::int64_t den) {
    return static_cast<Amount>(static_cast<__int128>(a) * num / den);
  };
  auto oracle_div = [](Amount a, std::int64_t num, std::int64_t den) {
    return static_cast<Amount>(static_cast<__int128>(a) * den / num);
  };
  std::uint64_t x = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < 2000; ++i) {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    Amount a = static_cast<Amount>(x % 1000000007ull);
    std::int64_t num = 1 + static_cast<std::int64_t>((x >> 17) % 9999);
    std::int64_t den = 1 + static_cast<std::int64_t>((x >> 40) % 9999);
    Rational r(num, den);
    CHECK(dcc::floor_mul(a, r) == oracle_mul(a, num, den));
    CHECK(dcc::floor_div(a, r) == oracle_div(a, num, den));
  }
  CHECK(dcc::floor_mul(3, Rational(1, 2)) == 1);
  CHECK(dcc::floor_div(3, Rational(2)) == 1);
  CHECK(dcc::floor_div(100, Rational(2)) == 50);
}

TEST_CASE("quantize_floor bounds the denominator") {
  Rational q = Rational(13, 6).quantize_floor(1000000);
  CHECK(q.den() <= 1000000);
  CHECK(q <= Rational(13, 6));
  CHECK(Rational(13, 6) - q < Rational(1, 1000000));
  // already-coarse values pass through
  CHECK(Rational(1, 2).quantize_floor(1000000) == Rational(1, 2));
  // negative values floor toward -infinity
  Rational n = Rational(-13, 6).quantize_floor(1000);
  CHECK(n <= Rational(-13, 6));
  CHECK(Rational(-13, 6) - n < Rational(1, 1000));
}

TEST_CASE("clamp") {
  CHECK(dcc::clamp(Rational(5), Rational(0), Rational(2)) == Rational(2));
  CHECK(dcc::clamp(Rational(-1), Rational(0), Rational(2)) == Rational(0));
  CHECK(dcc::clamp(Rational(1), Rational(0), Rational(2)) == Rational(1));
}

TEST_CASE("overflow is detected, not wrapped") {
  Rational big(std::int64_t{1} << 62, 1);
  CHECK_THROWS_AS(big * big, DccError);
}
