#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "dcc/types.hpp"

namespace dcc {

// Exact rational over int64 with 128-bit intermediates. Always normalized:
// gcd(num, den) == 1 and den > 0. Token arithmetic floors against rationals
// so conservation identities stay exact; quantize() bounds denominator growth
// for values that are updated multiplicatively every epoch.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

  static Rational parse(std::string_view text);  // "n", "-n", or "n/d"

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;
  Rational operator-() const;

  bool operator==(const Rational& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }
  std::strong_ordering operator<=>(const Rational& other) const;

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }
  Rational inverse() const;

  // Largest representable value on the grid {k/max_den} not exceeding *this.
  Rational quantize_floor(std::int64_t max_den) const;

  // "num/den", den always printed ("3/2", "5/1", "-1/4").
  std::string str() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// floor(amount * r); amount >= 0, r >= 0.
Amount floor_mul(Amount amount, const Rational& r);
// floor(amount / r); r > 0.
Amount floor_div(Amount amount, const Rational& r);

inline Rational clamp(const Rational& value, const Rational& lo, const Rational& hi) {
  if (value < lo) return lo;
  if (value > hi) return hi;
  return value;
}

}  // namespace dcc
