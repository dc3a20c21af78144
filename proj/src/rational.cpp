#include "dcc/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace dcc {

namespace {

using Wide = __int128;

std::int64_t checked_narrow(Wide value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    fail(Errc::Overflow, "rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(value);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  require(den != 0, Errc::Overflow, "rational with zero denominator");
  Wide n = num;
  Wide d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = checked_narrow(n);
  den_ = checked_narrow(d);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view part) {
    std::int64_t value = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || part.empty()) {
      fail(Errc::ParseError, "bad rational '" + std::string(part) + "'");
    }
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text), 1);
  }
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

namespace {

Rational make_reduced(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(checked_narrow(num), checked_narrow(den));
}

}  // namespace

Rational Rational::operator+(const Rational& other) const {
  return make_reduced(Wide(num_) * other.den_ + Wide(other.num_) * den_,
                      Wide(den_) * other.den_);
}

Rational Rational::operator-(const Rational& other) const {
  return make_reduced(Wide(num_) * other.den_ - Wide(other.num_) * den_,
                      Wide(den_) * other.den_);
}

Rational Rational::operator*(const Rational& other) const {
  return make_reduced(Wide(num_) * other.num_, Wide(den_) * other.den_);
}

Rational Rational::operator/(const Rational& other) const {
  require(other.num_ != 0, Errc::Overflow, "rational division by zero");
  return make_reduced(Wide(num_) * other.den_, Wide(den_) * other.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  Wide lhs = Wide(num_) * other.den_;
  Wide rhs = Wide(other.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::inverse() const {
  require(num_ != 0, Errc::Overflow, "inverse of zero");
  return Rational(den_, num_);
}

Rational Rational::quantize_floor(std::int64_t max_den) const {
  require(max_den >= 1, Errc::Overflow, "quantize grid must be positive");
  if (den_ <= max_den) return *this;
  Wide scaled = Wide(num_) * max_den;
  Wide q = scaled / den_;
  if (scaled % den_ != 0 && scaled < 0) q -= 1;  // floor toward -inf
  return Rational(checked_narrow(q), max_den);
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Amount floor_mul(Amount amount, const Rational& r) {
  require(amount >= 0 && !r.is_negative(), Errc::Overflow, "floor_mul domain");
  Wide scaled = Wide(amount) * r.num();
  return checked_narrow(scaled / r.den());
}

Amount floor_div(Amount amount, const Rational& r) {
  require(amount >= 0 && r.num() > 0, Errc::Overflow, "floor_div domain");
  Wide scaled = Wide(amount) * r.den();
  return checked_narrow(scaled / r.num());
}

}  // namespace dcc
