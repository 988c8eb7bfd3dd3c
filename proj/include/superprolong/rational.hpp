#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace superprolong {

// Arbitrary precision rational number.
//
// Values whose reduced numerator and denominator fit in 63 bits are kept
// inline; everything else lives in a shared, immutable GMP rational. The
// representation is canonical: a value is stored in the big form only when it
// does not fit the small one, so equality never needs to normalize.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) {
    if (n != INT64_MIN) num_ = n;
    else *this = from_i128(n, 1);
  }
  Rational(std::int64_t n, std::int64_t d);
  Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}

  static Rational from_mpq(const mpq_class& q);
  static Rational parse(std::string_view text);

  mpq_class to_mpq() const;
  std::string to_string() const;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const;
  // Rough size measure used to prefer simple pivots.
  std::size_t height() const;
  bool is_small() const { return !big_; }
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational make_small(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }
  static Rational from_i128(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace superprolong
