#pragma once

#include <string>
#include <string_view>

#include "superprolong/rational.hpp"

namespace superprolong {

// Element of Q(i), stored as a pair of exact rationals.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Rational re) : re_(std::move(re)) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  Scalar(int n) : re_(n) {}
  Scalar(std::int64_t n) : re_(n) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar frac(std::int64_t n, std::int64_t d) { return Scalar(Rational(n, d)); }
  // Accepts "a", "a/b", "a/b+c/d*i", "c/d*i", "i", "-i" and similar.
  static Scalar parse(std::string_view text);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  std::size_t height() const { return re_.height() + im_.height(); }

  Scalar conj() const { return Scalar(re_, -im_); }
  std::string to_string() const;

  Scalar operator-() const { return Scalar(-re_, -im_); }
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace superprolong
