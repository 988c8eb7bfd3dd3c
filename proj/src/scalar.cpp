#include "superprolong/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace superprolong {

namespace {

// Parses a real coefficient that may be empty or a lone sign ("" -> 1, "-" -> -1).
Rational parse_coefficient(std::string_view s) {
  if (s.empty() || s == "+") return Rational(1);
  if (s == "-") return Rational(-1);
  return Rational::parse(s);
}

Rational parse_imaginary(std::string_view s) {
  // s ends with 'i' and optionally "*i"
  s.remove_suffix(1);
  if (!s.empty() && s.back() == '*') s.remove_suffix(1);
  return parse_coefficient(s);
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  if (s.back() != 'i') return Scalar(Rational::parse(s));
  // Split at the last sign that is not the first character.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k)
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  try {
    if (split == std::string::npos) return Scalar(Rational(0), parse_imaginary(s));
    std::string_view sv(s);
    return Scalar(Rational::parse(sv.substr(0, split)), parse_imaginary(sv.substr(split)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad scalar literal: " + std::string(text));
  }
}

std::string Scalar::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string out = re_.to_string();
  if (im_.sign() > 0) out += '+';
  return out + im_.to_string() + "*i";
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ + b.re_);
  return Scalar(a.re_ + b.re_, a.im_ + b.im_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ - b.re_);
  return Scalar(a.re_ - b.re_, a.im_ - b.im_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (!o.im_.is_zero()) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (!o.im_.is_zero()) im_ -= o.im_;
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.im_.is_zero()) {
    if (b.im_.is_zero()) return Scalar(a.re_ * b.re_);
    return Scalar(a.re_ * b.re_, a.re_ * b.im_);
  }
  if (b.im_.is_zero()) return Scalar(a.re_ * b.re_, a.im_ * b.re_);
  return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw std::domain_error("scalar division by zero");
  if (b.im_.is_zero()) {
    if (a.im_.is_zero()) return Scalar(a.re_ / b.re_);
    return Scalar(a.re_ / b.re_, a.im_ / b.re_);
  }
  Rational n = b.re_ * b.re_ + b.im_ * b.im_;
  Scalar num = a * b.conj();
  return Scalar(num.re_ / n, num.im_ / n);
}

}  // namespace superprolong
