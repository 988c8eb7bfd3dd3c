#include "superprolong/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace superprolong {

namespace {

using i128 = __int128;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  std::uint64_t x = a < 0 ? 0 - static_cast<std::uint64_t>(a) : a;
  std::uint64_t y = b < 0 ? 0 - static_cast<std::uint64_t>(b) : b;
  while (y != 0) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  return static_cast<std::int64_t>(x);
}

bool fits(i128 x) { return x > INT64_MIN && x <= INT64_MAX; }

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (neg) z = -z;
  return z;
}

bool mpz_fits_i64(const mpz_class& z) {
  // Excludes INT64_MIN so that negation stays in range.
  static const mpz_class lo(std::to_string(INT64_MIN + 1));
  static const mpz_class hi(std::to_string(INT64_MAX));
  return z >= lo && z <= hi;
}

std::int64_t mpz_to_i64(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return std::stoll(z.get_str());
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_i128(n, d);
}

Rational Rational::from_i128(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) return Rational();
  if (d != 1) {
    i128 g = gcd128(n, d);
    if (g != 1) {
      n /= g;
      d /= g;
    }
  }
  if (fits(n) && fits(d)) return make_small(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
  mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
  q.canonicalize();
  Rational r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_mpq(const mpq_class& q_in) {
  mpq_class q(q_in);
  q.canonicalize();
  if (mpz_fits_i64(q.get_num()) && mpz_fits_i64(q.get_den()))
    return make_small(mpz_to_i64(q.get_num()), mpz_to_i64(q.get_den()));
  Rational r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw std::invalid_argument("bad rational literal: " + std::string(text));
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + std::string(text));
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in: " + std::string(text));
  return from_mpq(q);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_from_i128(num_), mpz_from_i128(den_));
  return q;
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

std::size_t Rational::height() const {
  if (big_)
    return mpz_sizeinbase(big_->get_num_mpz_t(), 2) + mpz_sizeinbase(big_->get_den_mpz_t(), 2);
  auto bits = [](std::int64_t x) {
    std::uint64_t m = x < 0 ? 0 - static_cast<std::uint64_t>(x) : x;
    return m == 0 ? 0 : 64 - __builtin_clzll(m);
  };
  return static_cast<std::size_t>(bits(num_) + bits(den_));
}

Rational Rational::operator-() const {
  if (!big_) return make_small(-num_, den_);
  return from_mpq(-*big_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(i128(a.num_) + b.num_, 1);
    if (a.den_ == b.den_) return Rational::from_i128(i128(a.num_) + b.num_, a.den_);
    std::int64_t g = gcd64(a.den_, b.den_);
    std::int64_t ad = a.den_ / g, bd = b.den_ / g;
    return Rational::from_i128(i128(a.num_) * bd + i128(b.num_) * ad, i128(a.den_) * bd);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(i128(a.num_) * b.num_, 1);
    // Cross-cancel first so the products stay small.
    std::int64_t g1 = gcd64(a.num_, b.den_);
    std::int64_t g2 = gcd64(b.num_, a.den_);
    i128 n = i128(a.num_ / g1) * (b.num_ / g2);
    i128 d = i128(a.den_ / g2) * (b.den_ / g1);
    if (fits(n) && fits(d)) return Rational::make_small(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    return Rational::from_i128(n, d);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  if (!b.big_) {
    Rational inv = b.num_ < 0 ? Rational::make_small(-b.den_, -b.num_) : Rational::make_small(b.den_, b.num_);
    return a * inv;
  }
  return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = i128(a.num_) * b.den_, r = i128(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

}  // namespace superprolong
