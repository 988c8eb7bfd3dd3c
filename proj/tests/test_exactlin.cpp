#include <random>

#include "doctest.h"
#include "superprolong/errors.hpp"
#include "superprolong/linalg.hpp"
#include "test_support.hpp"

using namespace superprolong;
using test_support::cofactor_det;
using test_support::random_low_rank;
using test_support::random_matrix;
using test_support::random_scalar;

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a(1, 3), b(-2, 6);
  CHECK(a + b == Rational(0));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(6, -4).to_string() == "-3/2");
  CHECK(Rational::parse(" 10/4 ") == Rational(5, 2));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));

  // Overflow into the GMP representation and back.
  Rational big(INT64_MAX);
  Rational sq = big * big;
  CHECK_FALSE(sq.is_small());
  CHECK(sq / big == big);
  CHECK((sq / big).is_small());
  CHECK(Rational(INT64_MIN) + Rational(1) == Rational(INT64_MIN + 1));
  CHECK(-Rational(INT64_MIN) == Rational(INT64_MAX) + Rational(1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) > Rational(-1, 2));
}

TEST_CASE("rational round trip under random operations") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-1000000007LL, 1000000007LL);
  for (int k = 0; k < 500; ++k) {
    Rational a(d(rng), d(rng) | 1), b(d(rng), d(rng) | 1);
    Rational c = a;
    for (int j = 0; j < 4; ++j) c = c * b + a;
    for (int j = 0; j < 4; ++j) c = (c - a) / b;
    CHECK(c == a);
    CHECK((a + b) - b == a);
    CHECK(Rational::parse(c.to_string()) == c);
  }
}

TEST_CASE("gaussian rational scalars") {
  Scalar i = Scalar::i();
  CHECK(i * i == Scalar(-1));
  Scalar z(Rational(1, 2), Rational(-3));
  CHECK(z.to_string() == "1/2-3*i");
  CHECK(Scalar::parse("1/2-3*i") == z);
  CHECK(Scalar::parse("1/2+3/4*i") == Scalar(Rational(1, 2), Rational(3, 4)));
  CHECK(Scalar::parse("-i") == -i);
  CHECK(Scalar::parse("2*i") == Scalar(Rational(0), Rational(2)));
  CHECK(Scalar::parse("-5/3") == Scalar(Rational(-5, 3)));
  CHECK(z / z == Scalar(1));
  CHECK_THROWS(Scalar::parse("1+2*j"));

  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    Scalar a = random_scalar(rng, 50), b = random_scalar(rng, 50);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Scalar::parse(a.to_string()) == a);
  }
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix::identity(2)) == 2);
  CHECK(rank(Matrix(3, 5)) == 0);
  Scalar i = Scalar::i();
  CHECK(rank(Matrix{{1, i}, {i, -1}}) == 1);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Matrix::identity(3)).empty());
  CHECK(kernel_basis(Matrix(2, 3)).size() == 3);
  auto k = kernel_basis(Matrix{{1, 1, 0}});
  REQUIRE(k.size() == 2);
  for (const auto& v : k) {
    CHECK(is_zero(Matrix{{1, 1, 0}} * v));
    // leading entry normalized to 1
    std::size_t lead = 0;
    while (v[lead].is_zero()) ++lead;
    CHECK(v[lead].is_one());
  }
}

TEST_CASE("solve examples") {
  Vec b{Scalar(3), Scalar::i()};
  CHECK(solve(Matrix::identity(2), b) == b);
  CHECK_THROWS_AS(solve(Matrix(2, 2), b), InconsistentSystem);
  CHECK_FALSE(try_solve(Matrix(2, 2), b).has_value());
  CHECK(solve(Matrix{{2}}, Vec{Scalar(1)}) == Vec{Scalar::frac(1, 2)});
}

TEST_CASE("rank-nullity, kernel and solve properties on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7, k = rng() % 5;
    Matrix m = (trial % 2) ? random_low_rank(rng, r, c, k) : random_matrix(rng, r, c, 4, trial % 3 == 0);
    auto ker = kernel_basis(m);
    CHECK(rank(m) + ker.size() == c);
    CHECK(rank_of(ker) == ker.size());
    for (const auto& v : ker) CHECK(is_zero(m * v));

    Vec x(c);
    for (auto& e : x) e = random_scalar(rng, 5);
    Vec b = m * x;
    auto sol = try_solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == b);
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 1 + trial % 4;
    Matrix m = random_matrix(rng, n, n, 5, trial % 2 == 0);
    CHECK(determinant(m) == cofactor_det(m));
    if (!determinant(m).is_zero()) CHECK((inverse(m) * m).is_identity());
  }
  CHECK(determinant(random_low_rank(rng, 4, 4, 2)).is_zero());
}

TEST_CASE("sparse kernel matches dense kernel") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t cols = 3 + rng() % 12;
    std::vector<SparseRow> rows;
    Matrix dense(0, cols);
    std::vector<Vec> dense_rows;
    std::size_t nrows = rng() % 10;
    for (std::size_t r = 0; r < nrows; ++r) {
      SparseRow row;
      Vec d(cols);
      for (int e = 0; e < 2; ++e) {
        std::size_t c = rng() % cols;
        Scalar x = random_scalar(rng, 3, false);
        row.add(c, x);
        d[c] += x;
      }
      rows.push_back(row);
      dense_rows.push_back(d);
    }
    Matrix m = Matrix::from_rows(dense_rows, cols);
    auto res = sparse_kernel(cols, rows);
    CHECK(res.basis.size() == cols - rank(m));
    CHECK(res.rank == rank(m));
    for (std::size_t k = 0; k < res.basis.size(); ++k) {
      CHECK(is_zero(m * res.basis[k]));
      CHECK(res.basis[k][res.free_cols[k]].is_one());
      for (std::size_t j = 0; j < res.basis.size(); ++j)
        if (j != k) CHECK(res.basis[j][res.free_cols[k]].is_zero());
    }
  }
}
