#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "superprolong/scalar.hpp"

namespace superprolong {

using Vec = std::vector<Scalar>;

// Dense row-major matrix over Q(i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Scalar>& data() const { return data_; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;
  std::string to_string() const;

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& m);
  friend Vec operator*(const Matrix& m, const Vec& v);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// Ordinary commutator a*b - b*a.
Matrix commutator(const Matrix& a, const Matrix& b);
// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& block, std::size_t copies);

bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& v);
Scalar dot(const Vec& a, const Vec& b);

}  // namespace superprolong
