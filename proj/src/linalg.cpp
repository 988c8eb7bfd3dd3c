#include "superprolong/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "superprolong/errors.hpp"

namespace superprolong {

RowReducer::RowReducer(std::size_t cols, std::size_t pivot_limit)
    : cols_(cols), limit_(pivot_limit), row_of_col_(cols, -1) {
  if (pivot_limit > cols) throw std::invalid_argument("pivot limit beyond column count");
}

void RowReducer::reduce(Vec& r) const {
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch in reducer");
  for (std::size_t c = limit_; c-- > 0;) {
    long k = row_of_col_[c];
    if (k < 0 || r[c].is_zero()) continue;
    const Vec& p = rows_[static_cast<std::size_t>(k)];
    Scalar f = r[c];
    for (std::size_t j = 0; j < cols_; ++j)
      if (!p[j].is_zero()) r[j] -= f * p[j];
  }
}

bool RowReducer::add_row(Vec r) {
  reduce(r);
  std::size_t piv = limit_;
  for (std::size_t c = limit_; c-- > 0;)
    if (!r[c].is_zero()) {
      piv = c;
      break;
    }
  if (piv == limit_) {
    for (std::size_t c = limit_; c < cols_; ++c)
      if (!r[c].is_zero()) inconsistent_ = true;
    return false;
  }
  if (!r[piv].is_one()) {
    Scalar inv = Scalar(1) / r[piv];
    for (auto& x : r)
      if (!x.is_zero()) x *= inv;
  }
  // Keep the echelon form fully reduced: clear the new pivot column elsewhere.
  for (auto& other : rows_) {
    if (other[piv].is_zero()) continue;
    Scalar f = other[piv];
    for (std::size_t j = 0; j < cols_; ++j)
      if (!r[j].is_zero()) other[j] -= f * r[j];
  }
  row_of_col_[piv] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  return true;
}

bool RowReducer::in_row_space(Vec r) const {
  reduce(r);
  return is_zero(r);
}

std::vector<std::size_t> RowReducer::pivot_columns() const {
  std::vector<std::size_t> out = pivots_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> RowReducer::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < limit_; ++c)
    if (row_of_col_[c] < 0) out.push_back(c);
  return out;
}

std::vector<Vec> RowReducer::kernel_basis() const {
  std::vector<Vec> out;
  for (std::size_t f : free_columns()) {
    Vec v(limit_);
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (!rows_[k][f].is_zero()) v[pivots_[k]] = -rows_[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

Vec RowReducer::particular_solution(std::size_t rhs_col) const {
  Vec x(limit_);
  for (std::size_t k = 0; k < rows_.size(); ++k) x[pivots_[k]] = rows_[k][rhs_col];
  return x;
}

std::size_t rank(const Matrix& m) {
  RowReducer rr(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) rr.add_row(m.row(r));
  return rr.rank();
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  RowReducer rr(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) rr.add_row(m.row(r));
  return rr.kernel_basis();
}

std::optional<Vec> try_solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  RowReducer rr(m.cols() + 1, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vec row = m.row(r);
    row.push_back(b[r]);
    rr.add_row(std::move(row));
    if (rr.inconsistent()) return std::nullopt;
  }
  return rr.particular_solution(m.cols());
}

Vec solve(const Matrix& m, const Vec& b) {
  auto x = try_solve(m, b);
  if (!x) throw InconsistentSystem("linear system has no solution");
  return *x;
}

Scalar determinant(const Matrix& m_in) {
  if (m_in.rows() != m_in.cols()) throw std::invalid_argument("determinant of non-square matrix");
  Matrix m = m_in;
  std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = Scalar(1) / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      Scalar f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  RowReducer rr(2 * n, n);
  for (std::size_t r = 0; r < n; ++r) {
    Vec row = m.row(r);
    row.resize(2 * n);
    row[n + r] = Scalar(1);
    rr.add_row(std::move(row));
  }
  if (rr.rank() != n) throw InconsistentSystem("matrix is singular");
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = rr.row_pivots()[k];
    for (std::size_t j = 0; j < n; ++j) out(p, j) = rr.rows()[k][n + j];
  }
  return out;
}

std::optional<Vec> span_coordinates(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vec{};
    return std::nullopt;
  }
  return try_solve(Matrix::from_columns(basis, v.size()), v);
}

std::size_t rank_of(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  RowReducer rr(vectors.front().size());
  for (const auto& v : vectors) rr.add_row(v);
  return rr.rank();
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

KernelResult sparse_kernel(std::size_t cols, const std::vector<SparseRow>& rows) {
  return sparse_kernel_streamed(cols, [&rows](const RowSink& sink) {
    for (const auto& r : rows) sink(r);
  });
}

KernelResult sparse_kernel_streamed(std::size_t cols, const RowSource& source) {
  UnionFind uf(cols);
  std::vector<char> touched(cols, 0);
  source([&](const SparseRow& row) {
    for (const auto& [c, x] : row.entries) {
      if (c >= cols) throw std::invalid_argument("sparse row column out of range");
      touched[c] = 1;
      uf.unite(row.entries.front().first, c);
    }
  });

  std::vector<std::vector<std::size_t>> members(cols);
  for (std::size_t c = 0; c < cols; ++c)
    if (touched[c]) members[uf.find(c)].push_back(c);
  std::vector<std::size_t> local(cols, 0);
  std::vector<long> slot(cols, -1);
  std::vector<RowReducer> reducers;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!touched[c] || uf.find(c) != c) continue;
    const auto& cs = members[c];
    for (std::size_t k = 0; k < cs.size(); ++k) local[cs[k]] = k;
    slot[c] = static_cast<long>(reducers.size());
    reducers.emplace_back(cs.size());
  }

  source([&](const SparseRow& row) {
    if (row.entries.empty()) return;
    RowReducer& rr = reducers[static_cast<std::size_t>(slot[uf.find(row.entries.front().first)])];
    if (rr.rank() == rr.cols()) return;
    Vec dense(rr.cols());
    for (const auto& [col, x] : row.entries) dense[local[col]] += x;
    rr.add_row(std::move(dense));
  });

  std::vector<std::pair<std::size_t, Vec>> found;
  KernelResult out;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!touched[c]) {
      Vec v(cols);
      v[c] = Scalar(1);
      found.emplace_back(c, std::move(v));
      continue;
    }
    if (uf.find(c) != c) continue;
    const auto& cs = members[c];
    const RowReducer& rr = reducers[static_cast<std::size_t>(slot[c])];
    out.rank += rr.rank();
    auto ker = rr.kernel_basis();
    auto fc = rr.free_columns();
    for (std::size_t k = 0; k < ker.size(); ++k) {
      Vec v(cols);
      for (std::size_t j = 0; j < cs.size(); ++j) v[cs[j]] = std::move(ker[k][j]);
      found.emplace_back(cs[fc[k]], std::move(v));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [f, v] : found) {
    out.free_cols.push_back(f);
    out.basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace superprolong
