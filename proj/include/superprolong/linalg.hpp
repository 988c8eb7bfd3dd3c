#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "superprolong/matrix.hpp"

namespace superprolong {

// Incremental reduced row echelon form.
//
// The pivot of a row is its last nonzero column below pivot_limit, and every
// stored row is supported on columns <= its pivot (plus any columns at or
// beyond pivot_limit, which act as right-hand sides). With that rule the
// kernel vector attached to a free column f has its first nonzero entry, equal
// to 1, at f, and its value at every other free column is 0.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : RowReducer(cols, cols) {}
  RowReducer(std::size_t cols, std::size_t pivot_limit);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  // Set once a row reduced to zero on the pivot range but not on the
  // right-hand side columns.
  bool inconsistent() const { return inconsistent_; }

  void reduce(Vec& r) const;
  // Returns true when the row was independent of the stored ones.
  bool add_row(Vec r);
  bool in_row_space(Vec r) const;

  std::vector<std::size_t> pivot_columns() const;
  std::vector<std::size_t> free_columns() const;
  std::vector<Vec> kernel_basis() const;
  // Solution of the system whose right-hand side is column rhs_col (free
  // variables set to zero). Meaningless when inconsistent().
  Vec particular_solution(std::size_t rhs_col) const;
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& row_pivots() const { return pivots_; }

 private:
  std::size_t cols_;
  std::size_t limit_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<long> row_of_col_;
  bool inconsistent_ = false;
};

std::size_t rank(const Matrix& m);
std::vector<Vec> kernel_basis(const Matrix& m);
std::optional<Vec> try_solve(const Matrix& m, const Vec& b);
// Throws InconsistentSystem when Mx = b has no solution.
Vec solve(const Matrix& m, const Vec& b);
Scalar determinant(const Matrix& m);
// Throws InconsistentSystem for singular input.
Matrix inverse(const Matrix& m);
// Coordinates of v with respect to the given vectors, if v lies in their span.
std::optional<Vec> span_coordinates(const std::vector<Vec>& basis, const Vec& v);
std::size_t rank_of(const std::vector<Vec>& vectors);

struct SparseRow {
  std::vector<std::pair<std::size_t, Scalar>> entries;
  void add(std::size_t col, const Scalar& x) {
    if (!x.is_zero()) entries.emplace_back(col, x);
  }
};

struct KernelResult {
  std::vector<Vec> basis;
  // free_cols[k] is the column where basis[k] has its identity entry.
  std::vector<std::size_t> free_cols;
  std::size_t rank = 0;
};

// Kernel of a sparse homogeneous system. Columns are split into connected
// components (two columns are linked when a row touches both) and each block
// is eliminated densely; the result is ordered by free column.
KernelResult sparse_kernel(std::size_t cols, const std::vector<SparseRow>& rows);

// Same, for systems too large to hold: source is invoked twice (once to find
// the components, once to eliminate) and must emit identical rows each time.
using RowSink = std::function<void(const SparseRow&)>;
using RowSource = std::function<void(const RowSink&)>;
KernelResult sparse_kernel_streamed(std::size_t cols, const RowSource& source);

}  // namespace superprolong
