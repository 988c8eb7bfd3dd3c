#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "superprolong/linalg.hpp"
#include "superprolong/matrix.hpp"

namespace superprolong {

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

SparseVec to_sparse(const Vec& v, std::size_t offset = 0);

struct BasisElement {
  std::string label;
  int degree = 0;
  int parity = 0;
};

// Finite-dimensional Z-graded Lie superalgebra given by structure constants.
// Basis elements must be listed in non-decreasing degree. Brackets are stored
// for index pairs a <= b only; the rest follows from super-antisymmetry.
class GradedSuperalgebra {
 public:
  GradedSuperalgebra() = default;
  explicit GradedSuperalgebra(std::vector<BasisElement> basis);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(std::size_t a) const { return basis_[a]; }
  std::vector<int> degrees() const;
  // Index range [first, last) of the basis elements of degree p.
  std::pair<std::size_t, std::size_t> degree_range(int p) const;
  std::size_t degree_dim(int p) const;
  std::map<int, std::size_t> graded_dimensions() const;

  // Sets [x_a, x_b]; zero coefficients are dropped. Entries must lie in
  // degree deg(a) + deg(b).
  void set_bracket(std::size_t a, std::size_t b, SparseVec value);
  SparseVec bracket_basis(std::size_t a, std::size_t b) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  // [x_a, y] for a basis element and an arbitrary element.
  Vec bracket_with_basis(std::size_t a, const Vec& y) const;
  // Appends coef * [x_a, y] to out without merging repeated indices.
  void accumulate_bracket(std::size_t a, const SparseVec& y, const Scalar& coef, SparseVec& out) const;

  // Brackets whose arguments or result would exceed this degree were not
  // computed (capped prolongations).
  std::optional<int> truncated_above;

  // The stored half of the table, for export: (a, b, value) with a <= b.
  std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> nonzero_brackets() const;

 private:
  std::size_t slot(std::size_t a, std::size_t b) const { return a * basis_.size() - a * (a + 1) / 2 + b; }

  std::vector<BasisElement> basis_;
  std::vector<SparseVec> table_;
};

int super_sign(int pa, int pb);

struct JacobiReport {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> violation;
  std::size_t triples_checked = 0;
};

// Checks [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] on basis triples. The
// Jacobiator is super-antisymmetric once the bracket is, so sorted triples
// suffice.
JacobiReport check_super_jacobi(const GradedSuperalgebra& g);

// Sorts by index, merges repeated indices and drops zeros.
void normalize(SparseVec& v);

// Span of homogeneous vectors, reduced separately in each degree block.
class GradedSpan {
 public:
  explicit GradedSpan(const GradedSuperalgebra& g) : g_(&g) {}
  // Returns true when v (homogeneous, nonzero) was independent.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  std::size_t dim() const { return dim_; }

 private:
  Vec block_of(const Vec& v, int& degree) const;
  const GradedSuperalgebra* g_;
  std::map<int, RowReducer> blocks_;
  std::size_t dim_ = 0;
};

struct Subspace {
  std::vector<Vec> basis;  // homogeneous, linearly independent
  std::map<int, std::size_t> graded_dims;
  std::size_t dim() const { return basis.size(); }
};

// Smallest ad-invariant subspace containing the (homogeneous) seed vectors.
// stop_at, if nonzero, ends the computation once that dimension is reached.
Subspace ideal_closure(const GradedSuperalgebra& g, const std::vector<Vec>& seed, std::size_t stop_at = 0);
Subspace degree_subspace(const GradedSuperalgebra& g, int p);

// Degree of a homogeneous nonzero vector; throws for inhomogeneous input.
int vector_degree(const GradedSuperalgebra& g, const Vec& v);

}  // namespace superprolong
