#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superprolong/gradedlie.hpp"
#include "superprolong/matrix.hpp"

namespace superprolong {

enum class ModelKind { gl, sl, pgl, osp };

// Matrix Lie superalgebra inside gl(m|n): rows/columns 0..m-1 are even, m..m+n-1
// odd. For osp the stored form is block-diagonal (symmetric on the even block,
// symplectic on the odd block). pgl(m|m) is gl modulo the identity; its basis
// elements are normalized to vanish at the last diagonal entry.
struct MatrixSuperalgebra {
  ModelKind kind = ModelKind::gl;
  std::size_t m = 0, n = 0;
  std::optional<Matrix> form;
  std::vector<Matrix> basis;
  std::vector<int> parity;

  std::size_t dim() const { return basis.size(); }
  std::size_t size() const { return m + n; }
  // Representative of x in the model's normal form (only pgl changes x).
  Matrix normalize(const Matrix& x) const;
  bool contains(const Matrix& x) const;
};

std::string model_name(ModelKind kind, std::size_t m, std::size_t n);
// osp(m|n) requires n even; pgl requires m == n.
MatrixSuperalgebra build_matrix_model(ModelKind kind, std::size_t m, std::size_t n);
int matrix_parity(const MatrixSuperalgebra& a, const Matrix& x);
Matrix supercommutator(const MatrixSuperalgebra& a, const Matrix& x, const Matrix& y);

// Grading by ad(diag(h)). Throws NonIntegerGrading when some eigenvalue
// h_i - h_j occurring in the model is not an integer.
GradedSuperalgebra grade_by_element(const MatrixSuperalgebra& a, const std::vector<Scalar>& h);

// Depth-2 grading element diag(0,...,0; 1,1,-1,-1) used for the n = 4 models.
std::vector<Scalar> depth_two_element(std::size_t m);

// dim K(1|N)_p: monomials t^a xi_I with 2a + |I| = p + 2.
std::size_t k1n_graded_dimension(std::size_t n, int p);

struct ExpectedRow {
  std::string name;
  std::map<int, std::size_t> graded_dims;
  std::size_t h0_dim = 0;
  std::optional<ModelKind> model;  // none for ab(3)
};

std::optional<ExpectedRow> expected_row(std::size_t dim_v, std::size_t copies);

}  // namespace superprolong
