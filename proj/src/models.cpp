#include "superprolong/models.hpp"

#include <algorithm>
#include <stdexcept>

#include "superprolong/errors.hpp"
#include "superprolong/linalg.hpp"

namespace superprolong {

namespace {

Matrix unit_matrix(std::size_t size, std::size_t i, std::size_t j) {
  Matrix e(size, size);
  e(i, j) = Scalar(1);
  return e;
}

Vec flatten(const Matrix& x) { return x.data(); }

// Supertranspose [[A, B], [C, D]] -> [[A^T, C^T], [-B^T, D^T]].
Matrix supertranspose(const Matrix& x, std::size_t m) {
  Matrix t = x.transpose();
  for (std::size_t i = m; i < x.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) t(i, j) = -t(i, j);
  return t;
}

Matrix osp_form(std::size_t m, std::size_t n) {
  Matrix j(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i) j(i, m - 1 - i) = Scalar(1);
  std::size_t h = n / 2;
  for (std::size_t i = 0; i < h; ++i) {
    j(m + i, m + h + i) = Scalar(1);
    j(m + h + i, m + i) = Scalar(-1);
  }
  return j;
}

}  // namespace

std::string model_name(ModelKind kind, std::size_t m, std::size_t n) {
  const char* k = kind == ModelKind::gl ? "gl" : kind == ModelKind::sl ? "sl" : kind == ModelKind::pgl ? "pgl" : "osp";
  return std::string(k) + "(" + std::to_string(m) + "|" + std::to_string(n) + ")";
}

Matrix MatrixSuperalgebra::normalize(const Matrix& x) const {
  if (kind != ModelKind::pgl) return x;
  std::size_t last = size() - 1;
  return x - x(last, last) * Matrix::identity(size());
}

int matrix_parity(const MatrixSuperalgebra& a, const Matrix& x) {
  bool even = false, odd = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (x(i, j).is_zero()) continue;
      ((i < a.m) == (j < a.m) ? even : odd) = true;
    }
  if (even && odd) throw std::invalid_argument("matrix is not parity-homogeneous");
  return odd ? 1 : 0;
}

Matrix supercommutator(const MatrixSuperalgebra& a, const Matrix& x, const Matrix& y) {
  int s = super_sign(matrix_parity(a, x), matrix_parity(a, y));
  return a.normalize(x * y - Scalar(s) * (y * x));
}

bool MatrixSuperalgebra::contains(const Matrix& x) const {
  std::vector<Vec> cols;
  for (const auto& b : basis) cols.push_back(flatten(b));
  return span_coordinates(cols, flatten(normalize(x))).has_value();
}

MatrixSuperalgebra build_matrix_model(ModelKind kind, std::size_t m, std::size_t n) {
  MatrixSuperalgebra a;
  a.kind = kind;
  a.m = m;
  a.n = n;
  std::size_t size = m + n;
  if (size == 0) throw std::invalid_argument("empty matrix model");
  if (kind == ModelKind::pgl && m != n) throw std::invalid_argument("pgl(m|n) needs m == n");
  if (kind == ModelKind::osp && n % 2) throw std::invalid_argument("osp(m|n) needs n even");

  auto push = [&](Matrix x) {
    a.parity.push_back(matrix_parity(a, x));
    a.basis.push_back(std::move(x));
  };
  switch (kind) {
    case ModelKind::gl:
    case ModelKind::pgl:
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
          if (kind == ModelKind::gl || i != size - 1 || j != size - 1) push(unit_matrix(size, i, j));
      break;
    case ModelKind::sl:
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
          if (i != j) push(unit_matrix(size, i, j));
      // supertraceless diagonal: E_ii - E_{i+1,i+1} inside a block, E_00 + E_mm across
      for (std::size_t i = 0; i + 1 < size; ++i) {
        Matrix d(size, size);
        d(i, i) = Scalar(1);
        d(i + 1, i + 1) = Scalar(i + 1 == m ? 1 : -1);
        push(std::move(d));
      }
      break;
    case ModelKind::osp: {
      a.form = osp_form(m, n);
      const Matrix& j = *a.form;
      // X^{sT} J + J X = 0, solved separately on the even and odd blocks.
      for (int par : {0, 1}) {
        std::vector<std::pair<std::size_t, std::size_t>> vars;
        for (std::size_t r = 0; r < size; ++r)
          for (std::size_t c = 0; c < size; ++c)
            if (((r < m) == (c < m)) == (par == 0)) vars.emplace_back(r, c);
        Matrix eqs(size * size, vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k) {
          Matrix e = unit_matrix(size, vars[k].first, vars[k].second);
          Vec col = flatten(supertranspose(e, m) * j + j * e);
          for (std::size_t r = 0; r < col.size(); ++r) eqs(r, k) = col[r];
        }
        for (const auto& v : kernel_basis(eqs)) {
          Matrix x(size, size);
          for (std::size_t k = 0; k < vars.size(); ++k) x(vars[k].first, vars[k].second) = v[k];
          push(std::move(x));
        }
      }
      break;
    }
  }
  return a;
}

GradedSuperalgebra grade_by_element(const MatrixSuperalgebra& a, const std::vector<Scalar>& h) {
  std::size_t size = a.size();
  if (h.size() != size) throw std::invalid_argument("grading element has wrong size");
  // ad(diag h) scales entry (i,j) by h_i - h_j: split every basis matrix into
  // its eigencomponents and take the span per (degree, parity).
  std::map<std::pair<int, int>, RowReducer> pieces;
  std::map<std::pair<int, int>, std::vector<Matrix>> chosen;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    std::map<int, Matrix> comps;
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        if (a.basis[k](i, j).is_zero()) continue;
        Scalar w = h[i] - h[j];
        if (!w.im().is_zero() || !w.re().is_integer() || !w.re().is_small())
          throw NonIntegerGrading("ad-eigenvalue " + w.to_string() + " is not an integer");
        int deg = static_cast<int>(w.re().small_num());
        comps.try_emplace(deg, size, size).first->second(i, j) = a.basis[k](i, j);
      }
    for (auto& [deg, x] : comps) {
      std::pair<int, int> key{deg, a.parity[k]};
      auto it = pieces.try_emplace(key, size * size).first;
      if (it->second.add_row(flatten(x))) chosen[key].push_back(x);
    }
  }

  std::vector<BasisElement> basis;
  std::vector<Matrix> mats;
  for (auto& [key, list] : chosen)
    for (std::size_t k = 0; k < list.size(); ++k) {
      basis.push_back({"d" + std::to_string(key.first) + (key.second ? "o" : "e") + std::to_string(k), key.first, key.second});
      mats.push_back(list[k]);
    }
  std::size_t dim = mats.size();
  if (dim != a.dim()) throw NonIntegerGrading("grading element does not preserve the model");
  GradedSuperalgebra g(std::move(basis));
  // Coordinates via an invertible square block of the basis-column matrix.
  std::vector<std::size_t> rows;
  RowReducer pick(dim);
  for (std::size_t r = 0; r < size * size && rows.size() < dim; ++r) {
    Vec row(dim);
    for (std::size_t k = 0; k < dim; ++k) row[k] = mats[k].data()[r];
    if (pick.add_row(std::move(row))) rows.push_back(r);
  }
  Matrix square(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) square(i, k) = mats[k].data()[rows[i]];
  Matrix coords_of = inverse(square);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = x; y < dim; ++y) {
      Matrix br = supercommutator(a, mats[x], mats[y]);
      if (br.is_zero()) continue;
      Vec sel(dim);
      for (std::size_t i = 0; i < dim; ++i) sel[i] = br.data()[rows[i]];
      Vec c = coords_of * sel;
      g.set_bracket(x, y, to_sparse(c));
    }
  return g;
}

std::vector<Scalar> depth_two_element(std::size_t m) {
  std::vector<Scalar> h(m, Scalar(0));
  for (int v : {1, 1, -1, -1}) h.push_back(Scalar(v));
  return h;
}

std::size_t k1n_graded_dimension(std::size_t n, int p) {
  if (p < -2) return 0;
  std::size_t total = 0, binom = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (static_cast<int>(k) <= p + 2 && (p + 2 - static_cast<int>(k)) % 2 == 0) total += binom;
    binom = binom * (n - k) / (k + 1);
  }
  return total;
}

std::optional<ExpectedRow> expected_row(std::size_t d, std::size_t n) {
  auto row = [](std::size_t v, std::size_t w, std::size_t z) {
    return std::map<int, std::size_t>{{-2, v}, {-1, w}, {0, z}, {1, w}, {2, v}};
  };
  if (n == 0) return std::nullopt;
  if (d == 3) return ExpectedRow{model_name(ModelKind::osp, n, 4), row(3, 2 * n, 4 + n * (n - 1) / 2), n * (n - 1) / 2, ModelKind::osp};
  if (d == 4) {
    ModelKind k = n == 4 ? ModelKind::pgl : ModelKind::sl;
    return ExpectedRow{model_name(k, n, 4), row(4, 4 * n, n * n + 7), n * n, k};
  }
  if (d == 5 && n == 2) return ExpectedRow{"ab(3)", row(5, 8, 14), 3, std::nullopt};
  return std::nullopt;
}

}  // namespace superprolong
