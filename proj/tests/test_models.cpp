#include "doctest.h"
#include "superprolong/errors.hpp"
#include "superprolong/models.hpp"
#include "superprolong/tanaka.hpp"

using namespace superprolong;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool closed(const MatrixSuperalgebra& a) {
  for (const auto& x : a.basis)
    for (const auto& y : a.basis)
      if (!a.contains(supercommutator(a, x, y))) return false;
  return true;
}

}  // namespace

TEST_CASE("matrix model dimensions and closure") {
  auto osp14 = build_matrix_model(ModelKind::osp, 1, 4);
  CHECK(osp14.dim() == 14);
  auto sl24 = build_matrix_model(ModelKind::sl, 2, 4);
  CHECK(sl24.dim() == 35);
  CHECK(build_matrix_model(ModelKind::pgl, 4, 4).dim() == 63);
  CHECK(build_matrix_model(ModelKind::gl, 1, 2).dim() == 9);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(build_matrix_model(ModelKind::osp, n, 4).dim() == n * (n - 1) / 2 + 10 + 4 * n);
  CHECK(closed(osp14));
  CHECK(closed(build_matrix_model(ModelKind::osp, 2, 4)));
  CHECK(closed(build_matrix_model(ModelKind::sl, 1, 4)));
  CHECK(closed(build_matrix_model(ModelKind::pgl, 2, 2)));
  // symmetric on the even block, symplectic on the odd block
  auto osp24 = build_matrix_model(ModelKind::osp, 2, 4);
  const Matrix& j = *osp24.form;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) CHECK(j(c, r) == (r < 2 ? j(r, c) : -j(r, c)));
  CHECK_THROWS_AS(build_matrix_model(ModelKind::pgl, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_matrix_model(ModelKind::osp, 2, 3), std::invalid_argument);
}

TEST_CASE("gradings by diagonal elements") {
  auto g = grade_by_element(build_matrix_model(ModelKind::osp, 2, 4), depth_two_element(2));
  CHECK(g.graded_dimensions() == std::map<int, std::size_t>{{-2, 3}, {-1, 4}, {0, 5}, {1, 4}, {2, 3}});
  CHECK(check_super_jacobi(g).ok);
  auto gl = grade_by_element(build_matrix_model(ModelKind::gl, 2, 4), depth_two_element(2));
  CHECK(gl.degree_dim(-2) == 4);
  CHECK(check_super_jacobi(gl).ok);
  auto a = build_matrix_model(ModelKind::sl, 1, 2);
  auto flat = grade_by_element(a, std::vector<Scalar>(3, Scalar(0)));
  CHECK(flat.graded_dimensions() == std::map<int, std::size_t>{{0, a.dim()}});
  CHECK_THROWS_AS(grade_by_element(a, {Scalar::frac(1, 2), Scalar(0), Scalar(0)}), NonIntegerGrading);
}

TEST_CASE("contact superalgebra oracle") {
  for (std::size_t n = 0; n <= 8; ++n) {
    CHECK(k1n_graded_dimension(n, -2) == 1);
    CHECK(k1n_graded_dimension(n, -1) == n);
    CHECK(k1n_graded_dimension(n, 0) == 1 + n * (n - 1) / 2);
    for (int p = -2; p <= 10; ++p) {
      std::size_t expect = 0;
      for (std::size_t k = 0; k <= n; ++k)
        if (static_cast<int>(k) <= p + 2 && (p + 2 - static_cast<int>(k)) % 2 == 0) expect += binomial(n, k);
      CHECK(k1n_graded_dimension(n, p) == expect);
    }
  }
  CHECK(k1n_graded_dimension(2, 0) == 2);
  CHECK(k1n_graded_dimension(3, -3) == 0);
}

TEST_CASE("expected rows") {
  auto r31 = expected_row(3, 1);
  REQUIRE(r31);
  CHECK(r31->name == "osp(1|4)");
  CHECK(r31->h0_dim == 0);
  auto r44 = expected_row(4, 4);
  REQUIRE(r44);
  CHECK(r44->name == "pgl(4|4)");
  CHECK(r44->h0_dim == 16);
  std::size_t total = 0;
  for (auto [p, d] : r44->graded_dims) total += d;
  CHECK(total == 63);
  auto ab = expected_row(5, 2);
  REQUIRE(ab);
  std::size_t ab_total = 0;
  for (auto [p, d] : ab->graded_dims) ab_total += d;
  CHECK(ab_total == 21 + 3 + 16);
  CHECK_FALSE(expected_row(6, 1));
  CHECK_FALSE(expected_row(5, 1));
}

TEST_CASE("engine, matrix model and expected row agree") {
  for (std::size_t d : {3, 4})
    for (std::size_t n = 1; n <= 3; ++n) {
      auto row = expected_row(d, n);
      REQUIRE(row);
      auto model = grade_by_element(build_matrix_model(*row->model, n, 4), depth_two_element(n));
      auto engine = maximal_prolongation(negative_part(build_supertranslation(d, n)));
      CHECK_MESSAGE(model.graded_dimensions() == row->graded_dims, row->name);
      CHECK_MESSAGE(engine.graded_dims() == row->graded_dims, row->name);
    }
}
