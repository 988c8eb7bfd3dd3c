#include "doctest.h"
#include "superprolong/clifford.hpp"
#include "superprolong/errors.hpp"
#include "superprolong/linalg.hpp"

using namespace superprolong;

namespace {

Vec flatten(const Matrix& m) { return m.data(); }

}  // namespace

TEST_CASE("metric space examples") {
  CHECK(build_metric_space(2).gram == Matrix{{0, 1}, {1, 0}});
  CHECK(build_metric_space(3).gram == Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  auto m4 = build_metric_space(4);
  CHECK(m4.gram == Matrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  CHECK(m4.labels == std::vector<std::string>{"e0", "f0", "e1", "f1"});
  for (std::size_t d = 1; d <= 8; ++d) CHECK_FALSE(determinant(build_metric_space(d).gram).is_zero());
}

TEST_CASE("D=2 gamma matrices") {
  auto s = build_spinor_module(build_metric_space(2));
  CHECK(s.dim_s == 2);
  CHECK(s.gammas[0] == Matrix{{0, 0}, {1, 0}});
  CHECK(s.gammas[1] == Matrix{{0, -2}, {0, 0}});
  Matrix ac = s.gammas[0] * s.gammas[1] + s.gammas[1] * s.gammas[0];
  CHECK(ac == Scalar(-2) * Matrix::identity(2));
}

TEST_CASE("Clifford relations and module dimensions for D = 1..8") {
  for (std::size_t d = 1; d <= 8; ++d) {
    for (bool flip : {false, true}) {
      auto s = build_spinor_module(build_metric_space(d), flip);
      CHECK(s.dim_s == (std::size_t{1} << (d / 2)));
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          Matrix ac = s.gammas[a] * s.gammas[b] + s.gammas[b] * s.gammas[a];
          CHECK(ac == Scalar(-2) * s.space.gram(a, b) * Matrix::identity(s.dim_s));
        }
      CHECK(s.chirality.has_value() == (d % 2 == 0));
      if (s.chirality) {
        CHECK((*s.chirality * *s.chirality).is_identity());
        for (const auto& g : s.gammas) CHECK((*s.chirality * g + g * *s.chirality).is_zero());
      }
    }
  }
  CHECK(build_spinor_module(build_metric_space(3)).dim_s == 2);
  CHECK(build_spinor_module(build_metric_space(5)).dim_s == 4);
}

TEST_CASE("gamma_of squares to minus the norm") {
  auto s = build_spinor_module(build_metric_space(3));
  Vec u{0, 0, 1}, e{1, 0, 0}, ef{1, 1, 0};
  CHECK(gamma_of(s, u) * gamma_of(s, u) == -Matrix::identity(2));
  CHECK((gamma_of(s, e) * gamma_of(s, e)).is_zero());
  CHECK_FALSE(gamma_of(s, e).is_zero());
  CHECK(gamma_of(s, ef) * gamma_of(s, ef) == Scalar(-2) * Matrix::identity(2));
  Vec w{Scalar(2), Scalar::frac(-1, 3), Scalar::i()};
  CHECK(gamma_of(s, w) * gamma_of(s, w) == -s.space.inner(w, w) * Matrix::identity(2));
}

TEST_CASE("so generators") {
  auto s = build_spinor_module(build_metric_space(4));
  auto z = so_generator(s, 1, 1);
  CHECK(z.action_v.is_zero());
  CHECK(z.action_s.is_zero());

  // Orthogonal non-isotropic pair from the rebasing.
  auto rb = orthogonal_rebasing(s.space);
  Matrix gv = gamma_of(s, rb[0]), gu = gamma_of(s, rb[2]);
  CHECK(Scalar::frac(1, 4) * commutator(gv, gu) == Scalar::frac(1, 2) * gv * gu);

  for (std::size_t d = 2; d <= 6; ++d) {
    auto sp = build_spinor_module(build_metric_space(d));
    auto gens = so_generators(sp);
    CHECK(gens.size() == d * (d - 1) / 2);
    std::vector<Vec> flat_v;
    for (const auto& g : gens) flat_v.push_back(flatten(g.action_v));
    CHECK(rank_of(flat_v) == gens.size());
    for (const auto& a : gens) {
      // antisymmetry with respect to the form
      CHECK((a.action_v.transpose() * sp.space.gram + sp.space.gram * a.action_v).is_zero());
      // equivariance of Clifford multiplication
      for (std::size_t b = 0; b < d; ++b)
        CHECK(commutator(a.action_s, sp.gammas[b]) == gamma_of(sp, a.action_v * sp.space.basis_vector(b)));
      if (sp.chirality) CHECK(commutator(a.action_s, *sp.chirality).is_zero());
      // homomorphism: commutators match on both sides
      for (const auto& b : gens) {
        auto c = span_coordinates(flat_v, flatten(commutator(a.action_v, b.action_v)));
        REQUIRE(c.has_value());
        Matrix rhs(sp.dim_s, sp.dim_s);
        for (std::size_t k = 0; k < gens.size(); ++k) rhs = rhs + (*c)[k] * gens[k].action_s;
        CHECK(commutator(a.action_s, b.action_s) == rhs);
      }
    }
  }
}

TEST_CASE("semispinor projectors") {
  for (std::size_t d : {2, 4, 6, 8}) {
    auto s = build_spinor_module(build_metric_space(d));
    auto [pp, pm] = semispinor_projectors(s);
    CHECK((pp + pm).is_identity());
    CHECK(pp * pp == pp);
    CHECK(pm * pm == pm);
    CHECK((pp * pm).is_zero());
    CHECK(rank(pp) == s.dim_s / 2);
    CHECK(rank(pm) == s.dim_s / 2);
    for (const auto& g : so_generators(s)) CHECK(pm * g.action_s * pp == Matrix(s.dim_s, s.dim_s));
  }
  CHECK(rank(semispinor_projectors(build_spinor_module(build_metric_space(4))).first) == 2);
  CHECK(rank(semispinor_projectors(build_spinor_module(build_metric_space(6))).first) == 4);
  CHECK_THROWS_AS(semispinor_projectors(build_spinor_module(build_metric_space(5))), OddDimension);
}
