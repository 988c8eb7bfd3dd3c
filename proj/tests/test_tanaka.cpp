#include <map>

#include "doctest.h"
#include "superprolong/errors.hpp"
#include "superprolong/tanaka.hpp"

using namespace superprolong;

namespace {

ProlongationResult prolong(std::size_t d, std::size_t n, int max_degree = 12) {
  ProlongationOptions o;
  o.max_degree = max_degree;
  o.verify_extra_layer = true;
  return maximal_prolongation(negative_part(build_supertranslation(d, n)), o);
}

// Monomials t^a xi_I with 2a + |I| = p + 2, counted directly.
std::size_t contact_count(std::size_t n, int p) {
  std::size_t total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int k = __builtin_popcountll(mask);
    int rest = p + 2 - k;
    if (rest >= 0 && rest % 2 == 0) ++total;
  }
  return total;
}

std::map<int, std::size_t> dims(std::initializer_list<std::size_t> v) {
  std::map<int, std::size_t> out;
  int p = -2;
  for (std::size_t x : v) out[p++] = x;
  return out;
}

}  // namespace

TEST_CASE("finite prolongations") {
  auto r31 = prolong(3, 1);
  CHECK(r31.terminated);
  CHECK(r31.graded_dims() == dims({3, 2, 4, 2, 3}));
  CHECK(r31.algebra.dim() == 14);
  auto r52 = prolong(5, 2);
  CHECK(r52.graded_dims() == dims({5, 8, 14, 8, 5}));
  CHECK(r52.algebra.dim() == 40);
  CHECK(prolong_degree_zero(negative_part(build_supertranslation(4, 4))).dim() == 23);
  for (const auto* r : {&r31, &r52}) {
    CHECK(r->jacobi.ok);
    CHECK(r->extra_layer_zero == std::optional<bool>(true));
    for (const auto& c : r->layer_checks) {
      CHECK(c.transitive);
      if (c.degree >= 1) CHECK(c.faithful_on_v == std::optional<bool>(true));
    }
    auto g = r->graded_dims();
    CHECK(g[1] == g[-1]);
    CHECK(g[2] == g[-2]);
  }
}

TEST_CASE("vanishing positive part") {
  auto r = prolong(6, 2);
  CHECK(r.terminated);
  CHECK(r.top_degree() == 0);
  CHECK(r.jacobi.ok);
}

TEST_CASE("dim V <= 2 is capped and follows the contact count") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto r = prolong(1, n, 8);
    CHECK_FALSE(r.terminated);
    CHECK(r.algebra.truncated_above == std::optional<int>(8));
    CHECK(r.jacobi.ok);
    for (int p = -2; p <= 8; ++p) CHECK_MESSAGE(r.algebra.degree_dim(p) == contact_count(n, p), "N=" << n << " p=" << p);
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    auto r = prolong(2, n, 6);
    for (int p = -2; p <= 6; ++p) CHECK(r.algebra.degree_dim(p) == 2 * contact_count(n, p));
  }
}

TEST_CASE("grading element acts by the degree") {
  for (auto [d, n] : {std::pair{3, 2}, {4, 1}, {1, 2}}) {
    auto r = prolong(d, n, 5);
    Vec e = r.grading_element();
    for (std::size_t k = 0; k < r.algebra.dim(); ++k) {
      Vec x(r.algebra.dim());
      x[k] = Scalar(1);
      int deg = r.algebra.basis()[k].degree;
      if (r.algebra.truncated_above && deg > *r.algebra.truncated_above) continue;
      CHECK(r.algebra.bracket(e, x) == scale(Scalar(deg), x));
    }
  }
}

TEST_CASE("ordered-pair conditions give the same layers") {
  auto m = negative_part(build_supertranslation(3, 2));
  ProlongationOptions a, b;
  b.all_ordered_pairs = true;
  auto ra = maximal_prolongation(m, a), rb = maximal_prolongation(m, b);
  CHECK(ra.graded_dims() == rb.graded_dims());
  for (std::size_t p = 0; p < ra.layers.size(); ++p) CHECK(ra.layers[p].basis == rb.layers[p].basis);
}

TEST_CASE("degree-zero elements and membership") {
  auto st = build_supertranslation(3, 1);
  auto r = maximal_prolongation(negative_part(st));
  for (const auto& a : so_generators(st.data.spinor)) {
    Vec x = r.g0_element(a.action_v, block_diagonal(a.action_s, 1));
    CHECK(r.g0_on_v(x) == a.action_v);
  }
  Matrix bad = Matrix::identity(3);
  CHECK_THROWS_AS(r.g0_element(bad, Matrix(2, 2)), ClosureFailure);
  CHECK_THROWS_AS(maximal_prolongation(r.m, ProlongationOptions{1, false, false}), std::invalid_argument);
}
