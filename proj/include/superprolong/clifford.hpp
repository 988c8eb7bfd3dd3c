#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superprolong/matrix.hpp"

namespace superprolong {

// Complex orthogonal space with the canonical basis e_0, f_0, e_1, f_1, ...
// (hyperbolic pairs, (e_i, f_i) = 1) followed by u with (u, u) = 1 when the
// dimension is odd.
struct MetricSpace {
  std::size_t dim = 0;
  Matrix gram;
  std::vector<std::string> labels;

  Scalar inner(const Vec& a, const Vec& b) const;
  Vec basis_vector(std::size_t i) const;
};

MetricSpace build_metric_space(std::size_t dim);

// The pairwise orthogonal non-isotropic rebasing x_0, y_0, x_1, y_1, ..., u
// with x_i = e_i + f_i/2 and y_i = e_i - f_i/2.
std::vector<Vec> orthogonal_rebasing(const MetricSpace& space);

// Irreducible Clifford module realized on the exterior algebra of the span of
// the e_i. Basis vectors of S are subsets of {0..k-1} encoded as bitmasks.
struct SpinorModule {
  MetricSpace space;
  std::size_t dim_s = 0;
  std::vector<Matrix> gammas;
  std::optional<Matrix> chirality;
  // Scalar multiplying the ordered product of rebased gammas to give gamma(u).
  Scalar odd_scale;
};

// flip_odd_sign selects the other of the two odd-dimensional modules.
SpinorModule build_spinor_module(const MetricSpace& space, bool flip_odd_sign = false);

Matrix gamma_of(const SpinorModule& s, const Vec& v);

struct SoGenerator {
  Matrix action_v;
  Matrix action_s;
};

// The element v_i ^ v_j of so(V), acting on V and spinorially on S.
SoGenerator so_generator(const SpinorModule& s, std::size_t i, std::size_t j);
// Generators for all i < j; they form a basis of so(V).
std::vector<SoGenerator> so_generators(const SpinorModule& s);

// (P+, P-) = ((Id + chirality)/2, (Id - chirality)/2). Throws OddDimension.
std::pair<Matrix, Matrix> semispinor_projectors(const SpinorModule& s);

}  // namespace superprolong
