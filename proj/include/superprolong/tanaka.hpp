#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superprolong/gradedlie.hpp"
#include "superprolong/supertranslation.hpp"

namespace superprolong {

// Depth-2 negative part m = V + W with V in degree -2, W in degree -1 and
// [w_a, w_b] = sum_i gamma[i](a, b) v_i.
struct NegativePart {
  std::size_t dim_v = 0;
  std::size_t dim_w = 0;
  std::vector<Matrix> gamma;
  std::vector<std::string> v_labels, w_labels;
};

NegativePart negative_part(const SupertranslationAlgebra& m);
NegativePart negative_part(const BracketTensor& gamma);

// Degree p >= 0 component of the prolongation. Each element is stored by its
// action on m: the coordinates of [D, w_a] in g_{p-1} followed by those of
// [D, v_i] in g_{p-2}, i.e. entry a*lower1 + k for the W part and
// dim_w*lower1 + i*lower2 + k for the V part.
struct Layer {
  int degree = 0;
  std::size_t lower1 = 0;  // dim g_{p-1}
  std::size_t lower2 = 0;  // dim g_{p-2}
  std::vector<Vec> basis;
  // Column where basis[k] has entry 1 and every other basis vector has 0.
  std::vector<std::size_t> free_cols;

  std::size_t dim() const { return basis.size(); }
  std::size_t width(std::size_t dim_w, std::size_t dim_v) const { return dim_w * lower1 + dim_v * lower2; }
  // Coordinates of an action vector; throws ClosureFailure if it is not in the span.
  Vec coordinates(const Vec& action) const;
};

Layer prolong_degree_zero(const NegativePart& m);
// lower holds g_0 .. g_{p-1}. all_ordered_pairs imposes the derivation rule
// for (x, y) and (y, x) separately (the default uses x <= y only).
Layer prolong_step(const NegativePart& m, const std::vector<Layer>& lower, int p, bool all_ordered_pairs = false);

struct ProlongationOptions {
  int max_degree = 12;
  bool verify_extra_layer = false;
  bool all_ordered_pairs = false;
};

struct LayerCheck {
  int degree = 0;
  bool transitive = false;
  std::optional<bool> faithful_on_v;  // degrees >= 1 with dim V >= 3
};

struct ProlongationResult {
  NegativePart m;
  std::vector<Layer> layers;  // g_0, g_1, ... (nonzero layers only)
  bool terminated = false;    // some positive layer vanished
  int max_degree = 0;
  GradedSuperalgebra algebra;  // basis: V, W, g_0, g_1, ...
  std::vector<LayerCheck> layer_checks;
  JacobiReport jacobi;
  std::optional<bool> extra_layer_zero;

  int top_degree() const { return static_cast<int>(layers.size()) - 1; }
  std::map<int, std::size_t> graded_dims() const { return algebra.graded_dimensions(); }
  // Global index of the first basis element of degree p.
  std::size_t offset(int p) const { return algebra.degree_range(p).first; }
  // Global vector of the grading element E = (-2 Id_V, -Id_W) in g_0.
  Vec grading_element() const;
  // Action of a g_0 element (global vector) as matrices on V and W.
  Matrix g0_on_v(const Vec& x) const;
  Matrix g0_on_w(const Vec& x) const;
  // Global vector of the g_0 element acting by the given endomorphisms; throws
  // ClosureFailure when the pair is not a derivation.
  Vec g0_element(const Matrix& on_v, const Matrix& on_w) const;
};

// Action vector (layer-0 layout) of the pair (A on V, B on W).
Vec degree_zero_action(const NegativePart& m, const Matrix& on_v, const Matrix& on_w);

ProlongationResult maximal_prolongation(const NegativePart& m, const ProlongationOptions& opts = {});

}  // namespace superprolong
