#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superprolong/supertranslation.hpp"
#include "superprolong/tanaka.hpp"

namespace superprolong {

struct GradingCheck {
  bool member = false;       // E lies in g_0
  bool eigenvalues = false;  // [E, x] = deg(x) x on every computed basis element
};

GradingCheck check_grading_element(const ProlongationResult& r);

// h_0: elements of g_0 acting trivially on V, as global vectors.
std::vector<Vec> internal_symmetries(const ProlongationResult& r);

struct G0Decomposition {
  std::vector<Vec> so_part;
  Vec euler;
  std::vector<Vec> h0;
  bool so_commutes_with_h0 = false;
};

// g_0 = so(V) + CE + h_0 as a direct sum of ideals; throws DecompositionFailure.
G0Decomposition decompose_g0(const ProlongationResult& r, const SpinorData& d);

struct MinimalIdeal {
  Subspace ideal;
  bool perfect = false;          // [s, s] = s
  bool generated_by_each = false;  // every basis element of s generates s
  bool contains_odd = false;     // every odd layer lies in s
  bool simple() const { return perfect && generated_by_each; }
};

// Ideal generated by g_{-2}.
MinimalIdeal minimal_ideal(const ProlongationResult& r);

struct PhiEmbedding {
  std::vector<Vec> images;  // phi(D_k) in W for the basis of g_1
  bool injective = false;
  bool equivariant = false;
  bool clifford_stable = false;
};

// Solves D v = v . phi(D) for every v; throws InconsistentPhi.
PhiEmbedding phi_embedding(const ProlongationResult& r, const SpinorData& d);

struct PsiReport {
  Matrix on_v, on_w;
  bool homomorphism = false;
  bool invertible = false;
  bool square_ok = false;  // psi_v^2 = -(v,v) on W
  std::optional<std::string> skipped;
};

// psi_v(s) = v.s on W and psi_v(u) = eps((v,v)u - 2(v,u)v) on V.
PsiReport psi_v(const SupertranslationAlgebra& m, const Vec& v);
// The orthogonal rebasing vectors x0, y0, x1, an isotropic basis vector and
// one integer combination.
std::vector<Vec> psi_samples(const MetricSpace& space);

struct AlphaReport {
  Matrix alpha;
  bool antisymmetric = false;
  bool nondegenerate = false;
  bool h0_contained = false;
};

// alpha(s,t) = (Gamma(y.z.s, t), x) for the first three rebasing vectors.
AlphaReport alpha_form_check(const SupertranslationAlgebra& m, const ProlongationResult& r);

struct StructureReport {
  std::size_t dim_v = 0, n_copies = 0;
  std::size_t gamma_space_dim = 0;
  std::map<int, std::size_t> graded_dims;
  std::size_t h0_dim = 0;
  bool so_ideal_ok = false;
  bool decomposition_ok = false;
  bool positive_part = false;
  std::optional<std::map<int, std::size_t>> minimal_ideal_dims;
  std::optional<bool> simple;
  std::string verdict;
  bool jacobi_ok = false;
  std::optional<int> truncated_above;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> notes;

  bool all_checks_pass() const;
};

StructureReport classify(const SupertranslationAlgebra& m, const ProlongationResult& r);

}  // namespace superprolong
