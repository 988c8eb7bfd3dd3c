#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superprolong/clifford.hpp"
#include "superprolong/gradedlie.hpp"

namespace superprolong {

// Bilinear form on W = S (x) C^N satisfying B(v.s, t) = tau B(s, v.t) and
// B(x, y) = epsilon B(y, x); sigma = epsilon.
struct AdmissibleForm {
  Matrix matrix;
  int tau = 1;
  int sigma = 1;
  int epsilon = 1;
  bool nondegenerate = false;
};

// Symmetric map Gamma: W x W -> V stored as one dim W x dim W matrix per
// basis vector of V: Gamma(s, t) = sum_i (s^T comps[i] t) v_i.
struct BracketTensor {
  std::size_t dim_v = 0;
  std::size_t copies = 0;
  std::size_t dim_w = 0;
  std::vector<Matrix> comps;

  Vec apply(const Vec& s, const Vec& t) const;
  bool is_zero() const;
  BracketTensor& operator+=(const BracketTensor& o);
  friend BracketTensor operator*(const Scalar& c, const BracketTensor& t);
  friend bool operator==(const BracketTensor& a, const BracketTensor& b) = default;
};

// Clifford and so(V) data lifted to W = S (x) C^N.
struct SpinorData {
  SpinorModule spinor;
  std::size_t copies = 0;
  std::size_t dim_w = 0;
  std::vector<Matrix> gammas_w;
  std::vector<SoGenerator> so_w;  // action_s replaced by its W lift

  Matrix gamma_w(const Vec& v) const;
};

SpinorData lift_to_copies(const SpinorModule& s, std::size_t copies);

std::vector<AdmissibleForm> admissible_forms(const SpinorModule& s, std::size_t copies, int tau);

bool is_symmetric(const BracketTensor& g);
bool is_equivariant(const SpinorData& d, const BracketTensor& g);
bool is_nondegenerate(const BracketTensor& g);
// Gamma(W, W) spans V.
bool is_fundamental(const BracketTensor& g);

struct GammaClass {
  int epsilon = 0;
  std::vector<std::size_t> members;  // indices into the invariant basis
};

struct InvariantGammaSpace {
  std::vector<BracketTensor> basis;
  // Basis elements grouped by the symmetry of their reconstructed form.
  std::vector<GammaClass> classes;
  std::size_t dim() const { return basis.size(); }
};

// Basis of symmetric so(V)-equivariant maps S^2(W) -> V, adapted to the
// splitting by the symmetry sign of the associated admissible forms.
InvariantGammaSpace invariant_gamma_space(const SpinorData& d);

// Gamma(s, t) = sum_ij g^{ij} B(v_i.s, t) v_j. Throws SigmaTauViolation when
// sigma*tau = -1 and DegenerateForm for singular B.
BracketTensor gamma_from_form(const SpinorData& d, const AdmissibleForm& b);
// Same contraction without the precondition gates.
BracketTensor gamma_from_matrix(const SpinorData& d, const Matrix& b);

// B(s, t) = (Gamma(s', t), v) with s' = -v.s/(v,v). Throws IsotropicVector.
AdmissibleForm reconstruct_form(const SpinorData& d, const BracketTensor& g, const Vec& v);

struct SupertranslationAlgebra {
  SpinorData data;
  BracketTensor gamma;
  std::size_t gamma_space_dim = 0;
  // Coefficients over InvariantGammaSpace::basis.
  std::vector<Scalar> coeffs;
  // Symmetry sign of the admissible form behind gamma, 0 when mixed.
  int epsilon = 0;
  std::string selection_note;

  std::size_t dim_v() const { return data.spinor.space.dim; }
  std::size_t dim_w() const { return data.dim_w; }
};

struct BuildOptions {
  std::optional<std::vector<Scalar>> coeffs;
  std::uint64_t seed = 0;
  bool flip_odd_sign = false;
  std::size_t attempt_budget = 16;
};

// Throws NoStructure when no non-degenerate bracket is found.
SupertranslationAlgebra build_supertranslation(std::size_t dim_v, std::size_t copies, const BuildOptions& opts = {});

// Degrees -2, -1, 0 with so(V) in degree 0 and [V, W] = 0.
GradedSuperalgebra build_super_poincare(const SupertranslationAlgebra& m);

}  // namespace superprolong
