#include "superprolong/clifford.hpp"

#include <bit>
#include <stdexcept>

#include "superprolong/errors.hpp"

namespace superprolong {

Scalar MetricSpace::inner(const Vec& a, const Vec& b) const { return dot(a, gram * b); }

Vec MetricSpace::basis_vector(std::size_t i) const {
  Vec v(dim);
  v.at(i) = Scalar(1);
  return v;
}

MetricSpace build_metric_space(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("metric space dimension must be positive");
  MetricSpace m;
  m.dim = dim;
  m.gram = Matrix(dim, dim);
  for (std::size_t i = 0; i + 1 < dim; i += 2) {
    m.gram(i, i + 1) = Scalar(1);
    m.gram(i + 1, i) = Scalar(1);
    m.labels.push_back("e" + std::to_string(i / 2));
    m.labels.push_back("f" + std::to_string(i / 2));
  }
  if (dim % 2) {
    m.gram(dim - 1, dim - 1) = Scalar(1);
    m.labels.push_back("u");
  }
  return m;
}

std::vector<Vec> orthogonal_rebasing(const MetricSpace& space) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i + 1 < space.dim; i += 2) {
    Vec x(space.dim), y(space.dim);
    x[i] = Scalar(1);
    x[i + 1] = Scalar::frac(1, 2);
    y[i] = Scalar(1);
    y[i + 1] = Scalar::frac(-1, 2);
    out.push_back(x);
    out.push_back(y);
  }
  if (space.dim % 2) out.push_back(space.basis_vector(space.dim - 1));
  return out;
}

namespace {

// (-1)^{number of elements of mask below i}
int fermion_sign(unsigned mask, std::size_t i) {
  return std::popcount(mask & ((1u << i) - 1)) % 2 ? -1 : 1;
}

Matrix product_of_rebased(const SpinorModule& s, const std::vector<Vec>& rebasing, std::size_t count) {
  Matrix w = Matrix::identity(s.dim_s);
  for (std::size_t k = 0; k < count; ++k) w = w * gamma_of(s, rebasing[k]);
  return w;
}

// Returns mu with mu^2 * c = target for c, target in {1, -1}.
Scalar square_root_ratio(const Scalar& c, int target) {
  if (c == Scalar(target)) return Scalar(1);
  if (c == Scalar(-target)) return Scalar::i();
  throw ConstructionFailure("square of the volume element is not +-Id");
}

}  // namespace

SpinorModule build_spinor_module(const MetricSpace& space, bool flip_odd_sign) {
  SpinorModule s;
  s.space = space;
  std::size_t k = space.dim / 2;
  s.dim_s = std::size_t{1} << k;
  s.gammas.assign(space.dim, Matrix(s.dim_s, s.dim_s));
  for (std::size_t i = 0; i < k; ++i) {
    Matrix& ge = s.gammas[2 * i];
    Matrix& gf = s.gammas[2 * i + 1];
    for (unsigned mask = 0; mask < s.dim_s; ++mask) {
      int sg = fermion_sign(mask, i);
      if (mask & (1u << i))
        gf(mask ^ (1u << i), mask) = Scalar(-2 * sg);
      else
        ge(mask | (1u << i), mask) = Scalar(sg);
    }
  }

  auto rebasing = orthogonal_rebasing(space);
  Matrix omega = product_of_rebased(s, rebasing, 2 * k);
  Matrix omega_sq = omega * omega;
  Scalar c = omega_sq(0, 0);
  if (!(omega_sq == c * Matrix::identity(s.dim_s))) throw ConstructionFailure("volume element square is not scalar");
  if (space.dim % 2) {
    s.odd_scale = square_root_ratio(c, -1);
    if (flip_odd_sign) s.odd_scale = -s.odd_scale;
    s.gammas[space.dim - 1] = s.odd_scale * omega;
  } else {
    s.chirality = square_root_ratio(c, 1) * omega;
  }

  for (std::size_t a = 0; a < space.dim; ++a)
    for (std::size_t b = a; b < space.dim; ++b) {
      Matrix ac = s.gammas[a] * s.gammas[b] + s.gammas[b] * s.gammas[a];
      if (!(ac == Scalar(-2) * space.gram(a, b) * Matrix::identity(s.dim_s)))
        throw ConstructionFailure("Clifford relation fails for basis pair " + space.labels[a] + "," + space.labels[b]);
    }
  return s;
}

Matrix gamma_of(const SpinorModule& s, const Vec& v) {
  if (v.size() != s.space.dim) throw std::invalid_argument("gamma_of: vector length mismatch");
  Matrix m(s.dim_s, s.dim_s);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) m = m + v[i] * s.gammas[i];
  return m;
}

SoGenerator so_generator(const SpinorModule& s, std::size_t i, std::size_t j) {
  std::size_t d = s.space.dim;
  if (i >= d || j >= d) throw std::invalid_argument("so_generator: index out of range");
  SoGenerator g{Matrix(d, d), Matrix(s.dim_s, s.dim_s)};
  if (i == j) return g;
  // (v_i, .) v_j - (v_j, .) v_i applied to basis vector b
  for (std::size_t b = 0; b < d; ++b) {
    g.action_v(j, b) += s.space.gram(i, b);
    g.action_v(i, b) -= s.space.gram(j, b);
  }
  g.action_s = Scalar::frac(1, 4) * commutator(s.gammas[i], s.gammas[j]);
  return g;
}

std::vector<SoGenerator> so_generators(const SpinorModule& s) {
  std::vector<SoGenerator> out;
  for (std::size_t i = 0; i < s.space.dim; ++i)
    for (std::size_t j = i + 1; j < s.space.dim; ++j) out.push_back(so_generator(s, i, j));
  return out;
}

std::pair<Matrix, Matrix> semispinor_projectors(const SpinorModule& s) {
  if (!s.chirality) throw OddDimension("no chirality operator in odd dimension");
  Matrix id = Matrix::identity(s.dim_s);
  Scalar half = Scalar::frac(1, 2);
  return {half * (id + *s.chirality), half * (id - *s.chirality)};
}

}  // namespace superprolong
