#include "superprolong/supertranslation.hpp"

#include <algorithm>
#include <random>

#include "superprolong/errors.hpp"
#include "superprolong/linalg.hpp"

namespace superprolong {

Vec BracketTensor::apply(const Vec& s, const Vec& t) const {
  Vec out(dim_v);
  for (std::size_t i = 0; i < dim_v; ++i) out[i] = dot(s, comps[i] * t);
  return out;
}

bool BracketTensor::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

BracketTensor& BracketTensor::operator+=(const BracketTensor& o) {
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = comps[i] + o.comps[i];
  return *this;
}

BracketTensor operator*(const Scalar& c, const BracketTensor& t) {
  BracketTensor out = t;
  for (auto& m : out.comps) m = c * m;
  return out;
}

Matrix SpinorData::gamma_w(const Vec& v) const {
  Matrix m(dim_w, dim_w);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) m = m + v[i] * gammas_w[i];
  return m;
}

SpinorData lift_to_copies(const SpinorModule& s, std::size_t copies) {
  if (copies == 0) throw std::invalid_argument("number of spinor copies must be positive");
  SpinorData d;
  d.spinor = s;
  d.copies = copies;
  d.dim_w = s.dim_s * copies;
  for (const auto& g : s.gammas) d.gammas_w.push_back(block_diagonal(g, copies));
  for (auto g : so_generators(s)) {
    g.action_s = block_diagonal(g.action_s, copies);
    d.so_w.push_back(std::move(g));
  }
  return d;
}

namespace {

using Entries = std::vector<std::vector<std::pair<std::size_t, Scalar>>>;

// Nonzero entries of each column of m: cols[c] = {(r, m(r,c))}.
Entries column_entries(const Matrix& m) {
  Entries out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) out[c].emplace_back(r, m(r, c));
  return out;
}

Entries row_entries(const Matrix& m) {
  Entries out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) out[r].emplace_back(c, m(r, c));
  return out;
}

bool is_symmetric_matrix(const Matrix& m) { return m == m.transpose(); }

Matrix form_from_unknowns(const Vec& x, std::size_t n, int eps) {
  Matrix b(n, n);
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = (eps > 0 ? a : a + 1); c < n; ++c, ++k) {
      b(a, c) = x[k];
      b(c, a) = eps > 0 ? x[k] : -x[k];
    }
  return b;
}

// Index of unknown B_{ac} in the (anti)symmetric parametrization, with sign.
std::optional<std::pair<std::size_t, int>> form_unknown(std::size_t a, std::size_t c, std::size_t n, int eps) {
  if (a == c && eps < 0) return std::nullopt;
  int sign = 1;
  if (a > c) {
    std::swap(a, c);
    sign = eps;
  }
  std::size_t before = a * (a - 1) / 2;  // pairs skipped in earlier rows
  std::size_t idx = eps > 0 ? a * n - before + (c - a) : a * (n - 1) - before + (c - a - 1);
  return std::make_pair(idx, sign);
}

}  // namespace

std::vector<AdmissibleForm> admissible_forms(const SpinorModule& s, std::size_t copies, int tau) {
  if (tau != 1 && tau != -1) throw std::invalid_argument("tau must be +1 or -1");
  SpinorData d = lift_to_copies(s, copies);
  std::size_t n = d.dim_w;
  std::vector<AdmissibleForm> out;
  for (int eps : {1, -1}) {
    std::size_t unknowns = eps > 0 ? n * (n + 1) / 2 : n * (n - 1) / 2;
    std::vector<SparseRow> rows;
    for (const auto& g : d.gammas_w) {
      Entries gc = column_entries(g);
      // (g^T B - tau B g)_{rc} = sum_k g_{kr} B_{kc} - tau sum_k B_{rk} g_{kc}
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          SparseRow row;
          for (const auto& [k, x] : gc[r])
            if (auto u = form_unknown(k, c, n, eps)) row.add(u->first, Scalar(u->second) * x);
          for (const auto& [k, x] : gc[c])
            if (auto u = form_unknown(r, k, n, eps)) row.add(u->first, Scalar(-tau * u->second) * x);
          if (!row.entries.empty()) rows.push_back(std::move(row));
        }
    }
    for (const auto& x : sparse_kernel(unknowns, rows).basis) {
      AdmissibleForm f;
      f.matrix = form_from_unknowns(x, n, eps);
      f.tau = tau;
      f.sigma = eps;
      f.epsilon = eps;
      f.nondegenerate = rank(f.matrix) == n;
      out.push_back(std::move(f));
    }
  }
  return out;
}

bool is_symmetric(const BracketTensor& g) {
  for (const auto& c : g.comps)
    if (!is_symmetric_matrix(c)) return false;
  return true;
}

bool is_equivariant(const SpinorData& d, const BracketTensor& g) {
  // A_V Gamma(s,t) = Gamma(A s, t) + Gamma(s, A t), componentwise:
  // sum_j (A_V)_{ij} Gamma^j = A_W^T Gamma^i + Gamma^i A_W
  for (const auto& a : d.so_w)
    for (std::size_t i = 0; i < g.dim_v; ++i) {
      Matrix lhs(g.dim_w, g.dim_w);
      for (std::size_t j = 0; j < g.dim_v; ++j)
        if (!a.action_v(i, j).is_zero()) lhs = lhs + a.action_v(i, j) * g.comps[j];
      if (!(lhs == a.action_s.transpose() * g.comps[i] + g.comps[i] * a.action_s)) return false;
    }
  return true;
}

bool is_nondegenerate(const BracketTensor& g) {
  RowReducer rr(g.dim_w);
  for (const auto& c : g.comps)
    for (std::size_t r = 0; r < g.dim_w; ++r) {
      // rows of the stacked matrix s -> (Gamma^i(s, w_r))_{i,r}
      rr.add_row(c.row(r));
      if (rr.rank() == g.dim_w) return true;
    }
  return rr.rank() == g.dim_w;
}

bool is_fundamental(const BracketTensor& g) {
  RowReducer rr(g.dim_v);
  for (std::size_t a = 0; a < g.dim_w; ++a)
    for (std::size_t b = a; b < g.dim_w; ++b) {
      Vec v(g.dim_v);
      for (std::size_t i = 0; i < g.dim_v; ++i) v[i] = g.comps[i](a, b);
      rr.add_row(std::move(v));
      if (rr.rank() == g.dim_v) return true;
    }
  return false;
}

BracketTensor gamma_from_matrix(const SpinorData& d, const Matrix& b) {
  const MetricSpace& sp = d.spinor.space;
  Matrix ginv = inverse(sp.gram);
  BracketTensor g;
  g.dim_v = sp.dim;
  g.copies = d.copies;
  g.dim_w = d.dim_w;
  std::vector<Matrix> gb;
  for (const auto& gam : d.gammas_w) gb.push_back(gam.transpose() * b);
  for (std::size_t j = 0; j < sp.dim; ++j) {
    Matrix c(d.dim_w, d.dim_w);
    for (std::size_t i = 0; i < sp.dim; ++i)
      if (!ginv(i, j).is_zero()) c = c + ginv(i, j) * gb[i];
    g.comps.push_back(std::move(c));
  }
  return g;
}

BracketTensor gamma_from_form(const SpinorData& d, const AdmissibleForm& b) {
  if (b.sigma * b.tau != 1) throw SigmaTauViolation("admissible form has sigma*tau = -1");
  if (rank(b.matrix) != d.dim_w) throw DegenerateForm("bilinear form is degenerate");
  BracketTensor g = gamma_from_matrix(d, b.matrix);
  if (!is_symmetric(g) || !is_equivariant(d, g))
    throw ConstructionFailure("bracket from admissible form is not symmetric and equivariant");
  return g;
}

AdmissibleForm reconstruct_form(const SpinorData& d, const BracketTensor& g, const Vec& v) {
  const MetricSpace& sp = d.spinor.space;
  Scalar vv = sp.inner(v, v);
  if (vv.is_zero()) throw IsotropicVector("reconstruction needs a non-isotropic vector");
  Vec gv = sp.gram * v;
  Matrix gamma_v(d.dim_w, d.dim_w);
  for (std::size_t j = 0; j < sp.dim; ++j)
    if (!gv[j].is_zero()) gamma_v = gamma_v + gv[j] * g.comps[j];
  Matrix m = (Scalar(-1) / vv) * d.gamma_w(v);
  AdmissibleForm f;
  f.matrix = m.transpose() * gamma_v;
  Matrix t = f.matrix.transpose();
  f.epsilon = f.matrix == t ? 1 : (f.matrix == -t ? -1 : 0);
  f.sigma = f.epsilon;
  f.tau = 0;
  for (int tau : {1, -1}) {
    bool ok = true;
    for (const auto& gam : d.gammas_w)
      if (!(gam.transpose() * f.matrix == Scalar(tau) * f.matrix * gam)) {
        ok = false;
        break;
      }
    if (ok) {
      f.tau = tau;
      break;
    }
  }
  f.nondegenerate = rank(f.matrix) == d.dim_w;
  return f;
}

namespace {

Vec flatten(const BracketTensor& g) {
  Vec out;
  for (const auto& c : g.comps) out.insert(out.end(), c.data().begin(), c.data().end());
  return out;
}

Vec reference_vector(const MetricSpace& sp) { return orthogonal_rebasing(sp).front(); }

// Torus weights of the basis of V and W under the Cartan elements e_j ^ f_j.
struct Weights {
  std::vector<std::vector<Scalar>> v, w;
};

Weights torus_weights(const SpinorData& d) {
  const auto& sp = d.spinor.space;
  Weights out{std::vector<std::vector<Scalar>>(sp.dim), std::vector<std::vector<Scalar>>(d.dim_w)};
  for (std::size_t j = 0; 2 * j + 1 < sp.dim; ++j) {
    SoGenerator h = so_generator(d.spinor, 2 * j, 2 * j + 1);
    Matrix hw = block_diagonal(h.action_s, d.copies);
    for (std::size_t i = 0; i < sp.dim; ++i) out.v[i].push_back(h.action_v(i, i));
    for (std::size_t a = 0; a < d.dim_w; ++a) out.w[a].push_back(hw(a, a));
  }
  return out;
}

}  // namespace

InvariantGammaSpace invariant_gamma_space(const SpinorData& d) {
  std::size_t dv = d.spinor.space.dim, n = d.dim_w;
  Weights wt = torus_weights(d);
  // Unknown Gamma^i_{ab}, a <= b, kept only when weight(v_i) = weight(a) + weight(b).
  std::vector<long> index(dv * n * n, -1);
  std::vector<std::array<std::size_t, 3>> unknowns;
  auto key = [&](std::size_t i, std::size_t a, std::size_t b) { return (i * n + a) * n + b; };
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        bool ok = true;
        for (std::size_t j = 0; j < wt.v[i].size() && ok; ++j) ok = wt.v[i][j] == wt.w[a][j] + wt.w[b][j];
        if (!ok) continue;
        index[key(i, a, b)] = static_cast<long>(unknowns.size());
        unknowns.push_back({i, a, b});
      }
  auto lookup = [&](std::size_t i, std::size_t a, std::size_t b) -> long {
    if (a > b) std::swap(a, b);
    return index[key(i, a, b)];
  };

  std::vector<SparseRow> rows;
  for (const auto& g : d.so_w) {
    Entries av = row_entries(g.action_v);
    Entries aw = column_entries(g.action_s);
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          SparseRow row;
          for (const auto& [j, x] : av[i])
            if (long u = lookup(j, a, b); u >= 0) row.add(static_cast<std::size_t>(u), x);
          for (const auto& [c, x] : aw[a])
            if (long u = lookup(i, c, b); u >= 0) row.add(static_cast<std::size_t>(u), -x);
          for (const auto& [c, x] : aw[b])
            if (long u = lookup(i, a, c); u >= 0) row.add(static_cast<std::size_t>(u), -x);
          if (!row.entries.empty()) rows.push_back(std::move(row));
        }
  }

  std::vector<BracketTensor> raw;
  for (const auto& x : sparse_kernel(unknowns.size(), rows).basis) {
    BracketTensor g;
    g.dim_v = dv;
    g.copies = d.copies;
    g.dim_w = n;
    g.comps.assign(dv, Matrix(n, n));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      if (x[u].is_zero()) continue;
      auto [i, a, b] = unknowns[u];
      g.comps[i](a, b) = x[u];
      g.comps[i](b, a) = x[u];
    }
    raw.push_back(std::move(g));
  }

  InvariantGammaSpace out;
  if (raw.empty()) return out;

  // Split by the symmetry of the reconstructed form.
  Vec v = reference_vector(d.spinor.space);
  std::vector<BracketTensor> parts[2];
  RowReducer rr[2] = {RowReducer(dv * n * n), RowReducer(dv * n * n)};
  for (const auto& g : raw) {
    Matrix b = reconstruct_form(d, g, v).matrix;
    Matrix bt = b.transpose();
    Scalar half = Scalar::frac(1, 2);
    Matrix sym = half * (b + bt), anti = half * (b - bt);
    for (int k = 0; k < 2; ++k) {
      const Matrix& part = k == 0 ? sym : anti;
      if (part.is_zero()) continue;
      BracketTensor img = gamma_from_matrix(d, part);
      if (rr[k].add_row(flatten(img))) parts[k].push_back(std::move(img));
    }
  }
  bool split_ok = parts[0].size() + parts[1].size() == raw.size();
  for (int k = 0; k < 2 && split_ok; ++k)
    for (const auto& g : parts[k])
      if (!is_symmetric(g) || !is_equivariant(d, g)) split_ok = false;
  if (!split_ok) {
    out.basis = raw;
    GammaClass c;
    for (std::size_t k = 0; k < raw.size(); ++k) c.members.push_back(k);
    out.classes.push_back(c);
    return out;
  }
  // Larger class first; on ties the antisymmetric one.
  std::vector<int> order = {1, 0};
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return parts[x].size() > parts[y].size(); });
  for (int k : order) {
    if (parts[k].empty()) continue;
    GammaClass c;
    c.epsilon = k == 0 ? 1 : -1;
    for (auto& g : parts[k]) {
      c.members.push_back(out.basis.size());
      out.basis.push_back(std::move(g));
    }
    out.classes.push_back(std::move(c));
  }
  return out;
}

namespace {

BracketTensor combine(const InvariantGammaSpace& space, const std::vector<Scalar>& coeffs) {
  BracketTensor g = space.basis.front();
  for (auto& c : g.comps) c = Matrix(c.rows(), c.cols());
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) g += coeffs[k] * space.basis[k];
  return g;
}

}  // namespace

SupertranslationAlgebra build_supertranslation(std::size_t dim_v, std::size_t copies, const BuildOptions& opts) {
  if (dim_v == 0 || copies == 0) throw std::invalid_argument("dimV and N must be positive");
  SpinorModule s = build_spinor_module(build_metric_space(dim_v), opts.flip_odd_sign);
  SupertranslationAlgebra m;
  m.data = lift_to_copies(s, copies);
  InvariantGammaSpace space = invariant_gamma_space(m.data);
  m.gamma_space_dim = space.dim();
  std::string where = "(D,N)=(" + std::to_string(dim_v) + "," + std::to_string(copies) + ")";
  if (space.dim() == 0) throw NoStructure("no equivariant bracket exists for " + where, 0);

  auto epsilon_of = [&](const std::vector<Scalar>& coeffs) {
    int eps = 0;
    for (const auto& c : space.classes)
      for (std::size_t k : c.members)
        if (!coeffs[k].is_zero()) {
          if (eps != 0 && eps != c.epsilon) return 0;
          eps = c.epsilon;
          if (eps == 0) return 0;
        }
    return eps;
  };
  auto accept = [&](std::vector<Scalar> coeffs, std::string note) {
    BracketTensor g = combine(space, coeffs);
    if (!is_nondegenerate(g)) return false;
    if (!is_fundamental(g)) throw ConstructionFailure("non-degenerate bracket does not span V for " + where);
    m.gamma = std::move(g);
    m.epsilon = epsilon_of(coeffs);
    m.coeffs = std::move(coeffs);
    m.selection_note = std::move(note);
    return true;
  };

  if (opts.coeffs) {
    if (opts.coeffs->size() != space.dim())
      throw std::invalid_argument("expected " + std::to_string(space.dim()) + " coefficients for " + where);
    if (!accept(*opts.coeffs, "user coefficients"))
      throw NoStructure("supplied coefficients give a degenerate bracket for " + where, space.dim());
    return m;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dist(-4, 4);
  auto attempt_on = [&](const std::vector<std::size_t>& members, const std::string& label) {
    for (std::size_t t = 0; t < opts.attempt_budget; ++t) {
      std::vector<Scalar> coeffs(space.dim());
      bool ones = opts.seed == 0 && t == 0;
      for (std::size_t k : members) {
        int x = 0;
        while (!ones && x == 0) x = dist(rng);
        coeffs[k] = Scalar(ones ? 1 : x);
      }
      std::string note = label + ", attempt " + std::to_string(t + 1) + (ones ? " (all ones)" : " (seeded)");
      if (accept(std::move(coeffs), note)) return true;
    }
    return false;
  };
  for (const auto& c : space.classes) {
    std::string label = "class epsilon=" + std::to_string(c.epsilon) + " dim " + std::to_string(c.members.size());
    if (attempt_on(c.members, label)) return m;
  }
  if (space.classes.size() > 1) {
    std::vector<std::size_t> all(space.dim());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    if (attempt_on(all, "full space")) return m;
  }
  throw NoStructure("no non-degenerate bracket found for " + where, space.dim());
}

GradedSuperalgebra build_super_poincare(const SupertranslationAlgebra& m) {
  const auto& d = m.data;
  const auto& sp = d.spinor.space;
  std::size_t dv = sp.dim, dw = d.dim_w, ds = d.so_w.size();
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < dv; ++i) basis.push_back({sp.labels[i], -2, 0});
  for (std::size_t a = 0; a < dw; ++a) basis.push_back({"q" + std::to_string(a), -1, 1});
  for (std::size_t i = 0, k = 0; i < dv; ++i)
    for (std::size_t j = i + 1; j < dv; ++j, ++k) basis.push_back({sp.labels[i] + "^" + sp.labels[j], 0, 0});
  GradedSuperalgebra g(std::move(basis));
  std::size_t off_w = dv, off_0 = dv + dw;

  for (std::size_t a = 0; a < dw; ++a)
    for (std::size_t b = a; b < dw; ++b) {
      SparseVec val;
      for (std::size_t i = 0; i < dv; ++i) val.emplace_back(i, m.gamma.comps[i](a, b));
      g.set_bracket(off_w + a, off_w + b, std::move(val));
    }
  std::vector<Vec> flat;
  for (const auto& x : d.so_w) flat.push_back(x.action_v.data());
  for (std::size_t k = 0; k < ds; ++k) {
    const auto& x = d.so_w[k];
    for (std::size_t b = 0; b < dv; ++b) g.set_bracket(off_0 + k, b, to_sparse(x.action_v.column(b)));
    for (std::size_t b = 0; b < dw; ++b) g.set_bracket(off_0 + k, off_w + b, to_sparse(x.action_s.column(b), off_w));
    for (std::size_t l = k; l < ds; ++l) {
      auto c = span_coordinates(flat, commutator(x.action_v, d.so_w[l].action_v).data());
      if (!c) throw ConstructionFailure("so(V) commutator left the span of the generators");
      g.set_bracket(off_0 + k, off_0 + l, to_sparse(*c, off_0));
    }
  }
  return g;
}

}  // namespace superprolong
