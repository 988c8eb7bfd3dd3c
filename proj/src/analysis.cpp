#include "superprolong/analysis.hpp"

#include <deque>

#include "superprolong/errors.hpp"
#include "superprolong/linalg.hpp"
#include "superprolong/models.hpp"

namespace superprolong {

namespace {

Vec unit(std::size_t n, std::size_t k) {
  Vec v(n);
  v[k] = Scalar(1);
  return v;
}

// Coordinates of the g_p block of a global vector.
Vec block(const ProlongationResult& r, const Vec& x, int p) {
  auto [lo, hi] = r.algebra.degree_range(p);
  return Vec(x.begin() + static_cast<std::ptrdiff_t>(lo), x.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) { return span_coordinates(basis, v).has_value(); }

}  // namespace

GradingCheck check_grading_element(const ProlongationResult& r) {
  GradingCheck out;
  Vec e;
  try {
    e = r.grading_element();
  } catch (const ClosureFailure&) {
    return out;
  }
  out.member = true;
  out.eigenvalues = true;
  const auto& g = r.algebra;
  for (std::size_t k = 0; k < g.dim() && out.eigenvalues; ++k) {
    Vec x = unit(g.dim(), k);
    out.eigenvalues = g.bracket(e, x) == scale(Scalar(g.element(k).degree), x);
  }
  return out;
}

std::vector<Vec> internal_symmetries(const ProlongationResult& r) {
  const Layer& l = r.layers.at(0);
  std::size_t from = r.m.dim_w * l.lower1, len = r.m.dim_v * l.lower2;
  Matrix restr(len, l.dim());
  for (std::size_t k = 0; k < l.dim(); ++k)
    for (std::size_t j = 0; j < len; ++j) restr(j, k) = l.basis[k][from + j];
  std::vector<Vec> out;
  std::size_t off = r.offset(0);
  for (const auto& c : kernel_basis(restr)) {
    Vec v(r.algebra.dim());
    for (std::size_t k = 0; k < c.size(); ++k) v[off + k] = c[k];
    out.push_back(std::move(v));
  }
  return out;
}

G0Decomposition decompose_g0(const ProlongationResult& r, const SpinorData& d) {
  G0Decomposition out;
  try {
    for (const auto& a : d.so_w) out.so_part.push_back(r.g0_element(a.action_v, a.action_s));
    out.euler = r.grading_element();
  } catch (const ClosureFailure& e) {
    throw DecompositionFailure(std::string("so(V) + CE not inside g_0: ") + e.what());
  }
  out.h0 = internal_symmetries(r);

  std::size_t dim0 = r.layers.at(0).dim();
  std::vector<Vec> all = out.so_part;
  all.push_back(out.euler);
  all.insert(all.end(), out.h0.begin(), out.h0.end());
  if (all.size() != dim0 || rank_of(all) != dim0)
    throw DecompositionFailure("so(V) + CE + h_0 is not a direct sum equal to g_0 (" + std::to_string(all.size()) +
                               " summand vectors, dim g_0 = " + std::to_string(dim0) + ")");

  const auto& g = r.algebra;
  auto [lo, hi] = g.degree_range(0);
  auto check_ideal = [&](const std::vector<Vec>& part, const char* name) {
    std::vector<Vec> coords;
    for (const auto& v : part) coords.push_back(block(r, v, 0));
    for (std::size_t a = lo; a < hi; ++a)
      for (const auto& v : part)
        if (!in_span(coords, block(r, g.bracket_with_basis(a, v), 0)))
          throw DecompositionFailure(std::string(name) + " is not an ideal of g_0");
  };
  check_ideal(out.so_part, "so(V)");
  check_ideal({out.euler}, "CE");
  check_ideal(out.h0, "h_0");
  out.so_commutes_with_h0 = true;
  for (const auto& a : out.so_part)
    for (const auto& h : out.h0)
      if (!is_zero(g.bracket(a, h))) out.so_commutes_with_h0 = false;
  return out;
}

MinimalIdeal minimal_ideal(const ProlongationResult& r) {
  const auto& g = r.algebra;
  MinimalIdeal out;
  std::vector<Vec> seed;
  for (std::size_t i = 0; i < r.m.dim_v; ++i) seed.push_back(unit(g.dim(), i));
  out.ideal = ideal_closure(g, seed);
  const auto& s = out.ideal.basis;
  std::size_t n = s.size();

  GradedSpan derived(g);
  for (std::size_t a = 0; a < n && derived.dim() < n; ++a)
    for (std::size_t b = a; b < n && derived.dim() < n; ++b) {
      Vec br = g.bracket(s[a], s[b]);
      if (!is_zero(br)) derived.add(br);
    }
  out.perfect = derived.dim() == n;

  // For x in s, I(x) = s exactly when I(x) contains g_-2. Brackets with m
  // (all inside I(x)) usually reach g_-2 quickly; otherwise close fully.
  std::size_t dv = r.m.dim_v, dm = dv + r.m.dim_w;
  auto lowering_reaches_v = [&](const Vec& x) {
    GradedSpan span(g);
    std::size_t in_v = vector_degree(g, x) == -2 ? 1 : 0;
    std::deque<Vec> todo{x};
    span.add(x);
    while (!todo.empty() && in_v < dv) {
      Vec w = std::move(todo.front());
      todo.pop_front();
      for (std::size_t a = 0; a < dm; ++a) {
        Vec y = g.bracket_with_basis(a, w);
        if (is_zero(y) || !span.add(y)) continue;
        if (vector_degree(g, y) == -2) ++in_v;
        todo.push_back(std::move(y));
      }
    }
    return in_v == dv;
  };
  out.generated_by_each = true;
  for (std::size_t a = 0; a < n && out.generated_by_each; ++a)
    out.generated_by_each = lowering_reaches_v(s[a]) || ideal_closure(g, {s[a]}, n).dim() == n;

  GradedSpan span(g);
  for (const auto& v : s) span.add(v);
  out.contains_odd = true;
  for (std::size_t k = 0; k < g.dim(); ++k)
    if (g.element(k).parity == 1 && !span.contains(unit(g.dim(), k))) out.contains_odd = false;
  return out;
}

PhiEmbedding phi_embedding(const ProlongationResult& r, const SpinorData& d) {
  PhiEmbedding out;
  out.injective = out.equivariant = out.clifford_stable = true;
  if (r.layers.size() < 2) return out;
  const Layer& l = r.layers[1];
  std::size_t dv = r.m.dim_v, dw = r.m.dim_w;
  Matrix stacked(dv * dw, dw);
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t a = 0; a < dw; ++a)
      for (std::size_t b = 0; b < dw; ++b) stacked(i * dw + a, b) = d.gammas_w[i](a, b);
  for (std::size_t k = 0; k < l.dim(); ++k) {
    Vec rhs(dv * dw);
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t a = 0; a < dw; ++a) rhs[i * dw + a] = l.basis[k][dw * l.lower1 + i * l.lower2 + a];
    auto phi = try_solve(stacked, rhs);
    if (!phi) throw InconsistentPhi("no spinor phi(D) with D v = v.phi(D) for g_1 element " + std::to_string(k));
    out.images.push_back(std::move(*phi));
  }
  std::size_t rk = rank_of(out.images);
  out.injective = rk == l.dim();

  const auto& g = r.algebra;
  std::size_t off1 = r.offset(1);
  for (const auto& a : d.so_w) {
    Vec x = r.g0_element(a.action_v, a.action_s);
    for (std::size_t k = 0; k < l.dim() && out.equivariant; ++k) {
      Vec y = g.bracket_with_basis(off1 + k, x);  // [D_k, X] = -[X, D_k]
      Vec lhs(dw);
      for (std::size_t j = 0; j < l.dim(); ++j)
        if (!y[off1 + j].is_zero()) lhs = add(lhs, scale(-y[off1 + j], out.images[j]));
      out.equivariant = lhs == a.action_s * out.images[k];
    }
  }

  std::vector<Vec> extended = out.images;
  for (const auto& gm : d.gammas_w)
    for (const auto& v : out.images) extended.push_back(gm * v);
  out.clifford_stable = rank_of(extended) == rk;
  return out;
}

PsiReport psi_v(const SupertranslationAlgebra& m, const Vec& v) {
  PsiReport out;
  const MetricSpace& sp = m.data.spinor.space;
  std::size_t dv = m.dim_v(), dw = m.dim_w();
  Scalar vv = sp.inner(v, v);
  out.on_w = m.data.gamma_w(v);
  Vec gv = sp.gram * v;
  Matrix refl = vv * Matrix::identity(dv);
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = 0; j < dv; ++j) refl(i, j) -= Scalar(2) * v[i] * gv[j];
  out.on_v = Scalar(m.epsilon) * refl;
  out.invertible = rank(out.on_v) == dv && rank(out.on_w) == dw;
  out.square_ok = out.on_w * out.on_w == -vv * Matrix::identity(dw);
  if (m.epsilon == 0) {
    out.skipped = "bracket mixes admissible classes of both symmetries";
    return out;
  }
  // Gamma(psi s, psi t) = psi Gamma(s, t), component by component.
  out.homomorphism = true;
  Matrix wt = out.on_w.transpose();
  for (std::size_t i = 0; i < dv && out.homomorphism; ++i) {
    Matrix rhs(dw, dw);
    for (std::size_t j = 0; j < dv; ++j)
      if (!out.on_v(i, j).is_zero()) rhs = rhs + out.on_v(i, j) * m.gamma.comps[j];
    out.homomorphism = wt * m.gamma.comps[i] * out.on_w == rhs;
  }
  return out;
}

std::vector<Vec> psi_samples(const MetricSpace& sp) {
  std::vector<Vec> out;
  for (const auto& v : orthogonal_rebasing(sp)) {
    if (out.size() == 3) break;
    out.push_back(v);
  }
  if (sp.dim >= 2) out.push_back(sp.basis_vector(0));
  Vec c(sp.dim);
  for (std::size_t i = 0; i < sp.dim; ++i) c[i] = Scalar(static_cast<int>(i % 3) + 1);
  while (out.size() < 5) {
    out.push_back(c);
    c[0] += Scalar(1);
  }
  return out;
}

AlphaReport alpha_form_check(const SupertranslationAlgebra& m, const ProlongationResult& r) {
  const MetricSpace& sp = m.data.spinor.space;
  if (sp.dim < 3) throw std::invalid_argument("alpha form needs dim V >= 3");
  auto rb = orthogonal_rebasing(sp);
  const Vec &x = rb[0], &y = rb[1], &z = rb[2];
  std::size_t dw = m.dim_w();
  Matrix yz = m.data.gamma_w(y) * m.data.gamma_w(z);
  Vec gx = sp.gram * x;
  Matrix sum(dw, dw);
  for (std::size_t i = 0; i < sp.dim; ++i)
    if (!gx[i].is_zero()) sum = sum + gx[i] * m.gamma.comps[i];
  AlphaReport out;
  out.alpha = yz.transpose() * sum;
  out.antisymmetric = out.alpha.transpose() == -out.alpha;
  out.nondegenerate = rank(out.alpha) == dw;
  out.h0_contained = true;
  for (const auto& h : internal_symmetries(r)) {
    Matrix b = r.g0_on_w(h);
    if (!(b.transpose() * out.alpha + out.alpha * b).is_zero()) out.h0_contained = false;
  }
  return out;
}

bool StructureReport::all_checks_pass() const {
  for (const auto& [name, ok] : checks)
    if (!ok) return false;
  return true;
}

StructureReport classify(const SupertranslationAlgebra& m, const ProlongationResult& r) {
  StructureReport rep;
  std::size_t dv = m.dim_v(), n = m.data.copies;
  rep.dim_v = dv;
  rep.n_copies = n;
  rep.gamma_space_dim = m.gamma_space_dim;
  rep.graded_dims = r.graded_dims();
  rep.truncated_above = r.algebra.truncated_above;
  rep.jacobi_ok = r.jacobi.ok;
  rep.positive_part = r.layers.size() > 1;
  auto check = [&](std::string name, bool ok) { rep.checks.emplace_back(std::move(name), ok); };

  check("jacobi", r.jacobi.ok);
  bool transitive = true, faithful = true;
  for (const auto& c : r.layer_checks) {
    transitive = transitive && c.transitive;
    if (c.faithful_on_v) faithful = faithful && *c.faithful_on_v;
  }
  check("transitivity", transitive);
  if (dv >= 3) check("faithful_on_v", faithful);
  if (r.extra_layer_zero) check("extra_layer_zero", *r.extra_layer_zero);
  GradingCheck ge = check_grading_element(r);
  check("grading_element_member", ge.member);
  check("grading_element_eigenvalues", ge.eigenvalues);

  G0Decomposition dec = decompose_g0(r, m.data);
  rep.h0_dim = dec.h0.size();
  rep.so_ideal_ok = true;
  rep.decomposition_ok = true;
  check("g0_decomposition", true);
  check("so_commutes_with_h0", dec.so_commutes_with_h0);

  if (dv >= 3 && rep.positive_part) {
    PhiEmbedding phi = phi_embedding(r, m.data);
    check("phi_injective", phi.injective);
    check("phi_equivariant", phi.equivariant);
    check("phi_clifford_stable", phi.clifford_stable);
  }

  bool hom = true, inv = true, sq = true;
  for (const auto& v : psi_samples(m.data.spinor.space)) {
    PsiReport p = psi_v(m, v);
    if (p.skipped) {
      rep.notes.push_back("psi_v homomorphism skipped: " + *p.skipped);
    } else {
      hom = hom && p.homomorphism;
    }
    inv = inv && p.invertible == !m.data.spinor.space.inner(v, v).is_zero();
    sq = sq && p.square_ok;
  }
  if (m.epsilon != 0) check("psi_homomorphism", hom);
  check("psi_invertibility", inv);
  check("psi_square", sq);

  if (dv >= 3) {
    AlphaReport a = alpha_form_check(m, r);
    check("alpha_antisymmetric", a.antisymmetric);
    check("alpha_nondegenerate", a.nondegenerate);
    check("alpha_h0_contained", a.h0_contained);
  }

  if (rep.positive_part) {
    MinimalIdeal s = minimal_ideal(r);
    rep.minimal_ideal_dims = s.ideal.graded_dims;
    rep.simple = s.simple();
    check("minimal_ideal_contains_odd", s.contains_odd);
    if (dv >= 3) {
      check("minimal_ideal_simple", s.simple());
    } else if (!s.simple()) {
      rep.notes.push_back("ideal generated by g_-2 is not simple (dim V <= 2)");
    }
    if (r.algebra.truncated_above) rep.notes.push_back("minimal ideal computed inside the truncated algebra");
  }

  auto dims = rep.graded_dims;
  if (dv <= 2) {
    bool match = true;
    for (const auto& [p, dp] : dims) match = match && dp == dv * k1n_graded_dimension(n, p);
    rep.verdict = match ? "K(1|" + std::to_string(n) + ") growth" : "unclassified";
  } else if (auto row = expected_row(dv, n)) {
    rep.verdict = row->graded_dims == dims && row->h0_dim == rep.h0_dim ? row->name : "unclassified";
  } else {
    rep.verdict = rep.positive_part ? "unclassified" : "trivial positive part";
  }
  return rep;
}

}  // namespace superprolong
