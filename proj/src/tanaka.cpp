#include "superprolong/tanaka.hpp"

#include <stdexcept>

#include "superprolong/errors.hpp"
#include "superprolong/linalg.hpp"

namespace superprolong {

NegativePart negative_part(const BracketTensor& gamma) {
  NegativePart m;
  m.dim_v = gamma.dim_v;
  m.dim_w = gamma.dim_w;
  m.gamma = gamma.comps;
  for (std::size_t i = 0; i < m.dim_v; ++i) m.v_labels.push_back("v" + std::to_string(i));
  for (std::size_t a = 0; a < m.dim_w; ++a) m.w_labels.push_back("q" + std::to_string(a));
  return m;
}

NegativePart negative_part(const SupertranslationAlgebra& s) {
  NegativePart m = negative_part(s.gamma);
  m.v_labels = s.data.spinor.space.labels;
  return m;
}

Vec Layer::coordinates(const Vec& action) const {
  Vec c(dim());
  Vec rebuilt(action.size());
  for (std::size_t k = 0; k < dim(); ++k) {
    c[k] = action[free_cols[k]];
    if (c[k].is_zero()) continue;
    for (std::size_t j = 0; j < action.size(); ++j)
      if (!basis[k][j].is_zero()) rebuilt[j] += c[k] * basis[k][j];
  }
  if (!(rebuilt == action))
    throw ClosureFailure("element is not in layer g_" + std::to_string(degree));
  return c;
}

namespace {

int parity_of(int degree) { return ((degree % 2) + 2) % 2; }

// For a fixed degree q: entries[x][t] lists (c, ([e_c, x])_t) over basis
// elements e_c of g_q, for each basis element x of m and each coordinate t of
// the target g_{q + deg x}.
using Entry = std::pair<std::size_t, Scalar>;
using BracketTable = std::vector<std::vector<std::vector<Entry>>>;

struct Context {
  const NegativePart& m;
  const std::vector<Layer>& layers;

  std::size_t m_dim() const { return m.dim_w + m.dim_v; }
  static int m_degree(std::size_t x, std::size_t dim_w) { return x < dim_w ? -1 : -2; }
  int deg(std::size_t x) const { return m_degree(x, m.dim_w); }

  std::size_t dim_of(int q) const {
    if (q == -2) return m.dim_v;
    if (q == -1) return m.dim_w;
    if (q < -2) return 0;
    return static_cast<std::size_t>(q) < layers.size() ? layers[static_cast<std::size_t>(q)].dim() : 0;
  }

  BracketTable table(int q) const {
    BracketTable t(m_dim());
    for (std::size_t x = 0; x < m_dim(); ++x) t[x].resize(dim_of(q + deg(x)));
    if (q == -1) {
      for (std::size_t c = 0; c < m.dim_w; ++c)
        for (std::size_t b = 0; b < m.dim_w; ++b)
          for (std::size_t i = 0; i < m.dim_v; ++i)
            if (!m.gamma[i](c, b).is_zero()) t[b][i].emplace_back(c, m.gamma[i](c, b));
    } else if (q >= 0) {
      const Layer& l = layers[static_cast<std::size_t>(q)];
      for (std::size_t c = 0; c < l.dim(); ++c) {
        const Vec& act = l.basis[c];
        for (std::size_t a = 0; a < m.dim_w; ++a)
          for (std::size_t k = 0; k < l.lower1; ++k)
            if (const Scalar& v = act[a * l.lower1 + k]; !v.is_zero()) t[a][k].emplace_back(c, v);
        for (std::size_t i = 0; i < m.dim_v; ++i)
          for (std::size_t k = 0; k < l.lower2; ++k)
            if (const Scalar& v = act[m.dim_w * l.lower1 + i * l.lower2 + k]; !v.is_zero())
              t[m.dim_w + i][k].emplace_back(c, v);
      }
    }
    return t;
  }
};

}  // namespace

Layer prolong_step(const NegativePart& m, const std::vector<Layer>& lower, int p, bool all_ordered_pairs) {
  if (p < 0) throw std::invalid_argument("prolongation degree must be non-negative");
  if (lower.size() < static_cast<std::size_t>(p)) throw std::invalid_argument("missing lower layers");
  Context ctx{m, lower};
  Layer out;
  out.degree = p;
  out.lower1 = ctx.dim_of(p - 1);
  out.lower2 = ctx.dim_of(p - 2);
  std::size_t cols = out.width(m.dim_w, m.dim_v);
  if (cols == 0) return out;

  BracketTable t1 = ctx.table(p - 1), t2 = ctx.table(p - 2);
  auto table_for = [&](std::size_t x) -> const BracketTable& { return ctx.deg(x) == -1 ? t1 : t2; };
  auto col = [&](std::size_t x, std::size_t c) {
    return x < m.dim_w ? x * out.lower1 + c : m.dim_w * out.lower1 + (x - m.dim_w) * out.lower2 + c;
  };
  std::size_t md = ctx.m_dim();

  // phi([x_a, x_b]) - [phi(x_a), x_b] - (-1)^{p|a|} [x_a, phi(x_b)] = 0, with
  // [x_a, phi(x_b)] = -(-1)^{|a||phi(x_b)|} [phi(x_b), x_a].
  auto source = [&](const RowSink& sink) {
    SparseRow row;
    for (std::size_t a = 0; a < md; ++a)
      for (std::size_t b = all_ordered_pairs ? 0 : a; b < md; ++b) {
        int t = p + ctx.deg(a) + ctx.deg(b);
        std::size_t tdim = ctx.dim_of(t);
        if (tdim == 0) continue;
        int pa = parity_of(ctx.deg(a)), pb_phi = parity_of(p + ctx.deg(b));
        Scalar s((p * pa + pa * pb_phi) % 2 ? -1 : 1);
        const auto& ta = table_for(a)[b];
        const auto& tb = table_for(b)[a];
        for (std::size_t k = 0; k < tdim; ++k) {
          row.entries.clear();
          if (a < m.dim_w && b < m.dim_w)
            for (std::size_t i = 0; i < m.dim_v; ++i)
              if (!m.gamma[i](a, b).is_zero()) row.add(col(m.dim_w + i, k), m.gamma[i](a, b));
          for (const auto& [c, v] : ta[k]) row.add(col(a, c), -v);
          for (const auto& [c, v] : tb[k]) row.add(col(b, c), s * v);
          if (!row.entries.empty()) sink(row);
        }
      }
  };
  KernelResult ker = sparse_kernel_streamed(cols, source);
  out.basis = std::move(ker.basis);
  out.free_cols = std::move(ker.free_cols);
  return out;
}

Layer prolong_degree_zero(const NegativePart& m) { return prolong_step(m, {}, 0); }

Vec degree_zero_action(const NegativePart& m, const Matrix& on_v, const Matrix& on_w) {
  Vec act(m.dim_w * m.dim_w + m.dim_v * m.dim_v);
  for (std::size_t a = 0; a < m.dim_w; ++a)
    for (std::size_t k = 0; k < m.dim_w; ++k) act[a * m.dim_w + k] = on_w(k, a);
  for (std::size_t i = 0; i < m.dim_v; ++i)
    for (std::size_t k = 0; k < m.dim_v; ++k) act[m.dim_w * m.dim_w + i * m.dim_v + k] = on_v(k, i);
  return act;
}

namespace {

Vec layer0_action(const ProlongationResult& r, const Vec& x) {
  const Layer& l = r.layers.at(0);
  std::size_t off = r.offset(0);
  Vec act(l.width(r.m.dim_w, r.m.dim_v));
  for (std::size_t k = 0; k < l.dim(); ++k) {
    const Scalar& c = x[off + k];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < act.size(); ++j)
      if (!l.basis[k][j].is_zero()) act[j] += c * l.basis[k][j];
  }
  return act;
}

}  // namespace

Matrix ProlongationResult::g0_on_w(const Vec& x) const {
  Vec act = layer0_action(*this, x);
  Matrix b(m.dim_w, m.dim_w);
  for (std::size_t a = 0; a < m.dim_w; ++a)
    for (std::size_t k = 0; k < m.dim_w; ++k) b(k, a) = act[a * m.dim_w + k];
  return b;
}

Matrix ProlongationResult::g0_on_v(const Vec& x) const {
  Vec act = layer0_action(*this, x);
  Matrix a(m.dim_v, m.dim_v);
  for (std::size_t i = 0; i < m.dim_v; ++i)
    for (std::size_t k = 0; k < m.dim_v; ++k) a(k, i) = act[m.dim_w * m.dim_w + i * m.dim_v + k];
  return a;
}

Vec ProlongationResult::g0_element(const Matrix& on_v, const Matrix& on_w) const {
  Vec c = layers.at(0).coordinates(degree_zero_action(m, on_v, on_w));
  Vec out(algebra.dim());
  for (std::size_t k = 0; k < c.size(); ++k) out[offset(0) + k] = c[k];
  return out;
}

Vec ProlongationResult::grading_element() const {
  return g0_element(Scalar(-2) * Matrix::identity(m.dim_v), -Matrix::identity(m.dim_w));
}

namespace {

std::size_t block_rank(const Layer& l, std::size_t from, std::size_t to) {
  std::vector<Vec> rows;
  for (const auto& v : l.basis) rows.emplace_back(v.begin() + from, v.begin() + to);
  if (to == from) return 0;
  return rank_of(rows);
}

void assemble(ProlongationResult& r, bool capped) {
  const NegativePart& m = r.m;
  Context ctx{m, r.layers};
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < m.dim_v; ++i) basis.push_back({m.v_labels[i], -2, 0});
  for (std::size_t a = 0; a < m.dim_w; ++a) basis.push_back({m.w_labels[a], -1, 1});
  for (const auto& l : r.layers)
    for (std::size_t k = 0; k < l.dim(); ++k)
      basis.push_back({"g" + std::to_string(l.degree) + "_" + std::to_string(k), l.degree, parity_of(l.degree)});
  r.algebra = GradedSuperalgebra(std::move(basis));
  GradedSuperalgebra& g = r.algebra;
  int top = r.top_degree();
  if (capped) g.truncated_above = top;

  std::size_t n = g.dim();
  auto off = [&](int q) -> std::size_t {
    if (q == -2) return 0;
    if (q == -1) return m.dim_v;
    return g.degree_range(q).first;
  };
  auto global_m = [&](std::size_t x) { return x < m.dim_w ? m.dim_v + x : x - m.dim_w; };

  for (std::size_t a = 0; a < m.dim_w; ++a)
    for (std::size_t b = a; b < m.dim_w; ++b) {
      SparseVec val;
      for (std::size_t i = 0; i < m.dim_v; ++i) val.emplace_back(i, m.gamma[i](a, b));
      g.set_bracket(m.dim_v + a, m.dim_v + b, std::move(val));
    }
  for (const auto& l : r.layers)
    for (std::size_t c = 0; c < l.dim(); ++c) {
      const Vec& act = l.basis[c];
      std::size_t gc = off(l.degree) + c;
      for (std::size_t a = 0; a < m.dim_w; ++a) {
        SparseVec val;
        for (std::size_t k = 0; k < l.lower1; ++k) val.emplace_back(off(l.degree - 1) + k, act[a * l.lower1 + k]);
        g.set_bracket(gc, global_m(a), std::move(val));
      }
      for (std::size_t i = 0; i < m.dim_v; ++i) {
        SparseVec val;
        for (std::size_t k = 0; k < l.lower2; ++k)
          val.emplace_back(off(l.degree - 2) + k, act[m.dim_w * l.lower1 + i * l.lower2 + k]);
        g.set_bracket(gc, global_m(m.dim_w + i), std::move(val));
      }
    }

  auto unit = [&](std::size_t k) {
    Vec v(n);
    v[k] = Scalar(1);
    return v;
  };
  // Brackets between non-negative layers, by increasing total degree.
  int last = capped ? top : 2 * top;
  for (int s = 0; s <= last; ++s) {
    std::size_t l1 = ctx.dim_of(s - 1), l2 = ctx.dim_of(s - 2);
    for (int q = 0; 2 * q <= s; ++q) {
      int rdeg = s - q;
      if (rdeg > top) continue;
      const Layer& lq = r.layers[static_cast<std::size_t>(q)];
      const Layer& lr = r.layers[static_cast<std::size_t>(rdeg)];
      for (std::size_t a = 0; a < lq.dim(); ++a)
        for (std::size_t b = (q == rdeg ? a : 0); b < lr.dim(); ++b) {
          std::size_t ga = off(q) + a, gb = off(rdeg) + b;
          Scalar sign(-super_sign(parity_of(q), parity_of(rdeg)));
          Vec act(m.dim_w * l1 + m.dim_v * l2);
          for (std::size_t x = 0; x < m.dim_w + m.dim_v; ++x) {
            Vec ex = unit(global_m(x));
            Vec y = g.bracket_with_basis(ga, g.bracket_with_basis(gb, ex));
            Vec z = g.bracket_with_basis(gb, g.bracket_with_basis(ga, ex));
            int ydeg = s + ctx.deg(x);
            std::size_t lo = off(ydeg), width = ctx.dim_of(ydeg);
            std::size_t base = x < m.dim_w ? x * l1 : m.dim_w * l1 + (x - m.dim_w) * l2;
            for (std::size_t k = 0; k < width; ++k) act[base + k] = y[lo + k] + sign * z[lo + k];
          }
          if (s <= top) {
            Vec c = r.layers[static_cast<std::size_t>(s)].coordinates(act);
            g.set_bracket(ga, gb, to_sparse(c, off(s)));
          } else if (!is_zero(act)) {
            throw ClosureFailure("nonzero bracket above the top degree " + std::to_string(top));
          }
        }
    }
  }
}

}  // namespace

ProlongationResult maximal_prolongation(const NegativePart& m, const ProlongationOptions& opts) {
  if (opts.max_degree < 2) throw std::invalid_argument("max_degree must be at least 2");
  ProlongationResult r;
  r.m = m;
  r.max_degree = opts.max_degree;
  r.layers.push_back(prolong_step(m, {}, 0, opts.all_ordered_pairs));
  for (int p = 1; p <= opts.max_degree; ++p) {
    Layer l = prolong_step(m, r.layers, p, opts.all_ordered_pairs);
    if (l.dim() == 0) {
      r.terminated = true;
      if (opts.verify_extra_layer) {
        std::vector<Layer> with_zero = r.layers;
        with_zero.push_back(l);
        r.extra_layer_zero = prolong_step(m, with_zero, p + 1, opts.all_ordered_pairs).dim() == 0;
      }
      break;
    }
    r.layers.push_back(std::move(l));
  }

  for (const auto& l : r.layers) {
    LayerCheck c;
    c.degree = l.degree;
    std::size_t wb = m.dim_w * l.lower1;
    c.transitive = block_rank(l, 0, wb) == l.dim();
    if (l.degree >= 1 && m.dim_v >= 3) c.faithful_on_v = block_rank(l, wb, l.width(m.dim_w, m.dim_v)) == l.dim();
    r.layer_checks.push_back(c);
  }
  assemble(r, !r.terminated);
  r.jacobi = check_super_jacobi(r.algebra);
  return r;
}

}  // namespace superprolong
