#include "superprolong/gradedlie.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "superprolong/linalg.hpp"

namespace superprolong {

SparseVec to_sparse(const Vec& v, std::size_t offset) {
  SparseVec out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.emplace_back(k + offset, v[k]);
  return out;
}

int super_sign(int pa, int pb) { return (pa & pb & 1) ? -1 : 1; }

GradedSuperalgebra::GradedSuperalgebra(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
  for (std::size_t k = 1; k < basis_.size(); ++k)
    if (basis_[k].degree < basis_[k - 1].degree) throw std::invalid_argument("basis must be sorted by degree");
  table_.resize(basis_.size() * (basis_.size() + 1) / 2);
}

std::vector<int> GradedSuperalgebra::degrees() const {
  std::vector<int> out;
  for (const auto& b : basis_)
    if (out.empty() || out.back() != b.degree) out.push_back(b.degree);
  return out;
}

std::pair<std::size_t, std::size_t> GradedSuperalgebra::degree_range(int p) const {
  auto lo = std::partition_point(basis_.begin(), basis_.end(), [p](const BasisElement& b) { return b.degree < p; });
  auto hi = std::partition_point(lo, basis_.end(), [p](const BasisElement& b) { return b.degree <= p; });
  return {static_cast<std::size_t>(lo - basis_.begin()), static_cast<std::size_t>(hi - basis_.begin())};
}

std::size_t GradedSuperalgebra::degree_dim(int p) const {
  auto [lo, hi] = degree_range(p);
  return hi - lo;
}

std::map<int, std::size_t> GradedSuperalgebra::graded_dimensions() const {
  std::map<int, std::size_t> out;
  for (const auto& b : basis_) ++out[b.degree];
  return out;
}

void GradedSuperalgebra::set_bracket(std::size_t a, std::size_t b, SparseVec value) {
  if (a >= dim() || b >= dim()) throw std::out_of_range("bracket index out of range");
  int target = basis_[a].degree + basis_[b].degree;
  std::erase_if(value, [](const auto& e) { return e.second.is_zero(); });
  for (const auto& [c, x] : value)
    if (c >= dim() || basis_[c].degree != target)
      throw std::invalid_argument("bracket value violates the grading");
  if (a > b) {
    int s = -super_sign(basis_[a].parity, basis_[b].parity);
    for (auto& e : value) e.second = Scalar(s) * e.second;
    std::swap(a, b);
  }
  std::sort(value.begin(), value.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  table_[slot(a, b)] = std::move(value);
}

SparseVec GradedSuperalgebra::bracket_basis(std::size_t a, std::size_t b) const {
  if (a <= b) return table_[slot(a, b)];
  SparseVec v = table_[slot(b, a)];
  int s = -super_sign(basis_[a].parity, basis_[b].parity);
  if (s < 0)
    for (auto& e : v) e.second = -e.second;
  return v;
}

Vec GradedSuperalgebra::bracket_with_basis(std::size_t a, const Vec& y) const {
  Vec out(dim());
  for (std::size_t b = 0; b < y.size(); ++b) {
    if (y[b].is_zero()) continue;
    const SparseVec& v = a <= b ? table_[slot(a, b)] : table_[slot(b, a)];
    if (v.empty()) continue;
    Scalar f = y[b];
    if (a > b && super_sign(basis_[a].parity, basis_[b].parity) > 0) f = -f;
    for (const auto& [c, x] : v) out[c] += f * x;
  }
  return out;
}

void GradedSuperalgebra::accumulate_bracket(std::size_t a, const SparseVec& y, const Scalar& coef, SparseVec& out) const {
  for (const auto& [b, yb] : y) {
    const SparseVec& v = a <= b ? table_[slot(a, b)] : table_[slot(b, a)];
    if (v.empty()) continue;
    Scalar f = coef * yb;
    if (a > b && super_sign(basis_[a].parity, basis_[b].parity) > 0) f = -f;
    for (const auto& [c, x] : v) out.emplace_back(c, f * x);
  }
}

void normalize(SparseVec& v) {
  std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size();) {
    std::size_t idx = v[r].first;
    Scalar sum = v[r].second;
    for (++r; r < v.size() && v[r].first == idx; ++r) sum += v[r].second;
    if (!sum.is_zero()) v[w++] = {idx, std::move(sum)};
  }
  v.resize(w);
}

Vec GradedSpan::block_of(const Vec& v, int& degree) const {
  degree = vector_degree(*g_, v);
  auto [lo, hi] = g_->degree_range(degree);
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool GradedSpan::add(const Vec& v) {
  int p = 0;
  Vec b = block_of(v, p);
  auto it = blocks_.try_emplace(p, b.size()).first;
  if (!it->second.add_row(std::move(b))) return false;
  ++dim_;
  return true;
}

bool GradedSpan::contains(const Vec& v) const {
  if (is_zero(v)) return true;
  int p = 0;
  Vec b = block_of(v, p);
  auto it = blocks_.find(p);
  return it != blocks_.end() && it->second.in_row_space(std::move(b));
}

Vec GradedSuperalgebra::bracket(const Vec& x, const Vec& y) const {
  Vec out(dim());
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    Vec part = bracket_with_basis(a, y);
    for (std::size_t c = 0; c < dim(); ++c)
      if (!part[c].is_zero()) out[c] += x[a] * part[c];
  }
  return out;
}

std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> GradedSuperalgebra::nonzero_brackets() const {
  std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> out;
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = a; b < dim(); ++b)
      if (!table_[slot(a, b)].empty()) out.emplace_back(a, b, table_[slot(a, b)]);
  return out;
}

namespace {

Vec basis_vec(std::size_t n, std::size_t a) {
  Vec v(n);
  v[a] = Scalar(1);
  return v;
}

}  // namespace

JacobiReport check_super_jacobi(const GradedSuperalgebra& g) {
  JacobiReport rep;
  std::size_t n = g.dim();
  auto dims = g.graded_dimensions();
  auto has_degree = [&](int p) { return dims.count(p) > 0; };
  auto over_cap = [&](int p) { return g.truncated_above && p > *g.truncated_above; };
  const auto& bs = g.basis();
  const Scalar one(1);
  SparseVec acc;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      int dab = bs[a].degree + bs[b].degree;
      if (over_cap(dab)) break;
      SparseVec xy = g.bracket_basis(a, b);
      int pxy = (bs[a].parity + bs[b].parity) % 2;
      for (std::size_t c = b; c < n; ++c) {
        int total = dab + bs[c].degree;
        if (over_cap(total) || over_cap(bs[a].degree + bs[c].degree) || over_cap(bs[b].degree + bs[c].degree)) break;
        if (!has_degree(total)) continue;
        ++rep.triples_checked;
        // [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]], with
        // [[x,y],z] = -(-1)^{|xy||z|} [z,[x,y]]
        acc.clear();
        g.accumulate_bracket(a, g.bracket_basis(b, c), one, acc);
        g.accumulate_bracket(c, xy, Scalar(super_sign(pxy, bs[c].parity)), acc);
        g.accumulate_bracket(b, g.bracket_basis(a, c), Scalar(-super_sign(bs[a].parity, bs[b].parity)), acc);
        normalize(acc);
        if (!acc.empty()) {
          rep.ok = false;
          rep.violation = std::array<std::size_t, 3>{a, b, c};
          return rep;
        }
      }
    }
  return rep;
}

int vector_degree(const GradedSuperalgebra& g, const Vec& v) {
  std::optional<int> deg;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (deg && *deg != g.element(k).degree) throw std::invalid_argument("vector is not homogeneous");
    deg = g.element(k).degree;
  }
  if (!deg) throw std::invalid_argument("zero vector has no degree");
  return *deg;
}

Subspace ideal_closure(const GradedSuperalgebra& g, const std::vector<Vec>& seed, std::size_t stop_at) {
  Subspace out;
  GradedSpan span(g);
  std::vector<SparseVec> sparse;
  std::deque<std::size_t> pending;
  auto offer = [&](Vec v) {
    if (is_zero(v) || !span.add(v)) return;
    ++out.graded_dims[vector_degree(g, v)];
    sparse.push_back(to_sparse(v));
    out.basis.push_back(std::move(v));
    pending.push_back(out.basis.size() - 1);
  };
  for (const auto& v : seed) offer(v);
  SparseVec acc;
  const Scalar one(1);
  while (!pending.empty()) {
    if (stop_at && out.dim() >= stop_at) break;
    std::size_t w = pending.front();
    pending.pop_front();
    for (std::size_t a = 0; a < g.dim() && !(stop_at && out.dim() >= stop_at); ++a) {
      acc.clear();
      g.accumulate_bracket(a, sparse[w], one, acc);
      normalize(acc);
      if (acc.empty()) continue;
      Vec v(g.dim());
      for (const auto& [c, x] : acc) v[c] = x;
      offer(std::move(v));
    }
  }
  return out;
}

Subspace degree_subspace(const GradedSuperalgebra& g, int p) {
  Subspace out;
  auto [lo, hi] = g.degree_range(p);
  for (std::size_t a = lo; a < hi; ++a) out.basis.push_back(basis_vec(g.dim(), a));
  if (hi > lo) out.graded_dims[p] = hi - lo;
  return out;
}

}  // namespace superprolong
