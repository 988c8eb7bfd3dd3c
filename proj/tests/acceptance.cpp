// One pass/fail line per acceptance criterion; exit status 1 if a gating
// criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "superprolong/analysis.hpp"
#include "superprolong/errors.hpp"
#include "superprolong/linalg.hpp"
#include "superprolong/models.hpp"

using namespace superprolong;

namespace {

using Dims = std::map<int, std::size_t>;
using clk = std::chrono::steady_clock;

double seconds_since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

std::string dims_text(const Dims& d) {
  std::string s;
  for (auto [p, n] : d) s += (s.empty() ? "" : ",") + std::to_string(n);
  return "(" + s + ")";
}

std::size_t total(const Dims& d) {
  std::size_t t = 0;
  for (auto [p, n] : d) t += n;
  return t;
}

// Table rows written out from the closed forms, independent of the models module.
Dims row_dims(std::size_t d, std::size_t n) {
  auto sym = [](std::size_t v, std::size_t w, std::size_t z) { return Dims{{-2, v}, {-1, w}, {0, z}, {1, w}, {2, v}}; };
  if (d == 3) return sym(3, 2 * n, 4 + n * (n - 1) / 2);
  if (d == 4) return sym(4, 4 * n, n * n + 7);
  return sym(5, 8, 14);
}

std::size_t row_h0(std::size_t d, std::size_t n) { return d == 3 ? n * (n - 1) / 2 : d == 4 ? n * n : 3; }

// Monomials t^a xi_I with 2a + |I| = p + 2.
std::size_t contact_count(std::size_t n, int p) {
  std::size_t c = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int rest = p + 2 - __builtin_popcountll(mask);
    if (rest >= 0 && rest % 2 == 0) ++c;
  }
  return c;
}

struct Run {
  std::size_t d = 0, n = 0;
  SupertranslationAlgebra m;
  ProlongationResult r;
  StructureReport rep;
  double seconds = 0;
};

Run run(std::size_t d, std::size_t n, int max_degree = 12) {
  auto t0 = clk::now();
  Run x;
  x.d = d;
  x.n = n;
  x.m = build_supertranslation(d, n);
  ProlongationOptions o;
  o.max_degree = max_degree;
  o.verify_extra_layer = true;
  x.r = maximal_prolongation(negative_part(x.m), o);
  x.rep = classify(x.m, x.r);
  x.seconds = seconds_since(t0);
  return x;
}

std::string cell(std::size_t d, std::size_t n) { return "(" + std::to_string(d) + "," + std::to_string(n) + ")"; }

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  std::string summary;
  void fail(const std::string& why) {
    pass = false;
    problems.push_back(why);
  }
};

int gating_failures = 0;

void print(int id, const std::string& title, const Outcome& o, bool gating = true) {
  std::cout << (o.pass ? "PASS" : gating ? "FAIL" : "WARN") << "  criterion " << id << ": " << title;
  if (!o.summary.empty()) std::cout << " | " << o.summary;
  for (const auto& p : o.problems) std::cout << " | " << p;
  std::cout << std::endl;
  if (!o.pass && gating) ++gating_failures;
}

template <class F>
void guarded(Outcome& o, const std::string& where, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    o.fail(where + ": " + e.what());
  }
}

Vec flatten(const BracketTensor& g) {
  Vec out;
  for (const auto& c : g.comps) out.insert(out.end(), c.data().begin(), c.data().end());
  return out;
}

std::vector<Vec> nonisotropic_samples(const MetricSpace& sp) {
  std::vector<Vec> out;
  for (const auto& v : orthogonal_rebasing(sp)) {
    if (out.size() == 3) break;
    out.push_back(v);
  }
  Vec c(sp.dim);
  for (std::size_t i = 0; i < sp.dim; ++i) c[i] = Scalar(static_cast<int>(i) + 2);
  while (out.size() < 5) {
    if (!sp.inner(c, c).is_zero()) out.push_back(c);
    c[sp.dim - 1] += Scalar(1);
  }
  return out;
}

}  // namespace

int main() {
  std::vector<Run> successful;
  const std::vector<std::pair<std::size_t, std::size_t>> rows = {{3, 1}, {3, 2}, {3, 3}, {3, 4}, {3, 5}, {4, 1},
                                                                 {4, 2}, {4, 3}, {4, 4}, {4, 5}, {5, 2}};

  {
    Outcome o;
    double sweep = 0, slowest = 0;
    for (auto [d, n] : rows)
      guarded(o, cell(d, n), [&] {
        Run x = run(d, n);
        sweep += x.seconds;
        slowest = std::max(slowest, x.seconds);
        if (!x.r.terminated) o.fail(cell(d, n) + " did not terminate");
        if (x.rep.graded_dims != row_dims(d, n))
          o.fail(cell(d, n) + " dims " + dims_text(x.rep.graded_dims) + " expected " + dims_text(row_dims(d, n)));
        if (x.rep.h0_dim != row_h0(d, n))
          o.fail(cell(d, n) + " h0 " + std::to_string(x.rep.h0_dim) + " expected " + std::to_string(row_h0(d, n)));
        if (x.seconds >= 60) o.fail(cell(d, n) + " took " + std::to_string(x.seconds) + " s");
        successful.push_back(std::move(x));
      });
    if (sweep >= 600) o.fail("sweep took " + std::to_string(sweep) + " s");
    auto find = [&](std::size_t d, std::size_t n) -> const Run* {
      for (const auto& x : successful)
        if (x.d == d && x.n == n) return &x;
      return nullptr;
    };
    const Run* a = find(3, 1);
    const Run* b = find(4, 4);
    const Run* c = find(5, 2);
    if (!a || total(a->rep.graded_dims) != 14) o.fail("(3,1) total is not 14");
    if (!b || total(b->rep.graded_dims) != 63) o.fail("(4,4) total is not 63");
    if (!c || total(c->rep.graded_dims) != 40) o.fail("(5,2) total is not 40");
    std::ostringstream s;
    s << rows.size() << " rows, slowest " << slowest << " s, sweep " << sweep << " s";
    o.summary = s.str();
    print(1, "classification rows and h0 dimensions", o);
  }

  {
    Outcome o;
    std::size_t checked = 0;
    std::vector<std::string> absent;
    for (std::size_t d : {6, 7, 8})
      for (std::size_t n : {1, 2}) {
        try {
          Run x = run(d, n);
          ++checked;
          if (x.r.layers.size() != 1 || !x.r.terminated) o.fail(cell(d, n) + " has g_1 != 0");
          auto dec = decompose_g0(x.r, x.m.data);
          std::size_t so = d * (d - 1) / 2;
          if (dec.so_part.size() != so || so + 1 + dec.h0.size() != x.r.layers[0].dim())
            o.fail(cell(d, n) + " g0 is not so(V) + CE + h0");
          if (x.rep.verdict != "trivial positive part") o.fail(cell(d, n) + " verdict " + x.rep.verdict);
          successful.push_back(std::move(x));
        } catch (const NoStructure&) {
          absent.push_back(cell(d, n));
        } catch (const std::exception& e) {
          o.fail(cell(d, n) + ": " + e.what());
        }
      }
    try {
      build_supertranslation(5, 1);
      o.fail("(5,1) built a structure");
    } catch (const NoStructure& e) {
      if (e.gamma_space_dim != 0) o.fail("(5,1) gamma_space_dim " + std::to_string(e.gamma_space_dim));
    }
    std::string none;
    for (const auto& c : absent) none += c;
    o.summary = std::to_string(checked) + " cells with g = m + g0; no structure at " + (none.empty() ? "-" : none) +
                "; (5,1) NoStructure with gamma_space_dim 0";
    print(2, "vanishing positive part for D = 6, 7, 8", o);
  }

  {
    Outcome o;
    std::map<std::size_t, Dims> d1;
    for (std::size_t n : {1, 2, 3})
      guarded(o, cell(1, n), [&] {
        Run x = run(1, n, 8);
        for (int p = -2; p <= 8; ++p)
          if (x.r.algebra.degree_dim(p) != contact_count(n, p))
            o.fail(cell(1, n) + " degree " + std::to_string(p) + ": " + std::to_string(x.r.algebra.degree_dim(p)) +
                   " vs " + std::to_string(contact_count(n, p)));
        d1[n] = x.r.graded_dims();
        successful.push_back(std::move(x));
      });
    for (std::size_t n : {1, 2})
      guarded(o, cell(2, n), [&] {
        Run x = run(2, n, 8);
        for (int p = -2; p <= 8; ++p)
          if (x.r.algebra.degree_dim(p) != 2 * d1[n][p])
            o.fail(cell(2, n) + " degree " + std::to_string(p) + " is not twice the dim V = 1 value");
        successful.push_back(std::move(x));
      });
    o.summary = "degrees -2..8 against the contact monomial count";
    print(3, "dim V <= 2 growth", o);
  }

  {
    Outcome o;
    std::size_t psi_samples_checked = 0;
    for (const auto& x : successful) {
      for (const auto& [name, ok] : x.rep.checks)
        if (!ok) o.fail(cell(x.d, x.n) + " " + name);
      psi_samples_checked += psi_samples(x.m.data.spinor.space).size();
      bool isotropic = false, nonisotropic = false;
      for (const auto& v : psi_samples(x.m.data.spinor.space))
        (x.m.data.spinor.space.inner(v, v).is_zero() ? isotropic : nonisotropic) = true;
      if (x.d >= 2 && !(isotropic && nonisotropic)) o.fail(cell(x.d, x.n) + " psi samples miss a vector type");
      if (x.d >= 3 && x.rep.positive_part) {
        guarded(o, cell(x.d, x.n), [&] {
          auto s = minimal_ideal(x.r);
          if (s.ideal.graded_dims[-2] != x.d) o.fail(cell(x.d, x.n) + " minimal ideal misses g_-2");
          if (!s.contains_odd) o.fail(cell(x.d, x.n) + " minimal ideal misses an odd layer");
          if (!s.simple()) o.fail(cell(x.d, x.n) + " minimal ideal not simple");
        });
      }
    }
    o.summary = std::to_string(successful.size()) + " runs, " + std::to_string(psi_samples_checked) + " psi_v samples";
    print(4, "structural checks on every successful run", o);
  }

  {
    Outcome o;
    std::size_t compared = 0;
    for (const auto& x : successful) {
      if (x.d != 3 && x.d != 4) continue;
      guarded(o, cell(x.d, x.n), [&] {
        auto row = expected_row(x.d, x.n);
        if (!row || !row->model) return o.fail(cell(x.d, x.n) + " has no model row");
        auto model = grade_by_element(build_matrix_model(*row->model, x.n, 4), depth_two_element(x.n));
        if (!check_super_jacobi(model).ok) o.fail(row->name + " model fails Jacobi");
        Dims engine = x.r.graded_dims();
        if (engine != model.graded_dimensions() || engine != row->graded_dims)
          o.fail(cell(x.d, x.n) + " engine " + dims_text(engine) + " model " + dims_text(model.graded_dimensions()) +
                 " row " + dims_text(row->graded_dims));
        ++compared;
      });
    }
    o.summary = std::to_string(compared) + " rows compared";
    if (compared != 10) o.fail("expected 10 rows with D = 3, 4");
    print(5, "engine, matrix model and expected row agree", o);
  }

  {
    Outcome o;
    std::size_t forms = 0, tensors = 0;
    for (std::size_t d = 1; d <= 6; ++d)
      for (std::size_t n = 1; n <= 3; ++n)
        guarded(o, cell(d, n), [&] {
          SpinorData dat = lift_to_copies(build_spinor_module(build_metric_space(d)), n);
          InvariantGammaSpace sp = invariant_gamma_space(dat);
          std::vector<Vec> span;
          for (const auto& g : sp.basis) span.push_back(flatten(g));
          for (int tau : {1, -1})
            for (const auto& f : admissible_forms(dat.spinor, n, tau)) {
              if (f.sigma * f.tau != 1) continue;
              BracketTensor g = f.nondegenerate ? gamma_from_form(dat, f) : gamma_from_matrix(dat, f.matrix);
              ++forms;
              if (!span_coordinates(span, flatten(g))) o.fail(cell(d, n) + " form image outside the invariant span");
            }
          auto vs = nonisotropic_samples(dat.spinor.space);
          for (const auto& g : sp.basis) {
            ++tensors;
            AdmissibleForm ref = reconstruct_form(dat, g, vs[0]);
            if (!(gamma_from_matrix(dat, ref.matrix) == g)) o.fail(cell(d, n) + " reconstruct_form does not round-trip");
            for (const auto& v : vs)
              if (!(reconstruct_form(dat, g, v).matrix == ref.matrix)) o.fail(cell(d, n) + " reconstruct_form depends on v");
          }
        });
    o.summary = std::to_string(forms) + " forms, " + std::to_string(tensors) + " invariant tensors x 5 vectors";
    print(6, "cross-construction consistency", o);
  }

  {
    Outcome o;
    std::size_t samples = 0, divergent = 0;
    for (auto [d, n] : rows) {
      Dims reference;
      for (const auto& x : successful)
        if (x.d == d && x.n == n) reference = x.r.graded_dims();
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ++samples;
        try {
          BuildOptions b;
          b.seed = seed;
          auto m = build_supertranslation(d, n, b);
          auto r = maximal_prolongation(negative_part(m));
          if (r.graded_dims() != reference) {
            ++divergent;
            o.fail(cell(d, n) + " seed " + std::to_string(seed) + " dims " + dims_text(r.graded_dims()));
          }
        } catch (const std::exception& e) {
          ++divergent;
          o.fail(cell(d, n) + " seed " + std::to_string(seed) + ": " + e.what());
        }
      }
    }
    o.summary = std::to_string(samples) + " seeded samples, " + std::to_string(divergent) + " divergent (non-gating)";
    print(7, "robustness under random non-degenerate brackets", o, false);
  }

  return gating_failures == 0 ? 0 : 1;
}
