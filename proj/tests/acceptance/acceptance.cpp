// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "acat/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace acat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig transport_cfg(const std::string& scheme, int P) {
  RunConfig c = preset("transport_sine");
  c.scheme = scheme;
  c.max_p = P;
  c.cfl = 0.5;
  c.t_final = 0.4;
  return c;
}

Outcome convergence_orders() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<int> meshes{40, 80, 160, 320};
  struct Case {
    RunConfig cfg;
    double target, tol;
  };
  RunConfig acat4 = transport_cfg("acat", 2);
  acat4.modified_p2 = true;  // single-term lateral weights miss moving extrema otherwise
  const std::vector<Case> cases{{transport_cfg("flcat2", 1), 2.0, 0.3},
                                {acat4, 4.0, 0.4},
                                {transport_cfg("acat", 3), 6.0, 0.6}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const ErrorReport r = convergence_study(c.cfg, meshes);
    const double order = r.fitted_order_l1();
    ok = ok && std::abs(order - c.target) <= c.tol;
    detail += fmt("%s=%.3f ", r.label.c_str(), order);
  }
  // informational: ACAT4 with the plain p=2 indicator
  const double plain = convergence_study(transport_cfg("acat", 2), meshes).fitted_order_l1();
  const double secs = seconds_since(t0);
  ok = ok && secs < 60.0;
  detail += fmt("(ACAT4 plain indicator %.3f) %.1fs", plain, secs);
  return {ok, detail};
}

// Weights of the polynomial interpolating nodes lo..hi, evaluated at z.
std::vector<long double> lagrange(int lo, int hi, long double z) {
  std::vector<long double> w;
  for (int l = lo; l <= hi; ++l) {
    long double v = 1.0L;
    for (int m = lo; m <= hi; ++m)
      if (m != l) v *= (z - m) / static_cast<long double>(l - m);
    w.push_back(v);
  }
  return w;
}

Outcome linear_reduction() {
  // The order-2p Lax-Wendroff update on 2p+1 points interpolates the data at
  // x_i - nu dx; its interface flux follows by telescoping.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double a = 0.8, dx = 0.05, nu = 0.37, dt = nu * dx / a;
  const auto model = linear_advection<double>(a, 0.0, 1);
  double worst = 0.0;
  for (int p = 1; p <= 3; ++p) {
    const auto L = lagrange(-p, p, -static_cast<long double>(nu));
    std::vector<long double> w(2 * p, 0.0L);  // w_j for j = -p+1..p
    long double acc = 0.0L;
    for (int l = -p; l < p; ++l) {
      acc += (L[l + p] - (l == 0 ? 1.0L : 0.0L)) / nu;
      w[l + p] = acc;
    }
    const int n = 64;
    std::vector<double> u(n);
    for (auto& v : u) v = uni(rng);
    for (int i = 0; i < n; ++i) {
      Matrix<double> st(1, 2 * p);
      long double ref = 0.0L;
      for (int j = -p + 1; j <= p; ++j) {
        st(0, j + p - 1) = u[((i + j) % n + n) % n];
        ref += w[j + p - 1] * st(0, j + p - 1);
      }
      const State f = cat_flux<double>(*model, st, dx, dt);
      worst = std::max(worst, std::abs(f[0] - static_cast<double>(a * ref)));
    }
  }
  return {worst <= 1e-12, fmt("max |F_CAT - F_LW| = %.2e over p=1,2,3", worst)};
}

Outcome cfl_one_stability() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int n = 200;
  const auto model = linear_advection<double>(1.0, 0.0, 1);
  bool ok = true;
  double worst_growth = -1.0, worst_shift = 0.0;
  for (int p = 1; p <= 3; ++p) {
    SchemeSpec spec;
    spec.kind = SchemeKind::cat_fixed;
    spec.max_p = p;
    const Solver1D solver(model, spec);
    Grid1D g(n, 0.0, 1.0, 1, spec.halo(), Boundary::periodic, 0.0);
    for (int i = 0; i < n; ++i) g.cell(i)[0] = uni(rng);
    const double dt = g.dx();  // CFL 1 with a = 1
    double norm = g.interior().norm();
    for (int s = 0; s < 100; ++s) {
      const Vector<double> before = g.interior().row(0).transpose();
      solver.step(g, dt);
      const double next = g.interior().norm();
      worst_growth = std::max(worst_growth, next - norm);
      ok = ok && next <= norm + 1e-10;
      norm = next;
      if (p == 1) {
        for (int i = 0; i < n; ++i)
          worst_shift = std::max(worst_shift, std::abs(g.cell(i)[0] - before[(i - 1 + n) % n]));
      }
    }
  }
  ok = ok && worst_shift <= 1e-12;
  return {ok, fmt("max L2 growth %.2e, p=1 shift error %.2e", worst_growth, worst_shift)};
}

double slope(const std::vector<double>& h, const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double x = std::log(h[k]), y = std::log(v[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome indicator_rates() {
  const IndicatorConfig cfg;
  std::vector<double> hs;
  for (int k = 0; k < 6; ++k) hs.push_back(0.08 / std::pow(2.0, k));
  bool ok = true;
  std::string detail;
  for (int p = 2; p <= 3; ++p) {
    std::vector<double> smooth, jump;
    for (double h : hs) {
      std::vector<double> fs(2 * p), fj(2 * p);
      for (int j = -p + 1; j <= p; ++j) {
        const double x = 0.3 + j * h;  // interface at 0.3 + h/2
        fs[j + p - 1] = std::exp(x);
        fj[j + p - 1] = std::exp(x) + (j >= 1 ? 1.0 : 0.0);
      }
      smooth.push_back(indicator_parts<double>(p, fs, cfg).defect());  // 1 - psi without cancellation
      jump.push_back(indicator<double>(p, fj, cfg));
    }
    const double ss = slope(hs, smooth), sj = slope(hs, jump);
    ok = ok && std::abs(ss - 4.0 * (p - 1)) <= 0.5 && std::abs(sj - 2.0) <= 0.5;
    detail += fmt("p=%d smooth %.2f jump %.2f; ", p, ss, sj);
  }
  return {ok, detail};
}

struct EulerRun {
  Result1D result;
  double l1 = 0.0;
  double min_rho = 0.0, max_rho = 0.0, min_p = 0.0;
};

EulerRun euler_run(const std::string& name, const std::string& scheme, int P) {
  RunConfig c = preset(name);
  c.scheme = scheme;
  c.max_p = P;
  EulerRun r{run_1d(c), 0.0};
  const Grid1D& g = r.result.grid;
  const Vector<double> ref = reference_1d(c, g);
  r.l1 = error_norms(g.interior().row(0).transpose(), ref, g.dx()).l1;
  r.min_rho = g.interior().row(0).minCoeff();
  r.max_rho = g.interior().row(0).maxCoeff();
  const auto model = euler1d<double>(c.gamma);
  r.min_p = 1e300;
  for (int i = 0; i < g.cells(); ++i) r.min_p = std::min(r.min_p, model->pressure(g.cell(i)));
  return r;
}

Outcome sod() {
  const EulerRun a2 = euler_run("sod", "flcat2", 1);
  const EulerRun a4 = euler_run("sod", "acat", 2);
  const bool ok = a2.l1 < 0.02 && a4.l1 <= a2.l1 && a2.min_rho > 0 && a4.min_rho > 0 &&
                  a2.min_p > 0 && a4.min_p > 0;
  return {ok, fmt("L1(rho) ACAT2 %.4e ACAT4 %.4e, min rho %.3f, min p %.3f", a2.l1, a4.l1,
                  std::min(a2.min_rho, a4.min_rho), std::min(a2.min_p, a4.min_p))};
}

Outcome einfeldt() {
  bool ok = true;
  std::string detail;
  for (int P = 1; P <= 3; ++P) {
    try {
      const EulerRun r = euler_run("einfeldt123", P == 1 ? "flcat2" : "acat", P);
      ok = ok && r.min_rho > 0 && r.min_p > 0;
      detail += fmt("P=%d min rho %.3e min p %.3e; ", P, r.min_rho, r.min_p);
    } catch (const std::exception& e) {
      ok = false;
      detail += fmt("P=%d failed: %s; ", P, e.what());
    }
  }
  return {ok, detail};
}

Outcome blast() {
  const EulerRun a2 = euler_run("blast_right", "flcat2", 1);
  const EulerRun a4 = euler_run("blast_right", "acat", 2);
  const bool ok = a2.result.grid.interior().allFinite() && a4.result.grid.interior().allFinite() &&
                  a2.min_rho >= 0 && a4.min_rho >= 0 && a2.max_rho <= 8 && a4.max_rho <= 8 &&
                  a4.l1 < a2.l1;
  // context only: the same runs against the exact Riemann solution
  auto exact_l1 = [](const Grid1D& g) {
    EulerState l, r;
    l.rho = r.rho = 1.0;
    l.v = r.v = l.w = r.w = 0.0;
    l.p = 1000.0;
    r.p = 0.01;
    const ExactRiemannSolver rs(l, r);
    double e = 0.0;
    for (int i = 0; i < g.cells(); ++i)
      e += std::abs(g.cell(i)[0] - rs.sample((g.x(i) - 0.5) / g.time).rho) * g.dx();
    return e;
  };
  return {ok, fmt("rho in [%.3f, %.3f], fine-mesh L1 ACAT2 %.4e ACAT4 %.4e (exact-solution L1 "
                  "ACAT2 %.4e ACAT4 %.4e)",
                  std::min(a2.min_rho, a4.min_rho), std::max(a2.max_rho, a4.max_rho), a2.l1,
                  a4.l1, exact_l1(a2.result.grid), exact_l1(a4.result.grid))};
}

Outcome conservation() {
  RunConfig c = preset("burgers_sine");
  const Problem prob = problem(c.preset);
  const auto model = prob.model(c.gamma);
  const double before = make_grid_1d(c, prob, *model).integral()[0];
  const Result1D r = run_1d(c);
  const double drift = std::abs(r.grid.integral()[0] - before);
  return {drift <= 1e-10, fmt("|drift| = %.2e over %zu steps", drift, r.summary.steps.size())};
}

Outcome slices_and_symmetry() {
  const auto t0 = std::chrono::steady_clock::now();
  // x-only Riemann data in 2D against the 1D scheme, row by row.
  const double gamma = kDefaultGamma;
  const auto m1 = euler1d<double>(gamma);
  const auto m2 = euler2d<double>(gamma);
  SchemeSpec spec;
  spec.kind = SchemeKind::acat;
  spec.max_p = 2;
  const int nx = 100, ny = 6;
  Grid1D g1(nx, 0.0, 1.0, 3, spec.halo(), Boundary::outflow);
  Grid2D g2(nx, ny, 0.0, 1.0, 0.0, 0.06, 4, spec.halo(), Boundary::outflow, Boundary::outflow);
  EulerState l, r;
  l.rho = 1.0, l.p = 1.0, l.v = 0.3;
  r.rho = 0.125, r.p = 0.1, r.v = -0.2;
  l.w = r.w = 0.0;
  for (int i = 0; i < nx; ++i) {
    const EulerState& s = g1.x(i) < 0.5 ? l : r;
    g1.cell(i) = m1->conserved(s);
    for (int j = 0; j < ny; ++j) g2.cell(i, j) = m2->conserved(s);
  }
  const Solver1D s1(m1, spec);
  const Solver2D s2(m2, spec);
  double slice = 0.0;
  for (int step = 0; step < 60; ++step) {
    const double dt = 0.5 * s1.stable_dt(g1, 0.8);
    s1.step(g1, dt);
    s2.step(g2, dt);
  }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const auto a = g1.cell(i);
      const auto b = g2.cell(i, j);
      slice = std::max({slice, std::abs(a[0] - b[0]), std::abs(a[1] - b[1]),
                        std::abs(a[2] - b[3]), std::abs(b[2])});
    }

  RunConfig c = preset("euler2d_cfg4");
  c.t_final = 0.1;
  const Result2D res = run_2d(c);
  const Grid2D& g = res.grid;
  double sym = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const auto a = g.cell(i, j);
      const auto b = g.cell(j, i);
      sym = std::max({sym, std::abs(a[0] - b[0]), std::abs(a[1] - b[2]), std::abs(a[3] - b[3])});
    }
  const double secs = seconds_since(t0);
  return {slice <= 1e-13 && sym <= 1e-10 && secs < 120.0,
          fmt("slice deviation %.2e, diagonal asymmetry %.2e, %.1fs", slice, sym, secs)};
}

double total_variation(const Grid1D& g) {
  double tv = 0.0;
  const int n = g.cells();
  for (int i = 0; i < n; ++i) tv += std::abs(g.cell((i + 1) % n)[0] - g.cell(i)[0]);
  return tv;
}

Outcome adaptivity() {
  RunConfig c = preset("transport_square");
  c.scheme = "acat";
  c.max_p = 3;
  const Problem prob = problem(c.preset);
  const auto model = prob.model(c.gamma);
  const double tv0 = total_variation(make_grid_1d(c, prob, *model));
  long steps = 0, good = 0;
  RunOptions opts;
  opts.observer = [&](const Grid1D& g, const StepInfo& info, const StepDiagnostics& d) {
    // jumps of the exact solution at the start of this step
    const double t = d.t - d.dt;
    const double len = g.x1() - g.x0();
    bool all_low = true;
    for (double x0 : {0.5, 1.0, 1.5}) {
      double x = std::fmod(x0 + prob.speed_x * t - g.x0(), len);
      if (x < 0) x += len;
      const int i = static_cast<int>(std::floor(x / g.dx() - g.node_offset()));
      const int f = ((i % g.cells()) + g.cells()) % g.cells() + 1;  // interface i+1/2
      if (info.selected_p[f] >= c.max_p) all_low = false;
    }
    ++steps;
    if (all_low) ++good;
  };
  const Result1D r = run_1d(c, opts);
  const double tv = total_variation(r.grid);
  const double frac = steps ? double(good) / double(steps) : 0.0;
  return {tv <= tv0 + 0.05 && frac > 0.95,
          fmt("TV %.4f (initial %.4f), p_s < P at jumps in %.1f%% of steps", tv, tv0, 100 * frac)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"convergence orders", convergence_orders},
      {"linear reduction", linear_reduction},
      {"CFL-1 linear stability", cfl_one_stability},
      {"indicator rates", indicator_rates},
      {"Sod shock tube", sod},
      {"Einfeldt 123", einfeldt},
      {"blast wave", blast},
      {"Burgers conservation", conservation},
      {"2D slices and symmetry", slices_and_symmetry},
      {"adaptivity on a square wave", adaptivity},
  };
  int failures = 0;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
