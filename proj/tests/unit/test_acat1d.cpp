#include "acat/acat1d.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace acat;

namespace {

State s1(double v) {
  State u(1);
  u << v;
  return u;
}

SchemeSpec make_spec(SchemeKind kind, int P, int threads = 1) {
  SchemeSpec s;
  s.kind = kind;
  s.max_p = P;
  s.threads = threads;
  return s;
}

Grid1D sine_grid(int n, int halo, double shift = 0.0) {
  Grid1D g(n, 0.0, 2.0, 1, halo, Boundary::periodic, 0.0);
  for (int i = 0; i < n; ++i) g.cell(i)[0] = 0.5 * std::sin(std::numbers::pi * g.x(i)) + shift;
  return g;
}

}  // namespace

TEST_CASE("low-order flux examples") {
  const auto b = burgers<double>();
  CHECK(low_order_flux(LowOrderFlux::rusanov, s1(1.0), s1(-1.0), *b, 0.1, 0.05)[0] == 1.5);
  const auto lin = linear_advection<double>(2.0);
  CHECK(low_order_flux(LowOrderFlux::hll, s1(0.3), s1(0.9), *lin, 0.1, 0.01)[0] ==
        doctest::Approx(0.6));
  const auto back = linear_advection<double>(-2.0);
  CHECK(low_order_flux(LowOrderFlux::hll, s1(0.3), s1(0.9), *back, 0.1, 0.01)[0] ==
        doctest::Approx(-1.8));
  // LF: (fl + fr)/2 - dx/(2 dt) (ur - ul)
  CHECK(low_order_flux(LowOrderFlux::lax_friedrichs, s1(0.3), s1(0.9), *lin, 0.1, 0.05)[0] ==
        doctest::Approx(1.2 - 0.6));
  for (auto k : {LowOrderFlux::rusanov, LowOrderFlux::lax_friedrichs, LowOrderFlux::hll})
    CHECK(low_order_flux(k, s1(0.7), s1(0.7), *b, 0.1, 0.05)[0] == 0.5 * 0.7 * 0.7);
  const auto e = euler1d<double>();
  State bad(3);
  bad << -1.0, 0.0, 1.0;
  State good(3);
  good << 1.0, 0.0, 2.5;
  CHECK_THROWS_AS(low_order_flux(LowOrderFlux::rusanov, bad, good, *e, 0.1, 0.01), StateError);
}

TEST_CASE("FL-CAT2 blends between its two fluxes") {
  const IndicatorConfig cfg;
  const auto lin = linear_advection<double>(1.0);
  StateBlock<double> lin4(1, 4);
  lin4 << 0.0, 0.1, 0.2, 0.3;
  const double dx = 0.1, dt = 0.05;
  const double lw = 0.5 * (0.1 + 0.2) - dt * (0.2 - 0.1) / (2 * dx);
  CHECK(flcat2_flux(lin4, *lin, dx, dt, cfg)[0] == doctest::Approx(lw).epsilon(1e-14));
  StateBlock<double> step(1, 4);
  step << 0.0, 0.0, 1.0, 1.0;
  CHECK(flcat2_flux(step, *lin, dx, dt, cfg)[0] ==
        low_order_flux(LowOrderFlux::rusanov, s1(0.0), s1(1.0), *lin, dx, dt)[0]);
}

TEST_CASE("adaptive flux on constant, smooth and step data") {
  const IndicatorConfig cfg;
  const auto b = burgers<double>();
  for (int P = 2; P <= 4; ++P) {
    const StateBlock<double> flat = StateBlock<double>::Constant(1, 2 * P, 0.6);
    const AdaptiveFlux f = acat_flux(flat, *b, P, 0.1, 0.05, cfg);
    CHECK(f.flux[0] == 0.5 * 0.6 * 0.6);
    CHECK(f.report.selected_p == P);
  }
  StateBlock<double> step(1, 6);
  step << 1, 1, 1, 0, 0, 0;
  const AdaptiveFlux f = acat_flux(step, *b, 3, 0.1, 0.05, cfg);
  CHECK(f.report.selected_p == 0);
  CHECK(f.path != FluxPath::cat);
}

TEST_CASE("ghost cells follow the boundary condition") {
  Grid1D p(6, 0.0, 1.0, 1, 3, Boundary::periodic);
  Grid1D o(6, 0.0, 1.0, 1, 3, Boundary::outflow);
  for (int i = 0; i < 6; ++i) p.cell(i)[0] = o.cell(i)[0] = i;
  p.fill_ghosts();
  o.fill_ghosts();
  CHECK(p.cell(-1)[0] == 5);
  CHECK(p.cell(-3)[0] == 3);
  CHECK(p.cell(6)[0] == 0);
  CHECK(o.cell(-3)[0] == 0);
  CHECK(o.cell(8)[0] == 5);
}

TEST_CASE("constant states are preserved by every scheme") {
  const auto e = euler1d<double>();
  EulerState s;
  s.rho = 1.2;
  s.v = 0.4;
  s.p = 0.8;
  for (auto kind : {SchemeKind::first_order, SchemeKind::flcat2, SchemeKind::acat,
                    SchemeKind::cat_fixed, SchemeKind::lat}) {
    const SchemeSpec spec = make_spec(kind, kind == SchemeKind::flcat2 ? 1 : 3);
    Grid1D g(30, 0.0, 1.0, 3, spec.halo(), Boundary::outflow);
    for (int i = 0; i < 30; ++i) g.cell(i) = e->conserved(s);
    const StateBlock<double> before = g.interior();
    const Solver1D solver(e, spec);
    solver.step(g, solver.stable_dt(g, 0.8));
    CHECK((g.interior() - before).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("periodic runs conserve the integral") {
  const auto b = burgers<double>();
  for (auto kind : {SchemeKind::first_order, SchemeKind::flcat2, SchemeKind::acat,
                    SchemeKind::cat_fixed}) {
    const SchemeSpec spec = make_spec(kind, kind == SchemeKind::flcat2 ? 1 : 2);
    Grid1D g = sine_grid(80, spec.halo(), 0.3);
    const double before = g.integral()[0];
    const Solver1D solver(b, spec);
    RunOptions opts;
    opts.t_final = 0.3;
    opts.cfl = 0.8;
    const RunSummary r = run(g, solver, opts);
    CHECK(std::abs(g.integral()[0] - before) <= 1e-11 * r.steps.size());
    CHECK(g.time == 0.3);
  }
}

TEST_CASE("CFL 1 shifts linear data by one cell") {
  const auto lin = linear_advection<double>(1.0);
  const SchemeSpec spec = make_spec(SchemeKind::cat_fixed, 1);
  Grid1D g = sine_grid(40, spec.halo());
  const StateBlock<double> before = g.interior();
  Solver1D(lin, spec).step(g, g.dx());
  for (int i = 0; i < 40; ++i) CHECK(std::abs(g.cell(i)[0] - before(0, (i + 39) % 40)) < 1e-12);
}

TEST_CASE("ACAT coincides with CAT when the full stencil is selected everywhere") {
  const auto lin = linear_advection<double>(1.0);
  for (int P = 2; P <= 3; ++P) {
    Grid1D a = sine_grid(80, P), c = sine_grid(80, P);
    SchemeSpec sa = make_spec(SchemeKind::acat, P);
    sa.indicators.use_modified_p2 = true;
    const Solver1D acat(lin, sa), cat(lin, make_spec(SchemeKind::cat_fixed, P));
    StepInfo info;
    bool all_full = true;
    for (int s = 0; s < 10; ++s) {
      const double dt = 0.5 * a.dx();
      acat.step(a, dt, &info);
      cat.step(c, dt);
      for (int p : info.selected_p) all_full = all_full && p == P;
    }
    if (all_full) CHECK((a.interior() - c.interior()).cwiseAbs().maxCoeff() <= 1e-13);
    MESSAGE("P=" << P << " full stencil everywhere: " << all_full);
  }
}

TEST_CASE("threaded flux loop matches the serial one") {
  const auto e = euler1d<double>();
  const SchemeSpec serial = make_spec(SchemeKind::acat, 3, 1);
  const SchemeSpec threaded = make_spec(SchemeKind::acat, 3, 4);
  Grid1D a(120, 0.0, 1.0, 3, 3, Boundary::outflow), b(120, 0.0, 1.0, 3, 3, Boundary::outflow);
  for (int i = 0; i < 120; ++i) {
    EulerState s;
    s.rho = a.x(i) < 0.5 ? 1.0 : 0.125;
    s.v = 0.0;
    s.p = a.x(i) < 0.5 ? 1.0 : 0.1;
    a.cell(i) = b.cell(i) = e->conserved(s);
  }
  RunOptions opts;
  opts.t_final = 0.05;
  opts.cfl = 0.8;
  run(a, Solver1D(e, serial), opts);
  run(b, Solver1D(e, threaded), opts);
  CHECK((a.interior() - b.interior()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("square wave: interfaces near a jump avoid the full stencil") {
  const auto lin = linear_advection<double>(1.0);
  const int P = 3, n = 160;
  const SchemeSpec spec = make_spec(SchemeKind::acat, P);
  Grid1D g(n, 0.0, 2.0, 1, spec.halo(), Boundary::periodic, 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = g.x(i);
    g.cell(i)[0] = (x >= 0.5 && x <= 1.0) ? 1.0 : (x > 1.0 && x <= 1.5) ? -1.0 : 0.0;
  }
  const Solver1D solver(lin, spec);
  StepInfo info;
  long violations = 0, checked = 0;
  for (int s = 0; s < 60; ++s) {
    const double t = g.time;
    solver.step(g, 0.9 * g.dx(), &info);
    if (s == 0) continue;
    for (double x0 : {0.5, 1.0, 1.5}) {
      const double x = std::fmod(x0 + t, 2.0);
      const int i = static_cast<int>(std::floor(x / g.dx()));
      // interfaces whose stencil x_{f-P+1}..x_{f+P} straddles the jump
      for (int f = i - P + 1; f <= i + P - 1; ++f) {
        const int idx = ((f % n) + n) % n + 1;
        ++checked;
        if (info.selected_p[idx] == P) ++violations;
      }
    }
  }
  MESSAGE("full-stencil selections near jumps: " << violations << " of " << checked);
  CHECK(violations == 0);
}

TEST_CASE("spec validation and parsing") {
  CHECK_THROWS_AS(make_spec(SchemeKind::acat, 1).validate(), InvalidArgument);
  CHECK_NOTHROW(make_spec(SchemeKind::flcat2, 1).validate());
  CHECK_THROWS_AS(make_spec(SchemeKind::cat_fixed, 0).validate(), InvalidArgument);
  CHECK(parse_scheme("acat") == SchemeKind::acat);
  CHECK(parse_low_order("hll") == LowOrderFlux::hll);
  CHECK(parse_boundary("free") == Boundary::outflow);
  CHECK_THROWS_AS(parse_scheme("weno"), InvalidArgument);
}

TEST_CASE("repeated runs are bitwise identical") {
  const auto b = burgers<double>();
  const SchemeSpec spec = make_spec(SchemeKind::acat, 3);
  Grid1D a = sine_grid(64, 3, 0.2), c = sine_grid(64, 3, 0.2);
  RunOptions opts;
  opts.t_final = 0.4;
  run(a, Solver1D(b, spec), opts);
  run(c, Solver1D(b, spec), opts);
  CHECK((a.interior().array() == c.interior().array()).all());
}
