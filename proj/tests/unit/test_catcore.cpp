#include "acat/catcore.hpp"
#include "acat/acat1d.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace acat;

namespace {

Matrix<double> random_block(int rows, int cols, std::mt19937_64& rng, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  Matrix<double> m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = uni(rng);
  return m;
}

Matrix<double> euler_block(int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  const auto e = euler1d<double>();
  Matrix<double> m(3, cols);
  for (int c = 0; c < cols; ++c) {
    EulerState s;
    s.rho = uni(rng);
    s.v = uni(rng) - 1.0;
    s.p = uni(rng);
    m.col(c) = e->conserved(s);
  }
  return m;
}

}  // namespace

TEST_CASE("p = 1 flux is the Lax-Wendroff flux for linear advection") {
  std::mt19937_64 rng(1);
  const double a = -1.7, dx = 0.1, dt = 0.04;
  const auto model = linear_advection<double>(a);
  for (int t = 0; t < 50; ++t) {
    const Matrix<double> st = random_block(1, 2, rng);
    const double ui = st(0, 0), ur = st(0, 1);
    const double lw = a * (ui + ur) / 2 - a * a * dt * (ur - ui) / (2 * dx);
    CHECK(std::abs(cat_flux<double>(*model, st, dx, dt)[0] - lw) <= 1e-13);
  }
}

TEST_CASE("closed-form CAT2 matches the generic recursion") {
  std::mt19937_64 rng(2);
  const auto b = burgers<double>();
  const auto e = euler1d<double>();
  for (int t = 0; t < 50; ++t) {
    const Matrix<double> sb = random_block(1, 2, rng);
    const State cb = cat2_flux_closed_form<double>(*b, sb.col(0), sb.col(1), 0.1, 0.03);
    CHECK((cb - cat_flux<double>(*b, sb, 0.1, 0.03)).cwiseAbs().maxCoeff() <= 1e-14);
    const Matrix<double> se = euler_block(2, rng);
    const State ce = cat2_flux_closed_form<double>(*e, se.col(0), se.col(1), 0.1, 0.01);
    const State ge = cat_flux<double>(*e, se, 0.1, 0.01);
    CHECK((ce - ge).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, ge.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("Burgers two-stage example by hand") {
  // f = u^2/2, u = (0.2, 0.4), dt/dx = 1: du = -0.06, then
  // F = (0.34^2/2 + 0.14^2/2 + 0.08 + 0.02) / 4 = 0.0419
  const auto b = burgers<double>();
  Matrix<double> st(1, 2);
  st << 0.2, 0.4;
  CHECK(cat_flux<double>(*b, st, 0.1, 0.1)[0] == doctest::Approx(0.0419).epsilon(1e-14));
  CHECK(cat2_flux_closed_form<double>(*b, st.col(0), st.col(1), 0.1, 0.1)[0] ==
        doctest::Approx(0.0419).epsilon(1e-14));
}

TEST_CASE("constant stencils give f(u) exactly") {
  const auto e = euler1d<double>();
  const auto b = burgers<double>();
  EulerState s;
  s.rho = 0.9;
  s.v = 0.3;
  s.p = 1.7;
  const State ue = e->conserved(s);
  for (int p = 1; p <= 4; ++p) {
    Matrix<double> st = ue.replicate(1, 2 * p);
    CHECK(cat_flux<double>(*e, st, 0.01, 0.003) == e->flux(Axis::x, ue));
    Matrix<double> sb = Matrix<double>::Constant(1, 2 * p, 0.37);
    CHECK(cat_flux<double>(*b, sb, 0.01, 0.003)[0] == 0.5 * 0.37 * 0.37);
  }
}

TEST_CASE("one conservative step has local error of order 2p+1") {
  const double a = 1.0;
  const auto model = linear_advection<double>(a);
  for (int p = 1; p <= 3; ++p) {
    std::vector<double> errs;
    for (int n : {20, 40, 80}) {
      const double dx = 1.0 / n, dt = 0.6 * dx, x0 = 0.3;
      auto flux_at = [&](int i) {  // interface i+1/2
        Matrix<double> st(1, 2 * p);
        for (int j = 0; j < 2 * p; ++j) st(0, j) = std::sin(x0 + (i + j - p + 1) * dx);
        return cat_flux<double>(*model, st, dx, dt)[0];
      };
      const double next = std::sin(x0) - dt / dx * (flux_at(0) - flux_at(-1));
      errs.push_back(std::abs(next - std::sin(x0 - a * dt)));
    }
    CHECK(std::log2(errs[1] / errs[2]) == doctest::Approx(2.0 * p + 1).epsilon(0.1));
  }
}

TEST_CASE("failing Taylor states are reported with their level") {
  const auto e = euler1d<double>();
  Matrix<double> st(3, 2);
  EulerState l, r;
  l.rho = 1.0, l.v = 0.0, l.p = 1000.0;
  r.rho = 1.0, r.v = 0.0, r.p = 0.01;
  st.col(0) = e->conserved(l);
  st.col(1) = e->conserved(r);
  try {
    cat_flux<double>(*e, st, 0.001, 0.01, Axis::x, 17);  // absurd time step
    FAIL("expected a step failure");
  } catch (const StepFailure& f) {
    CHECK(f.interface_index() == 17);
    CHECK(f.level() == 2);
  }
  State bad(3);
  bad << -1.0, 0.0, 1.0;
  st.col(0) = bad;
  TaylorScratch<double> s;
  State out(3);
  CHECK(try_cat_flux(*e, Axis::x, st, 0.1, 0.01, s, out) == 1);
  CHECK_THROWS_AS(cat_flux<double>(*e, Matrix<double>(3, 3), 0.1, 0.01), InvalidArgument);
}

TEST_CASE("reused scratch matches a fresh one") {
  std::mt19937_64 rng(4);
  const auto e = euler1d<double>();
  TaylorScratch<double> shared;
  State out(3);
  for (int p : {3, 1, 2, 3}) {
    const Matrix<double> st = euler_block(2 * p, rng);
    REQUIRE(try_cat_flux(*e, Axis::x, st, 0.1, 0.001, shared, out) == 0);
    CHECK(out == cat_flux<double>(*e, st, 0.1, 0.001));
  }
}

TEST_CASE("long double evaluation agrees") {
  std::mt19937_64 rng(6);
  const Matrix<double> st = random_block(1, 6, rng, 0.5, 1.0);
  const auto bd = burgers<double>();
  const auto bl = burgers<long double>();
  const double fd = cat_flux<double>(*bd, st, 0.05, 0.02)[0];
  const long double fl = cat_flux<long double>(*bl, st.cast<long double>(), 0.05L, 0.02L)[0];
  CHECK(std::abs(fd - static_cast<double>(fl)) < 1e-14);
}

TEST_CASE("LAT equals the iterated centered-difference expansion for linear data") {
  // u^{n+1} = sum_k (-a dt)^k / k! (D1)^k u, D1 the centered first difference.
  std::mt19937_64 rng(8);
  const double a = 0.9, dx = 0.1, dt = 0.05;
  const auto model = linear_advection<double>(a);
  const int n = 24;
  const Matrix<double> u0 = random_block(1, n, rng);
  const std::vector<std::vector<double>> d1{{-0.5, 0.0, 0.5},
                                            {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12}};
  for (int p = 1; p <= 2; ++p) {
    for (int m = 1; m <= 2 * p + 1; ++m) {
      Vector<double> term = u0.row(0).transpose(), sum = term;
      double c = 1.0;
      for (int k = 1; k <= m; ++k) {
        Vector<double> next(n);
        for (int i = 0; i < n; ++i) {
          double s = 0.0;
          for (int j = -p; j <= p; ++j) s += d1[p - 1][j + p] * term[((i + j) % n + n) % n];
          next[i] = s / dx;
        }
        term = next;
        c *= -a * dt / k;
        sum += c * term;
      }
      const StateBlock<double> got = lat_step<double>(u0, Boundary::periodic, *model, p, m, dx, dt);
      CHECK((got.row(0).transpose() - sum).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("LAT keeps constants and reaches its order") {
  const auto b = burgers<double>();
  const StateBlock<double> flat = StateBlock<double>::Constant(1, 16, 0.4);
  CHECK(lat_step<double>(flat, Boundary::periodic, *b, 0, 4, 0.1, 0.05) == flat);

  const auto lin = linear_advection<double>(1.0);
  for (int m : {2, 4}) {
    SchemeSpec spec;
    spec.kind = SchemeKind::lat;
    spec.max_p = m / 2;
    spec.lat_order = m;
    const Solver1D solver(lin, spec);
    std::vector<double> errs;
    for (int n : {40, 80, 160}) {
      Grid1D g(n, 0.0, 2.0, 1, spec.halo(), Boundary::periodic, 0.0);
      for (int i = 0; i < n; ++i) g.cell(i)[0] = std::sin(std::numbers::pi * g.x(i));
      RunOptions opts;
      opts.t_final = 0.4;
      opts.cfl = 0.5;
      run(g, solver, opts);
      double e = 0.0;
      for (int i = 0; i < n; ++i)
        e = std::max(e, std::abs(g.cell(i)[0] - std::sin(std::numbers::pi * (g.x(i) - 0.4))));
      errs.push_back(e);
    }
    CHECK(std::log2(errs[1] / errs[2]) == doctest::Approx(double(m)).epsilon(0.1));
  }
}
