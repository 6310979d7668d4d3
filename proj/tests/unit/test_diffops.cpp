#include "acat/diffops.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace acat;

namespace {

// Solve the Vandermonde system sum_j w_j (x_j - z)^n = k! [n == k] in exact arithmetic.
std::vector<Rational> vandermonde(const std::vector<Rational>& nodes, const Rational& z, int k) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (int r = 0; r < n; ++r) {
    Rational fact = 1;
    for (int i = 2; i <= r; ++i) fact *= i;
    for (int c = 0; c < n; ++c) {
      Rational v = 1;
      for (int e = 0; e < r; ++e) v *= nodes[c] - z;
      a[r][c] = v;
    }
    a[r][n] = r == k ? fact : Rational(0);
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> w(n);
  for (int r = 0; r < n; ++r) w[r] = a[r][n] / a[r][r];
  return w;
}

std::vector<Rational> ints(int lo, int hi) {
  std::vector<Rational> v;
  for (int i = lo; i <= hi; ++i) v.emplace_back(i);
  return v;
}

}  // namespace

TEST_CASE("fornberg weights agree with a Vandermonde solve") {
  for (int p = 1; p <= 4; ++p) {
    for (int k = 0; k <= 2 * p; ++k)
      CHECK(centered_coeffs(p, k).exact == vandermonde(ints(-p, p), 0, k));
    for (int k = 0; k <= 2 * p - 1; ++k) {
      CHECK(interpolatory_coeffs(p, k, Rational(1, 2)).exact ==
            vandermonde(ints(-p + 1, p), Rational(1, 2), k));
      for (int q = -p + 1; q <= p; ++q)
        CHECK(interpolatory_coeffs(p, k, q).exact == vandermonde(ints(-p + 1, p), q, k));
    }
  }
}

TEST_CASE("known coefficient sets") {
  using R = Rational;
  CHECK(interpolatory_coeffs(1, 0, R(1, 2)).exact == std::vector<R>{R(1, 2), R(1, 2)});
  CHECK(interpolatory_coeffs(2, 0, R(1, 2)).exact ==
        std::vector<R>{R(-1, 16), R(9, 16), R(9, 16), R(-1, 16)});
  CHECK(centered_coeffs(1, 1).exact == std::vector<R>{R(-1, 2), 0, R(1, 2)});
  CHECK(centered_coeffs(1, 2).exact == std::vector<R>{1, -2, 1});
  CHECK(centered_coeffs(2, 1).exact == std::vector<R>{R(1, 12), R(-2, 3), 0, R(2, 3), R(-1, 12)});
  CHECK(interface_coeffs(2).exact == std::vector<R>{R(-1, 12), R(7, 12), R(7, 12), R(-1, 12)});
  CHECK(interface_coeffs(3).exact ==
        std::vector<R>{R(1, 60), R(-8, 60), R(37, 60), R(37, 60), R(-8, 60), R(1, 60)});
}

TEST_CASE("coefficient sums") {
  for (int p = 1; p <= 4; ++p) {
    for (int k = 1; k <= 2 * p; ++k) {
      Rational s = 0;
      for (const auto& w : centered_coeffs(p, k).exact) s += w;
      CHECK(s == 0);
    }
    for (int q = -p + 1; q <= p; ++q) {
      Rational s = 0;
      for (const auto& w : interpolatory_coeffs(p, 0, q).exact) s += w;
      CHECK(s == 1);
    }
    Rational s = 0;
    for (const auto& w : interface_coeffs(p).exact) s += w;
    CHECK(s == 1);
  }
}

TEST_CASE("interface weights telescope to the centered first derivative") {
  for (int p = 1; p <= 4; ++p) {
    const auto g = interface_coeffs(p).exact;
    const auto d = centered_coeffs(p, 1).exact;
    for (int l = -p; l <= p; ++l) {
      const Rational gl = (l >= -p + 1) ? g[l + p - 1] : Rational(0);
      const Rational gm = (l + 1 <= p) ? g[l + p] : Rational(0);
      CHECK(gl - gm == d[l + p]);
    }
  }
}

TEST_CASE("formulas are exact on polynomials up to their degree") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int p = 1; p <= 3; ++p) {
    const int deg = 2 * p;
    std::vector<double> c(deg + 1);
    for (auto& v : c) v = uni(rng);
    auto poly = [&](double x, int k) {  // k-th derivative
      double s = 0.0;
      for (int n = k; n <= deg; ++n) {
        double f = 1.0;
        for (int j = 0; j < k; ++j) f *= n - j;
        s += c[n] * f * std::pow(x, n - k);
      }
      return s;
    };
    const double h = 0.1, x0 = 0.2;
    for (int k = 0; k <= 2 * p; ++k) {
      std::vector<double> s;
      for (int j = -p; j <= p; ++j) s.push_back(poly(x0 + j * h, 0));
      CHECK(apply<double>(centered_coeffs(p, k), s, h) ==
            doctest::Approx(poly(x0, k)).epsilon(1e-8));
    }
  }
}

TEST_CASE("undivided difference") {
  const std::vector<double> step{0, 0, 0, 1};
  CHECK(undivided_difference<double>(2, step) == 6.0);
  const std::vector<double> jump{0, 0, 1, 1};
  CHECK(undivided_difference<double>(2, jump) == -12.0);
  // ((2p-1)!)^2 times the leading coefficient of x^{2p-1}
  std::vector<double> cube;
  for (int j = -1; j <= 2; ++j) cube.push_back(double(j) * j * j);
  CHECK(undivided_difference<double>(2, cube) == doctest::Approx(36.0));
  std::vector<double> quint;
  for (int j = -2; j <= 3; ++j) quint.push_back(std::pow(double(j), 5) * 0.3);
  CHECK(undivided_difference<double>(3, quint) == doctest::Approx(0.3 * 120 * 120));
  const std::vector<double> flat(6, 3.7);
  CHECK(undivided_difference<double>(3, flat) == 0.0);
}

TEST_CASE("table lookups and errors") {
  const FormulaTable& t = formulas();
  CHECK(t.centered(2, 1).exact == centered_coeffs(2, 1).exact);
  CHECK(t.midpoint(3, 0).exact == interpolatory_coeffs(3, 0, Rational(1, 2)).exact);
  CHECK_THROWS_AS(t.centered(9, 1), InvalidArgument);
  CHECK_THROWS_AS(centered_coeffs(0, 1), InvalidArgument);
  CHECK_THROWS_AS(interpolatory_coeffs(2, 4, 0), InvalidArgument);
  const std::vector<double> few{1.0, 2.0};
  CHECK_THROWS_AS(apply<double>(centered_coeffs(1, 1), few, 0.1), InvalidArgument);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(to_string(Rational(-1, 12)) == "-1/12");
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
}
