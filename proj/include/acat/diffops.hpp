#pragma once

// Centered and interpolatory finite-difference formulas on uniform stencils.
//
// Centered formulas D^k_p use the 2p+1 nodes x_{i-p..i+p} and approximate the
// k-th derivative at x_i. Interpolatory formulas A^{k,q}_p use the 2p nodes
// x_{i-p+1..i+p} and approximate the k-th derivative at x_i + q*dx. All
// weights are generated exactly in rational arithmetic and rounded once.

#include "acat/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace acat {

using Rational = boost::multiprecision::cpp_rational;

enum class FormulaKind { centered, interpolatory };

/// Default largest supported stencil half-width (order 8).
inline constexpr int kDefaultMaxHalfWidth = 4;

struct DiffFormula {
  FormulaKind kind = FormulaKind::centered;
  int half_width = 1;
  int deriv_order = 0;
  Rational eval_offset = 0;     // q; always 0 for centered formulas
  std::vector<Rational> exact;  // rational weights, left to right
  std::vector<double> coeffs;   // the same, rounded to double

  /// Number of stencil nodes (2p+1 centered, 2p interpolatory).
  int size() const { return static_cast<int>(exact.size()); }
  /// Offset of the leftmost node relative to x_i.
  int first_offset() const {
    return kind == FormulaKind::centered ? -half_width : -half_width + 1;
  }
  /// Power of the mesh step dividing the weighted sum.
  int scale_power() const { return deriv_order; }

  template <typename Scalar>
  Vector<Scalar> weights() const {
    Vector<Scalar> w(size());
    for (int j = 0; j < size(); ++j) w[j] = to_scalar<Scalar>(exact[j]);
    return w;
  }

  template <typename Scalar>
  static Scalar to_scalar(const Rational& r) {
    if constexpr (std::is_floating_point_v<Scalar>) {
      return r.template convert_to<Scalar>();
    } else {
      return static_cast<Scalar>(r.template convert_to<long double>());
    }
  }
};

/// Weights for the k-th derivative at z from values at arbitrary distinct
/// nodes (Fornberg's recursion, exact arithmetic).
std::vector<Rational> fornberg_weights(std::span<const Rational> nodes, const Rational& z,
                                       int k);

DiffFormula centered_coeffs(int p, int k);
DiffFormula interpolatory_coeffs(int p, int k, const Rational& q);

/// Interface weights g_j, j = -p+1..p, with g(f)_{i} - g(f)_{i-1} = D^1_p f_i:
/// the flux weights of the order-2p conservative update. They coincide with
/// midpoint interpolation only for p = 1.
DiffFormula interface_coeffs(int p);

/// Immutable cache of every formula the Taylor recursions use for p <= max_p:
/// centered (p, k) for k in [0, 2p] and interpolatory (p, k, q) for k in
/// [0, 2p-1], q in {-p+1, ..., p} and q = 1/2.
class FormulaTable {
 public:
  explicit FormulaTable(int max_p = kDefaultMaxHalfWidth);

  int max_half_width() const { return max_p_; }
  const DiffFormula& centered(int p, int k) const;
  /// q is passed as twice the offset so half-integers stay exact.
  const DiffFormula& interpolatory_twice(int p, int k, int twice_q) const;
  const DiffFormula& interpolatory(int p, int k, int q) const {
    return interpolatory_twice(p, k, 2 * q);
  }
  const DiffFormula& midpoint(int p, int k) const { return interpolatory_twice(p, k, 1); }
  const DiffFormula& interface(int p) const;

 private:
  int max_p_;
  std::map<std::pair<int, int>, DiffFormula> centered_;
  std::map<std::array<int, 3>, DiffFormula> interpolatory_;
  std::map<int, DiffFormula> interface_;
};

/// Process-wide table with the default maximum half-width.
const FormulaTable& formulas();

/// (1/h^k) * sum_j w_j s_j.
template <typename Scalar>
Scalar apply(const DiffFormula& formula, std::span<const Scalar> samples, Scalar h) {
  if (static_cast<int>(samples.size()) != formula.size())
    throw InvalidArgument("apply: expected " + std::to_string(formula.size()) +
                          " samples, got " + std::to_string(samples.size()));
  if (!(h > Scalar(0))) throw InvalidArgument("apply: mesh step must be positive");
  Scalar sum(0);
  for (int j = 0; j < formula.size(); ++j)
    sum += DiffFormula::to_scalar<Scalar>(formula.exact[j]) * samples[j];
  using std::pow;
  return sum / pow(h, formula.deriv_order);
}

namespace detail {

/// Weights of (2p-1)! * A^{2p-1,1/2}_p at unit spacing, cached per scalar type.
template <typename Scalar>
const Vector<Scalar>& undivided_weights(int p) {
  static const auto table = [] {
    std::vector<Vector<Scalar>> w(kDefaultMaxHalfWidth + 1);
    for (int q = 1; q <= kDefaultMaxHalfWidth; ++q) {
      const DiffFormula& f = formulas().midpoint(q, 2 * q - 1);
      Rational factorial = 1;
      for (int n = 2; n <= 2 * q - 1; ++n) factorial *= n;
      w[q].resize(f.size());
      for (int j = 0; j < f.size(); ++j)
        w[q][j] = DiffFormula::to_scalar<Scalar>(factorial * f.exact[j]);
    }
    return w;
  }();
  if (p < 1 || p > kDefaultMaxHalfWidth)
    throw InvalidArgument("undivided_difference: half-width out of range");
  return table[p];
}

}  // namespace detail

/// Undivided difference (2p-1)! * sum_j gamma^{2p-1,1/2}_{p,j} f_j over 2p
/// samples; for p = 2 this is 6 * (-f0 + 3f1 - 3f2 + f3). The weights sum to zero, so the sum is taken over differences to
/// the first sample; constant data yields exactly zero.
template <typename Scalar>
Scalar undivided_difference(int p, std::span<const Scalar> samples) {
  if (static_cast<int>(samples.size()) != 2 * p)
    throw InvalidArgument("undivided_difference: expected 2p samples");
  const Vector<Scalar>& w = detail::undivided_weights<Scalar>(p);
  Scalar sum(0);
  for (int j = 1; j < 2 * p; ++j) sum += w[j] * (samples[j] - samples[0]);
  return sum;
}

/// Human-readable rational string, e.g. "-1/12".
std::string to_string(const Rational& r);

/// Parses "3", "-1/2" or "0.5" (decimals with up to 18 fractional digits).
Rational parse_rational(const std::string& text);

}  // namespace acat
