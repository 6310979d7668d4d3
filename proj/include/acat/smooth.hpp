#pragma once

// Flux limiter psi^1 and the high-order smoothness indicators psi^p, p >= 2.
//
// For 2p values f_{i-p+1..i+p} around the interface x_{i+1/2}:
//   I_L = sum_{j=-p+1}^{-1} (f_{i+1+j} - f_{i+j})^2 + eps
//   I_R = sum_{j=1}^{p-1}   (f_{i+1+j} - f_{i+j})^2 + eps
//   I   = I_L I_R / (I_L + I_R)
//   tau = (undivided difference of order 2p-1)^2
//   psi = I / (I + tau)
// psi is close to 1 on smooth data and close to 0 across a jump.

#include "acat/diffops.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace acat {

enum class Limiter { superbee, minmod };

struct IndicatorConfig {
  double eps_scale = 1e-14;
  Limiter limiter = Limiter::superbee;
  bool use_modified_p2 = false;
  double select_threshold = 0.5;

  void validate() const {
    if (!(select_threshold > 0.0 && select_threshold < 1.0))
      throw InvalidArgument("IndicatorConfig: select_threshold must lie in (0, 1)");
    if (!(eps_scale > 0.0)) throw InvalidArgument("IndicatorConfig: eps_scale must be positive");
  }
};

/// psi^p for p = 1..P at one interface (psi[p-1]) and the chosen half-width:
/// 0 when no p >= 2 is admissible, else the largest admissible p.
struct SmoothnessReport {
  std::vector<double> psi;
  int selected_p = 0;
};

/// Limiter value in [0, 1]. Superbee max(0, min(1, 2r), min(2, r)) is capped
/// at 1 so the result is a convex weight.
template <typename Scalar>
Scalar limiter_value(Limiter limiter, Scalar r) {
  using std::max;
  using std::min;
  Scalar phi;
  if (limiter == Limiter::superbee)
    phi = max(Scalar(0), max(min(Scalar(1), Scalar(2) * r), min(Scalar(2), r)));
  else
    phi = max(Scalar(0), min(Scalar(1), r));
  return min(Scalar(1), phi);
}

namespace detail {

/// Ratio upwind/local with the flat-data convention: a vanishing local jump
/// gives r = 2 (smooth) when the upwind jump vanishes too, otherwise r = 0.
template <typename Scalar>
Scalar jump_ratio(Scalar upwind, Scalar local, Scalar tiny) {
  using std::abs;
  if (abs(local) <= tiny) return abs(upwind) <= tiny ? Scalar(2) : Scalar(0);
  return upwind / local;
}

template <typename Scalar>
Scalar flatness_tolerance(std::span<const Scalar> u) {
  using std::abs;
  Scalar scale(1);
  for (const Scalar& v : u) scale = std::max(scale, Scalar(abs(v)));
  return Scalar(1e-14) * scale;
}

}  // namespace detail

/// psi^1 = min(psi(r+), psi(r-)) from u_{i-1}, u_i, u_{i+1}, u_{i+2}.
template <typename Scalar>
Scalar limiter_psi1(std::span<const Scalar> u, const IndicatorConfig& cfg) {
  if (u.size() != 4) throw InvalidArgument("limiter_psi1: expected 4 values");
  const Scalar tiny = detail::flatness_tolerance(u);
  const Scalar local = u[2] - u[1];
  const Scalar r_minus = detail::jump_ratio(u[1] - u[0], local, tiny);
  const Scalar r_plus = detail::jump_ratio(u[3] - u[2], local, tiny);
  using std::min;
  return min(limiter_value(cfg.limiter, r_plus), limiter_value(cfg.limiter, r_minus));
}

/// Upwind variant: r- when the interface speed a is positive, r+ otherwise.
template <typename Scalar>
Scalar limiter_psi1_upwind(std::span<const Scalar> u, Scalar a, const IndicatorConfig& cfg) {
  if (u.size() != 4) throw InvalidArgument("limiter_psi1_upwind: expected 4 values");
  const Scalar tiny = detail::flatness_tolerance(u);
  const Scalar local = u[2] - u[1];
  const Scalar r = a > Scalar(0) ? detail::jump_ratio(u[1] - u[0], local, tiny)
                                 : detail::jump_ratio(u[3] - u[2], local, tiny);
  return limiter_value(cfg.limiter, r);
}

/// Roe's intermediate speed for a scalar flux; falls back to the one-sided
/// derivative estimate when the states coincide.
template <typename Scalar, typename FluxFn, typename SpeedFn>
Scalar roe_speed(Scalar ul, Scalar ur, FluxFn&& f, SpeedFn&& derivative) {
  if (ul != ur) return (f(ur) - f(ul)) / (ur - ul);
  return derivative(ul);
}

/// Lateral-weight ratio parts of the indicator: psi = I/(I+tau),
/// 1 - psi = tau/(I+tau). Keeping both avoids cancellation near psi = 1.
template <typename Scalar>
struct IndicatorParts {
  Scalar weight;  // I
  Scalar tau;
  Scalar psi() const { return weight / (weight + tau); }
  Scalar defect() const { return tau / (weight + tau); }
};

namespace detail {

template <typename Scalar>
Scalar indicator_eps(std::span<const Scalar> f, const IndicatorConfig& cfg) {
  Scalar peak(1);
  for (const Scalar& v : f) peak = std::max(peak, Scalar(v * v));
  return Scalar(cfg.eps_scale) * peak;
}

template <typename Scalar>
Scalar harmonic(Scalar left, Scalar right) {
  return left * right / (left + right);
}

}  // namespace detail

template <typename Scalar>
IndicatorParts<Scalar> indicator_parts(int p, std::span<const Scalar> f,
                                       const IndicatorConfig& cfg) {
  if (p < 2) throw InvalidArgument("indicator: half-width must be at least 2");
  if (static_cast<int>(f.size()) != 2 * p) throw InvalidArgument("indicator: expected 2p values");
  const Scalar eps = detail::indicator_eps(f, cfg);
  // Local index c corresponds to node i; f[c + j] = f_{i+j}.
  const int c = p - 1;
  Scalar left = eps;
  for (int j = -p + 1; j <= -1; ++j) {
    const Scalar d = f[c + j + 1] - f[c + j];
    left += d * d;
  }
  Scalar right = eps;
  for (int j = 1; j <= p - 1; ++j) {
    const Scalar d = f[c + j + 1] - f[c + j];
    right += d * d;
  }
  const Scalar delta = undivided_difference<Scalar>(p, f);
  return {detail::harmonic(left, right), delta * delta};
}

template <typename Scalar>
Scalar indicator(int p, std::span<const Scalar> f, const IndicatorConfig& cfg) {
  return indicator_parts(p, f, cfg).psi();
}

/// Modified p = 2 indicator: the better of the two asymmetric splittings of
/// the three sub-interval jumps into lateral weights.
template <typename Scalar>
IndicatorParts<Scalar> indicator_p2_modified_parts(std::span<const Scalar> f,
                                                   const IndicatorConfig& cfg) {
  if (f.size() != 4) throw InvalidArgument("indicator_p2_modified: expected 4 values");
  const Scalar eps = detail::indicator_eps(f, cfg);
  const Scalar d0 = (f[1] - f[0]) * (f[1] - f[0]);
  const Scalar d1 = (f[2] - f[1]) * (f[2] - f[1]);
  const Scalar d2 = (f[3] - f[2]) * (f[3] - f[2]);
  const Scalar w1 = detail::harmonic(d0 + eps, d1 + d2 + eps);
  const Scalar w2 = detail::harmonic(d0 + d1 + eps, d2 + eps);
  const Scalar delta = undivided_difference<Scalar>(2, f);
  // I/(I+tau) is increasing in I, so the max ratio uses the larger weight.
  return {std::max(w1, w2), delta * delta};
}

template <typename Scalar>
Scalar indicator_p2_modified(std::span<const Scalar> f, const IndicatorConfig& cfg) {
  return indicator_p2_modified_parts(f, cfg).psi();
}

/// Indicator for the stencil S_p honoring the p = 2 variant flag.
template <typename Scalar>
Scalar stencil_indicator(int p, std::span<const Scalar> f, const IndicatorConfig& cfg) {
  if (p == 2 && cfg.use_modified_p2) return indicator_p2_modified(f, cfg);
  return indicator(p, f, cfg);
}

/// Selects the interface stencil from a window of 2*max(P,2) states per
/// component (rows = components, columns = nodes i-W/2+1 .. i+W/2).
/// psi^p is the minimum over components; p is admissible when
/// psi^p >= select_threshold.
template <typename Derived>
SmoothnessReport select_stencil(int max_p, const Eigen::MatrixBase<Derived>& window,
                                const IndicatorConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  const int width = 2 * std::max(max_p, 2);
  if (window.cols() != width)
    throw InvalidArgument("select_stencil: window must hold 2*max(P,2) nodes");
  SmoothnessReport report;
  report.psi.assign(max_p, 1.0);
  const int centre = width / 2 - 1;  // local index of node i

  Scalar row[2 * kDefaultMaxHalfWidth + 4];
  for (int comp = 0; comp < window.rows(); ++comp) {
    for (int j = 0; j < width; ++j) row[j] = window(comp, j);
    const std::span<const Scalar> all(row, width);
    const Scalar psi1 = limiter_psi1<Scalar>(all.subspan(centre - 1, 4), cfg);
    report.psi[0] = std::min(report.psi[0], double(psi1));
    for (int p = 2; p <= max_p; ++p) {
      const Scalar v = stencil_indicator<Scalar>(p, all.subspan(centre - p + 1, 2 * p), cfg);
      report.psi[p - 1] = std::min(report.psi[p - 1], double(v));
    }
  }
  report.selected_p = 0;
  for (int p = max_p; p >= 2; --p) {
    if (report.psi[p - 1] >= cfg.select_threshold) {
      report.selected_p = p;
      break;
    }
  }
  return report;
}

}  // namespace acat
