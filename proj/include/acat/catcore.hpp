#pragma once

// Compact Approximate Taylor (CAT2p) interface fluxes and the non-compact
// LAT update.
//
// The recursion works with time-scaled quantities so no division by powers of
// dt occurs:
//   phi_k(j) = dt^{k-1} * (approximate (k-1)-th time derivative of f at x_{i+j})
//   du_l(j)  = dt^l     * (approximate l-th time derivative of u at x_{i+j})
// and the interface flux is sum_{k=1}^{2p} A^{0,1/2}(phi_k) / k!.
//
// Weighted sums of derivative formulas (weights summing to zero) are taken
// over differences to a reference node, so constant data produces exactly
// zero time derivatives and the flux of a constant stencil is exactly f(u).

#include "acat/diffops.hpp"
#include "acat/models.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace acat {

/// Weights used by the CAT2p recursion for one half-width p.
template <typename Scalar>
struct CatCoefficients {
  int p = 0;
  Matrix<Scalar> node_derivative;  // row j: A^{1, j-p+1}_p weights
  Matrix<Scalar> time_derivative;  // row k: A^{k, 0}_p weights, k = 0..2p-1
  Vector<Scalar> midpoint;         // interface weights (conservative, see interface_coeffs)
  Vector<Scalar> inv_factorial;    // 1/k!, k = 0..2p
  Matrix<Scalar> taylor;           // (row r+p-1, col l): r^l / l!
};

template <typename Scalar>
const CatCoefficients<Scalar>& cat_coefficients(int p) {
  static const auto table = [] {
    std::array<CatCoefficients<Scalar>, kDefaultMaxHalfWidth + 1> t;
    const FormulaTable& ft = formulas();
    for (int q = 1; q <= kDefaultMaxHalfWidth; ++q) {
      auto& c = t[q];
      const int n = 2 * q;
      c.p = q;
      c.node_derivative.resize(n, n);
      for (int j = 0; j < n; ++j)
        c.node_derivative.row(j) = ft.interpolatory(q, 1, j - q + 1).template weights<Scalar>();
      c.time_derivative.resize(n, n);
      for (int k = 0; k < n; ++k)
        c.time_derivative.row(k) = ft.interpolatory(q, k, 0).template weights<Scalar>();
      c.midpoint = ft.interface(q).template weights<Scalar>();
      c.inv_factorial.resize(n + 1);
      Scalar fact(1);
      for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= Scalar(k);
        c.inv_factorial[k] = Scalar(1) / fact;
      }
      c.taylor.resize(n, n);
      for (int rr = 0; rr < n; ++rr) {
        const Scalar r(rr - q + 1);
        Scalar term(1);
        for (int l = 0; l < n; ++l) {
          if (l > 0) term = term * r / Scalar(l);
          c.taylor(rr, l) = term;
        }
      }
    }
    return t;
  }();
  if (p < 1 || p > kDefaultMaxHalfWidth)
    throw InvalidArgument("CAT flux: half-width " + std::to_string(p) + " not supported");
  return table[p];
}

/// Per-interface workspace for the CAT recursion. Reused across interfaces;
/// every entry read is written first, so reuse matches a fresh scratch.
template <typename Scalar>
struct TaylorScratch {
  int p = 0;
  int m = 0;
  std::vector<StateBlock<Scalar>> phi;  // phi[k-1], k = 1..2p
  std::vector<StateBlock<Scalar>> du;   // du[l], l = 1..2p-1 (du[0] unused)
  StateBlock<Scalar> time_nodes;        // fluxes at r = -p+1..p for one node

  void reserve(int half_width, int components) {
    if (half_width == p && components == m) return;
    p = half_width;
    m = components;
    const int n = 2 * p;
    phi.assign(n, StateBlock<Scalar>(m, n));
    du.assign(n, StateBlock<Scalar>(m, n));
    time_nodes.resize(m, n);
  }
};

/// CAT2p flux at x_{i+1/2} from the 2p states u_{i-p+1..i+p} (one column
/// per node). Returns 0 on success, otherwise the recursion level k at which
/// a Taylor-predicted state was inadmissible (1 = input state).
template <typename Scalar, typename Derived>
int try_cat_flux(const FluxModel<Scalar>& model, Axis axis,
                 const Eigen::MatrixBase<Derived>& stencil, Scalar dx, Scalar dt,
                 TaylorScratch<Scalar>& s, StateVector<Scalar>& out) {
  const int n = static_cast<int>(stencil.cols());
  const int p = n / 2;
  const int m = model.components();
  const auto& cc = cat_coefficients<Scalar>(p);
  s.reserve(p, m);

  StateVector<Scalar> state(m), fval(m), acc(m);
  StateBlock<Scalar>& phi1 = s.phi[0];
  for (int j = 0; j < n; ++j) {
    state = stencil.col(j);
    if (!model.admissible(state)) return 1;
    model.flux(axis, state, fval);
    phi1.col(j) = fval;
  }

  const Scalar courant = dt / dx;
  const int centre = p - 1;  // time node r = 0
  for (int k = 2; k <= n; ++k) {
    const StateBlock<Scalar>& prev = s.phi[k - 2];
    StateBlock<Scalar>& du = s.du[k - 1];
    for (int j = 0; j < n; ++j) {
      acc.setZero();
      for (int r = 1; r < n; ++r) acc += cc.node_derivative(j, r) * (prev.col(r) - prev.col(0));
      du.col(j) = -courant * acc;
    }

    StateBlock<Scalar>& phik = s.phi[k - 1];
    for (int j = 0; j < n; ++j) {
      for (int rr = 0; rr < n; ++rr) {
        if (rr == centre) {
          s.time_nodes.col(rr) = phi1.col(j);
          continue;
        }
        state = stencil.col(j);
        for (int l = 1; l < k; ++l) state += cc.taylor(rr, l) * s.du[l].col(j);
        if (!model.admissible(state)) return k;
        model.flux(axis, state, fval);
        s.time_nodes.col(rr) = fval;
      }
      acc.setZero();
      for (int rr = 0; rr < n; ++rr) {
        if (rr == centre) continue;
        acc += cc.time_derivative(k - 1, rr) * (s.time_nodes.col(rr) - s.time_nodes.col(centre));
      }
      phik.col(j) = acc;
    }
  }

  // k = 1 term relative to f(u_i); higher terms vanish on constant data.
  out = phi1.col(centre);
  for (int j = 0; j < n; ++j) out += cc.midpoint[j] * (phi1.col(j) - phi1.col(centre));
  for (int k = 2; k <= n; ++k) {
    acc.setZero();
    for (int j = 0; j < n; ++j) acc += cc.midpoint[j] * s.phi[k - 1].col(j);
    out += cc.inv_factorial[k] * acc;
  }
  if (!out.allFinite()) return n;
  return 0;
}

/// Throwing form of try_cat_flux.
template <typename Scalar, typename Derived>
StateVector<Scalar> cat_flux(const FluxModel<Scalar>& model,
                             const Eigen::MatrixBase<Derived>& stencil, Scalar dx, Scalar dt,
                             Axis axis = Axis::x, long interface = -1) {
  if (stencil.cols() < 2 || stencil.cols() % 2 != 0)
    throw InvalidArgument("cat_flux: stencil must hold 2p states");
  if (stencil.rows() != model.components())
    throw InvalidArgument("cat_flux: stencil rows must match model components");
  if (!(dx > Scalar(0)) || !(dt > Scalar(0)))
    throw InvalidArgument("cat_flux: dx and dt must be positive");
  TaylorScratch<Scalar> scratch;
  StateVector<Scalar> out(model.components());
  if (const int level = try_cat_flux(model, axis, stencil, dx, dt, scratch, out); level != 0)
    throw StepFailure("cat_flux: inadmissible Taylor state at level " + std::to_string(level),
                      interface, level);
  return out;
}

/// The two-stage CAT2 flux
///   F = (f(u_{i+1} + du) + f(u_i + du) + f(u_{i+1}) + f(u_i)) / 4,
///   du = -(dt/dx) (f(u_{i+1}) - f(u_i)).
/// Returns 0 on success or the failing level.
template <typename Scalar>
int try_cat2_flux_closed_form(const FluxModel<Scalar>& model, Axis axis,
                              const StateVector<Scalar>& ul, const StateVector<Scalar>& ur,
                              Scalar dx, Scalar dt, StateVector<Scalar>& out) {
  if (!model.admissible(ul) || !model.admissible(ur)) return 1;
  const int m = model.components();
  StateVector<Scalar> fl(m), fr(m), state(m), pl(m), pr(m);
  model.flux(axis, ul, fl);
  model.flux(axis, ur, fr);
  const StateVector<Scalar> du = -(dt / dx) * (fr - fl);
  state = ul + du;
  if (!model.admissible(state)) return 2;
  model.flux(axis, state, pl);
  state = ur + du;
  if (!model.admissible(state)) return 2;
  model.flux(axis, state, pr);
  // Grouped so that constant data gives exactly f(u).
  out = Scalar(0.25) * ((pr + pl) + (fr + fl));
  return 0;
}

template <typename Scalar>
StateVector<Scalar> cat2_flux_closed_form(const FluxModel<Scalar>& model,
                                          const StateVector<Scalar>& ul,
                                          const StateVector<Scalar>& ur, Scalar dx, Scalar dt,
                                          Axis axis = Axis::x, long interface = -1) {
  StateVector<Scalar> out(model.components());
  if (const int level = try_cat2_flux_closed_form(model, axis, ul, ur, dx, dt, out); level != 0)
    throw StepFailure("cat2_flux: inadmissible Taylor state", interface, level);
  return out;
}

/// One LAT step of order min(m, 2p) on a full row of n cells (columns),
/// neighbours taken through the boundary condition. When p == 0 the
/// half-widths follow the per-level rule: p = ceil((m+1-k)/2) for the space
/// derivative producing the k-th time derivative and ceil((m-1)/2) for the
/// time derivatives of the flux.
template <typename Scalar>
StateBlock<Scalar> lat_step(const StateBlock<Scalar>& states, Boundary bc,
                            const FluxModel<Scalar>& model, int p, int order, Scalar dx,
                            Scalar dt) {
  const int n = static_cast<int>(states.cols());
  const int mc = model.components();
  if (order < 1) throw InvalidArgument("lat_step: order must be positive");
  if (p < 0) throw InvalidArgument("lat_step: half-width must be non-negative");
  if (p > 0 && order - 1 > 2 * p)
    throw InvalidArgument("lat_step: order exceeds what 2p+1 time nodes can differentiate");
  if (states.rows() != mc) throw InvalidArgument("lat_step: rows must match model components");

  auto space_p = [&](int k) { return p > 0 ? p : (order + 2 - k) / 2; };  // ceil((m+1-k)/2)
  const int time_p = p > 0 ? p : std::max(1, order / 2);                 // ceil((m-1)/2)
  if (std::max(space_p(1), time_p) > kDefaultMaxHalfWidth)
    throw InvalidArgument("lat_step: half-width exceeds the supported maximum");

  auto wrap = [&](int i) {
    if (bc == Boundary::periodic) return ((i % n) + n) % n;
    return std::clamp(i, 0, n - 1);
  };

  const Scalar courant = dt / dx;
  std::vector<StateBlock<Scalar>> du(order + 1, StateBlock<Scalar>(mc, n));
  StateBlock<Scalar> flux0(mc, n), phik(mc, n);
  StateVector<Scalar> state(mc), fval(mc), acc(mc);

  for (int i = 0; i < n; ++i) {
    state = states.col(i);
    if (!model.admissible(state)) throw StateError("lat_step: inadmissible state", i);
    model.flux(Axis::x, state, fval);
    flux0.col(i) = fval;
  }

  auto space_derivative = [&](const StateBlock<Scalar>& values, int hw, StateBlock<Scalar>& out) {
    const DiffFormula& d1 = formulas().centered(hw, 1);
    for (int i = 0; i < n; ++i) {
      acc.setZero();
      for (int j = -hw; j <= hw; ++j) {
        if (j == 0) continue;
        acc += DiffFormula::to_scalar<Scalar>(d1.exact[j + hw]) *
               (values.col(wrap(i + j)) - values.col(i));
      }
      out.col(i) = -courant * acc;
    }
  };

  space_derivative(flux0, space_p(1), du[1]);
  StateBlock<Scalar> time_nodes(mc, 2 * time_p + 1);
  for (int k = 2; k <= order; ++k) {
    const DiffFormula& dk = formulas().centered(time_p, k - 1);
    for (int i = 0; i < n; ++i) {
      for (int r = -time_p; r <= time_p; ++r) {
        if (r == 0) {
          time_nodes.col(time_p) = flux0.col(i);
          continue;
        }
        state = states.col(i);
        Scalar term(1);
        for (int l = 1; l < k; ++l) {
          term = term * Scalar(r) / Scalar(l);
          state += term * du[l].col(i);
        }
        if (!model.admissible(state))
          throw StepFailure("lat_step: inadmissible Taylor state", i, k);
        model.flux(Axis::x, state, fval);
        time_nodes.col(r + time_p) = fval;
      }
      acc.setZero();
      for (int r = -time_p; r <= time_p; ++r) {
        if (r == 0) continue;
        acc += DiffFormula::to_scalar<Scalar>(dk.exact[r + time_p]) *
               (time_nodes.col(r + time_p) - time_nodes.col(time_p));
      }
      phik.col(i) = acc;
    }
    space_derivative(phik, space_p(k), du[k]);
  }

  StateBlock<Scalar> next = states;
  Scalar inv_fact(1);
  for (int k = 1; k <= order; ++k) {
    inv_fact /= Scalar(k);
    next += inv_fact * du[k];
  }
  return next;
}

}  // namespace acat
