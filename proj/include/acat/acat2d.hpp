#pragma once

// Two-dimensional CAT2p fluxes on square (2p)x(2p) blocks, dimension-wise
// stencil selection and the conservative 2D update.
//
// A block anchored at node i = (i1, i2) holds u_{i+j}, j1, j2 = -p+1..p, in
// column j1' + 2p j2' with j' = j + p - 1. It yields both F at i + e1/2 (row
// j2 = 0) and G at i + e2/2 (column j1 = 0).

#include "acat/acat1d.hpp"

namespace acat {

template <typename Scalar>
struct TaylorScratch2D {
  int p = 0;
  int m = 0;
  std::vector<StateBlock<Scalar>> phi_f;  // dt^{k-1} f^{(k-1)} at every block node
  std::vector<StateBlock<Scalar>> phi_g;
  std::vector<StateBlock<Scalar>> du;     // dt^l u^{(l)}
  StateBlock<Scalar> nodes_f;             // time-node fluxes for one block node
  StateBlock<Scalar> nodes_g;

  void reserve(int half_width, int components) {
    if (half_width == p && components == m) return;
    p = half_width;
    m = components;
    const int n = 2 * p;
    phi_f.assign(n, StateBlock<Scalar>(m, n * n));
    phi_g.assign(n, StateBlock<Scalar>(m, n * n));
    du.assign(n, StateBlock<Scalar>(m, n * n));
    nodes_f.resize(m, n);
    nodes_g.resize(m, n);
  }
};

/// CAT2p fluxes from a (2p)x(2p) block. F is computed when want_f, G when
/// want_g. Returns 0 on success or the failing recursion level.
template <typename Scalar, typename Derived>
int try_cat_flux_2d(const FluxModel<Scalar>& model, const Eigen::MatrixBase<Derived>& block,
                    int p, Scalar dx, Scalar dy, Scalar dt, bool want_f, bool want_g,
                    TaylorScratch2D<Scalar>& s, StateVector<Scalar>& F, StateVector<Scalar>& G) {
  const int n = 2 * p;
  const int m = model.components();
  const auto& cc = cat_coefficients<Scalar>(p);
  s.reserve(p, m);
  auto at = [n](int j1, int j2) { return j1 + n * j2; };
  const int c = p - 1;  // index of offset 0 along either axis

  StateVector<Scalar> state(m), fval(m), gval(m), acc(m), accy(m);
  for (int q = 0; q < n * n; ++q) {
    state = block.col(q);
    if (!model.admissible(state)) return 1;
    model.flux(Axis::x, state, fval);
    model.flux(Axis::y, state, gval);
    s.phi_f[0].col(q) = fval;
    s.phi_g[0].col(q) = gval;
  }

  const Scalar cx = dt / dx;
  const Scalar cy = dt / dy;
  for (int k = 2; k <= n; ++k) {
    const StateBlock<Scalar>& pf = s.phi_f[k - 2];
    const StateBlock<Scalar>& pg = s.phi_g[k - 2];
    StateBlock<Scalar>& du = s.du[k - 1];
    for (int j2 = 0; j2 < n; ++j2) {
      for (int j1 = 0; j1 < n; ++j1) {
        acc.setZero();
        for (int r = 1; r < n; ++r)
          acc += cc.node_derivative(j1, r) * (pf.col(at(r, j2)) - pf.col(at(0, j2)));
        accy.setZero();
        for (int r = 1; r < n; ++r)
          accy += cc.node_derivative(j2, r) * (pg.col(at(j1, r)) - pg.col(at(j1, 0)));
        du.col(at(j1, j2)) = -cx * acc - cy * accy;
      }
    }

    const bool last = k == n;
    for (int j2 = 0; j2 < n; ++j2) {
      for (int j1 = 0; j1 < n; ++j1) {
        // Only the cross through the anchor feeds the final flux sums.
        const bool need_f = !last || (want_f && j2 == c);
        const bool need_g = !last || (want_g && j1 == c);
        if (!need_f && !need_g) continue;
        const int q = at(j1, j2);
        for (int rr = 0; rr < n; ++rr) {
          if (rr == c) {
            s.nodes_f.col(rr) = s.phi_f[0].col(q);
            s.nodes_g.col(rr) = s.phi_g[0].col(q);
            continue;
          }
          state = block.col(q);
          for (int l = 1; l < k; ++l) state += cc.taylor(rr, l) * s.du[l].col(q);
          if (!model.admissible(state)) return k;
          if (need_f) {
            model.flux(Axis::x, state, fval);
            s.nodes_f.col(rr) = fval;
          }
          if (need_g) {
            model.flux(Axis::y, state, gval);
            s.nodes_g.col(rr) = gval;
          }
        }
        if (need_f) {
          acc.setZero();
          for (int rr = 0; rr < n; ++rr) {
            if (rr == c) continue;
            acc += cc.time_derivative(k - 1, rr) * (s.nodes_f.col(rr) - s.nodes_f.col(c));
          }
          s.phi_f[k - 1].col(q) = acc;
        }
        if (need_g) {
          acc.setZero();
          for (int rr = 0; rr < n; ++rr) {
            if (rr == c) continue;
            acc += cc.time_derivative(k - 1, rr) * (s.nodes_g.col(rr) - s.nodes_g.col(c));
          }
          s.phi_g[k - 1].col(q) = acc;
        }
      }
    }
  }

  auto assemble = [&](const std::vector<StateBlock<Scalar>>& phi, auto index, StateVector<Scalar>& out) {
    const StateBlock<Scalar>& phi1 = phi[0];
    out = phi1.col(index(c));
    for (int j = 0; j < n; ++j) out += cc.midpoint[j] * (phi1.col(index(j)) - phi1.col(index(c)));
    for (int k = 2; k <= n; ++k) {
      acc.setZero();
      for (int j = 0; j < n; ++j) acc += cc.midpoint[j] * phi[k - 1].col(index(j));
      out += cc.inv_factorial[k] * acc;
    }
  };
  if (want_f) {
    assemble(s.phi_f, [&](int j) { return at(j, c); }, F);
    if (!F.allFinite()) return n;
  }
  if (want_g) {
    assemble(s.phi_g, [&](int j) { return at(c, j); }, G);
    if (!G.allFinite()) return n;
  }
  return 0;
}

/// Two-dimensional CAT2 closed form from the 2x2 block u_i, u_{i+e1},
/// u_{i+e2}, u_{i+1} (columns in that order). Returns 0 or the failing level.
template <typename Scalar, typename Derived>
int try_cat2_flux_2d(const FluxModel<Scalar>& model, const Eigen::MatrixBase<Derived>& block,
                     Scalar dx, Scalar dy, Scalar dt, Axis axis, StateVector<Scalar>& out) {
  const int m = model.components();
  std::array<StateVector<Scalar>, 4> u, f, g;
  for (int q = 0; q < 4; ++q) {
    u[q] = block.col(q);
    if (!model.admissible(u[q])) return 1;
    f[q].resize(m);
    g[q].resize(m);
    model.flux(Axis::x, u[q], f[q]);
    model.flux(Axis::y, u[q], g[q]);
  }
  const Scalar cx = dt / dx;
  const Scalar cy = dt / dy;
  // Node 0 and the neighbour across the interface (e1 for F, e2 for G).
  const int nb = axis == Axis::x ? 1 : 2;
  const StateVector<Scalar> du0 = -cx * (f[1] - f[0]) - cy * (g[2] - g[0]);
  const StateVector<Scalar> dunb =
      axis == Axis::x ? StateVector<Scalar>(-cx * (f[1] - f[0]) - cy * (g[3] - g[1]))
                      : StateVector<Scalar>(-cx * (f[3] - f[2]) - cy * (g[2] - g[0]));
  const auto& base = axis == Axis::x ? f : g;
  StateVector<Scalar> state = u[0] + du0;
  if (!model.admissible(state)) return 2;
  const StateVector<Scalar> p0 = model.flux(axis, state);
  state = u[nb] + dunb;
  if (!model.admissible(state)) return 2;
  const StateVector<Scalar> pnb = model.flux(axis, state);
  out = Scalar(0.25) * ((pnb + p0) + (base[nb] + base[0]));
  return 0;
}

/// Uniform 2D mesh with a ghost frame of width `halo`. Column
/// (i + halo) + (j + halo) * stride() of `data` holds cell (i, j).
class Grid2D {
 public:
  Grid2D(int nx, int ny, double x0, double x1, double y0, double y1, int components, int halo,
         Boundary bc_x, Boundary bc_y, double node_offset = 0.5);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int halo() const { return halo_; }
  int components() const { return static_cast<int>(data_.rows()); }
  int stride() const { return nx_ + 2 * halo_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double x(int i) const { return x0_ + (i + node_offset_) * dx_; }
  double y(int j) const { return y0_ + (j + node_offset_) * dy_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double node_offset() const { return node_offset_; }
  Boundary boundary(Axis axis) const { return axis == Axis::x ? bc_x_ : bc_y_; }
  int index(int i, int j) const { return (i + halo_) + (j + halo_) * stride(); }

  double time = 0.0;

  StateBlock<double>& data() { return data_; }
  const StateBlock<double>& data() const { return data_; }
  auto cell(int i, int j) { return data_.col(index(i, j)); }
  auto cell(int i, int j) const { return data_.col(index(i, j)); }

  void fill_ghosts();
  Vector<double> integral() const;
  /// Interior values of one component as an nx-by-ny matrix (row = i).
  Matrix<double> component(int c) const;

 private:
  int nx_, ny_, halo_;
  double x0_, y0_, dx_, dy_, node_offset_;
  Boundary bc_x_, bc_y_;
  StateBlock<double> data_;
};

struct StepInfo2D {
  // Interface i-1/2 in row j at (i, j) of an (nx+1)-by-ny array, and
  // interface j-1/2 in column i at (i, j) of an nx-by-(ny+1) array.
  Eigen::MatrixXi selected_x;
  Eigen::MatrixXi selected_y;
  Eigen::MatrixXi used_x;
  Eigen::MatrixXi used_y;
  // psi^p for p = 1..P when requested: psi_x[p-1](i, j).
  std::vector<Matrix<double>> psi_x;
  std::vector<Matrix<double>> psi_y;
};

class Solver2D {
 public:
  Solver2D(ModelPtr<double> model, SchemeSpec spec);

  const SchemeSpec& spec() const { return spec_; }
  const FluxModel<double>& model() const { return *model_; }

  /// cfl/2 * min(dx / max (|v|+c), dy / max (|w|+c)).
  double stable_dt(const Grid2D& grid, double cfl) const;
  void step(Grid2D& grid, double dt, StepInfo2D* info = nullptr, bool want_psi = false) const;

 private:
  void check_grid(const Grid2D& grid) const;

  ModelPtr<double> model_;
  SchemeSpec spec_;
};

struct StepDiagnostics2D {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  Vector<double> min;
  Vector<double> max;
  std::vector<long> histogram_x;
  std::vector<long> histogram_y;
};

struct RunOptions2D {
  double t_final = 0.1;
  double cfl = 0.475;
  long max_steps = 10'000'000;
  bool record_psi = false;
  std::function<void(const Grid2D&, const StepInfo2D&, const StepDiagnostics2D&)> observer;
};

struct RunSummary2D {
  std::vector<StepDiagnostics2D> steps;
  StepInfo2D last;
  double wall_seconds = 0.0;
};

RunSummary2D run_2d(Grid2D& grid, const Solver2D& solver, const RunOptions2D& options);

}  // namespace acat
