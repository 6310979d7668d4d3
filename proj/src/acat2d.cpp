#include "acat/acat2d.hpp"

#include "detail/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace acat {

Grid2D::Grid2D(int nx, int ny, double x0, double x1, double y0, double y1, int components,
               int halo, Boundary bc_x, Boundary bc_y, double node_offset)
    : nx_(nx), ny_(ny), halo_(halo), x0_(x0), y0_(y0), node_offset_(node_offset), bc_x_(bc_x),
      bc_y_(bc_y) {
  if (nx < 2 || ny < 2) throw InvalidArgument("grid: at least two cells per axis are required");
  if (!(x1 > x0) || !(y1 > y0)) throw InvalidArgument("grid: domain must have positive extent");
  if (halo < 1) throw InvalidArgument("grid: halo must be positive");
  if ((bc_x == Boundary::periodic && halo > nx) || (bc_y == Boundary::periodic && halo > ny))
    throw InvalidArgument("grid: periodic halo wider than the mesh");
  if (components < 1 || components > kMaxComponents)
    throw InvalidArgument("grid: unsupported component count");
  dx_ = (x1 - x0) / nx;
  dy_ = (y1 - y0) / ny;
  data_ = StateBlock<double>::Zero(components, static_cast<long>(stride()) * (ny + 2 * halo));
}

void Grid2D::fill_ghosts() {
  const int h = halo_;
  // x-ghosts on interior rows, then y-ghosts over the full width so the
  // corners are consistent with both conditions.
  for (int j = 0; j < ny_; ++j) {
    for (int g = 1; g <= h; ++g) {
      if (bc_x_ == Boundary::periodic) {
        data_.col(index(-g, j)) = data_.col(index(nx_ - g, j));
        data_.col(index(nx_ - 1 + g, j)) = data_.col(index(g - 1, j));
      } else {
        data_.col(index(-g, j)) = data_.col(index(0, j));
        data_.col(index(nx_ - 1 + g, j)) = data_.col(index(nx_ - 1, j));
      }
    }
  }
  for (int i = -h; i < nx_ + h; ++i) {
    for (int g = 1; g <= h; ++g) {
      if (bc_y_ == Boundary::periodic) {
        data_.col(index(i, -g)) = data_.col(index(i, ny_ - g));
        data_.col(index(i, ny_ - 1 + g)) = data_.col(index(i, g - 1));
      } else {
        data_.col(index(i, -g)) = data_.col(index(i, 0));
        data_.col(index(i, ny_ - 1 + g)) = data_.col(index(i, ny_ - 1));
      }
    }
  }
}

Vector<double> Grid2D::integral() const {
  Vector<double> sum = Vector<double>::Zero(components());
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) sum += data_.col(index(i, j));
  return sum * (dx_ * dy_);
}

Matrix<double> Grid2D::component(int c) const {
  if (c < 0 || c >= components()) throw InvalidArgument("grid: component index out of range");
  Matrix<double> out(nx_, ny_);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) out(i, j) = data_(c, index(i, j));
  return out;
}

Solver2D::Solver2D(ModelPtr<double> model, SchemeSpec spec)
    : model_(std::move(model)), spec_(std::move(spec)) {
  if (!model_) throw InvalidArgument("solver: model is null");
  spec_.validate();
  if (spec_.kind == SchemeKind::lat) throw InvalidArgument("solver: LAT is one-dimensional only");
  if (model_->dimensions() != 2) throw InvalidArgument("solver: model has no y-flux");
}

void Solver2D::check_grid(const Grid2D& grid) const {
  if (grid.components() != model_->components())
    throw InvalidArgument("solver: grid components do not match the model");
  if (grid.halo() < spec_.halo())
    throw InvalidArgument("solver: grid halo narrower than the scheme stencil");
}

double Solver2D::stable_dt(const Grid2D& grid, double cfl) const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
  double sx = 0.0, sy = 0.0;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const State u = grid.cell(i, j);
      require_admissible(*model_, u, i, j);
      sx = std::max(sx, model_->max_wave_speed(Axis::x, u));
      sy = std::max(sy, model_->max_wave_speed(Axis::y, u));
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double tx = sx > 0.0 ? grid.dx() / sx : inf;
  const double ty = sy > 0.0 ? grid.dy() / sy : inf;
  return 0.5 * cfl * std::min(tx, ty);
}

namespace {

struct Worker {
  TaylorScratch2D<double> scratch;
  StateBlock<double> block;
  StateBlock<double> window;
  StateBlock<double> quad;
  StateBlock<double> line4;
};

// Flux along one axis once the stencil decision is known: CAT2p with p >= 2,
// else FL-CAT2 (psi from the 4-point line), else low order.
struct AxisFlux {
  int selected = 0;
  int used = 0;
  std::vector<double> psi;
};

}  // namespace

void Solver2D::step(Grid2D& grid, double dt, StepInfo2D* info, bool want_psi) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("step: dt must be positive");
  check_grid(grid);
  grid.fill_ghosts();
  const int nx = grid.nx();
  const int ny = grid.ny();
  const int m = model_->components();
  const int P = spec_.max_p;
  const int W = 2 * std::max(P, 2);
  const double dx = grid.dx();
  const double dy = grid.dy();
  const auto& data = grid.data();
  const FluxModel<double>& model = *model_;

  StateBlock<double> fx(m, static_cast<long>(nx + 1) * ny);
  StateBlock<double> gy(m, static_cast<long>(nx) * (ny + 1));
  auto fx_col = [&](int i, int j) { return (i + 1) + (nx + 1) * j; };  // interface i+1/2
  auto gy_col = [&](int i, int j) { return i + nx * (j + 1); };        // interface j+1/2
  if (info) {
    info->selected_x = Eigen::MatrixXi::Zero(nx + 1, ny);
    info->selected_y = Eigen::MatrixXi::Zero(nx, ny + 1);
    info->used_x = Eigen::MatrixXi::Zero(nx + 1, ny);
    info->used_y = Eigen::MatrixXi::Zero(nx, ny + 1);
    info->psi_x.assign(want_psi ? P : 0, Matrix<double>::Zero(nx + 1, ny));
    info->psi_y.assign(want_psi ? P : 0, Matrix<double>::Zero(nx, ny + 1));
  }

  auto gather_block = [&](Worker& w, int i, int j, int p) {
    const int n = 2 * p;
    w.block.resize(m, n * n);
    for (int j2 = 0; j2 < n; ++j2)
      for (int j1 = 0; j1 < n; ++j1)
        w.block.col(j1 + n * j2) = data.col(grid.index(i - p + 1 + j1, j - p + 1 + j2));
  };
  auto gather_y = [&](StateBlock<double>& out, int i, int j, int count) {
    // nodes (i, j - count/2 + 1 .. j + count/2)
    out.resize(m, count);
    for (int r = 0; r < count; ++r) out.col(r) = data.col(grid.index(i, j - count / 2 + 1 + r));
  };

  // Second and third rungs of the ladder for one interface.
  auto fallback = [&](Worker& w, int i, int j, Axis axis, State& out, AxisFlux& a) {
    if (spec_.kind != SchemeKind::first_order) {
      w.quad.resize(m, 4);
      w.quad.col(0) = data.col(grid.index(i, j));
      w.quad.col(1) = data.col(grid.index(i + 1, j));
      w.quad.col(2) = data.col(grid.index(i, j + 1));
      w.quad.col(3) = data.col(grid.index(i + 1, j + 1));
      if (axis == Axis::x)
        w.line4 = data.middleCols(grid.index(i - 1, j), 4);
      else
        gather_y(w.line4, i, j, 4);
      double psi = 1.0;
      double row[4];
      for (int comp = 0; comp < m; ++comp) {
        for (int r = 0; r < 4; ++r) row[r] = w.line4(comp, r);
        psi = std::min(psi, limiter_psi1<double>(std::span<const double>(row, 4), spec_.indicators));
      }
      if (a.psi.empty()) a.psi.assign(1, psi);
      State high(m);
      if (try_cat2_flux_2d(model, w.quad, dx, dy, dt, axis, high) == 0) {
        a.used = 1;
        if (psi >= 1.0) {
          out = high;
          return;
        }
        const State ul = w.line4.col(1);
        const State ur = w.line4.col(2);
        const State lo = low_order_flux(spec_.low_order, ul, ur, model,
                                        axis == Axis::x ? dx : dy, dt, axis);
        out = psi <= 0.0 ? lo : State(psi * high + (1.0 - psi) * lo);
        return;
      }
    }
    const State ul = data.col(grid.index(i, j));
    const State ur = axis == Axis::x ? State(data.col(grid.index(i + 1, j)))
                                     : State(data.col(grid.index(i, j + 1)));
    a.used = 0;
    out = low_order_flux(spec_.low_order, ul, ur, model, axis == Axis::x ? dx : dy, dt, axis);
  };

  auto decide = [&](Worker& w, int i, int j, Axis axis, AxisFlux& a) {
    a.psi.clear();
    switch (spec_.kind) {
      case SchemeKind::cat_fixed: a.selected = P; return;
      case SchemeKind::flcat2:
      case SchemeKind::first_order: a.selected = 0; return;
      case SchemeKind::acat: break;
      case SchemeKind::lat: throw InvalidArgument("solver: LAT is one-dimensional only");
    }
    SmoothnessReport r;
    if (axis == Axis::x) {
      r = select_stencil(P, data.middleCols(grid.index(i - W / 2 + 1, j), W), spec_.indicators);
    } else {
      gather_y(w.window, i, j, W);
      r = select_stencil(P, w.window, spec_.indicators);
    }
    a.selected = r.selected_p;
    a.psi = std::move(r.psi);
  };

  auto fail = [&](int i, int j, Axis axis, int level) {
    throw StepFailure("CAT" + std::to_string(2 * P) + " 2D flux: inadmissible Taylor state at " +
                          std::string(axis == Axis::x ? "x" : "y") + "-interface of cell (" +
                          std::to_string(i) + "," + std::to_string(j) + "), level " +
                          std::to_string(level),
                      static_cast<long>(i) + static_cast<long>(j) * (nx + 1), level);
  };

  auto record = [&](int i, int j, Axis axis, const AxisFlux& a) {
    if (!info) return;
    if (axis == Axis::x) {
      info->selected_x(i + 1, j) = a.selected;
      info->used_x(i + 1, j) = a.used;
      for (std::size_t p = 0; p < info->psi_x.size() && p < a.psi.size(); ++p)
        info->psi_x[p](i + 1, j) = a.psi[p];
    } else {
      info->selected_y(i, j + 1) = a.selected;
      info->used_y(i, j + 1) = a.used;
      for (std::size_t p = 0; p < info->psi_y.size() && p < a.psi.size(); ++p)
        info->psi_y[p](i, j + 1) = a.psi[p];
    }
  };

  auto rows = [&](int begin, int end) {
    Worker w;
    AxisFlux ax, ay;
    State F(m), G(m);
    for (int j = begin; j < end; ++j) {
      for (int i = -1; i < nx; ++i) {
        const bool do_x = j >= 0;
        const bool do_y = i >= 0;
        if (do_x) decide(w, i, j, Axis::x, ax);
        if (do_y) decide(w, i, j, Axis::y, ay);
        bool done_x = !do_x;
        bool done_y = !do_y;
        if (do_x && do_y && ax.selected >= 2 && ax.selected == ay.selected) {
          gather_block(w, i, j, ax.selected);
          if (try_cat_flux_2d(model, w.block, ax.selected, dx, dy, dt, true, true, w.scratch, F,
                              G) == 0) {
            ax.used = ay.used = ax.selected;
            done_x = done_y = true;
          }
        }
        if (!done_x) {
          int level = -1;
          if (ax.selected >= 2) {
            gather_block(w, i, j, ax.selected);
            level = try_cat_flux_2d(model, w.block, ax.selected, dx, dy, dt, true, false,
                                    w.scratch, F, G);
            if (level == 0) ax.used = ax.selected;
          }
          if (level != 0) {
            if (spec_.kind == SchemeKind::cat_fixed) fail(i, j, Axis::x, level);
            fallback(w, i, j, Axis::x, F, ax);
          }
        }
        if (!done_y) {
          int level = -1;
          if (ay.selected >= 2) {
            gather_block(w, i, j, ay.selected);
            level = try_cat_flux_2d(model, w.block, ay.selected, dx, dy, dt, false, true,
                                    w.scratch, F, G);
            if (level == 0) ay.used = ay.selected;
          }
          if (level != 0) {
            if (spec_.kind == SchemeKind::cat_fixed) fail(i, j, Axis::y, level);
            fallback(w, i, j, Axis::y, G, ay);
          }
        }
        if (do_x) {
          fx.col(fx_col(i, j)) = F;
          record(i, j, Axis::x, ax);
        }
        if (do_y) {
          gy.col(gy_col(i, j)) = G;
          record(i, j, Axis::y, ay);
        }
      }
    }
  };
  // Anchor rows j = -1 .. ny-1.
  detail::parallel_for(-1, ny, spec_.threads, rows);

  const double cx = dt / dx;
  const double cy = dt / dy;
  auto& out = grid.data();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const State xterm = cx * (fx.col(fx_col(i - 1, j)) - fx.col(fx_col(i, j)));
      const State yterm = cy * (gy.col(gy_col(i, j - 1)) - gy.col(gy_col(i, j)));
      out.col(grid.index(i, j)) += xterm + yterm;
    }
  }
  grid.time += dt;
  grid.fill_ghosts();
}

RunSummary2D run_2d(Grid2D& grid, const Solver2D& solver, const RunOptions2D& options) {
  if (!(options.t_final >= grid.time)) throw InvalidArgument("run: final time precedes the start");
  if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
  const auto start = std::chrono::steady_clock::now();
  const int P = solver.spec().max_p;
  RunSummary2D summary;
  grid.fill_ghosts();
  long step = 0;
  while (grid.time < options.t_final) {
    if (step >= options.max_steps) throw NumericalFailure("run: step limit reached");
    double dt = solver.stable_dt(grid, options.cfl);
    bool last = false;
    if (grid.time + dt >= options.t_final) {
      dt = options.t_final - grid.time;
      last = true;
    }
    solver.step(grid, dt, &summary.last, options.record_psi);
    if (last) grid.time = options.t_final;
    ++step;

    StepDiagnostics2D d;
    d.step = step;
    d.t = grid.time;
    d.dt = dt;
    d.min = Vector<double>::Constant(grid.components(), std::numeric_limits<double>::infinity());
    d.max = -d.min;
    bool finite = true;
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) {
        const auto u = grid.cell(i, j);
        finite = finite && u.allFinite();
        d.min = d.min.cwiseMin(u);
        d.max = d.max.cwiseMax(u);
      }
    }
    if (!finite) throw NumericalFailure("run: non-finite state at t = " + std::to_string(grid.time));
    d.histogram_x.assign(P + 1, 0);
    d.histogram_y.assign(P + 1, 0);
    for (Eigen::Index k = 0; k < summary.last.selected_x.size(); ++k)
      d.histogram_x[std::clamp(summary.last.selected_x.data()[k], 0, P)] += 1;
    for (Eigen::Index k = 0; k < summary.last.selected_y.size(); ++k)
      d.histogram_y[std::clamp(summary.last.selected_y.data()[k], 0, P)] += 1;
    if (options.observer) options.observer(grid, summary.last, d);
    summary.steps.push_back(std::move(d));
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace acat
