#include "acat/acat1d.hpp"

#include "detail/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace acat {

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::first_order: return "lo";
    case SchemeKind::flcat2: return "flcat2";
    case SchemeKind::acat: return "acat";
    case SchemeKind::cat_fixed: return "cat";
    case SchemeKind::lat: return "lat";
  }
  return "?";
}

std::string to_string(LowOrderFlux kind) {
  switch (kind) {
    case LowOrderFlux::rusanov: return "rusanov";
    case LowOrderFlux::lax_friedrichs: return "lax_friedrichs";
    case LowOrderFlux::hll: return "hll";
  }
  return "?";
}

std::string to_string(Boundary bc) { return bc == Boundary::periodic ? "periodic" : "outflow"; }

SchemeKind parse_scheme(const std::string& name) {
  if (name == "acat") return SchemeKind::acat;
  if (name == "cat") return SchemeKind::cat_fixed;
  if (name == "flcat2") return SchemeKind::flcat2;
  if (name == "lo" || name == "first_order") return SchemeKind::first_order;
  if (name == "lat") return SchemeKind::lat;
  throw InvalidArgument("unknown scheme '" + name + "'");
}

LowOrderFlux parse_low_order(const std::string& name) {
  if (name == "rusanov") return LowOrderFlux::rusanov;
  if (name == "lax_friedrichs" || name == "lf") return LowOrderFlux::lax_friedrichs;
  if (name == "hll") return LowOrderFlux::hll;
  throw InvalidArgument("unknown low-order flux '" + name + "'");
}

Boundary parse_boundary(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "outflow" || name == "free") return Boundary::outflow;
  throw InvalidArgument("unknown boundary condition '" + name + "'");
}

void SchemeSpec::validate() const {
  if (max_p < 1) throw InvalidArgument("scheme: P must be at least 1");
  if (max_p > kDefaultMaxHalfWidth)
    throw InvalidArgument("scheme: P above " + std::to_string(kDefaultMaxHalfWidth) +
                          " is not supported");
  if (kind == SchemeKind::acat && max_p < 2)
    throw InvalidArgument("scheme: acat requires P >= 2 (use flcat2 for P = 1)");
  if (lat_order < 0) throw InvalidArgument("scheme: LAT order must be non-negative");
  if (kind == SchemeKind::lat && lat_order > 2 * max_p + 1)
    throw InvalidArgument("scheme: LAT order exceeds 2P+1");
  if (threads < 1) throw InvalidArgument("scheme: thread count must be positive");
  indicators.validate();
}

int SchemeSpec::order() const {
  switch (kind) {
    case SchemeKind::first_order: return 1;
    case SchemeKind::flcat2: return 2;
    case SchemeKind::acat:
    case SchemeKind::cat_fixed: return 2 * max_p;
    case SchemeKind::lat: return std::min(lat_order > 0 ? lat_order : 2 * max_p, 2 * max_p);
  }
  return 1;
}

Grid1D::Grid1D(int cells, double x0, double x1, int components, int halo, Boundary bc,
               double node_offset)
    : cells_(cells), halo_(halo), x0_(x0), node_offset_(node_offset), bc_(bc) {
  if (cells < 2) throw InvalidArgument("grid: at least two cells are required");
  if (!(x1 > x0)) throw InvalidArgument("grid: domain must have positive length");
  if (halo < 1) throw InvalidArgument("grid: halo must be positive");
  if (bc == Boundary::periodic && halo > cells)
    throw InvalidArgument("grid: periodic halo wider than the mesh");
  if (components < 1 || components > kMaxComponents)
    throw InvalidArgument("grid: unsupported component count");
  dx_ = (x1 - x0) / cells;
  data_ = StateBlock<double>::Zero(components, cells + 2 * halo);
}

void Grid1D::fill_ghosts() {
  const int n = cells_;
  const int h = halo_;
  for (int g = 1; g <= h; ++g) {
    if (bc_ == Boundary::periodic) {
      data_.col(h - g) = data_.col(h + n - g);
      data_.col(h + n - 1 + g) = data_.col(h + g - 1);
    } else {
      data_.col(h - g) = data_.col(h);
      data_.col(h + n - 1 + g) = data_.col(h + n - 1);
    }
  }
}

Vector<double> Grid1D::integral() const {
  Vector<double> sum = Vector<double>::Zero(components());
  for (int i = 0; i < cells_; ++i) sum += data_.col(halo_ + i);
  return sum * dx_;
}

State low_order_flux(LowOrderFlux kind, const State& ul, const State& ur,
                     const FluxModel<double>& model, double dx, double dt, Axis axis) {
  require_admissible(model, ul);
  require_admissible(model, ur);
  const State fl = model.flux(axis, ul);
  const State fr = model.flux(axis, ur);
  if (ul == ur) return fl;
  switch (kind) {
    case LowOrderFlux::rusanov: {
      const double s = std::max(model.max_wave_speed(axis, ul), model.max_wave_speed(axis, ur));
      return 0.5 * (fl + fr) - 0.5 * s * (ur - ul);
    }
    case LowOrderFlux::lax_friedrichs:
      return 0.5 * (fl + fr) - 0.5 * (dx / dt) * (ur - ul);
    case LowOrderFlux::hll: {
      const auto [lmin, lmax] = model.wave_speed_range(axis, ul);
      const auto [rmin, rmax] = model.wave_speed_range(axis, ur);
      const double sl = std::min(lmin, rmin);
      const double sr = std::max(lmax, rmax);
      if (sl >= 0.0) return fl;
      if (sr <= 0.0) return fr;
      return (sr * fl - sl * fr + sl * sr * (ur - ul)) / (sr - sl);
    }
  }
  return fl;
}

namespace {

template <typename Derived>
double limiter_min(const Eigen::MatrixBase<Derived>& u4, const IndicatorConfig& cfg) {
  double psi = 1.0;
  double row[4];
  for (int c = 0; c < u4.rows(); ++c) {
    for (int j = 0; j < 4; ++j) row[j] = u4(c, j);
    psi = std::min(psi, limiter_psi1<double>(std::span<const double>(row, 4), cfg));
  }
  return psi;
}

template <typename Derived>
int flcat2_impl(const Eigen::MatrixBase<Derived>& u4, const FluxModel<double>& model, double dx,
                double dt, const IndicatorConfig& cfg, LowOrderFlux low, Axis axis, State& out,
                double& psi) {
  const State ul = u4.col(1);
  const State ur = u4.col(2);
  psi = limiter_min(u4, cfg);
  State high(model.components());
  const int level = try_cat2_flux_closed_form(model, axis, ul, ur, dx, dt, high);
  if (level != 0) {
    out = low_order_flux(low, ul, ur, model, dx, dt, axis);
    return level;
  }
  if (psi >= 1.0) {
    out = high;
    return 0;
  }
  const State lo = low_order_flux(low, ul, ur, model, dx, dt, axis);
  out = psi <= 0.0 ? lo : State(psi * high + (1.0 - psi) * lo);
  return 0;
}

template <typename Derived>
AdaptiveFlux acat_impl(const Eigen::MatrixBase<Derived>& window, const FluxModel<double>& model,
                       int max_p, double dx, double dt, const IndicatorConfig& cfg,
                       LowOrderFlux low, TaylorScratch<double>& scratch) {
  AdaptiveFlux result;
  result.report = select_stencil(max_p, window, cfg);
  const int half = static_cast<int>(window.cols()) / 2;
  result.flux.resize(model.components());
  if (const int p = result.report.selected_p; p >= 2) {
    if (try_cat_flux(model, Axis::x, window.middleCols(half - p, 2 * p), dx, dt, scratch,
                     result.flux) == 0) {
      result.path = FluxPath::cat;
      result.used_p = p;
      return result;
    }
  }
  double psi = 0.0;
  const int level =
      flcat2_impl(window.middleCols(half - 2, 4), model, dx, dt, cfg, low, Axis::x, result.flux, psi);
  result.path = level == 0 ? FluxPath::flcat2 : FluxPath::low_order;
  result.used_p = level == 0 ? 1 : 0;
  return result;
}

}  // namespace

int try_flcat2_flux(const StateBlock<double>& u4, const FluxModel<double>& model, double dx,
                    double dt, const IndicatorConfig& cfg, LowOrderFlux low, State& out,
                    double* psi1, Axis axis) {
  if (u4.cols() != 4 || u4.rows() != model.components())
    throw InvalidArgument("flcat2_flux: expected four states");
  double psi = 0.0;
  const int level = flcat2_impl(u4, model, dx, dt, cfg, low, axis, out, psi);
  if (psi1) *psi1 = psi;
  return level;
}

State flcat2_flux(const StateBlock<double>& u4, const FluxModel<double>& model, double dx,
                  double dt, const IndicatorConfig& cfg, LowOrderFlux low) {
  State out(model.components());
  try_flcat2_flux(u4, model, dx, dt, cfg, low, out);
  return out;
}

AdaptiveFlux acat_flux(const StateBlock<double>& window, const FluxModel<double>& model, int max_p,
                       double dx, double dt, const IndicatorConfig& cfg, LowOrderFlux low) {
  if (max_p < 2) throw InvalidArgument("acat_flux: P must be at least 2");
  if (window.cols() != 2 * max_p || window.rows() != model.components())
    throw InvalidArgument("acat_flux: window must hold 2P states");
  TaylorScratch<double> scratch;
  return acat_impl(window, model, max_p, dx, dt, cfg, low, scratch);
}

Solver1D::Solver1D(ModelPtr<double> model, SchemeSpec spec)
    : model_(std::move(model)), spec_(std::move(spec)) {
  if (!model_) throw InvalidArgument("solver: model is null");
  spec_.validate();
}

void Solver1D::check_grid(const Grid1D& grid) const {
  if (grid.components() != model_->components())
    throw InvalidArgument("solver: grid components do not match the model");
  if (grid.halo() < spec_.halo())
    throw InvalidArgument("solver: grid halo narrower than the scheme stencil");
}

double Solver1D::stable_dt(const Grid1D& grid, double cfl) const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
  double smax = 0.0;
  for (int i = 0; i < grid.cells(); ++i) {
    const State u = grid.cell(i);
    require_admissible(*model_, u, i);
    smax = std::max(smax, model_->max_wave_speed(Axis::x, u));
  }
  if (smax <= 0.0) return std::numeric_limits<double>::infinity();
  return cfl * grid.dx() / smax;
}

StateBlock<double> Solver1D::fluxes(const Grid1D& grid, double dt, StepInfo* info,
                                    bool want_psi) const {
  check_grid(grid);
  const int n = grid.cells();
  const int h = grid.halo();
  const int m = model_->components();
  const double dx = grid.dx();
  const auto& data = grid.data();
  const int P = spec_.max_p;
  const int window = 2 * std::max(P, 2);

  StateBlock<double> flux(m, n + 1);
  if (info) {
    info->selected_p.assign(n + 1, 0);
    info->used_p.assign(n + 1, 0);
    info->path.assign(n + 1, FluxPath::low_order);
    info->psi.assign(want_psi ? n + 1 : 0, {});
  }

  auto work = [&](int begin, int end) {
    TaylorScratch<double> scratch;
    State out(m);
    for (int f = begin; f < end; ++f) {
      const int node = f - 1 + h;  // column of node i for interface i+1/2
      switch (spec_.kind) {
        case SchemeKind::first_order:
          flux.col(f) = low_order_flux(spec_.low_order, data.col(node), data.col(node + 1), *model_,
                                       dx, dt);
          if (info) info->used_p[f] = 0;
          break;
        case SchemeKind::flcat2: {
          double psi = 0.0;
          const int level = flcat2_impl(data.middleCols(node - 1, 4), *model_, dx, dt,
                                        spec_.indicators, spec_.low_order, Axis::x, out, psi);
          flux.col(f) = out;
          if (info) {
            info->path[f] = level == 0 ? FluxPath::flcat2 : FluxPath::low_order;
            info->used_p[f] = level == 0 ? 1 : 0;
            if (want_psi) info->psi[f] = {psi};
          }
          break;
        }
        case SchemeKind::cat_fixed: {
          const int level =
              try_cat_flux(*model_, Axis::x, data.middleCols(node - P + 1, 2 * P), dx, dt, scratch, out);
          if (level != 0)
            throw StepFailure("CAT" + std::to_string(2 * P) +
                                  " flux: inadmissible Taylor state at interface " +
                                  std::to_string(f - 1) + "+1/2, level " + std::to_string(level),
                              f - 1, level);
          flux.col(f) = out;
          if (info) {
            info->path[f] = FluxPath::cat;
            info->used_p[f] = info->selected_p[f] = P;
          }
          break;
        }
        case SchemeKind::acat: {
          AdaptiveFlux a = acat_impl(data.middleCols(node - window / 2 + 1, window), *model_, P, dx,
                                     dt, spec_.indicators, spec_.low_order, scratch);
          flux.col(f) = a.flux;
          if (info) {
            info->selected_p[f] = a.report.selected_p;
            info->used_p[f] = a.used_p;
            info->path[f] = a.path;
            if (want_psi) info->psi[f] = std::move(a.report.psi);
          }
          break;
        }
        case SchemeKind::lat:
          throw InvalidArgument("solver: LAT is not in flux form");
      }
    }
  };
  detail::parallel_for(0, n + 1, spec_.threads, work);
  return flux;
}

std::vector<SmoothnessReport> Solver1D::indicators(const Grid1D& grid) const {
  check_grid(grid);
  const int n = grid.cells();
  const int h = grid.halo();
  const int P = spec_.max_p;
  const int window = 2 * std::max(P, 2);
  std::vector<SmoothnessReport> out(n + 1);
  for (int f = 0; f <= n; ++f) {
    const int node = f - 1 + h;
    SmoothnessReport r =
        select_stencil(std::max(P, 1), grid.data().middleCols(node - window / 2 + 1, window),
                       spec_.indicators);
    out[f] = std::move(r);
  }
  return out;
}

void Solver1D::step(Grid1D& grid, double dt, StepInfo* info, bool want_psi) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("step: dt must be positive");
  check_grid(grid);
  grid.fill_ghosts();
  const int n = grid.cells();
  const int h = grid.halo();

  if (spec_.kind == SchemeKind::lat) {
    const int order = spec_.lat_order > 0 ? spec_.lat_order : 2 * spec_.max_p;
    const StateBlock<double> next =
        lat_step<double>(grid.interior(), grid.boundary(), *model_, spec_.max_p, order, grid.dx(), dt);
    grid.interior() = next;
  } else {
    const StateBlock<double> flux = fluxes(grid, dt, info, want_psi);
    const double c = dt / grid.dx();
    auto& data = grid.data();
    for (int i = 0; i < n; ++i) data.col(h + i) += c * (flux.col(i) - flux.col(i + 1));
  }
  grid.time += dt;
  grid.fill_ghosts();
}

RunSummary run(Grid1D& grid, const Solver1D& solver, const RunOptions& options) {
  if (!(options.t_final >= grid.time)) throw InvalidArgument("run: final time precedes the start");
  if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  const int P = solver.spec().max_p;
  grid.fill_ghosts();
  StepInfo info;
  long step = 0;
  while (grid.time < options.t_final) {
    if (step >= options.max_steps) throw NumericalFailure("run: step limit reached");
    double dt = solver.stable_dt(grid, options.cfl);
    bool last = false;
    if (grid.time + dt >= options.t_final) {
      dt = options.t_final - grid.time;
      last = true;
    }
    solver.step(grid, dt, &info, options.record_psi);
    if (last) grid.time = options.t_final;
    ++step;

    StepDiagnostics d;
    d.step = step;
    d.t = grid.time;
    d.dt = dt;
    d.min = grid.interior().rowwise().minCoeff();
    d.max = grid.interior().rowwise().maxCoeff();
    d.histogram.assign(P + 1, 0);
    for (std::size_t f = 0; f < info.selected_p.size(); ++f) {
      d.histogram[std::clamp(info.selected_p[f], 0, P)] += 1;
      if (info.selected_p[f] >= 2 && info.path[f] != FluxPath::cat) ++d.cat_demotions;
      if (info.path[f] == FluxPath::low_order && solver.spec().kind != SchemeKind::first_order)
        ++d.low_demotions;
    }
    if (!grid.interior().allFinite())
      throw NumericalFailure("run: non-finite state at t = " + std::to_string(grid.time));
    if (options.observer) options.observer(grid, info, d);
    summary.steps.push_back(std::move(d));
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace acat
