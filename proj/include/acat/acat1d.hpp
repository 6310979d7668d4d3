#pragma once

// One-dimensional adaptive CAT solver: grid with ghost layers, robust
// first-order fluxes, FL-CAT2, the order-adaptive flux and time marching.

#include "acat/catcore.hpp"
#include "acat/models.hpp"
#include "acat/smooth.hpp"

#include <functional>
#include <string>
#include <vector>

namespace acat {

enum class SchemeKind { first_order, flcat2, acat, cat_fixed, lat };
enum class LowOrderFlux { rusanov, lax_friedrichs, hll };

std::string to_string(SchemeKind kind);
std::string to_string(LowOrderFlux kind);
std::string to_string(Boundary bc);
SchemeKind parse_scheme(const std::string& name);
LowOrderFlux parse_low_order(const std::string& name);
Boundary parse_boundary(const std::string& name);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::acat;
  int max_p = 2;  // P
  LowOrderFlux low_order = LowOrderFlux::rusanov;
  IndicatorConfig indicators;
  int lat_order = 0;  // LAT time order m; 0 means 2P
  int threads = 1;

  void validate() const;
  /// Ghost width needed by the flux stencils and the indicator windows.
  int halo() const { return std::max(max_p, 2); }
  /// Formal order of the scheme on smooth data.
  int order() const;
};

/// Uniform 1D mesh: column i + halo of `data` holds cell (node) i.
/// Positions are x_i = x0 + (i + node_offset) dx, so node_offset = 1/2 puts
/// values at cell centres and 0 at the left ends.
class Grid1D {
 public:
  Grid1D(int cells, double x0, double x1, int components, int halo, Boundary bc,
         double node_offset = 0.5);

  int cells() const { return cells_; }
  int halo() const { return halo_; }
  int components() const { return static_cast<int>(data_.rows()); }
  double dx() const { return dx_; }
  double x0() const { return x0_; }
  double x1() const { return x0_ + cells_ * dx_; }
  double node_offset() const { return node_offset_; }
  Boundary boundary() const { return bc_; }
  double x(int i) const { return x0_ + (i + node_offset_) * dx_; }

  double time = 0.0;

  StateBlock<double>& data() { return data_; }
  const StateBlock<double>& data() const { return data_; }
  auto interior() { return data_.middleCols(halo_, cells_); }
  auto interior() const { return data_.middleCols(halo_, cells_); }
  auto cell(int i) { return data_.col(i + halo_); }
  auto cell(int i) const { return data_.col(i + halo_); }

  void fill_ghosts();
  /// Sum of u dx over interior cells, per component.
  Vector<double> integral() const;

 private:
  int cells_;
  int halo_;
  double x0_;
  double dx_;
  double node_offset_;
  Boundary bc_;
  StateBlock<double> data_;
};

/// Robust first-order two-point flux. Throws StateError on inadmissible input.
State low_order_flux(LowOrderFlux kind, const State& ul, const State& ur,
                     const FluxModel<double>& model, double dx, double dt, Axis axis = Axis::x);

/// FL-CAT2 flux from the four states u_{i-1..i+2} (columns). psi1 receives the
/// componentwise minimum of the limiter when non-null. Returns 0 on success or
/// the CAT2 failure level, in which case `out` holds the low-order flux.
int try_flcat2_flux(const StateBlock<double>& u4, const FluxModel<double>& model, double dx,
                    double dt, const IndicatorConfig& cfg, LowOrderFlux low, State& out,
                    double* psi1 = nullptr, Axis axis = Axis::x);

State flcat2_flux(const StateBlock<double>& u4, const FluxModel<double>& model, double dx,
                  double dt, const IndicatorConfig& cfg, LowOrderFlux low = LowOrderFlux::rusanov);

/// Which rung of the fallback ladder produced an interface flux.
enum class FluxPath { cat, flcat2, low_order };

struct AdaptiveFlux {
  State flux;
  SmoothnessReport report;
  FluxPath path = FluxPath::flcat2;
  int used_p = 1;  // half-width of the flux actually used (0 for low order)
};

/// ACAT2P flux from 2*max(P,2) states centred at the interface.
AdaptiveFlux acat_flux(const StateBlock<double>& window, const FluxModel<double>& model, int max_p,
                       double dx, double dt, const IndicatorConfig& cfg,
                       LowOrderFlux low = LowOrderFlux::rusanov);

/// Per-step record of what every interface did.
struct StepInfo {
  std::vector<int> selected_p;  // per interface i+1/2, i = -1..n-1
  std::vector<int> used_p;
  std::vector<FluxPath> path;
  std::vector<std::vector<double>> psi;  // optional: [interface][p-1]
};

class Solver1D {
 public:
  Solver1D(ModelPtr<double> model, SchemeSpec spec);

  const SchemeSpec& spec() const { return spec_; }
  const FluxModel<double>& model() const { return *model_; }

  /// cfl * dx / max wave speed over the interior.
  double stable_dt(const Grid1D& grid, double cfl) const;

  /// Advances by dt (ghosts are refilled before and after). `info` is
  /// filled with per-interface data when non-null; psi values only when
  /// want_psi is set.
  void step(Grid1D& grid, double dt, StepInfo* info = nullptr, bool want_psi = false) const;

  /// Interface fluxes for the current grid (n+1 columns, interface i-1/2 at
  /// column i).
  StateBlock<double> fluxes(const Grid1D& grid, double dt, StepInfo* info = nullptr,
                            bool want_psi = false) const;

  /// psi^1..psi^P at every interface of the current grid.
  std::vector<SmoothnessReport> indicators(const Grid1D& grid) const;

 private:
  void check_grid(const Grid1D& grid) const;

  ModelPtr<double> model_;
  SchemeSpec spec_;
};

struct StepDiagnostics {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  Vector<double> min;
  Vector<double> max;
  std::vector<long> histogram;  // index 0: fallback, index p: p_s = p
  long cat_demotions = 0;       // CAT2p -> FL-CAT2
  long low_demotions = 0;       // FL-CAT2 -> low order
};

struct RunOptions {
  double t_final = 1.0;
  double cfl = 0.5;
  long max_steps = 10'000'000;
  bool record_psi = false;
  /// Called after every step with the grid and the interface record.
  std::function<void(const Grid1D&, const StepInfo&, const StepDiagnostics&)> observer;
};

struct RunSummary {
  std::vector<StepDiagnostics> steps;
  double wall_seconds = 0.0;
};

RunSummary run(Grid1D& grid, const Solver1D& solver, const RunOptions& options);

}  // namespace acat
