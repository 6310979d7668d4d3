#pragma once

// Problem presets, run configuration, reference solutions, error norms,
// convergence studies and CSV output.

#include "acat/acat1d.hpp"
#include "acat/acat2d.hpp"
#include "acat/riemann.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acat {

struct RunConfig {
  std::string preset = "transport_sine";
  std::string scheme = "acat";
  int max_p = 3;
  std::string low_order = "rusanov";
  int cells = 160;
  int cells_y = 0;  // 2D; 0 means the same as cells
  double cfl = 0.9;
  double t_final = 4.0;
  std::string bc;  // empty: the preset's own condition
  std::string out_dir;
  bool dump_psi = false;
  int history_every = 0;  // write the solution every N steps (0: never)
  int threads = 1;
  double gamma = kDefaultGamma;
  std::string limiter = "superbee";
  double eps_scale = 1e-14;
  double threshold = 0.5;
  bool modified_p2 = false;
  int lat_order = 0;

  /// Applies one key=value pair; unknown keys throw.
  void set(const std::string& key, const std::string& value);
  std::string serialize() const;
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& file);

  void validate() const;
  SchemeSpec scheme_spec() const;
  int dims() const;

  bool operator==(const RunConfig&) const = default;
};

std::vector<std::string> preset_names();
/// Paper defaults for a named problem. Throws InvalidArgument on unknown names.
RunConfig preset(const std::string& name);

enum class ReferenceKind { exact_transport, exact_riemann, fine_mesh, none };

/// Everything about a preset that is not a tunable run parameter.
struct Problem {
  std::string name;
  int dims = 1;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  Boundary bc = Boundary::outflow;
  double node_offset = 0.5;
  double speed_x = 0.0, speed_y = 0.0;  // transport speeds
  std::function<double(double, double)> profile;  // scalar initial data (transport, Burgers)
  std::optional<EulerState> left, right;          // 1D Riemann data, jump at x = 1/2
  std::array<EulerState, 4> quadrants{};           // 2D Riemann data, quadrant 1..4
  ReferenceKind reference = ReferenceKind::none;
  int reference_cells = 0;                         // fine-mesh references
  std::string reference_scheme = "lo";
  std::string model_name;

  ModelPtr<double> model(double gamma) const;
  /// Initial state at (x, y).
  State initial(const FluxModel<double>& model, double x, double y = 0.0) const;
};

Problem problem(const std::string& preset_name);

/// u0(x - a t, y - b t), wrapped into [x0, x1) x [y0, y1) when periodic.
double exact_transport(const std::function<double(double, double)>& u0, double a, double b,
                       double x, double y, double t, std::optional<std::pair<double, double>> period_x,
                       std::optional<std::pair<double, double>> period_y = std::nullopt);

Grid1D make_grid_1d(const RunConfig& cfg, const Problem& prob, const FluxModel<double>& model);
Grid2D make_grid_2d(const RunConfig& cfg, const Problem& prob, const FluxModel<double>& model);

struct Result1D {
  RunConfig config;
  Grid1D grid;
  RunSummary summary;
  StepInfo last;  // interface record of the final step
};

struct Result2D {
  RunConfig config;
  Grid2D grid;
  RunSummary2D summary;
};

Result1D run_1d(const RunConfig& cfg, RunOptions options = {});
Result2D run_2d(const RunConfig& cfg, RunOptions2D options = {});

/// Reference values of the compared component at every interior node.
Vector<double> reference_1d(const RunConfig& cfg, const Grid1D& grid);
Matrix<double> reference_2d(const RunConfig& cfg, const Grid2D& grid);

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

/// L1 = sum |e| * cell size, Linf = max |e|.
ErrorNorms error_norms(const Eigen::Ref<const Vector<double>>& numeric,
                       const Eigen::Ref<const Vector<double>>& reference, double cell_size);

struct ErrorEntry {
  int cells = 0;
  double dx = 0.0;
  ErrorNorms error;
  double seconds = 0.0;
  double order_l1 = 0.0;    // against the previous entry; 0 for the first
  double order_linf = 0.0;
  bool has_order = false;
};

struct ErrorReport {
  std::string label;
  std::vector<ErrorEntry> entries;
  /// Least-squares slope of log(L1) against log(dx) over all meshes.
  double fitted_order_l1() const;
};

ErrorReport convergence_study(const RunConfig& cfg, const std::vector<int>& meshes);

struct TimingRow {
  std::string label;
  double seconds = 0.0;
  double ratio = 0.0;  // relative to the first row
};

std::vector<TimingRow> timing_table(const std::vector<RunConfig>& configs, int repeats = 1);

/// Label such as "ACAT4" for a configuration.
std::string scheme_label(const RunConfig& cfg);

// Output. Every file has a one-line header and 17 significant digits.
void write_solution_csv(const std::filesystem::path& file, const Grid1D& grid,
                        const FluxModel<double>& model);
void write_diagnostics_csv(const std::filesystem::path& file, const FluxModel<double>& model,
                           const RunSummary& summary, int max_p);
void write_psi_csv(const std::filesystem::path& file, const Grid1D& grid,
                   const std::vector<SmoothnessReport>& reports);
void write_field_csv(const std::filesystem::path& file, const Grid2D& grid,
                     const FluxModel<double>& model);
void write_psi2d_csv(const std::filesystem::path& file, const Grid2D& grid,
                     const std::vector<Matrix<double>>& psi, Axis axis);
void write_diagnostics2d_csv(const std::filesystem::path& file, const FluxModel<double>& model,
                             const RunSummary2D& summary, int max_p);
/// Values along the diagonal y = x (requires a square mesh).
void write_diagonal_cut_csv(const std::filesystem::path& file, const Grid2D& grid,
                            const FluxModel<double>& model);
void write_convergence_csv(const std::filesystem::path& file, const ErrorReport& report);
/// Whitespace-separated data plus a gnuplot script plotting column 2.
void write_gnuplot(const std::filesystem::path& dir, const std::string& stem,
                   const std::vector<std::string>& columns, const Matrix<double>& rows);

std::string format_double(double v);

}  // namespace acat
