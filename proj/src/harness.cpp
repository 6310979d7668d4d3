#include "acat/harness.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace acat {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw InvalidArgument("config: '" + key + "' expects a number, got '" + value + "'");
  return out;
}

int to_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw InvalidArgument("config: '" + key + "' expects an integer, got '" + value + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw InvalidArgument("config: '" + key + "' expects true or false, got '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Limiter parse_limiter(const std::string& name) {
  if (name == "superbee") return Limiter::superbee;
  if (name == "minmod") return Limiter::minmod;
  throw InvalidArgument("unknown limiter '" + name + "'");
}

std::ofstream open_csv(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw Error("io_error", "cannot write " + file.string());
  return out;
}

// Fine-mesh reference sampled by linear interpolation at the coarse nodes.
Vector<double> interpolate(const Grid1D& fine, int component, const Grid1D& coarse) {
  Vector<double> out(coarse.cells());
  const int nf = fine.cells();
  for (int i = 0; i < coarse.cells(); ++i) {
    const double s = (coarse.x(i) - fine.x0()) / fine.dx() - fine.node_offset();
    int k = static_cast<int>(std::floor(s));
    const double w = s - k;
    auto value = [&](int idx) {
      if (fine.boundary() == Boundary::periodic)
        idx = ((idx % nf) + nf) % nf;
      else
        idx = std::clamp(idx, 0, nf - 1);
      return fine.cell(idx)[component];
    };
    out[i] = (1.0 - w) * value(k) + w * value(k + 1);
  }
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "preset") preset = value;
  else if (key == "scheme") scheme = value;
  else if (key == "P") max_p = to_int(key, value);
  else if (key == "low_order") low_order = value;
  else if (key == "cells") cells = to_int(key, value);
  else if (key == "cells_y") cells_y = to_int(key, value);
  else if (key == "cfl") cfl = to_double(key, value);
  else if (key == "t_final") t_final = to_double(key, value);
  else if (key == "bc") bc = value;
  else if (key == "out_dir") out_dir = value;
  else if (key == "dump_psi") dump_psi = to_bool(key, value);
  else if (key == "history_every") history_every = to_int(key, value);
  else if (key == "threads") threads = to_int(key, value);
  else if (key == "gamma") gamma = to_double(key, value);
  else if (key == "limiter") limiter = value;
  else if (key == "eps_scale") eps_scale = to_double(key, value);
  else if (key == "threshold") threshold = to_double(key, value);
  else if (key == "modified_p2") modified_p2 = to_bool(key, value);
  else if (key == "lat_order") lat_order = to_int(key, value);
  else throw InvalidArgument("config: unknown key '" + key + "'");
}

std::string RunConfig::serialize() const {
  std::ostringstream s;
  s << "preset=" << preset << "\n"
    << "scheme=" << scheme << "\n"
    << "P=" << max_p << "\n"
    << "low_order=" << low_order << "\n"
    << "cells=" << cells << "\n"
    << "cells_y=" << cells_y << "\n"
    << "cfl=" << format_double(cfl) << "\n"
    << "t_final=" << format_double(t_final) << "\n"
    << "bc=" << bc << "\n"
    << "out_dir=" << out_dir << "\n"
    << "dump_psi=" << (dump_psi ? "true" : "false") << "\n"
    << "history_every=" << history_every << "\n"
    << "threads=" << threads << "\n"
    << "gamma=" << format_double(gamma) << "\n"
    << "limiter=" << limiter << "\n"
    << "eps_scale=" << format_double(eps_scale) << "\n"
    << "threshold=" << format_double(threshold) << "\n"
    << "modified_p2=" << (modified_p2 ? "true" : "false") << "\n"
    << "lat_order=" << lat_order << "\n";
  return s.str();
}

RunConfig RunConfig::parse(const std::string& text) {
  // A preset line resets defaults first, wherever it appears.
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(number) + ": expected key=value");
    pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  RunConfig cfg;
  for (const auto& [k, v] : pairs)
    if (k == "preset") cfg = acat::preset(v);
  for (const auto& [k, v] : pairs) cfg.set(k, v);
  return cfg;
}

RunConfig RunConfig::load(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("io_error", "cannot read " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

int RunConfig::dims() const { return problem(preset).dims; }

SchemeSpec RunConfig::scheme_spec() const {
  SchemeSpec s;
  s.kind = parse_scheme(scheme);
  s.max_p = max_p;
  s.low_order = parse_low_order(low_order);
  s.indicators.limiter = parse_limiter(limiter);
  s.indicators.eps_scale = eps_scale;
  s.indicators.select_threshold = threshold;
  s.indicators.use_modified_p2 = modified_p2;
  s.lat_order = lat_order;
  s.threads = threads;
  return s;
}

void RunConfig::validate() const {
  const Problem prob = problem(preset);
  const SchemeSpec spec = scheme_spec();
  spec.validate();
  if (cells < 2 * spec.halo()) throw InvalidArgument("config: too few cells for the stencil");
  if (cells_y != 0 && cells_y < 2 * spec.halo())
    throw InvalidArgument("config: too few cells_y for the stencil");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("config: cfl must lie in (0, 1]");
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw InvalidArgument("config: t_final must be non-negative");
  if (!bc.empty()) parse_boundary(bc);
  if (history_every < 0) throw InvalidArgument("config: history_every must be non-negative");
  if (!(gamma > 1.0)) throw InvalidArgument("config: gamma must exceed 1");
  if (prob.dims == 2 && spec.kind == SchemeKind::lat)
    throw InvalidArgument("config: LAT is available in 1D only");
}

double exact_transport(const std::function<double(double, double)>& u0, double a, double b,
                       double x, double y, double t,
                       std::optional<std::pair<double, double>> period_x,
                       std::optional<std::pair<double, double>> period_y) {
  auto wrap = [](double v, const std::optional<std::pair<double, double>>& range) {
    if (!range) return v;
    const double len = range->second - range->first;
    double r = std::fmod(v - range->first, len);
    if (r < 0.0) r += len;
    return range->first + r;
  };
  return u0(wrap(x - a * t, period_x), wrap(y - b * t, period_y));
}

Grid1D make_grid_1d(const RunConfig& cfg, const Problem& prob, const FluxModel<double>& model) {
  const Boundary bc = cfg.bc.empty() ? prob.bc : parse_boundary(cfg.bc);
  Grid1D grid(cfg.cells, prob.x0, prob.x1, model.components(), cfg.scheme_spec().halo(), bc,
              prob.node_offset);
  for (int i = 0; i < grid.cells(); ++i) {
    const State u = prob.initial(model, grid.x(i));
    require_admissible(model, u, i);
    grid.cell(i) = u;
  }
  grid.fill_ghosts();
  return grid;
}

Grid2D make_grid_2d(const RunConfig& cfg, const Problem& prob, const FluxModel<double>& model) {
  const Boundary bc = cfg.bc.empty() ? prob.bc : parse_boundary(cfg.bc);
  const int ny = cfg.cells_y > 0 ? cfg.cells_y : cfg.cells;
  Grid2D grid(cfg.cells, ny, prob.x0, prob.x1, prob.y0, prob.y1, model.components(),
              cfg.scheme_spec().halo(), bc, bc, prob.node_offset);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const State u = prob.initial(model, grid.x(i), grid.y(j));
      require_admissible(model, u, i, j);
      grid.cell(i, j) = u;
    }
  }
  grid.fill_ghosts();
  return grid;
}

Result1D run_1d(const RunConfig& cfg, RunOptions options) {
  cfg.validate();
  const Problem prob = problem(cfg.preset);
  if (prob.dims != 1) throw InvalidArgument("run_1d: preset '" + cfg.preset + "' is 2D");
  const ModelPtr<double> model = prob.model(cfg.gamma);
  Result1D result{cfg, make_grid_1d(cfg, prob, *model), {}, {}};
  const Solver1D solver(model, cfg.scheme_spec());
  options.t_final = cfg.t_final;
  options.cfl = cfg.cfl;
  options.record_psi = options.record_psi || cfg.dump_psi;
  auto user = options.observer;
  options.observer = [&](const Grid1D& g, const StepInfo& info, const StepDiagnostics& d) {
    result.last = info;
    if (user) user(g, info, d);
  };
  result.summary = run(result.grid, solver, options);
  return result;
}

Result2D run_2d(const RunConfig& cfg, RunOptions2D options) {
  cfg.validate();
  const Problem prob = problem(cfg.preset);
  if (prob.dims != 2) throw InvalidArgument("run_2d: preset '" + cfg.preset + "' is 1D");
  const ModelPtr<double> model = prob.model(cfg.gamma);
  Result2D result{cfg, make_grid_2d(cfg, prob, *model), {}};
  const Solver2D solver(model, cfg.scheme_spec());
  options.t_final = cfg.t_final;
  options.cfl = cfg.cfl;
  options.record_psi = options.record_psi || cfg.dump_psi;
  result.summary = acat::run_2d(result.grid, solver, options);
  return result;
}

Vector<double> reference_1d(const RunConfig& cfg, const Grid1D& grid) {
  const Problem prob = problem(cfg.preset);
  Vector<double> ref(grid.cells());
  const double t = grid.time;
  switch (prob.reference) {
    case ReferenceKind::exact_transport: {
      std::optional<std::pair<double, double>> period;
      if (grid.boundary() == Boundary::periodic) period = std::make_pair(prob.x0, prob.x1);
      for (int i = 0; i < grid.cells(); ++i)
        ref[i] = exact_transport(prob.profile, prob.speed_x, 0.0, grid.x(i), 0.0, t, period);
      return ref;
    }
    case ReferenceKind::exact_riemann: {
      EulerState left = *prob.left, right = *prob.right;
      left.gamma = right.gamma = cfg.gamma;
      const ExactRiemannSolver rs(left, right);
      for (int i = 0; i < grid.cells(); ++i) {
        const double dx0 = grid.x(i) - 0.5;
        ref[i] = t > 0.0 ? rs.sample(dx0 / t).rho : (dx0 < 0.0 ? left.rho : right.rho);
      }
      return ref;
    }
    case ReferenceKind::fine_mesh: {
      RunConfig fine = cfg;
      const auto colon = prob.reference_scheme.find(':');
      fine.scheme = prob.reference_scheme.substr(0, colon);
      if (colon != std::string::npos) fine.low_order = prob.reference_scheme.substr(colon + 1);
      fine.cells = prob.reference_cells;
      fine.t_final = t;
      fine.dump_psi = false;
      fine.out_dir.clear();
      const Result1D r = run_1d(fine);
      return interpolate(r.grid, 0, grid);
    }
    case ReferenceKind::none: break;
  }
  throw InvalidArgument("preset '" + cfg.preset + "' has no reference solution");
}

Matrix<double> reference_2d(const RunConfig& cfg, const Grid2D& grid) {
  const Problem prob = problem(cfg.preset);
  if (prob.reference != ReferenceKind::exact_transport)
    throw InvalidArgument("preset '" + cfg.preset + "' has no reference solution");
  std::optional<std::pair<double, double>> px, py;
  if (grid.boundary(Axis::x) == Boundary::periodic) px = std::make_pair(prob.x0, prob.x1);
  if (grid.boundary(Axis::y) == Boundary::periodic) py = std::make_pair(prob.y0, prob.y1);
  Matrix<double> ref(grid.nx(), grid.ny());
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      ref(i, j) = exact_transport(prob.profile, prob.speed_x, prob.speed_y, grid.x(i), grid.y(j),
                                  grid.time, px, py);
  return ref;
}

ErrorNorms error_norms(const Eigen::Ref<const Vector<double>>& numeric,
                       const Eigen::Ref<const Vector<double>>& reference, double cell_size) {
  if (numeric.size() != reference.size())
    throw InvalidArgument("error_norms: size mismatch");
  if (!(cell_size > 0.0)) throw InvalidArgument("error_norms: cell size must be positive");
  const Vector<double> e = (numeric - reference).cwiseAbs();
  return {e.sum() * cell_size, e.size() ? e.maxCoeff() : 0.0};
}

double ErrorReport::fitted_order_l1() const {
  if (entries.size() < 2) return 0.0;
  Eigen::MatrixXd A(entries.size(), 2);
  Eigen::VectorXd b(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    A(k, 0) = std::log(entries[k].dx);
    A(k, 1) = 1.0;
    b[k] = std::log(entries[k].error.l1);
  }
  return A.colPivHouseholderQr().solve(b)[0];
}

std::string scheme_label(const RunConfig& cfg) {
  switch (parse_scheme(cfg.scheme)) {
    case SchemeKind::acat: return "ACAT" + std::to_string(2 * cfg.max_p);
    case SchemeKind::cat_fixed: return "CAT" + std::to_string(2 * cfg.max_p);
    case SchemeKind::flcat2: return "ACAT2";  // the FL-CAT2 scheme
    case SchemeKind::first_order: return "LO-" + cfg.low_order;
    case SchemeKind::lat:
      return "LAT" + std::to_string(cfg.lat_order > 0 ? cfg.lat_order : 2 * cfg.max_p);
  }
  return cfg.scheme;
}

ErrorReport convergence_study(const RunConfig& cfg, const std::vector<int>& meshes) {
  if (meshes.empty()) throw InvalidArgument("convergence: empty mesh list");
  ErrorReport report;
  report.label = scheme_label(cfg);
  for (const int n : meshes) {
    RunConfig c = cfg;
    c.cells = n;
    if (c.cells_y > 0) c.cells_y = n;
    ErrorEntry e;
    e.cells = n;
    if (c.dims() == 1) {
      const Result1D r = run_1d(c);
      const Vector<double> ref = reference_1d(c, r.grid);
      e.dx = r.grid.dx();
      e.error = error_norms(r.grid.interior().row(0).transpose(), ref, r.grid.dx());
      e.seconds = r.summary.wall_seconds;
    } else {
      const Result2D r = run_2d(c);
      const Matrix<double> ref = reference_2d(c, r.grid);
      const Matrix<double> num = r.grid.component(0);
      e.dx = r.grid.dx();
      e.error = error_norms(num.reshaped(), ref.reshaped(), r.grid.dx() * r.grid.dy());
      e.seconds = r.summary.wall_seconds;
    }
    if (!report.entries.empty() && n == 2 * report.entries.back().cells) {
      const ErrorEntry& prev = report.entries.back();
      e.order_l1 = std::log2(prev.error.l1 / e.error.l1);
      e.order_linf = std::log2(prev.error.linf / e.error.linf);
      e.has_order = true;
    }
    report.entries.push_back(e);
  }
  return report;
}

std::vector<TimingRow> timing_table(const std::vector<RunConfig>& configs, int repeats) {
  if (repeats < 1) throw InvalidArgument("timing_table: repeats must be positive");
  std::vector<TimingRow> rows;
  for (const RunConfig& c : configs) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
      const double s = c.dims() == 1 ? run_1d(c).summary.wall_seconds : run_2d(c).summary.wall_seconds;
      best = std::min(best, s);
    }
    rows.push_back({scheme_label(c), best, 0.0});
  }
  for (auto& row : rows) row.ratio = rows.front().seconds > 0.0 ? row.seconds / rows.front().seconds : 0.0;
  return rows;
}

void write_solution_csv(const fs::path& file, const Grid1D& grid, const FluxModel<double>& model) {
  auto out = open_csv(file);
  const auto names = model.component_names();
  const auto* euler = dynamic_cast<const Euler<double>*>(&model);
  out << "x";
  for (const auto& n : names) out << ',' << n;
  if (euler) out << ",velocity,pressure";
  out << '\n';
  for (int i = 0; i < grid.cells(); ++i) {
    const State u = grid.cell(i);
    out << format_double(grid.x(i));
    for (int c = 0; c < u.size(); ++c) out << ',' << format_double(u[c]);
    if (euler)
      out << ',' << format_double(euler->velocity(Axis::x, u)) << ','
          << format_double(euler->pressure(u));
    out << '\n';
  }
}

void write_diagnostics_csv(const fs::path& file, const FluxModel<double>& model,
                           const RunSummary& summary, int max_p) {
  auto out = open_csv(file);
  const auto names = model.component_names();
  out << "step,t,dt";
  for (const auto& n : names) out << ",min_" << n;
  for (const auto& n : names) out << ",max_" << n;
  out << ",fallback";
  for (int p = 2; p <= max_p; ++p) out << ",p" << p;
  out << ",cat_demotions,low_demotions\n";
  for (const StepDiagnostics& d : summary.steps) {
    out << d.step << ',' << format_double(d.t) << ',' << format_double(d.dt);
    for (int c = 0; c < d.min.size(); ++c) out << ',' << format_double(d.min[c]);
    for (int c = 0; c < d.max.size(); ++c) out << ',' << format_double(d.max[c]);
    out << ',' << (d.histogram.empty() ? 0 : d.histogram[0]);
    for (int p = 2; p <= max_p; ++p)
      out << ',' << (p < static_cast<int>(d.histogram.size()) ? d.histogram[p] : 0);
    out << ',' << d.cat_demotions << ',' << d.low_demotions << '\n';
  }
}

void write_psi_csv(const fs::path& file, const Grid1D& grid,
                   const std::vector<SmoothnessReport>& reports) {
  auto out = open_csv(file);
  const int P = reports.empty() ? 1 : static_cast<int>(reports.front().psi.size());
  out << "interface,x";
  for (int p = 1; p <= P; ++p) out << ",psi" << p;
  out << ",selected_p\n";
  for (std::size_t f = 0; f < reports.size(); ++f) {
    const int i = static_cast<int>(f) - 1;
    out << i << ',' << format_double(grid.x(i) + 0.5 * grid.dx());
    for (const double v : reports[f].psi) out << ',' << format_double(v);
    out << ',' << reports[f].selected_p << '\n';
  }
}

void write_field_csv(const fs::path& file, const Grid2D& grid, const FluxModel<double>& model) {
  auto out = open_csv(file);
  out << "x,y";
  for (const auto& n : model.component_names()) out << ',' << n;
  out << '\n';
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      out << format_double(grid.x(i)) << ',' << format_double(grid.y(j));
      const auto u = grid.cell(i, j);
      for (int c = 0; c < u.size(); ++c) out << ',' << format_double(u[c]);
      out << '\n';
    }
  }
}

void write_psi2d_csv(const fs::path& file, const Grid2D& grid,
                     const std::vector<Matrix<double>>& psi, Axis axis) {
  auto out = open_csv(file);
  out << "x,y";
  for (std::size_t p = 1; p <= psi.size(); ++p) out << ",psi" << p;
  out << '\n';
  if (psi.empty()) return;
  const Matrix<double>& first = psi.front();
  for (Eigen::Index j = 0; j < first.cols(); ++j) {
    for (Eigen::Index i = 0; i < first.rows(); ++i) {
      // Row i of psi_x is interface i-1/2; column j of psi_y is interface j-1/2.
      const double x = axis == Axis::x ? grid.x(int(i)) - 0.5 * grid.dx() : grid.x(int(i));
      const double y = axis == Axis::y ? grid.y(int(j)) - 0.5 * grid.dy() : grid.y(int(j));
      out << format_double(x) << ',' << format_double(y);
      for (const auto& m : psi) out << ',' << format_double(m(i, j));
      out << '\n';
    }
  }
}

void write_diagnostics2d_csv(const fs::path& file, const FluxModel<double>& model,
                             const RunSummary2D& summary, int max_p) {
  auto out = open_csv(file);
  const auto names = model.component_names();
  out << "step,t,dt";
  for (const auto& n : names) out << ",min_" << n;
  for (const auto& n : names) out << ",max_" << n;
  out << ",fallback_x";
  for (int p = 2; p <= max_p; ++p) out << ",p" << p << "_x";
  out << ",fallback_y";
  for (int p = 2; p <= max_p; ++p) out << ",p" << p << "_y";
  out << '\n';
  for (const StepDiagnostics2D& d : summary.steps) {
    out << d.step << ',' << format_double(d.t) << ',' << format_double(d.dt);
    for (int c = 0; c < d.min.size(); ++c) out << ',' << format_double(d.min[c]);
    for (int c = 0; c < d.max.size(); ++c) out << ',' << format_double(d.max[c]);
    for (const auto* h : {&d.histogram_x, &d.histogram_y}) {
      out << ',' << (h->empty() ? 0 : (*h)[0]);
      for (int p = 2; p <= max_p; ++p)
        out << ',' << (p < static_cast<int>(h->size()) ? (*h)[p] : 0);
    }
    out << '\n';
  }
}

void write_diagonal_cut_csv(const fs::path& file, const Grid2D& grid,
                            const FluxModel<double>& model) {
  if (grid.nx() != grid.ny()) throw InvalidArgument("cut y=x: mesh must be square");
  auto out = open_csv(file);
  out << "s,x,y";
  for (const auto& n : model.component_names()) out << ',' << n;
  out << '\n';
  for (int i = 0; i < grid.nx(); ++i) {
    const double x = grid.x(i), y = grid.y(i);
    out << format_double(std::hypot(x - grid.x0(), y - grid.y0())) << ',' << format_double(x)
        << ',' << format_double(y);
    const auto u = grid.cell(i, i);
    for (int c = 0; c < u.size(); ++c) out << ',' << format_double(u[c]);
    out << '\n';
  }
}

void write_convergence_csv(const fs::path& file, const ErrorReport& report) {
  auto out = open_csv(file);
  out << "scheme,cells,dx,l1,linf,order_l1,order_linf,seconds\n";
  for (const ErrorEntry& e : report.entries) {
    out << report.label << ',' << e.cells << ',' << format_double(e.dx) << ','
        << format_double(e.error.l1) << ',' << format_double(e.error.linf) << ',';
    if (e.has_order) out << format_double(e.order_l1) << ',' << format_double(e.order_linf);
    else out << ',';
    out << ',' << format_double(e.seconds) << '\n';
  }
}

void write_gnuplot(const fs::path& dir, const std::string& stem,
                   const std::vector<std::string>& columns, const Matrix<double>& rows) {
  fs::create_directories(dir);
  {
    std::ofstream dat(dir / (stem + ".dat"));
    if (!dat) throw Error("io_error", "cannot write " + (dir / (stem + ".dat")).string());
    dat << '#';
    for (const auto& c : columns) dat << ' ' << c;
    dat << '\n';
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      for (Eigen::Index c = 0; c < rows.cols(); ++c)
        dat << (c ? " " : "") << format_double(rows(r, c));
      dat << '\n';
    }
  }
  std::ofstream gp(dir / (stem + ".gp"));
  if (!gp) throw Error("io_error", "cannot write " + (dir / (stem + ".gp")).string());
  gp << "set xlabel '" << (columns.empty() ? "x" : columns[0]) << "'\n"
     << "set key outside\n"
     << "plot ";
  for (std::size_t c = 1; c < columns.size(); ++c)
    gp << (c > 1 ? ", \\\n     " : "") << "'" << stem << ".dat' using 1:" << c + 1
       << " with linespoints title '" << columns[c] << "'";
  gp << "\npause -1\n";
}

}  // namespace acat
