// Command-line front end: run, convergence, coeffs, bench.

#include "acat/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace acat;

namespace {

struct SchemeFlags {
  std::string config_file;
  std::string preset;
  std::string scheme;
  int P = 0;
  std::string low_order;
  int cells = 0;
  int cells_y = 0;
  double cfl = 0.0;
  double t_final = -1.0;
  std::string bc;
  int threads = 0;
  double gamma = 0.0;
  std::string limiter;
  double eps_scale = 0.0;
  double threshold = 0.0;
  bool modified_p2 = false;
  int lat_order = -1;
  bool own_cells = false;

  void add(CLI::App& app, bool with_cells) {
    own_cells = with_cells;
    app.add_option("--config", config_file, "key=value configuration file");
    app.add_option("--preset", preset, "problem preset")
        ->check(CLI::IsMember(preset_names()));
    app.add_option("--scheme", scheme, "acat | cat | flcat2 | lo | lat")
        ->check(CLI::IsMember({"acat", "cat", "flcat2", "lo", "lat"}));
    app.add_option("--P", P, "maximum stencil half-width (order 2P)");
    app.add_option("--low-order", low_order, "rusanov | lax_friedrichs | hll")
        ->check(CLI::IsMember({"rusanov", "lax_friedrichs", "hll"}));
    if (with_cells) app.add_option("--cells", cells, "cells per axis");
    app.add_option("--cells-y", cells_y, "cells along y (2D)");
    app.add_option("--cfl", cfl, "CFL number in (0, 1]");
    app.add_option("--tfinal", t_final, "final time");
    app.add_option("--bc", bc, "periodic | outflow")->check(CLI::IsMember({"periodic", "outflow"}));
    app.add_option("--threads", threads, "worker threads for the flux loops");
    app.add_option("--gamma", gamma, "ratio of specific heats");
    app.add_option("--limiter", limiter, "superbee | minmod")
        ->check(CLI::IsMember({"superbee", "minmod"}));
    app.add_option("--eps-scale", eps_scale, "indicator regularisation scale");
    app.add_option("--threshold", threshold, "stencil admissibility threshold");
    app.add_flag("--modified-p2", modified_p2, "use the modified p = 2 indicator");
    app.add_option("--lat-order", lat_order, "time order m of the LAT scheme");
  }

  RunConfig resolve(const CLI::App& app) const {
    RunConfig cfg;
    if (!config_file.empty()) cfg = RunConfig::load(config_file);
    if (app.count("--preset")) {
      const RunConfig base = acat::preset(preset);
      if (config_file.empty() || cfg.preset != preset) cfg = base;
    }
    if (app.count("--scheme")) cfg.scheme = scheme;
    if (app.count("--P")) cfg.max_p = P;
    if (app.count("--low-order")) cfg.low_order = low_order;
    if (own_cells && app.count("--cells")) cfg.cells = cells;
    if (app.count("--cells-y")) cfg.cells_y = cells_y;
    if (app.count("--cfl")) cfg.cfl = cfl;
    if (app.count("--tfinal")) cfg.t_final = t_final;
    if (app.count("--bc")) cfg.bc = bc;
    if (app.count("--threads")) cfg.threads = threads;
    if (app.count("--gamma")) cfg.gamma = gamma;
    if (app.count("--limiter")) cfg.limiter = limiter;
    if (app.count("--eps-scale")) cfg.eps_scale = eps_scale;
    if (app.count("--threshold")) cfg.threshold = threshold;
    if (modified_p2) cfg.modified_p2 = true;
    if (app.count("--lat-order")) cfg.lat_order = lat_order;
    return cfg;
  }
};

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse '" + item + "' as an integer");
    }
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

void print_error_line(const std::string& kind, const std::string& message) {
  std::string flat = message;
  for (char& c : flat)
    if (c == '\n') c = ' ';
  std::cerr << "error kind=" << kind << " message=\"" << flat << "\"\n";
}

void solution_gnuplot(const fs::path& dir, const Grid1D& grid, const FluxModel<double>& model) {
  std::vector<std::string> cols{"x"};
  for (const auto& n : model.component_names()) cols.push_back(n);
  Matrix<double> rows(grid.cells(), cols.size());
  for (int i = 0; i < grid.cells(); ++i) {
    rows(i, 0) = grid.x(i);
    for (int c = 0; c < grid.components(); ++c) rows(i, c + 1) = grid.cell(i)[c];
  }
  write_gnuplot(dir, "solution", cols, rows);
}

int cmd_run(const CLI::App& app, const SchemeFlags& flags, const std::string& out_dir,
            bool psi, int history, bool gnuplot, const std::string& cut) {
  RunConfig cfg = flags.resolve(app);
  if (app.count("--out")) cfg.out_dir = out_dir;
  if (cfg.out_dir.empty()) cfg.out_dir = "out";
  if (psi) cfg.dump_psi = true;
  if (app.count("--history")) cfg.history_every = history;
  cfg.validate();
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  {
    std::ofstream conf(dir / "config.txt");
    conf << cfg.serialize();
  }
  const Problem prob = problem(cfg.preset);
  const ModelPtr<double> model = prob.model(cfg.gamma);

  if (prob.dims == 1) {
    RunOptions opts;
    std::ofstream hist;
    if (cfg.history_every > 0) {
      hist.open(dir / "history.csv");
      hist << "step,t,x";
      for (const auto& n : model->component_names()) hist << ',' << n;
      hist << '\n';
      opts.observer = [&](const Grid1D& g, const StepInfo&, const StepDiagnostics& d) {
        if (d.step % cfg.history_every != 0) return;
        for (int i = 0; i < g.cells(); ++i) {
          hist << d.step << ',' << format_double(d.t) << ',' << format_double(g.x(i));
          for (int c = 0; c < g.components(); ++c) hist << ',' << format_double(g.cell(i)[c]);
          hist << '\n';
        }
      };
    }
    const Result1D r = run_1d(cfg, opts);
    write_solution_csv(dir / "solution.csv", r.grid, *model);
    write_diagnostics_csv(dir / "diagnostics.csv", *model, r.summary, cfg.max_p);
    if (cfg.dump_psi) {
      const Solver1D solver(model, cfg.scheme_spec());
      write_psi_csv(dir / "psi.csv", r.grid, solver.indicators(r.grid));
    }
    if (gnuplot) solution_gnuplot(dir, r.grid, *model);
    std::printf("preset=%s scheme=%s cells=%d steps=%zu t=%.17g wall=%.3fs\n", cfg.preset.c_str(),
                scheme_label(cfg).c_str(), cfg.cells, r.summary.steps.size(), r.grid.time,
                r.summary.wall_seconds);
    if (prob.reference == ReferenceKind::exact_transport ||
        prob.reference == ReferenceKind::exact_riemann) {
      const Vector<double> ref = reference_1d(cfg, r.grid);
      const ErrorNorms e = error_norms(r.grid.interior().row(0).transpose(), ref, r.grid.dx());
      std::printf("error %s: L1=%.6e Linf=%.6e\n", model->component_names()[0].c_str(), e.l1,
                  e.linf);
    }
  } else {
    if (!cut.empty() && cut != "y=x") throw InvalidArgument("--cut supports only y=x");
    const Result2D r = run_2d(cfg);
    write_field_csv(dir / "field.csv", r.grid, *model);
    write_diagnostics2d_csv(dir / "diagnostics.csv", *model, r.summary, cfg.max_p);
    if (cfg.dump_psi) {
      write_psi2d_csv(dir / "psi_x.csv", r.grid, r.summary.last.psi_x, Axis::x);
      write_psi2d_csv(dir / "psi_y.csv", r.grid, r.summary.last.psi_y, Axis::y);
    }
    if (!cut.empty()) write_diagonal_cut_csv(dir / "cut.csv", r.grid, *model);
    if (gnuplot) {
      std::vector<std::string> cols{"s"};
      for (const auto& n : model->component_names()) cols.push_back(n);
      const int n = std::min(r.grid.nx(), r.grid.ny());
      Matrix<double> rows(n, cols.size());
      for (int i = 0; i < n; ++i) {
        rows(i, 0) = std::hypot(r.grid.x(i) - r.grid.x0(), r.grid.y(i) - r.grid.y0());
        for (int c = 0; c < r.grid.components(); ++c) rows(i, c + 1) = r.grid.cell(i, i)[c];
      }
      write_gnuplot(dir, "cut", cols, rows);
    }
    std::printf("preset=%s scheme=%s cells=%dx%d steps=%zu t=%.17g wall=%.3fs\n",
                cfg.preset.c_str(), scheme_label(cfg).c_str(), r.grid.nx(), r.grid.ny(),
                r.summary.steps.size(), r.grid.time, r.summary.wall_seconds);
  }
  std::printf("output: %s\n", dir.string().c_str());
  return 0;
}

int cmd_convergence(const CLI::App& app, const SchemeFlags& flags, const std::string& meshes,
                    const std::string& out_dir, bool gnuplot) {
  RunConfig cfg = flags.resolve(app);
  cfg.validate();
  const ErrorReport rep = convergence_study(cfg, parse_list(meshes));
  std::printf("%-8s %8s %24s %24s %8s %8s %9s\n", "scheme", "cells", "L1", "Linf", "p(L1)",
              "p(Linf)", "seconds");
  for (const ErrorEntry& e : rep.entries) {
    std::printf("%-8s %8d %24.17g %24.17g ", rep.label.c_str(), e.cells, e.error.l1, e.error.linf);
    if (e.has_order)
      std::printf("%8.3f %8.3f", e.order_l1, e.order_linf);
    else
      std::printf("%8s %8s", "-", "-");
    std::printf(" %9.3f\n", e.seconds);
  }
  std::printf("fitted L1 order: %.3f\n", rep.fitted_order_l1());
  if (!out_dir.empty()) {
    write_convergence_csv(fs::path(out_dir) / "convergence.csv", rep);
    if (gnuplot) {
      Matrix<double> rows(rep.entries.size(), 3);
      for (std::size_t k = 0; k < rep.entries.size(); ++k)
        rows.row(k) << rep.entries[k].dx, rep.entries[k].error.l1, rep.entries[k].error.linf;
      write_gnuplot(out_dir, "convergence", {"dx", "L1", "Linf"}, rows);
    }
  }
  return 0;
}

int cmd_coeffs(int p, int k, const std::string& q) {
  DiffFormula f = q.empty() ? centered_coeffs(p, k) : interpolatory_coeffs(p, k, parse_rational(q));
  if (!q.empty()) {
    const Rational twice = 2 * f.eval_offset;
    const bool half = f.eval_offset == Rational(1, 2);
    const bool node = denominator(twice) == 1 && numerator(twice) % 2 == 0 &&
                      f.eval_offset >= -p + 1 && f.eval_offset <= p;
    if (!half && !node)
      throw InvalidArgument("q must be 1/2 or an integer in [-p+1, p]");
  }
  std::printf("%s p=%d k=%d%s%s\n", q.empty() ? "centered" : "interpolatory", p, k,
              q.empty() ? "" : " q=", q.empty() ? "" : to_string(f.eval_offset).c_str());
  std::printf("%6s %16s %26s\n", "offset", "exact", "decimal");
  for (int j = 0; j < f.size(); ++j)
    std::printf("%6d %16s %26.17g\n", f.first_offset() + j, to_string(f.exact[j]).c_str(),
                f.coeffs[j]);
  return 0;
}

int cmd_bench(const CLI::App& app, const SchemeFlags& flags, const std::string& orders,
              int repeats) {
  RunConfig base = flags.resolve(app);
  if (!app.count("--preset") && flags.config_file.empty()) base = acat::preset("blast_right");
  std::vector<RunConfig> configs;
  for (const int order : parse_list(orders)) {
    if (order < 2 || order % 2 != 0) throw InvalidArgument("bench: orders must be even and >= 2");
    RunConfig c = base;
    c.scheme = order == 2 ? "flcat2" : "acat";
    c.max_p = order / 2;
    c.validate();
    configs.push_back(c);
  }
  const auto rows = timing_table(configs, repeats);
  std::printf("CPU time rates (%s, %d cells)\n", base.preset.c_str(), base.cells);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::printf("%-8s %10.4fs %8.2f\n", rows[k].label.c_str(), rows[k].seconds, rows[k].ratio);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive compact approximate Taylor solvers for conservation laws"};
  app.require_subcommand(1);

  SchemeFlags run_flags, conv_flags, bench_flags;
  std::string run_out, conv_out, cut, meshes = "40,80,160,320", orders = "2,4,6";
  bool psi = false, run_gnuplot = false, conv_gnuplot = false;
  int history = 0, repeats = 1;

  CLI::App* run = app.add_subcommand("run", "run one preset and write CSV output");
  run_flags.add(*run, true);
  run->add_option("--out", run_out, "output directory (default: out)");
  run->add_flag("--psi", psi, "dump smoothness indicators");
  run->add_option("--history", history, "write the solution every N steps");
  run->add_flag("--gnuplot", run_gnuplot, "also write .dat and .gp files");
  run->add_option("--cut", cut, "2D: extract a cut (y=x)");

  CLI::App* conv = app.add_subcommand("convergence", "errors and observed orders on a mesh list");
  conv_flags.add(*conv, false);
  conv->add_option("--cells", meshes, "comma-separated mesh sizes");
  conv->add_option("--out", conv_out, "directory for convergence.csv");
  conv->add_flag("--gnuplot", conv_gnuplot, "also write .dat and .gp files");

  int cp = 1, ck = 0;
  std::string cq;
  CLI::App* coeffs = app.add_subcommand("coeffs", "print finite-difference weights");
  coeffs->add_option("--p", cp, "half-width")->required();
  coeffs->add_option("--k", ck, "derivative order")->required();
  coeffs->add_option("--q", cq, "evaluation offset (interpolatory formulas), e.g. 1/2");

  CLI::App* bench = app.add_subcommand("bench", "CPU-time ratios relative to ACAT2");
  bench_flags.add(*bench, true);
  bench->add_option("--orders", orders, "comma-separated orders 2P");
  bench->add_option("--repeats", repeats, "runs per scheme (minimum is kept)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) print_error_line("usage", e.what());
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(*run, run_flags, run_out, psi, history, run_gnuplot, cut);
    if (*conv) return cmd_convergence(*conv, conv_flags, meshes, conv_out, conv_gnuplot);
    if (*coeffs) return cmd_coeffs(cp, ck, cq);
    if (*bench) return cmd_bench(*bench, bench_flags, orders, repeats);
  } catch (const Error& e) {
    print_error_line(e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error_line("internal", e.what());
    return 3;
  }
  return 1;
}
