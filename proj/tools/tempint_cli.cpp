// tempint: command-line front end for the temperature-integral library.
//
// Exit codes: 0 success, 2 invalid input or domain error, 3 fit did not
// converge, 4 fit wrote a file but its denominator has a pole on the grid,
// 5 a reproduced table cell is out of tolerance, 1 anything else.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tempint/coeff_io.hpp"
#include "tempint/errors.hpp"
#include "tempint/fitter.hpp"
#include "tempint/grid.hpp"
#include "tempint/harness.hpp"
#include "tempint/models.hpp"
#include "tempint/oracle.hpp"
#include "tempint/reference_tables.hpp"

namespace fs = std::filesystem;
using namespace tempint;

namespace {

enum Exit : int { ok = 0, failure = 1, invalid = 2, no_convergence = 3, pole = 4, table_mismatch = 5 };

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("failed writing {}", path.string()));
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

void require_format(const std::string& format) {
  if (format != "text" && format != "csv") throw DomainError(fmt::format("unknown format '{}' (text or csv)", format));
}

OracleConfig oracle_config(double rel_tol) {
  OracleConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.validate();
  return cfg;
}

// ---- oracle

struct OracleArgs {
  double m{0.0};
  double x{0.0};
  int series_terms{0};
  double rel_tol{OracleConfig{}.rel_tol};
};

void run_oracle(const OracleArgs& a) {
  const EvalPoint p{a.m, a.x};
  require_valid_point(p);
  if (a.series_terms < 0) throw DomainError("--series-terms must be >= 0");
  const auto cfg = oracle_config(a.rel_tol);
  std::cout << fmt::format("m {:.17g}\nx {:.17g}\ng {:.17g}\nh {:.17g}\n", a.m, a.x, g_cf(p, cfg), h(p, cfg));
  if (a.series_terms > 0) {
    const double s0 = h_series(p, a.series_terms);
    const double s1 = h_series(p, a.series_terms + 1);
    std::cout << fmt::format("series_{} {:.17g}\nseries_{} {:.17g}\n", a.series_terms, s0, a.series_terms + 1, s1);
  }
}

// ---- fit

struct FitArgs {
  int degree{0};
  std::string grid{"paper-eval"};
  std::string mode{"absolute"};
  double tol{FitProblem{}.bisection_rel_tol};
  std::string out;
};

int run_fit(const FitArgs& a) {
  if (a.degree < 1 || a.degree > 6) throw DomainError(fmt::format("--degree must be in 1..6, got {}", a.degree));
  if (!(a.tol > 0.0) || !(a.tol < 1.0)) throw DomainError("--tol must lie in (0, 1)");
  FitProblem problem;
  problem.degree = a.degree;
  problem.weighting = parse_weighting(a.mode);
  problem.bisection_rel_tol = a.tol;
  const auto grid = parse_grid(a.grid);
  grid.spec.validate();
  const fs::path out = a.out.empty() ? fs::path(fmt::format("g{}.fit", a.degree)) : fs::path(a.out);
  if (out.has_parent_path() && !fs::is_directory(out.parent_path())) {
    throw DomainError(fmt::format("output directory {} does not exist", out.parent_path().string()));
  }

  problem.grid = FitGrid::build(grid.spec, problem.oracle);
  const auto result = bisect_fit(problem);
  const auto report = fit_report_text(result);
  write_file(out, to_coeff_text(result.approximant));
  fs::path sidecar = out;
  sidecar += ".report";
  write_file(sidecar, report);
  std::cout << report;

  if (!result.converged) {
    std::cerr << fmt::format("error: bisection did not converge after {} steps\n", result.iterations);
    return no_convergence;
  }
  if (result.pole_warning) {
    std::cerr << fmt::format("warning: denominator reaches {} on the 4x refined grid\n", result.denom_min());
    return pole;
  }
  return ok;
}

// ---- eval

struct EvalArgs {
  std::string model;
  std::string coeffs;
  std::optional<double> m;
  std::optional<double> x;
  std::string grid;
  std::string coeff_dir;
  std::string out;
};

Model eval_model_of(const EvalArgs& a) {
  if (!a.coeffs.empty()) return Model::from_approximant(fs::path(a.coeffs).filename().string(), load_coeffs(a.coeffs));
  const auto id = parse_model_id(a.model);
  if (!id) {
    std::string tags;
    for (const auto& info : list_models()) tags += (tags.empty() ? "" : ",") + std::string(info.tag);
    throw DomainError(fmt::format("unknown model tag '{}'; valid tags: {},SY88", a.model, tags));
  }
  return Model::from_id(*id, a.coeff_dir);
}

void run_eval(const EvalArgs& a) {
  if (a.model.empty() == a.coeffs.empty()) throw DomainError("give exactly one of --model or --coeffs");
  const bool at_point = a.m.has_value() || a.x.has_value();
  if (at_point == !a.grid.empty()) throw DomainError("give either -m and -x, or --grid");
  if (at_point && !(a.m && a.x)) throw DomainError("-m and -x must be given together");
  std::optional<EvalGrid> grid;
  if (!at_point) grid = parse_grid(a.grid);
  const auto model = eval_model_of(a);

  if (at_point) {
    const EvalPoint p{*a.m, *a.x};
    require_valid_point(p);
    const double exact = g_cf(p);
    const double approx = deviation(model, p) + 1.0;  // checks the model's m domain
    emit(a.out, fmt::format("model {}\nm {:.17g}\nx {:.17g}\ng_model {:.17g}\ng_oracle {:.17g}\neps {:.17g}\n",
                            model.label, p.m, p.x, approx * exact, exact, approx - 1.0));
    return;
  }
  emit(a.out, render_points_csv(report(model, *grid)));
}

// ---- compare

struct CompareArgs {
  std::string models{"all"};
  std::string grid{"paper-eval"};
  std::string format{"text"};
  std::string coeff_dir;
  std::string out;
};

void run_compare(const CompareArgs& a) {
  require_format(a.format);
  const auto grid = parse_grid(a.grid);
  grid.spec.validate();
  const auto models = parse_model_list(a.models, grid.spec, a.coeff_dir);
  const auto result = compare(models, grid);
  emit(a.out, a.format == "csv" ? render_csv(result) : render_text(result));
}

// ---- tables

struct TablesArgs {
  std::string format{"text"};
  std::string coeff_dir;
  std::string out_dir{"."};
};

int run_tables(const TablesArgs& a) {
  require_format(a.format);
  if (!a.coeff_dir.empty() && !fs::is_directory(a.coeff_dir)) {
    throw DomainError(fmt::format("coefficient directory {} does not exist", a.coeff_dir));
  }
  if (a.format == "csv" && !fs::is_directory(a.out_dir)) {
    throw DomainError(fmt::format("output directory {} does not exist", a.out_dir));
  }
  const auto run = run_reference_tables(a.coeff_dir);
  if (a.format == "csv") {
    for (const char* table : {"5", "7", "10"}) {
      const auto path = fs::path(a.out_dir) / fmt::format("table{}.csv", table);
      write_file(path, render_table_csv(run, table));
      std::cout << path.string() << '\n';
    }
  } else {
    std::cout << render_tables_text(run);
  }
  if (run.all_pass()) return ok;
  std::cerr << "cells out of tolerance:\n";
  for (const auto& c : run.cells) {
    if (c.pass) continue;
    std::cerr << fmt::format("  table {} {} {} {}: published {:.3E}, computed {:.3E}{}\n", c.table, c.model, c.grid,
                             c.metric, c.published, c.computed, c.note.empty() ? "" : " (" + c.note + ")");
  }
  return table_mismatch;
}

// ---- list

struct ListArgs {
  std::optional<double> m;
  std::string format{"text"};
};

void run_list(const ListArgs& a) {
  require_format(a.format);
  if (a.m && !std::isfinite(*a.m)) throw DomainError("-m must be finite");
  const auto models = list_models(a.m);
  std::string out;
  if (a.format == "csv") {
    out = "tag,citation,m_domain,univariate\n";
    for (const auto& info : models) {
      out += fmt::format("{},\"{}\",{},{}\n", info.tag, info.citation, info.m_domain, info.univariate);
    }
  } else {
    for (const auto& info : models) out += fmt::format("{:<5} {:<16} {}\n", info.tag, info.m_domain, info.citation);
  }
  std::cout << out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"General temperature integral: oracle, minimax fitting and model comparison"};
  app.require_subcommand(1);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Evaluate g(m, x) and h(m, x) to high precision");
  oracle->add_option("-m", oracle_args.m, "Exponent m")->required();
  oracle->add_option("-x", oracle_args.x, "Reduced activation energy x = E/RT")->required();
  oracle->add_option("--series-terms", oracle_args.series_terms, "Also print asymptotic partial sums k and k+1");
  oracle->add_option("--rel-tol", oracle_args.rel_tol, "Continued-fraction relative tolerance");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit a minimax rational approximant of degree n");
  fit->add_option("--degree", fit_args.degree, "Total degree n of numerator and denominator (1..6)")->required();
  fit->add_option("--grid", fit_args.grid, "Preset name or m=lo:hi:step,x=lo:hi:step");
  fit->add_option("--mode", fit_args.mode, "Deviation metric: absolute or relative");
  fit->add_option("--tol", fit_args.tol, "Relative width at which bisection stops");
  fit->add_option("--out", fit_args.out, "Coefficient file (default g<n>.fit); the report goes to <out>.report");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate one model at a point or over a grid");
  eval->add_option("--model", eval_args.model, "Model tag");
  eval->add_option("--coeffs", eval_args.coeffs, "Coefficient file instead of a model tag");
  eval->add_option("-m", eval_args.m, "Exponent m");
  eval->add_option("-x", eval_args.x, "Reduced activation energy x");
  eval->add_option("--grid", eval_args.grid, "Grid for a per-point CSV sweep");
  eval->add_option("--coeff-dir", eval_args.coeff_dir, "Directory with g1.coeff..g4.coeff");
  eval->add_option("--out", eval_args.out, "Output file (default standard output)");

  CompareArgs compare_args;
  auto* cmp = app.add_subcommand("compare", "Tabulate SSE and max |eps| of several models on a grid");
  cmp->add_option("--models", compare_args.models, "Comma-separated tags, or all");
  cmp->add_option("--grid", compare_args.grid, "Preset name or m=lo:hi:step,x=lo:hi:step");
  cmp->add_option("--format", compare_args.format, "text or csv");
  cmp->add_option("--coeff-dir", compare_args.coeff_dir, "Directory with g1.coeff..g4.coeff");
  cmp->add_option("--out", compare_args.out, "Output file (default standard output)");

  TablesArgs tables_args;
  auto* tables = app.add_subcommand("tables", "Recompute the reference accuracy tables and check every cell");
  tables->add_option("--format", tables_args.format, "text, or csv to write table5.csv, table7.csv, table10.csv");
  tables->add_option("--coeff-dir", tables_args.coeff_dir, "Directory with g1.coeff..g4.coeff");
  tables->add_option("--out-dir", tables_args.out_dir, "Directory for the CSV files");

  ListArgs list_args;
  auto* list = app.add_subcommand("list", "List the available models");
  list->add_option("-m", list_args.m, "Only models defined at this m");
  list->add_option("--format", list_args.format, "text or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid;
  }

  try {
    if (*oracle) run_oracle(oracle_args);
    if (*fit) return run_fit(fit_args);
    if (*eval) run_eval(eval_args);
    if (*cmp) run_compare(compare_args);
    if (*tables) return run_tables(tables_args);
    if (*list) run_list(list_args);
    return ok;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return invalid;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return invalid;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return *oracle ? invalid : no_convergence;
  } catch (const LpIterationLimit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return no_convergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
}
