#include "tempint/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "tempint/coeff_io.hpp"
#include "tempint/errors.hpp"
#include "tempint/parallel.hpp"

namespace tempint {

namespace {

std::string full(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string valid_tags() {
  std::string out;
  for (const auto& info : list_models()) {
    if (!out.empty()) out += ",";
    out += info.tag;
  }
  return out;
}

}  // namespace

Model Model::from_id(ModelId id, const std::filesystem::path& coeff_dir) {
  const auto tag = std::string(tag_of(id));
  int bundled = 0;
  switch (id) {
    case ModelId::G1: bundled = 1; break;
    case ModelId::G2: bundled = 2; break;
    case ModelId::G3: bundled = 3; break;
    case ModelId::G4: bundled = 4; break;
    default: break;
  }
  if (bundled != 0) {
    auto approximant = bundled_approximant(bundled, coeff_dir.empty() ? default_coeff_dir() : coeff_dir);
    return from_approximant(tag, std::move(approximant));
  }
  Model model{tag, [id](EvalPoint p) { return eval_model(id, p); }, [id](double m) { return model_admits(id, m); },
              std::nullopt, false};
  if (id == ModelId::X) {
    const auto lines = x_model_m_values();
    model.m_lines = std::vector<double>(lines.begin(), lines.end());
  }
  return model;
}

Model Model::from_approximant(std::string label, RationalApproximant approximant) {
  return Model{std::move(label), [r = std::move(approximant)](EvalPoint p) { return r.eval_g(p); },
               [](double m) { return std::isfinite(m); }, std::nullopt, false};
}

Model Model::oracle(OracleConfig cfg) {
  cfg.validate();
  return Model{"oracle", [cfg](EvalPoint p) { return g_cf(p, cfg); }, [](double m) { return std::isfinite(m); },
               std::nullopt, true};
}

std::vector<Model> parse_model_list(std::string_view text, const GridSpec& grid, const std::filesystem::path& coeff_dir) {
  std::vector<Model> out;
  if (text == "all") {
    const auto ms = grid.m.values();
    for (const auto& info : list_models()) {
      const bool covers = std::all_of(ms.begin(), ms.end(), [&](double m) { return model_admits(info.id, m); });
      const bool partial = info.id == ModelId::X &&
                           std::any_of(ms.begin(), ms.end(), [&](double m) { return model_admits(info.id, m); });
      if (covers || partial) out.push_back(Model::from_id(info.id, coeff_dir));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto tag = text.substr(pos, end - pos);
    pos = end + 1;
    if (tag.empty()) continue;
    const auto id = parse_model_id(tag);
    if (!id) throw DomainError(fmt::format("unknown model tag '{}'; valid tags: {},SY88", tag, valid_tags()));
    out.push_back(Model::from_id(*id, coeff_dir));
  }
  if (out.empty()) throw DomainError("model list is empty");
  return out;
}

double deviation(const Model& model, EvalPoint point, const OracleConfig& cfg) {
  if (!model.admits(point.m)) {
    throw DomainError(fmt::format("model {} is not defined at m={}", model.label, point.m));
  }
  return model.g(point) / g_cf(point, cfg) - 1.0;
}

OracleTable OracleTable::build(const GridSpec& spec, const OracleConfig& cfg) {
  spec.validate();
  OracleTable table{spec.points(), {}};
  table.g.resize(table.points.size());
  parallel_for(table.points.size(), [&](std::size_t k) { table.g[k] = g_cf(table.points[k], cfg); });
  return table;
}

DeviationReport report(const Model& model, const EvalGrid& grid, const OracleTable& oracle) {
  DeviationReport r;
  r.model = model.label;
  r.grid = grid.name;
  r.restricted = model.m_lines.has_value();

  std::vector<std::size_t> selected;
  selected.reserve(oracle.points.size());
  for (std::size_t k = 0; k < oracle.points.size(); ++k) {
    const double m = oracle.points[k].m;
    if (model.admits(m)) {
      selected.push_back(k);
    } else if (!r.restricted) {
      throw DomainError(fmt::format("model {} is not defined at m={} on grid {}", model.label, m, grid.name));
    }
  }
  if (selected.empty()) {
    throw DomainError(fmt::format("model {} is not defined anywhere on grid {}", model.label, grid.name));
  }

  const std::size_t n = selected.size();
  r.points.resize(n);
  r.g_oracle.resize(n);
  r.g_model.resize(n);
  r.eps.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const std::size_t k = selected[i];
    r.points[i] = oracle.points[k];
    r.g_oracle[i] = oracle.g[k];
    r.g_model[i] = model.g(oracle.points[k]);
    r.eps[i] = r.g_model[i] / r.g_oracle[i] - 1.0;
  });
  // Fixed-order reduction keeps the aggregates independent of threading.
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::abs(r.eps[i]);
    if (!std::isfinite(e)) {
      throw DomainError(fmt::format("model {} produced a non-finite value at (m={}, x={})", model.label,
                                    r.points[i].m, r.points[i].x));
    }
    r.sse += r.eps[i] * r.eps[i];
    if (e > r.eps_max_abs) {
      r.eps_max_abs = e;
      r.argmax = r.points[i];
    }
  }
  if (r.eps_max_abs == 0.0) r.argmax = r.points.front();
  return r;
}

DeviationReport report(const Model& model, const EvalGrid& grid, const OracleConfig& cfg) {
  return report(model, grid, OracleTable::build(grid.spec, cfg));
}

Comparison compare(const std::vector<Model>& models, const EvalGrid& grid, const OracleConfig& cfg) {
  if (models.empty()) throw DomainError("comparison needs at least one model");
  const auto oracle = OracleTable::build(grid.spec, cfg);
  Comparison c{grid.name, {}};
  for (const auto& model : models) c.rows.push_back(report(model, grid, oracle));
  std::stable_sort(c.rows.begin(), c.rows.end(),
                   [](const DeviationReport& a, const DeviationReport& b) { return a.eps_max_abs < b.eps_max_abs; });
  return c;
}

std::string render_text(const Comparison& c) {
  std::string out = fmt::format("grid: {}\n{:<8} {:>7} {:>10} {:>10} {:>7} {:>7}\n", c.grid, "model", "points", "SSE",
                                "|eps|max", "arg_m", "arg_x");
  bool footnote = false;
  for (const auto& r : c.rows) {
    const std::string label = r.restricted ? r.model + "*" : r.model;
    footnote = footnote || r.restricted;
    out += fmt::format("{:<8} {:>7} {:>10.2E} {:>10.2E} {:>7.3g} {:>7.4g}\n", label, r.points.size(), r.sse,
                       r.eps_max_abs, r.argmax.m, r.argmax.x);
  }
  if (footnote) out += "* evaluated only on the tabulated m values of the model\n";
  return out;
}

std::string render_csv(const Comparison& c) {
  std::string out = "model,grid,points,sse,eps_max,arg_m,arg_x\n";
  for (const auto& r : c.rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.model, r.grid, r.points.size(), full(r.sse), full(r.eps_max_abs),
                       full(r.argmax.m), full(r.argmax.x));
  }
  return out;
}

std::string render_points_csv(const DeviationReport& r) {
  std::string out = "model,m,x,g_oracle,g_model,eps\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    out += fmt::format("{},{},{},{},{},{}\n", r.model, full(r.points[i].m), full(r.points[i].x), full(r.g_oracle[i]),
                       full(r.g_model[i]), full(r.eps[i]));
  }
  return out;
}

double vyazovkin_segment(double e_over_r, double t_lo, double t_hi, const Model& model) {
  if (!(e_over_r > 0.0) || !(t_lo > 0.0) || !(t_hi >= t_lo) || !std::isfinite(e_over_r) || !std::isfinite(t_hi)) {
    throw DomainError(fmt::format("segment needs E/R > 0 and 0 < T_lo <= T_hi (got E/R={}, T_lo={}, T_hi={})",
                                  e_over_r, t_lo, t_hi));
  }
  if (t_lo == t_hi) return 0.0;
  const double x_lo_t = e_over_r / t_hi;  // smaller x at the higher temperature
  const double x_hi_t = e_over_r / t_lo;
  if (!model.exact && (x_lo_t < 4.0 || x_hi_t > 100.0)) {
    throw DomainError(fmt::format("x range [{}, {}] leaves the approximation domain [4, 100]; use the oracle model",
                                  x_lo_t, x_hi_t));
  }
  return e_over_r * (model.g({0.0, x_lo_t}) - model.g({0.0, x_hi_t}));
}

}  // namespace tempint
