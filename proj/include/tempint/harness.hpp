#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tempint/grid.hpp"
#include "tempint/models.hpp"
#include "tempint/oracle.hpp"
#include "tempint/rational.hpp"

namespace tempint {

/// Anything that approximates g(m, x) over some set of m values.
struct Model {
  std::string label;
  std::function<double(EvalPoint)> g;
  std::function<bool(double)> admits;
  /// Set when the model is only defined on isolated m lines; reports then
  /// cover those lines only.
  std::optional<std::vector<double>> m_lines;
  /// True for the oracle; lifts the [4, 100] x restriction in vyazovkin_segment.
  bool exact{false};

  static Model from_id(ModelId id, const std::filesystem::path& coeff_dir = {});
  static Model from_approximant(std::string label, RationalApproximant approximant);
  /// The continued-fraction oracle itself.
  static Model oracle(OracleConfig cfg = {});
};

/// Parses "J,O,SY" or "all". `all` expands to the listed models that admit
/// every m of the grid, plus X (restricted to its tabulated lines).
/// Throws DomainError naming the valid tags on an unknown tag.
std::vector<Model> parse_model_list(std::string_view text, const GridSpec& grid,
                                    const std::filesystem::path& coeff_dir = {});

/// eps = g_model / g_oracle - 1.
double deviation(const Model& model, EvalPoint point, const OracleConfig& cfg = {});

/// Oracle g over a grid, shared between reports on the same grid.
struct OracleTable {
  std::vector<EvalPoint> points;
  std::vector<double> g;

  static OracleTable build(const GridSpec& spec, const OracleConfig& cfg = {});
};

struct DeviationReport {
  std::string model;
  std::string grid;
  bool restricted{false};
  std::vector<EvalPoint> points;
  std::vector<double> g_oracle;
  std::vector<double> g_model;
  std::vector<double> eps;
  double eps_max_abs{0.0};
  double sse{0.0};
  EvalPoint argmax{};
};

/// Per-point sweep. A grid point outside the model's domain is a DomainError,
/// except for line-restricted models, which only see their own m lines.
DeviationReport report(const Model& model, const EvalGrid& grid, const OracleTable& oracle);
DeviationReport report(const Model& model, const EvalGrid& grid, const OracleConfig& cfg = {});

struct Comparison {
  std::string grid;
  /// Sorted by eps_max_abs ascending.
  std::vector<DeviationReport> rows;
};

Comparison compare(const std::vector<Model>& models, const EvalGrid& grid, const OracleConfig& cfg = {});

/// Aligned table, three significant digits, restricted rows footnoted.
std::string render_text(const Comparison& c);
/// model,grid,points,sse,eps_max,arg_m,arg_x with round-trip precision.
std::string render_csv(const Comparison& c);
/// model,m,x,g_oracle,g_model,eps for every point.
std::string render_points_csv(const DeviationReport& r);

/// Integral of exp(-E/RT) dT from t_lo to t_hi, as
/// (E/R) [g(0, E/(R t_hi)) - g(0, E/(R t_lo))] with g from `model`.
/// Throws DomainError for non-positive or inverted temperatures, and for
/// x = E/RT outside [4, 100] unless the model is the oracle.
double vyazovkin_segment(double e_over_r, double t_lo, double t_hi, const Model& model);

}  // namespace tempint
