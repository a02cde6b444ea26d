#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tempint/eval_point.hpp"

namespace tempint {

/// Published approximations to g(m, x) plus the four bundled approximants.
enum class ModelId {
  J, O, SY, G, W1, W2, C1, C2, C3, Ch1, Ch2, Ch3, Ch4, Cp, X, Cs, L,
  G1, G2, G3, G4,
  SY88,  // Senum-Yang with the misquoted 88 x^2 coefficient; demonstration only
};

struct ModelInfo {
  ModelId id;
  std::string_view tag;
  std::string_view citation;
  /// Human-readable m-domain, e.g. "m = 0" or "any m".
  std::string_view m_domain;
  bool univariate;
  /// Unlisted tags (SY88) are accepted by name but omitted from list_models.
  bool listed;
};

const ModelInfo& model_info(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view tag);
std::string_view tag_of(ModelId id);

/// Whether the model is defined at this m.
bool model_admits(ModelId id, double m);

/// The m values of the X model's coefficient table.
std::span<const double> x_model_m_values();

/// Listed models whose domain contains `m` (or all listed models), in
/// declaration order.
std::vector<ModelInfo> list_models(std::optional<double> m = std::nullopt);

/// Approximation to g(m, x). G1..G4 read the bundled coefficient files.
/// Throws DomainError when m lies outside the model's domain and PoleError if
/// a denominator vanishes.
double eval_model(ModelId id, EvalPoint point);

}  // namespace tempint
