#pragma once

#include "radonad/detectors.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace radonad {

inline constexpr int kModelSchemaVersion = 1;

/// What a model was fitted on.
enum class ModelUnit {
  series,     // whole training series; scores whole series
  window,     // sliding windows of context_length; scores windows / points
  regressor,  // point regressor on trailing contexts
};

std::string to_string(ModelUnit unit);
ModelUnit parse_model_unit(const std::string& name);

struct ModelFile {
  ModelUnit unit = ModelUnit::series;
  std::size_t context_length = 20;
  std::optional<FittedDetector> detector;
  std::optional<PointRegressor> regressor;
};

/// JSON model file. Reals use the shortest representation that parses back to
/// the same double, so save -> load -> save is byte-identical.
std::string serialize_model(const ModelFile& model);

/// Throws ParseError on malformed JSON or a schema version other than kModelSchemaVersion.
ModelFile parse_model(std::string_view text);

}  // namespace radonad
