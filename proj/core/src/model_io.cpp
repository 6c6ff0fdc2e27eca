#include "radonad/model_io.hpp"

#include "radonad/error.hpp"

#include "json.hpp"

namespace radonad {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Matrix matrix_from_json(const json& j, Eigen::Index cols_if_empty = 0) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : cols_if_empty;
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix in model file");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
  return v;
}

json window_to_json(const WindowConfig& w) {
  return {{"half_window", w.half_window},
          {"resolutions", w.resolutions.value_or(0)},
          {"boundary", w.boundary == Boundary::clamp ? "clamp" : "reflect"},
          {"znormalize", w.znormalize}};
}

WindowConfig window_from_json(const json& j) {
  WindowConfig w;
  w.half_window = j.at("half_window").get<std::size_t>();
  const auto r = j.at("resolutions").get<std::size_t>();
  w.resolutions = r == 0 ? std::nullopt : std::optional<std::size_t>(r);
  const auto b = j.at("boundary").get<std::string>();
  if (b != "clamp" && b != "reflect") throw ParseError("unknown boundary '" + b + "' in model file");
  w.boundary = b == "clamp" ? Boundary::clamp : Boundary::reflect;
  w.znormalize = j.at("znormalize").get<bool>();
  return w;
}

json directions_to_json(const DirectionSet& d) {
  return {{"scheme", to_string(d.scheme)}, {"seed", d.seed}, {"matrix", matrix_to_json(d.directions)}};
}

DirectionSet directions_from_json(const json& j) {
  DirectionSet d;
  d.scheme = parse_direction_scheme(j.at("scheme").get<std::string>());
  d.seed = j.at("seed").get<std::uint64_t>();
  d.directions = matrix_from_json(j.at("matrix"));
  return d;
}

json epsilon_to_json(const EpsilonPolicy& e) {
  return {{"mode", e.mode == EpsilonPolicy::Mode::relative ? "relative" : "absolute"}, {"value", e.value}};
}

EpsilonPolicy epsilon_from_json(const json& j) {
  EpsilonPolicy e;
  const auto mode = j.at("mode").get<std::string>();
  if (mode != "relative" && mode != "absolute") throw ParseError("unknown epsilon mode '" + mode + "'");
  e.mode = mode == "relative" ? EpsilonPolicy::Mode::relative : EpsilonPolicy::Mode::absolute;
  e.value = j.at("value").get<double>();
  return e;
}

}  // namespace

std::string to_string(ModelUnit unit) {
  switch (unit) {
    case ModelUnit::series: return "series";
    case ModelUnit::window: return "window";
    case ModelUnit::regressor: return "regressor";
  }
  return "series";
}

ModelUnit parse_model_unit(const std::string& name) {
  if (name == "series") return ModelUnit::series;
  if (name == "window") return ModelUnit::window;
  if (name == "regressor") return ModelUnit::regressor;
  throw ConfigError("unknown unit '" + name + "' (expected series, window or regressor)");
}

std::string serialize_model(const ModelFile& model) {
  json j;
  j["schema_version"] = kModelSchemaVersion;
  j["unit"] = to_string(model.unit);
  j["context_length"] = model.context_length;

  if (model.unit == ModelUnit::regressor) {
    if (!model.regressor) throw std::invalid_argument("regressor model file has no regressor");
    const auto& r = *model.regressor;
    j["window"] = window_to_json(r.window);
    j["directions"] = directions_to_json(r.directions);
    j["grid"] = matrix_to_json(r.grid.edges);
    j["regressor"] = {{"weights", vector_to_json(r.weights)},
                      {"lambda", r.lambda},
                      {"context_length", r.context_length},
                      {"training_rmse", r.training_rmse}};
  } else {
    if (!model.detector) throw std::invalid_argument("detector model file has no detector");
    const auto& d = *model.detector;
    j["window"] = window_to_json(d.window);
    j["directions"] = directions_to_json(d.directions);
    j["grid"] = matrix_to_json(d.grid.edges);
    j["detector"] = {{"scorer", to_string(d.config.scorer)},
                     {"distance", to_string(d.config.distance)},
                     {"k", d.config.k},
                     {"space", to_string(d.config.space)},
                     {"epsilon", epsilon_to_json(d.config.epsilon)},
                     {"squared_l2", d.config.squared_l2}};
    j["bank"] = matrix_to_json(d.bank);
    if (d.sphering) {
      const auto& s = *d.sphering;
      j["sphering"] = {{"mean", vector_to_json(s.mean())},
                       {"eigenvalues", vector_to_json(s.eigenvalues())},
                       {"eigenvectors", matrix_to_json(s.basis().transpose())},
                       {"epsilon", s.epsilon()}};
    }
  }
  j["feature_dim"] = model.unit == ModelUnit::regressor ? model.regressor->feature_dim() : model.detector->feature_dim();
  return j.dump() + "\n";
}

ModelFile parse_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
      throw ParseError("unsupported model schema version " + std::to_string(version) + " (expected " +
                       std::to_string(kModelSchemaVersion) + ")");
    }
    ModelFile model;
    model.unit = parse_model_unit(j.at("unit").get<std::string>());
    model.context_length = j.at("context_length").get<std::size_t>();
    const auto window = window_from_json(j.at("window"));
    auto directions = directions_from_json(j.at("directions"));
    HistogramGrid grid{matrix_from_json(j.at("grid"))};

    if (model.unit == ModelUnit::regressor) {
      const auto& r = j.at("regressor");
      PointRegressor reg;
      reg.window = window;
      reg.directions = std::move(directions);
      reg.grid = std::move(grid);
      reg.weights = vector_from_json(r.at("weights"));
      reg.lambda = r.at("lambda").get<double>();
      reg.context_length = r.at("context_length").get<std::size_t>();
      reg.training_rmse = r.at("training_rmse").get<double>();
      model.regressor = std::move(reg);
      return model;
    }

    const auto& cfg = j.at("detector");
    FittedDetector det;
    det.window = window;
    det.directions = std::move(directions);
    det.grid = std::move(grid);
    det.config.scorer = parse_scorer(cfg.at("scorer").get<std::string>());
    det.config.distance = parse_distance_kind(cfg.at("distance").get<std::string>());
    det.config.k = cfg.at("k").get<std::size_t>();
    det.config.space = parse_feature_space(cfg.at("space").get<std::string>());
    det.config.epsilon = epsilon_from_json(cfg.at("epsilon"));
    det.config.squared_l2 = cfg.at("squared_l2").get<bool>();
    det.bank = matrix_from_json(j.at("bank"));
    if (j.contains("sphering")) {
      const auto& s = j.at("sphering");
      Vector mean = vector_from_json(s.at("mean"));
      Matrix basis = matrix_from_json(s.at("eigenvectors"), mean.size()).transpose();
      det.sphering = SpheringModel(std::move(mean), vector_from_json(s.at("eigenvalues")), std::move(basis),
                                   s.at("epsilon").get<double>());
    }
    det.finalize();
    model.detector = std::move(det);
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

}  // namespace radonad
