#include "radonad_cli/run_config.hpp"

#include <radonad/error.hpp>

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>

namespace radonad::cli {
namespace {

std::size_t to_size(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "' expects a 64-bit unsigned integer, got '" + v + "'");
  }
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("key '" + key + "' expects a real number, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "' expects true or false, got '" + v + "'");
}

std::string one_of(const std::string& key, const std::string& v, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (v == a) return v;
  }
  std::string msg = "key '" + key + "' expects one of";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw ConfigError(msg + ", got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"window", [](RunConfig& c, auto& k, auto& v) { c.window = to_size(k, v); }},
      {"resolutions", [](RunConfig& c, auto& k, auto& v) {
         if (v != "auto" && to_size(k, v) == 0) throw ConfigError("resolutions must be >= 1 or auto");
         c.resolutions = v;
       }},
      {"boundary", [](RunConfig& c, auto& k, auto& v) { c.boundary = one_of(k, v, {"clamp", "reflect"}); }},
      {"znormalize", [](RunConfig& c, auto& k, auto& v) { c.znormalize = to_bool(k, v); }},
      {"projections", [](RunConfig& c, auto& k, auto& v) { c.projections = to_size(k, v); }},
      {"bins", [](RunConfig& c, auto& k, auto& v) { c.bins = to_size(k, v); }},
      {"scheme", [](RunConfig& c, auto& k, auto& v) { c.scheme = one_of(k, v, {"gaussian", "marginals", "pca"}); }},
      {"seed", [](RunConfig& c, auto& k, auto& v) { c.seed = to_u64(k, v); }},
      {"pad", [](RunConfig& c, auto& k, auto& v) { c.pad = to_real(k, v); }},
      {"epsilon", [](RunConfig& c, auto& k, auto& v) { c.epsilon = to_real(k, v); }},
      {"epsilon_mode", [](RunConfig& c, auto& k, auto& v) { c.epsilon_mode = one_of(k, v, {"relative", "absolute"}); }},
      {"scorer", [](RunConfig& c, auto& k, auto& v) { c.scorer = one_of(k, v, {"mean_dist", "knn"}); }},
      {"distance", [](RunConfig& c, auto&, auto& v) { c.distance = to_string(parse_distance_kind(v)); }},
      {"k", [](RunConfig& c, auto& k, auto& v) { c.k = to_size(k, v); }},
      {"space", [](RunConfig& c, auto& k, auto& v) { c.space = one_of(k, v, {"raw", "sphered"}); }},
      {"squared_l2", [](RunConfig& c, auto& k, auto& v) { c.squared_l2 = to_bool(k, v); }},
      {"context_length", [](RunConfig& c, auto& k, auto& v) { c.context_length = to_size(k, v); }},
      {"ridge_lambda", [](RunConfig& c, auto& k, auto& v) {
         if (v != "auto") to_real(k, v);
         c.ridge_lambda = v;
       }},
      {"unit", [](RunConfig& c, auto& k, auto& v) { c.unit = one_of(k, v, {"series", "window", "regressor"}); }},
      {"threads", [](RunConfig& c, auto& k, auto& v) { c.threads = to_size(k, v); }},
      {"channels", [](RunConfig& c, auto& k, auto& v) { c.channels = to_size(k, v); }},
      {"min_length", [](RunConfig& c, auto& k, auto& v) { c.min_length = to_size(k, v); }},
      {"max_length", [](RunConfig& c, auto& k, auto& v) { c.max_length = to_size(k, v); }},
      {"include_prefix", [](RunConfig& c, auto& k, auto& v) { c.include_prefix = to_bool(k, v); }},
      {"trials", [](RunConfig& c, auto& k, auto& v) { c.trials = to_size(k, v); }},
      {"train_series", [](RunConfig& c, auto& k, auto& v) { c.train_series = to_size(k, v); }},
      {"length", [](RunConfig& c, auto& k, auto& v) { c.length = to_size(k, v); }},
      {"amplitude", [](RunConfig& c, auto& k, auto& v) { c.amplitude = to_real(k, v); }},
      {"period", [](RunConfig& c, auto& k, auto& v) { c.period = to_real(k, v); }},
      {"noise", [](RunConfig& c, auto& k, auto& v) { c.noise = to_real(k, v); }},
      {"segment_length", [](RunConfig& c, auto& k, auto& v) { c.segment_length = to_size(k, v); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> out = [] {
    std::vector<std::string> k;
    for (const auto& [name, fn] : setters()) k.push_back(name);
    return k;
  }();
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const auto& [name, fn] : setters()) {
    if (name == key) {
      fn(*this, key, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

void RunConfig::merge_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a flat JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      set(key, value.get<std::string>());
    } else if (value.is_boolean()) {
      set(key, value.get<bool>() ? "true" : "false");
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      set(key, value.dump());
    } else if (value.is_number_float()) {
      set(key, value.dump());
    } else {
      throw ConfigError("config key '" + key + "' must be a string, number or boolean");
    }
  }
}

std::string RunConfig::snapshot_json() const {
  nlohmann::json j;
  j["window"] = window;
  j["resolutions"] = resolutions;
  j["boundary"] = boundary;
  j["znormalize"] = znormalize;
  j["projections"] = projections;
  j["bins"] = bins;
  j["scheme"] = scheme;
  j["seed"] = seed;
  j["pad"] = pad;
  j["epsilon"] = epsilon;
  j["epsilon_mode"] = epsilon_mode;
  j["scorer"] = scorer;
  j["distance"] = distance;
  j["k"] = k;
  j["space"] = space;
  j["squared_l2"] = squared_l2;
  j["context_length"] = context_length;
  j["ridge_lambda"] = ridge_lambda;
  j["unit"] = unit;
  j["channels"] = channels;
  j["min_length"] = min_length;
  j["max_length"] = max_length;
  j["include_prefix"] = include_prefix;
  j["trials"] = trials;
  j["train_series"] = train_series;
  j["length"] = length;
  j["amplitude"] = amplitude;
  j["period"] = period;
  j["noise"] = noise;
  j["segment_length"] = segment_length;
  return j.dump();
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : snapshot_json()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PipelineConfig RunConfig::pipeline() const {
  PipelineConfig p;
  p.window.half_window = window;
  p.window.resolutions = resolutions == "auto" ? std::nullopt : std::optional<std::size_t>(to_size("resolutions", resolutions));
  p.window.boundary = boundary == "clamp" ? Boundary::clamp : Boundary::reflect;
  p.window.znormalize = znormalize;
  p.radon.n_projections = projections;
  p.radon.n_bins = bins;
  p.radon.scheme = parse_direction_scheme(scheme);
  p.radon.seed = seed;
  p.radon.pad = pad;
  p.detector.scorer = parse_scorer(scorer);
  p.detector.distance = parse_distance_kind(distance);
  p.detector.k = k;
  p.detector.space = parse_feature_space(space);
  p.detector.squared_l2 = squared_l2;
  p.detector.epsilon.mode = epsilon_mode == "relative" ? EpsilonPolicy::Mode::relative : EpsilonPolicy::Mode::absolute;
  p.detector.epsilon.value = epsilon;
  p.context_length = context_length;
  if (ridge_lambda != "auto") p.ridge_lambda = to_real("ridge_lambda", ridge_lambda);
  p.threads = threads;
  p.validate();
  return p;
}

ModelUnit RunConfig::model_unit() const { return parse_model_unit(unit); }

SynthConfig RunConfig::synth_base() const {
  SynthConfig s;
  s.length = length;
  s.amplitude = amplitude;
  s.period = period;
  s.noise = noise;
  s.segment_length = segment_length;
  s.margin = context_length;
  s.seed = seed;
  return s;
}

SyntheticSuiteConfig RunConfig::synthetic_suite() const {
  SyntheticSuiteConfig s;
  s.base = synth_base();
  s.trials = trials;
  s.seed = seed;
  s.train_series = train_series;
  s.pipeline = pipeline();
  s.include_prefix = include_prefix;
  return s;
}

}  // namespace radonad::cli
