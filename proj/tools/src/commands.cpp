#include "radonad_cli/commands.hpp"

#include "radonad_cli/data_loading.hpp"
#include "radonad_cli/run_config.hpp"

#include <radonad/error.hpp>
#include <radonad/evaluation.hpp>
#include <radonad/model_io.hpp>
#include <radonad/synth.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace radonad::cli {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

/// Usage problems found after CLI11 parsing (exit code 2).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

/// `--key` options for every RunConfig key, bound on one subcommand.
class ConfigFlags {
 public:
  ConfigFlags(CLI::App* sub, const std::vector<std::string>& keys) {
    for (const auto& key : keys) {
      auto& slot = values_[key];
      options_.emplace_back(key, sub->add_option("--" + key, slot, "override config key '" + key + "'"));
    }
  }

  void apply(RunConfig& cfg) const {
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) cfg.set(key, values_.at(key));
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
};

RunConfig load_config(const std::string& config_path, const ConfigFlags& flags) {
  RunConfig cfg;
  if (!config_path.empty()) cfg.merge_json(read_text_file(config_path));
  flags.apply(cfg);
  (void)cfg.pipeline();  // validates every pipeline key up front
  return cfg;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

json config_block(const RunConfig& cfg) {
  json j;
  j["config"] = json::parse(cfg.snapshot_json());
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
  return j;
}

// ---- fit ------------------------------------------------------------------

struct FitArgs {
  std::string config;
  std::vector<std::string> train;
  std::string model;
};

int cmd_fit(const FitArgs& a, const RunConfig& cfg, std::ostream& err) {
  const auto pipe = cfg.pipeline();
  const auto unit = cfg.model_unit();
  const auto train = load_series(a.train, cfg.channels);

  Stopwatch clock;
  ModelFile model;
  model.unit = unit;
  model.context_length = cfg.context_length;
  std::size_t dim = 0;
  std::ostringstream extra;
  switch (unit) {
    case ModelUnit::series:
      model.detector = fit_detector(train, pipe.window, pipe.radon, pipe.detector, pipe.threads);
      break;
    case ModelUnit::window:
      model.detector =
          fit_window_detector(train, cfg.context_length, pipe.window, pipe.radon, pipe.detector, pipe.threads);
      break;
    case ModelUnit::regressor:
      model.regressor = fit_point_regressor(train, pipe.window, pipe.radon, pipe.regressor(), pipe.threads);
      break;
  }
  const double fit_seconds = clock.seconds();

  const WindowConfig* window = nullptr;
  std::size_t point_dim = 0;
  if (model.detector) {
    const auto& det = *model.detector;
    window = &det.window;
    dim = det.feature_dim();
    point_dim = static_cast<std::size_t>(det.directions.directions.cols());
    extra << " bank=" << det.bank_size();
    if (det.sphering) extra << " rank=" << det.sphering->rank();
  } else {
    const auto& reg = *model.regressor;
    window = &reg.window;
    dim = reg.feature_dim();
    point_dim = static_cast<std::size_t>(reg.directions.directions.cols());
    extra << " lambda=" << reg.lambda << " training_rmse=" << reg.training_rmse;
  }

  write_text_file(a.model, serialize_model(model));
  err << "fit: unit=" << to_string(unit) << " series=" << train.size() << " channels=" << train.front().channels()
      << " resolutions=" << window->resolutions.value_or(1) << " point_dim=" << point_dim
      << " projections=" << cfg.projections << " bins=" << cfg.bins << " D=" << dim << extra.str() << "\n";
  err << "timing: fit_seconds=" << fixed3(fit_seconds) << "\n";
  return kExitOk;
}

// ---- score ----------------------------------------------------------------

struct ScoreArgs {
  std::string model;
  std::vector<std::string> data;
  bool points = false;
  std::size_t threads = 1;
  std::size_t channels = 0;
  std::string output;
};

int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  const auto model = parse_model(read_text_file(a.model));
  const auto series = load_series(a.data, a.channels);
  if (a.points && model.unit == ModelUnit::series) {
    throw UsageError("--points needs a model fitted with unit=window or unit=regressor");
  }
  if (!a.points && model.unit == ModelUnit::regressor) {
    throw UsageError("regressor models score individual points; pass --points");
  }

  Stopwatch clock;
  std::string text;
  if (a.points) {
    for (const auto& s : series) {
      const auto scores = model.regressor ? score_points(*model.regressor, s, a.threads)
                                          : score_points_collective(*model.detector, s, model.context_length, a.threads);
      json line;
      line["series_id"] = s.id();
      line["point_scores"] = scores;
      text += line.dump() + "\n";
    }
  } else {
    const auto scores = score_many(*model.detector, series, a.threads);
    for (std::size_t i = 0; i < series.size(); ++i) {
      json line;
      line["series_id"] = series[i].id();
      line["score"] = scores[i];
      text += line.dump() + "\n";
    }
  }
  const double score_seconds = clock.seconds();
  write_output(a.output, text, out);
  err << "timing: score_seconds=" << fixed3(score_seconds) << " series=" << series.size() << "\n";
  return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string config;
  std::string protocol = "one_vs_rest";
  std::string data;
  std::vector<std::string> train;
  std::string report;
  std::string roc_csv;
  bool timings = false;
};

void append_roc(std::string& csv, const std::string& split, const std::vector<std::pair<double, double>>& roc) {
  for (const auto& [fpr, tpr] : roc) {
    json name = split;
    csv += name.dump() + "," + json(fpr).dump() + "," + json(tpr).dump() + "\n";
  }
}

int eval_one_vs_rest(const EvalArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (a.data.empty()) throw UsageError("eval --protocol one_vs_rest needs --data");
  auto dataset = load_labeled(a.data);
  if (cfg.min_length > 0 || cfg.max_length > 0) {
    const auto before = dataset.size();
    dataset = dataset.filter_length(cfg.min_length, cfg.max_length == 0 ? SIZE_MAX : cfg.max_length);
    err << "length filter kept " << dataset.size() << " of " << before << " series\n";
  }
  const auto report = run_one_vs_rest(dataset, cfg.pipeline());

  json j = config_block(cfg);
  j["protocol"] = "one_vs_rest";
  j["auc_level"] = "series";
  j["dataset"] = fs::path(a.data).filename().string();
  json splits = json::array();
  std::string roc = "split,fpr,tpr\n";
  double fit_total = 0.0;
  double score_total = 0.0;
  for (const auto& s : report.splits) {
    json e;
    e["normal_class"] = s.normal_class;
    e["auc"] = round4(s.auc);
    e["n_train"] = s.n_train;
    e["n_test"] = s.n_test;
    e["n_anomalous"] = s.n_anomalous;
    if (a.timings) {
      e["fit_seconds"] = s.fit_seconds;
      e["score_seconds"] = s.score_seconds;
    }
    splits.push_back(e);
    append_roc(roc, s.normal_class, s.roc);
    fit_total += s.fit_seconds;
    score_total += s.score_seconds;
    err << "split " << s.normal_class << ": auc=" << fixed4(s.auc) << " fit_seconds=" << fixed3(s.fit_seconds)
        << " score_seconds=" << fixed3(s.score_seconds) << "\n";
  }
  j["splits"] = splits;
  j["mean_auc"] = round4(report.mean_auc);
  j["warnings"] = report.warnings;
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  err << "mean_auc=" << fixed4(report.mean_auc) << "\n";
  err << "timing: fit_seconds=" << fixed3(fit_total) << " score_seconds=" << fixed3(score_total) << "\n";

  write_output(a.report, j.dump(2) + "\n", out);
  if (!a.roc_csv.empty()) write_text_file(a.roc_csv, roc);
  return kExitOk;
}

int eval_point(const EvalArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (a.data.empty() || a.train.empty()) throw UsageError("eval --protocol point needs --train and --data");
  const auto pipe = cfg.pipeline();
  const auto train = load_series(a.train, cfg.channels);
  const auto test = load_point_labeled(a.data, cfg.channels);
  const bool regressor = cfg.model_unit() == ModelUnit::regressor;
  const auto lc = cfg.context_length;

  Stopwatch fit_clock;
  std::optional<PointRegressor> reg;
  std::optional<FittedDetector> det;
  if (regressor) {
    reg = fit_point_regressor(train, pipe.window, pipe.radon, pipe.regressor(), pipe.threads);
  } else {
    det = fit_window_detector(train, lc, pipe.window, pipe.radon, pipe.detector, pipe.threads);
  }
  const double fit_seconds = fit_clock.seconds();

  Stopwatch score_clock;
  json j = config_block(cfg);
  j["protocol"] = "point";
  j["auc_level"] = "point";
  j["detector"] = regressor ? "regressor" : "collective";
  j["dataset"] = fs::path(a.data).filename().string();
  json rows = json::array();
  std::string roc = "split,fpr,tpr\n";
  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& s : test) {
    auto scores = reg ? score_points(*reg, s.series, pipe.threads)
                      : score_points_collective(*det, s.series, lc, pipe.threads);
    auto labels = s.point_labels;
    if (reg && !cfg.include_prefix) {
      const auto cut = static_cast<std::ptrdiff_t>(std::min(lc, scores.size()));
      scores.erase(scores.begin(), scores.begin() + cut);
      labels.erase(labels.begin(), labels.begin() + cut);
    }
    json e;
    e["id"] = s.series.id();
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    if (pos == 0 || pos == static_cast<std::ptrdiff_t>(labels.size())) {
      e["auc"] = nullptr;
      e["skipped"] = true;
      err << "warning: " << s.series.id() << " has a single label class; AUC skipped\n";
    } else {
      const double auc = roc_auc(scores, labels);
      e["auc"] = round4(auc);
      e["skipped"] = false;
      sum += auc;
      ++counted;
      append_roc(roc, s.series.id(), roc_curve(scores, labels));
    }
    rows.push_back(e);
  }
  const double score_seconds = score_clock.seconds();
  j["series"] = rows;
  j["mean_auc"] = counted > 0 ? json(round4(sum / static_cast<double>(counted))) : json(nullptr);
  if (a.timings) {
    j["fit_seconds"] = fit_seconds;
    j["score_seconds"] = score_seconds;
  }
  if (counted > 0) err << "mean_auc=" << fixed4(sum / static_cast<double>(counted)) << "\n";
  err << "timing: fit_seconds=" << fixed3(fit_seconds) << " score_seconds=" << fixed3(score_seconds) << "\n";
  write_output(a.report, j.dump(2) + "\n", out);
  if (!a.roc_csv.empty()) write_text_file(a.roc_csv, roc);
  return kExitOk;
}

json synthetic_json(const SyntheticReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json e;
    e["scenario"] = to_string(c.scenario);
    e["ratio"] = c.ratio;
    e["trial"] = c.trial;
    e["auc"] = c.auc ? json(round4(*c.auc)) : json(nullptr);
    e["skipped"] = !c.auc.has_value();
    cells.push_back(e);
  }
  json means = json::object();
  for (const auto& [sc, m] : r.scenario_means) means[to_string(sc)] = m ? json(round4(*m)) : json(nullptr);
  json j;
  j["cells"] = cells;
  j["scenario_means"] = means;
  j["mean_auc"] = round4(r.overall_mean());
  return j;
}

int eval_synthetic(const EvalArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!a.roc_csv.empty()) throw UsageError("--roc-csv is not available for the synthetic protocol");
  const auto report = run_synthetic_suite(cfg.synthetic_suite());
  json j = config_block(cfg);
  j.update(synthetic_json(report));
  j["protocol"] = "synthetic";
  j["auc_level"] = "point";
  if (a.timings) {
    j["fit_seconds"] = report.fit_seconds;
    j["score_seconds"] = report.score_seconds;
  }
  for (const auto& [sc, m] : report.scenario_means) {
    err << to_string(sc) << ": " << (m ? fixed4(*m) : std::string("skipped")) << "\n";
  }
  err << "timing: fit_seconds=" << fixed3(report.fit_seconds) << " score_seconds=" << fixed3(report.score_seconds)
      << "\n";
  write_output(a.report, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_eval(const EvalArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (a.protocol == "one_vs_rest") return eval_one_vs_rest(a, cfg, out, err);
  if (a.protocol == "point") return eval_point(a, cfg, out, err);
  return eval_synthetic(a, cfg, out, err);
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string config;
  std::string scenario;
  double ratio = 0.1;
  std::size_t count = 1;
  std::string out_dir;
  std::string prefix;
};

int cmd_synth(const SynthArgs& a, const RunConfig& cfg, std::ostream& err) {
  auto sc = cfg.synth_base();
  sc.scenario = parse_scenario(a.scenario);
  sc.ratio = a.ratio;
  sc.validate();
  const auto series = generate(sc, a.count);
  fs::create_directories(a.out_dir);
  const auto prefix = a.prefix.empty() ? a.scenario : a.prefix;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto stem = fs::path(a.out_dir) / (prefix + "_" + std::to_string(i));
    auto item_cfg = sc;
    item_cfg.seed = sc.seed ^ i;
    write_text_file(stem.string() + ".csv", serialize_csv(series[i].series));
    write_text_file(stem.string() + ".mask.json", mask_json(series[i], item_cfg));
    err << "wrote " << stem.string() << ".csv\n";
  }
  return kExitOk;
}

// ---- ablate ---------------------------------------------------------------

struct AblateArgs {
  std::string config;
  std::string data;
  std::string axis;
  std::string values;
  std::string output;
};

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

int cmd_ablate(const AblateArgs& a, const RunConfig& base, std::ostream& out, std::ostream& err) {
  const auto values = split_values(a.values);
  if (values.empty()) throw UsageError("--values must list at least one value");

  // Validate every configuration before running any of them.
  std::vector<RunConfig> configs;
  for (const auto& v : values) {
    RunConfig cfg = base;
    cfg.set(a.axis, v);
    (void)cfg.pipeline();
    configs.push_back(cfg);
  }
  std::optional<LabeledDataset> dataset;
  if (!a.data.empty()) dataset = load_labeled(a.data);

  std::string csv = "value,mean_auc\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    Stopwatch clock;
    double auc = 0.0;
    if (dataset) {
      auc = run_one_vs_rest(*dataset, configs[i].pipeline()).mean_auc;
    } else {
      auc = run_synthetic_suite(configs[i].synthetic_suite()).overall_mean();
    }
    csv += values[i] + "," + fixed4(auc) + "\n";
    err << a.axis << "=" << values[i] << ": mean_auc=" << fixed4(auc) << " seconds=" << fixed3(clock.seconds())
        << "\n";
  }
  write_output(a.output, csv, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-series anomaly detection with cumulative Radon features", "radonad"};
  app.require_subcommand(1);
  const auto& keys = RunConfig::keys();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit a detector or point regressor and write a model file");
  fit_cmd->add_option("--config", fit.config, "flat JSON config file");
  fit_cmd->add_option("--train", fit.train, "training data: .csv/.ts files or directories")->required();
  fit_cmd->add_option("--model,-o", fit.model, "model output path")->required();
  ConfigFlags fit_flags(fit_cmd, keys);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "score series (or points) with a fitted model; JSON lines");
  score_cmd->add_option("--model,-m", score.model, "model file")->required();
  score_cmd->add_option("--data", score.data, "data to score: .csv/.ts files or directories")->required();
  score_cmd->add_flag("--points", score.points, "score every time step instead of whole series");
  score_cmd->add_option("--threads", score.threads, "worker threads")->check(CLI::PositiveNumber);
  score_cmd->add_option("--channels", score.channels, "CSV channel count (0 = infer)");
  score_cmd->add_option("--output,-o", score.output, "output path (default stdout)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "run an evaluation protocol and write a JSON report");
  eval_cmd->add_option("--config", eval.config, "flat JSON config file");
  eval_cmd->add_option("--protocol", eval.protocol, "one_vs_rest | point | synthetic")
      ->check(CLI::IsMember({"one_vs_rest", "point", "synthetic"}));
  eval_cmd->add_option("--data", eval.data, "dataset: .ts file/directory, or directory of CSV + mask pairs");
  eval_cmd->add_option("--train", eval.train, "clean training series for the point protocol");
  eval_cmd->add_option("--report,-o", eval.report, "report path (default stdout)");
  eval_cmd->add_option("--roc-csv", eval.roc_csv, "write (split, fpr, tpr) rows here");
  eval_cmd->add_flag("--timings", eval.timings, "include wall-clock timings in the report");
  ConfigFlags eval_flags(eval_cmd, keys);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate synthetic series with point masks");
  synth_cmd->add_option("--config", synth.config, "flat JSON config file");
  synth_cmd->add_option("--scenario", synth.scenario, "shapelet | trend | seasonal | point_global | point_contextual")
      ->required();
  synth_cmd->add_option("--ratio", synth.ratio, "fraction of anomalous points");
  synth_cmd->add_option("--count,-n", synth.count, "number of series")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out-dir,-o", synth.out_dir, "output directory")->required();
  synth_cmd->add_option("--prefix", synth.prefix, "file name prefix (default: scenario)");
  ConfigFlags synth_flags(synth_cmd, keys);

  AblateArgs ablate;
  auto* ablate_cmd = app.add_subcommand("ablate", "sweep one parameter and write value,mean_auc CSV");
  ablate_cmd->add_option("--config", ablate.config, "flat JSON config file");
  ablate_cmd->add_option("--data", ablate.data, "one-vs-rest dataset; omitted = synthetic suite");
  ablate_cmd->add_option("--axis", ablate.axis, "projections | bins | scheme | distance")
      ->required()
      ->check(CLI::IsMember({"projections", "bins", "scheme", "distance"}));
  ablate_cmd->add_option("--values", ablate.values, "comma-separated values")->required();
  ablate_cmd->add_option("--output,-o", ablate.output, "CSV path (default stdout)");
  ConfigFlags ablate_flags(ablate_cmd, keys);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit, load_config(fit.config, fit_flags), err);
    if (score_cmd->parsed()) return cmd_score(score, out, err);
    if (eval_cmd->parsed()) return cmd_eval(eval, load_config(eval.config, eval_flags), out, err);
    if (synth_cmd->parsed()) return cmd_synth(synth, load_config(synth.config, synth_flags), err);
    if (ablate_cmd->parsed()) return cmd_ablate(ablate, load_config(ablate.config, ablate_flags), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace radonad::cli
