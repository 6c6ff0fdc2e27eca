#include "radonad_cli/data_loading.hpp"

#include <radonad/error.hpp>

#include "json.hpp"

#include <algorithm>

namespace radonad::cli {
namespace fs = std::filesystem;

namespace {

bool has_ext(const fs::path& p, const char* ext) { return p.extension() == ext; }

bool is_mask(const fs::path& p) {
  const auto name = p.filename().string();
  return name.size() > 10 && name.ends_with(".mask.json");
}

std::vector<fs::path> directory_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TimeSeries load_csv(const fs::path& p, std::size_t channels) {
  const auto text = read_text_file(p);
  const auto d = channels == 0 ? infer_csv_channels(text) : channels;
  return parse_csv_series(text, d, p.stem().string());
}

void append_ts(const fs::path& p, std::vector<TimeSeries>& out) {
  const auto ds = parse_ts_file(read_text_file(p));
  const auto stem = p.stem().string();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out.emplace_back(ds.series[i].values(), stem + ":" + std::to_string(i));
  }
}

}  // namespace

std::vector<TimeSeries> load_series(const std::vector<std::string>& paths, std::size_t channels) {
  std::vector<TimeSeries> out;
  for (const auto& raw : paths) {
    const fs::path p(raw);
    if (!fs::exists(p)) throw std::runtime_error("no such file or directory: " + raw);
    const auto files = fs::is_directory(p) ? directory_files(p) : std::vector<fs::path>{p};
    for (const auto& f : files) {
      if (has_ext(f, ".csv")) {
        out.push_back(load_csv(f, channels));
      } else if (has_ext(f, ".ts")) {
        append_ts(f, out);
      } else if (!fs::is_directory(p)) {
        throw std::runtime_error("unsupported data file (expected .csv or .ts): " + f.string());
      }
    }
  }
  if (out.empty()) throw std::runtime_error("no series found in the given data paths");
  return out;
}

LabeledDataset load_labeled(const std::string& path) {
  if (!fs::exists(path)) throw std::runtime_error("no such file or directory: " + path);
  return load_ts_dataset(path);
}

std::vector<std::uint8_t> parse_mask(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("mask file is not valid JSON: ") + e.what(), 0);
  }
  const auto& arr = j.is_object() ? j.at("mask") : j;
  if (!arr.is_array()) throw ParseError("mask must be a JSON array of 0/1", 0);
  std::vector<std::uint8_t> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    const int x = v.get<int>();
    if (x != 0 && x != 1) throw ParseError("mask entries must be 0 or 1", 0);
    out.push_back(static_cast<std::uint8_t>(x));
  }
  return out;
}

std::vector<PointLabeledSeries> load_point_labeled(const std::string& path, std::size_t channels) {
  const fs::path p(path);
  if (!fs::exists(p)) throw std::runtime_error("no such file or directory: " + path);
  const auto files = fs::is_directory(p) ? directory_files(p) : std::vector<fs::path>{p};
  std::vector<PointLabeledSeries> out;
  for (const auto& f : files) {
    if (!has_ext(f, ".csv") || is_mask(f)) continue;
    auto mask_path = f;
    mask_path.replace_extension(".mask.json");
    if (!fs::exists(mask_path)) throw std::runtime_error("missing mask sidecar: " + mask_path.string());
    out.emplace_back(load_csv(f, channels), parse_mask(read_text_file(mask_path)));
  }
  if (out.empty()) throw std::runtime_error("no CSV series with masks found in " + path);
  return out;
}

}  // namespace radonad::cli
