#include "radonad/ts_format.hpp"

#include "radonad/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace radonad {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const auto start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (token.empty()) throw ParseError("empty numeric field", line);
  if (token == "?") throw ParseError("missing value '?' is not supported", line);
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("non-numeric token '" + std::string(token) + "'", line);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value '" + std::string(token) + "' is not supported", line);
  }
  return value;
}

bool parse_bool(std::string_view token, const std::string& directive, std::size_t line) {
  const auto v = lower(token);
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError("directive @" + directive + " expects true/false, got '" + std::string(token) + "'", line);
}

std::size_t parse_count(std::string_view token, const std::string& directive, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
    throw ParseError("directive @" + directive + " expects a positive integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

void append_real(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

struct TsHeader {
  std::optional<std::size_t> dimensions;
  std::optional<bool> equal_length;
  std::optional<std::size_t> series_length;
  bool class_label = false;
  std::vector<std::string> declared_labels;
};

}  // namespace

LabeledDataset parse_ts_file(std::string_view text, Split which) {
  LabeledDataset out;
  TsHeader header;
  bool in_data = false;
  std::size_t line_no = 0;
  std::optional<std::size_t> first_length;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }

    if (!in_data) {
      if (line.front() != '@') throw ParseError("expected a header directive before @data", line_no);
      const auto tokens = split_ws(line.substr(1));
      if (tokens.empty()) throw ParseError("empty header directive", line_no);
      const auto name = lower(tokens[0]);
      const auto need_value = [&] {
        if (tokens.size() < 2) throw ParseError("directive @" + name + " is missing its value", line_no);
      };
      if (name == "problemname") {
        need_value();
      } else if (name == "timestamps") {
        need_value();
        if (parse_bool(tokens[1], name, line_no)) throw ParseError("timestamped series are not supported", line_no);
      } else if (name == "missing") {
        need_value();
        parse_bool(tokens[1], name, line_no);
      } else if (name == "univariate") {
        need_value();
        if (parse_bool(tokens[1], name, line_no)) {
          if (header.dimensions && *header.dimensions != 1) {
            throw ParseError("@univariate true conflicts with @dimensions", line_no);
          }
          header.dimensions = 1;
        }
      } else if (name == "dimension" || name == "dimensions") {
        need_value();
        header.dimensions = parse_count(tokens[1], name, line_no);
      } else if (name == "equallength") {
        need_value();
        header.equal_length = parse_bool(tokens[1], name, line_no);
      } else if (name == "serieslength") {
        need_value();
        header.series_length = parse_count(tokens[1], name, line_no);
      } else if (name == "classlabel" || name == "targetlabel") {
        need_value();
        header.class_label = parse_bool(tokens[1], name, line_no);
        if (name == "classlabel") {
          if (header.class_label && tokens.size() < 3) {
            throw ParseError("@classLabel true must list the class labels", line_no);
          }
          for (std::size_t i = 2; i < tokens.size(); ++i) header.declared_labels.emplace_back(tokens[i]);
        }
      } else if (name == "data") {
        in_data = true;
      } else {
        throw ParseError("unknown header directive @" + std::string(tokens[0]), line_no);
      }
      if (end == text.size()) break;
      continue;
    }

    auto fields = split(line, ':');
    std::string label;
    if (header.class_label) {
      if (fields.size() < 2) throw ParseError("body line has no class label", line_no);
      label = std::string(trim(fields.back()));
      if (label.empty()) throw ParseError("empty class label", line_no);
      if (!header.declared_labels.empty() &&
          std::find(header.declared_labels.begin(), header.declared_labels.end(), label) ==
              header.declared_labels.end()) {
        throw ParseError("class label '" + label + "' not declared in @classLabel", line_no);
      }
      fields.pop_back();
    }
    const std::size_t channels = fields.size();
    if (!header.dimensions) header.dimensions = channels;
    if (channels != *header.dimensions) {
      throw ParseError("expected " + std::to_string(*header.dimensions) + " channels, found " +
                           std::to_string(channels),
                       line_no);
    }

    std::vector<std::vector<double>> columns(channels);
    for (std::size_t c = 0; c < channels; ++c) {
      for (auto token : split(fields[c], ',')) columns[c].push_back(parse_real(token, line_no));
      if (columns[c].size() != columns[0].size()) {
        throw ParseError("channel " + std::to_string(c) + " has " + std::to_string(columns[c].size()) +
                             " points, channel 0 has " + std::to_string(columns[0].size()),
                         line_no);
      }
    }
    const std::size_t length = columns[0].size();
    if (header.series_length && length != *header.series_length) {
      throw ParseError("series length " + std::to_string(length) + " differs from @seriesLength " +
                           std::to_string(*header.series_length),
                       line_no);
    }
    if (header.equal_length.value_or(false)) {
      if (!first_length) first_length = length;
      if (length != *first_length) throw ParseError("unequal series length under @equalLength true", line_no);
    }

    Matrix values(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(channels));
    for (std::size_t c = 0; c < channels; ++c) {
      for (std::size_t t = 0; t < length; ++t) {
        values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)) = columns[c][t];
      }
    }
    out.add(TimeSeries(std::move(values), "series_" + std::to_string(out.size())), std::move(label), which);
    if (end == text.size()) break;
  }
  if (!in_data && !out.series.empty()) throw ParseError("missing @data directive");
  return out;
}

std::string serialize_ts(const LabeledDataset& dataset, const std::string& problem_name) {
  dataset.validate();
  std::string out;
  const std::size_t d = dataset.series.empty() ? 1 : dataset.series.front().channels();
  bool equal = true;
  bool labelled = false;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.series[i].length() != dataset.series.front().length()) equal = false;
    if (!dataset.labels[i].empty()) labelled = true;
  }
  std::vector<std::string> classes;
  for (const auto& l : dataset.labels) {
    if (!l.empty() && std::find(classes.begin(), classes.end(), l) == classes.end()) classes.push_back(l);
  }

  out += "@problemName " + problem_name + "\n";
  out += "@timeStamps false\n@missing false\n";
  out += std::string("@univariate ") + (d == 1 ? "true" : "false") + "\n";
  out += "@dimensions " + std::to_string(d) + "\n";
  out += std::string("@equalLength ") + (equal ? "true" : "false") + "\n";
  if (equal && !dataset.series.empty()) {
    out += "@seriesLength " + std::to_string(dataset.series.front().length()) + "\n";
  }
  if (labelled) {
    out += "@classLabel true";
    for (const auto& c : classes) out += " " + c;
    out += "\n";
  } else {
    out += "@classLabel false\n";
  }
  out += "@data\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& s = dataset.series[i];
    for (std::size_t c = 0; c < s.channels(); ++c) {
      if (c > 0) out += ':';
      for (std::size_t t = 0; t < s.length(); ++t) {
        if (t > 0) out += ',';
        append_real(out, s.at(t, c));
      }
    }
    if (labelled) out += ":" + dataset.labels[i];
    out += '\n';
  }
  return out;
}

TimeSeries parse_csv_series(std::string_view text, std::size_t channels, std::string id) {
  if (channels == 0) throw std::invalid_argument("CSV channel count must be positive");
  std::vector<double> flat;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != channels) {
      throw ParseError("expected " + std::to_string(channels) + " fields, found " + std::to_string(fields.size()),
                       line_no);
    }
    for (auto f : fields) flat.push_back(parse_real(f, line_no));
    ++rows;
  }
  if (rows == 0) throw ParseError("CSV series has no rows");
  Matrix values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(channels));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < channels; ++c) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = flat[r * channels + c];
    }
  }
  return TimeSeries(std::move(values), std::move(id));
}

std::size_t infer_csv_channels(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (!line.empty()) return split(line, ',').size();
  }
  throw ParseError("CSV series has no rows");
}

std::string serialize_csv(const TimeSeries& series) {
  std::string out;
  for (std::size_t t = 0; t < series.length(); ++t) {
    for (std::size_t c = 0; c < series.channels(); ++c) {
      if (c > 0) out += ',';
      append_real(out, series.at(t, c));
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

LabeledDataset load_ts_dataset(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) return parse_ts_file(read_text_file(path), Split::train);

  std::optional<fs::path> train_path;
  std::optional<fs::path> test_path;
  for (const auto& entry : fs::directory_iterator(path)) {
    const auto name = entry.path().filename().string();
    const auto upper = [&] {
      std::string u = name;
      std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
      return u;
    }();
    if (upper.ends_with("_TRAIN.TS")) train_path = entry.path();
    if (upper.ends_with("_TEST.TS")) test_path = entry.path();
  }
  if (!train_path || !test_path) {
    throw std::runtime_error("directory '" + path.string() + "' must contain *_TRAIN.ts and *_TEST.ts");
  }
  auto out = parse_ts_file(read_text_file(*train_path), Split::train);
  auto test = parse_ts_file(read_text_file(*test_path), Split::test);
  for (std::size_t i = 0; i < test.size(); ++i) {
    out.add(std::move(test.series[i]), std::move(test.labels[i]), Split::test);
  }
  return out;
}

OneVsRestSplits one_vs_rest_splits(const LabeledDataset& dataset) {
  dataset.validate();
  std::vector<std::string> classes = dataset.train_classes();
  std::vector<std::string> test_only;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& l = dataset.labels[i];
    if (std::find(classes.begin(), classes.end(), l) == classes.end() &&
        std::find(test_only.begin(), test_only.end(), l) == test_only.end()) {
      test_only.push_back(l);
    }
  }
  if (classes.size() + test_only.size() < 2) {
    throw std::invalid_argument("one-vs-rest needs at least two classes, found " +
                                std::to_string(classes.size() + test_only.size()));
  }

  OneVsRestSplits out;
  for (const auto& l : test_only) {
    out.warnings.push_back("class '" + l + "' has no training series; split skipped");
  }
  for (const auto& cls : classes) {
    OneVsRestSplit s;
    s.normal_class = cls;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (dataset.split[i] == Split::train) {
        if (dataset.labels[i] == cls) s.train.push_back(dataset.series[i]);
      } else {
        s.test.push_back(dataset.series[i]);
        s.test_labels.push_back(dataset.labels[i] == cls ? 0 : 1);
      }
    }
    out.splits.push_back(std::move(s));
  }
  return out;
}

}  // namespace radonad
