#pragma once

#include "radonad/time_series.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace radonad {

/// Parses the `.ts` multivariate text format (sktime / timeseriesclassification.com).
///
/// Header directives (`@problemName`, `@univariate`, `@dimensions`, `@equalLength`,
/// `@seriesLength`, `@classLabel`, `@timeStamps`, `@missing`, `@data`) are matched
/// case-insensitively. Each body line holds colon-separated channels of
/// comma-separated reals, followed by the class label when `@classLabel true`.
/// Missing-value tokens and timestamped bodies are rejected. Every series is
/// tagged with `which`.
LabeledDataset parse_ts_file(std::string_view text, Split which = Split::train);

/// Writes a dataset back to `.ts` text with shortest round-trip real formatting.
std::string serialize_ts(const LabeledDataset& dataset, const std::string& problem_name = "dataset");

/// One time step per row, exactly `channels` comma-separated reals per row. Blank lines are skipped.
TimeSeries parse_csv_series(std::string_view text, std::size_t channels, std::string id = {});

/// Number of fields on the first non-blank row.
std::size_t infer_csv_channels(std::string_view text);

std::string serialize_csv(const TimeSeries& series);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Loads `<dir>/*_TRAIN.ts` + `<dir>/*_TEST.ts`, or a single `.ts` file (all series tagged train).
LabeledDataset load_ts_dataset(const std::filesystem::path& path);

/// One normal-class split of a classification dataset.
struct OneVsRestSplit {
  std::string normal_class;
  std::vector<TimeSeries> train;
  std::vector<TimeSeries> test;
  std::vector<std::uint8_t> test_labels;  // 1 = anomalous (class differs from normal_class)
};

struct OneVsRestSplits {
  std::vector<OneVsRestSplit> splits;
  std::vector<std::string> warnings;
};

/// One split per class: train = that class's train-split series, test = the full
/// test split labelled anomalous where the class differs. Classes without
/// training series are skipped with a warning. Requires at least two classes.
OneVsRestSplits one_vs_rest_splits(const LabeledDataset& dataset);

}  // namespace radonad
