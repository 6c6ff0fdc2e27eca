#pragma once

#include <radonad/time_series.hpp>
#include <radonad/ts_format.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace radonad::cli {

/// Loads unlabeled series from `.ts` files, `.csv` files, or directories of them
/// (sorted by file name). CSV series take the file stem as id; `.ts` series are
/// `<stem>:<index>`. `channels` = 0 infers the CSV channel count.
std::vector<TimeSeries> load_series(const std::vector<std::string>& paths, std::size_t channels);

/// Classification dataset for one-vs-rest evaluation: a `.ts` file or a directory
/// holding `*_TRAIN.ts` and `*_TEST.ts`.
LabeledDataset load_labeled(const std::string& path);

/// Series with point masks: every `<name>.csv` paired with `<name>.mask.json`.
/// `path` may be a directory or a single CSV file.
std::vector<PointLabeledSeries> load_point_labeled(const std::string& path, std::size_t channels);

/// Reads the `mask` array of a mask sidecar (a bare JSON array is accepted too).
std::vector<std::uint8_t> parse_mask(const std::string& json_text);

}  // namespace radonad::cli
