#include "radonad/time_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace radonad {

TimeSeries::TimeSeries(Matrix values, std::string id) : values_(std::move(values)), id_(std::move(id)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw std::invalid_argument("time series needs at least one point and one channel");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("time series '" + id_ + "' contains non-finite values");
  }
}

TimeSeries TimeSeries::univariate(const std::vector<double>& values, std::string id) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  return TimeSeries(std::move(m), std::move(id));
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t count) const {
  if (count == 0 || begin + count > length()) {
    throw std::out_of_range("slice [" + std::to_string(begin) + ", " + std::to_string(begin + count) +
                            ") outside series of length " + std::to_string(length()));
  }
  return TimeSeries(values_.middleRows(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(count)), id_);
}

void LabeledDataset::add(TimeSeries s, std::string label, Split which) {
  series.push_back(std::move(s));
  labels.push_back(std::move(label));
  split.push_back(which);
}

void LabeledDataset::validate() const {
  if (labels.size() != series.size() || split.size() != series.size()) {
    throw std::invalid_argument("dataset arrays disagree: " + std::to_string(series.size()) + " series, " +
                                std::to_string(labels.size()) + " labels, " + std::to_string(split.size()) +
                                " split markers");
  }
}

std::vector<std::string> LabeledDataset::train_classes() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (split[i] != Split::train) continue;
    if (std::find(out.begin(), out.end(), labels[i]) == out.end()) out.push_back(labels[i]);
  }
  return out;
}

LabeledDataset LabeledDataset::filter_length(std::size_t min_length, std::size_t max_length) const {
  LabeledDataset out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto len = series[i].length();
    if (len >= min_length && len <= max_length) out.add(series[i], labels[i], split[i]);
  }
  return out;
}

PointLabeledSeries::PointLabeledSeries(TimeSeries s, std::vector<std::uint8_t> labels)
    : series(std::move(s)), point_labels(std::move(labels)) {
  if (point_labels.size() != series.length()) {
    throw std::invalid_argument("point mask length " + std::to_string(point_labels.size()) +
                                " differs from series length " + std::to_string(series.length()));
  }
}

std::vector<TimeSeries> sliding_windows(const TimeSeries& series, std::size_t length, std::size_t stride) {
  if (length == 0 || stride == 0) throw std::invalid_argument("window length and stride must be positive");
  std::vector<TimeSeries> out;
  if (series.length() < length) return out;
  for (std::size_t begin = 0; begin + length <= series.length(); begin += stride) {
    out.push_back(series.slice(begin, length));
  }
  return out;
}

}  // namespace radonad
