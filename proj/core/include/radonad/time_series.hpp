#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace radonad {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A d-channel sequence of T points. Row t is the point X_t, column c is channel c.
/// Construction validates T >= 1, d >= 1 and that every value is finite.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(Matrix values, std::string id = {});

  /// Univariate convenience constructor.
  static TimeSeries univariate(const std::vector<double>& values, std::string id = {});

  std::size_t length() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t channels() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  const Matrix& values() const noexcept { return values_; }
  const std::string& id() const noexcept { return id_; }
  double at(std::size_t t, std::size_t c = 0) const { return values_(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)); }

  /// Contiguous sub-sequence [begin, begin + count).
  TimeSeries slice(std::size_t begin, std::size_t count) const;

 private:
  Matrix values_;
  std::string id_;
};

enum class Split : std::uint8_t { train, test };

/// Series with class tags and a train/test marker per series.
struct LabeledDataset {
  std::vector<TimeSeries> series;
  std::vector<std::string> labels;
  std::vector<Split> split;

  std::size_t size() const noexcept { return series.size(); }
  void add(TimeSeries s, std::string label, Split which);

  /// Throws std::invalid_argument if the parallel arrays disagree in length.
  void validate() const;

  /// Distinct labels of the train split in first-appearance order.
  std::vector<std::string> train_classes() const;

  /// Drops series whose length falls outside [min_length, max_length].
  LabeledDataset filter_length(std::size_t min_length, std::size_t max_length) const;
};

/// A series with point-level ground truth (1 = anomalous point).
struct PointLabeledSeries {
  TimeSeries series;
  std::vector<std::uint8_t> point_labels;

  PointLabeledSeries() = default;
  PointLabeledSeries(TimeSeries s, std::vector<std::uint8_t> labels);
};

/// All contiguous windows of `length` points with the given stride.
std::vector<TimeSeries> sliding_windows(const TimeSeries& series, std::size_t length, std::size_t stride = 1);

}  // namespace radonad
