#include "radonad/point_features.hpp"

#include "radonad/error.hpp"

#include <cmath>

namespace radonad {
namespace {

std::ptrdiff_t resolve_index(std::ptrdiff_t i, std::ptrdiff_t length, Boundary boundary) {
  if (i >= 0 && i < length) return i;
  if (boundary == Boundary::clamp || length == 1) return i < 0 ? 0 : length - 1;
  // Reflect without repeating the edge sample: period 2 * (length - 1).
  const std::ptrdiff_t period = 2 * (length - 1);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return m < length ? m : period - m;
}

}  // namespace

void WindowConfig::validate() const {
  if (resolutions && *resolutions == 0) throw ConfigError("number of resolutions must be >= 1");
}

std::size_t auto_resolutions(std::size_t half_window, std::size_t length) {
  if (half_window == 0) return 1;
  std::size_t n = 1;
  while (true) {
    const std::size_t next_span = 2 * half_window * (std::size_t{1} << n) + 1;  // span at n + 1
    if (next_span > length || n >= 30) return n;
    ++n;
  }
}

std::size_t WindowConfig::resolutions_for(std::size_t length) const {
  return resolutions ? *resolutions : auto_resolutions(half_window, length);
}

PointFeatureMatrix extract_point_features(const TimeSeries& series, const WindowConfig& cfg) {
  cfg.validate();
  const auto length = static_cast<std::ptrdiff_t>(series.length());
  const std::size_t channels = series.channels();
  const std::size_t n_res = cfg.resolutions_for(series.length());
  const std::size_t win = cfg.window_size();
  const auto w = static_cast<std::ptrdiff_t>(cfg.half_window);

  Matrix values = series.values();
  if (cfg.znormalize) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double mean = values.col(c).mean();
      const double var = (values.col(c).array() - mean).square().mean();
      const double sd = std::sqrt(var);
      values.col(c).array() -= mean;
      if (sd > 0.0) values.col(c) /= sd;
    }
  }

  PointFeatureMatrix out(length, static_cast<Eigen::Index>(win * n_res * channels));
  for (std::ptrdiff_t t = 0; t < length; ++t) {
    Eigen::Index col = 0;
    for (std::size_t r = 0; r < n_res; ++r) {
      const auto stride = static_cast<std::ptrdiff_t>(std::size_t{1} << r);
      for (std::size_t c = 0; c < channels; ++c) {
        for (std::ptrdiff_t k = -w; k <= w; ++k) {
          const auto idx = resolve_index(t + k * stride, length, cfg.boundary);
          out(t, col++) = values(idx, static_cast<Eigen::Index>(c));
        }
      }
    }
  }
  return out;
}

}  // namespace radonad
