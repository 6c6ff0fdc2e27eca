#pragma once

#include "radonad/time_series.hpp"

#include <cstddef>
#include <optional>

namespace radonad {

enum class Boundary { clamp, reflect };

/// Multi-resolution temporal window around each point.
/// Window r (stride 2^r) gathers indices t + k * 2^r for k in [-half_window, half_window].
struct WindowConfig {
  std::size_t half_window = 4;
  /// Number of resolutions; empty means "as many as the series length allows".
  std::optional<std::size_t> resolutions = 1;
  Boundary boundary = Boundary::clamp;
  /// Per-channel z-normalization of the series before windowing. Off by default.
  bool znormalize = false;

  void validate() const;
  /// Resolution count used for a series of `length` points.
  std::size_t resolutions_for(std::size_t length) const;
  std::size_t window_size() const noexcept { return 2 * half_window + 1; }
  std::size_t feature_dim(std::size_t length, std::size_t channels) const {
    return window_size() * resolutions_for(length) * channels;
  }
};

/// Per-point window features: T rows, d_f = (2w+1) * N_r * d columns.
/// Column layout is resolution-major, then channel, then window offset.
using PointFeatureMatrix = Matrix;

/// Largest n >= 1 with 2 * w * 2^(n-1) + 1 <= length (1 when w = 0).
std::size_t auto_resolutions(std::size_t half_window, std::size_t length);

PointFeatureMatrix extract_point_features(const TimeSeries& series, const WindowConfig& cfg);

}  // namespace radonad
