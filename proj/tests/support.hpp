#pragma once

#include <radonad/rng.hpp>
#include <radonad/time_series.hpp>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

namespace radonad::testing {

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = scale * rng.normal();
  }
  return m;
}

inline Vector random_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

inline TimeSeries random_series(Rng& rng, std::size_t length, std::size_t channels = 1, std::string id = {}) {
  return TimeSeries(random_matrix(rng, static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(channels)),
                    std::move(id));
}

inline TimeSeries sine_series(std::size_t length, double period, double phase = 0.0, double amplitude = 1.0) {
  std::vector<double> v(length);
  for (std::size_t t = 0; t < length; ++t) {
    v[t] = amplitude * std::sin(2.0 * 3.14159265358979323846 * static_cast<double>(t) / period + phase);
  }
  return TimeSeries::univariate(v);
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("radonad_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace radonad::testing
