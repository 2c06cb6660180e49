#pragma once

#include <cstddef>
#include <vector>

namespace qmt::evolve {

inline constexpr std::size_t kDefaultMaxPoints = 1'000'000;

/// Uniform grid t_start, t_start + dt, ... up to t_end (engine time units).
/// The last point is included when t_end lies on the grid up to 1e-9 steps.
class TimeGrid {
 public:
  /// Throws std::invalid_argument unless t_end > t_start and dt > 0 (all
  /// finite), std::length_error when the point count exceeds max_points.
  TimeGrid(double t_start, double t_end, double dt, std::size_t max_points = kDefaultMaxPoints);

  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return count_; }
  double at(std::size_t k) const;
  std::vector<double> points() const;

 private:
  double t_start_;
  double t_end_;
  double dt_;
  std::size_t count_;
};

}  // namespace qmt::evolve
