#include "qmt/evolve/time_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmt::evolve {

TimeGrid::TimeGrid(double t_start, double t_end, double dt, std::size_t max_points)
    : t_start_(t_start), t_end_(t_end), dt_(dt), count_(0) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(dt)) {
    throw std::invalid_argument("TimeGrid: bounds and step must be finite");
  }
  if (!(t_end > t_start)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
  if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
  const double steps = std::floor((t_end - t_start) / dt + 1e-9);
  if (steps + 1.0 > static_cast<double>(max_points)) {
    throw std::length_error("TimeGrid: " + std::to_string(steps + 1.0) + " points exceed the cap of " +
                            std::to_string(max_points));
  }
  count_ = static_cast<std::size_t>(steps) + 1;
}

double TimeGrid::at(std::size_t k) const {
  if (k >= count_) throw std::out_of_range("TimeGrid::at");
  return t_start_ + static_cast<double>(k) * dt_;
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(count_);
  for (std::size_t k = 0; k < count_; ++k) out[k] = t_start_ + static_cast<double>(k) * dt_;
  return out;
}

}  // namespace qmt::evolve
