#ifndef FBM_TYPES_HPP
#define FBM_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fbm {

/// Hurst exponent of a fractional Brownian motion, strictly inside (0, 1).
class HurstParameter {
public:
  explicit HurstParameter(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
      throw std::invalid_argument("Hurst parameter must satisfy 0 < H < 1, got " +
                                  std::to_string(value));
    }
  }

  double value() const { return value_; }
  bool is_brownian() const { return value_ == 0.5; }
  bool is_persistent() const { return value_ > 0.5; }

  friend bool operator==(HurstParameter a, HurstParameter b) { return a.value_ == b.value_; }

private:
  double value_;
};

/// Uniform grid on [0, horizon] with `steps` intervals.
class TimeGrid {
public:
  TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
      throw std::invalid_argument("time grid horizon must be positive and finite");
    }
    if (steps == 0) {
      throw std::invalid_argument("time grid needs at least one step");
    }
  }

  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  double spacing() const { return horizon_ / static_cast<double>(steps_); }

  /// Time of knot k; the last knot is exactly the horizon.
  double time(std::size_t k) const {
    return k == steps_ ? horizon_ : static_cast<double>(k) * spacing();
  }

private:
  double horizon_;
  std::size_t steps_;
};

/// A discretely sampled trajectory, `values[k]` at time `grid.time(k)`, starting at 0.
class SamplePath {
public:
  SamplePath(TimeGrid grid, HurstParameter hurst, std::vector<double> values)
      : grid_(grid), hurst_(hurst), values_(std::move(values)) {
    if (values_.size() != grid_.steps() + 1) {
      throw std::invalid_argument("sample path needs steps + 1 values");
    }
    if (values_.front() != 0.0) {
      throw std::invalid_argument("sample path must start at 0");
    }
  }

  const TimeGrid& grid() const { return grid_; }
  HurstParameter hurst() const { return hurst_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double terminal() const { return values_.back(); }

private:
  TimeGrid grid_;
  HurstParameter hurst_;
  std::vector<double> values_;
};

}  // namespace fbm

#endif  // FBM_TYPES_HPP
