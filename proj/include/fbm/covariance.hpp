#ifndef FBM_COVARIANCE_HPP
#define FBM_COVARIANCE_HPP

#include <cmath>
#include <stdexcept>

#include "fbm/types.hpp"

namespace fbm {

/// E[B_s B_t] = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2 for standard fBm.
inline double covariance(double s, double t, HurstParameter hurst) {
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("covariance requires nonnegative times");
  }
  const double two_h = 2.0 * hurst.value();
  return 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

/// Autocovariance of unit-spacing fractional Gaussian noise at integer lag.
/// Lag 0 gives the variance 1.
inline double unit_fgn_autocovariance(long long lag, double hurst) {
  const double n = static_cast<double>(lag < 0 ? -lag : lag);
  const double two_h = 2.0 * hurst;
  if (n == 0.0) {
    return 1.0;
  }
  return 0.5 * (std::pow(n + 1.0, two_h) + std::pow(n - 1.0, two_h) - 2.0 * std::pow(n, two_h));
}

/// Covariance between increments of spacing h that are `lag` steps apart:
/// h^{2H} [(n+1)^{2H} + (n-1)^{2H} - 2 n^{2H}] / 2. Lag 0 is the variance h^{2H}.
inline double increment_autocovariance(long long lag, double spacing, HurstParameter hurst) {
  if (lag < 0) {
    throw std::invalid_argument("increment lag must be nonnegative");
  }
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("increment spacing must be positive");
  }
  return std::pow(spacing, 2.0 * hurst.value()) * unit_fgn_autocovariance(lag, hurst.value());
}

}  // namespace fbm

#endif  // FBM_COVARIANCE_HPP
