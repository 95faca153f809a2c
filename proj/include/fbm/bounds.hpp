#ifndef FBM_BOUNDS_HPP
#define FBM_BOUNDS_HPP

// Closed-form identities and bounds for the supremum, hitting times and
// terminal gap of fBm with H > 1/2. Probability bounds are clamped to
// [0, 1]; the `_raw` variants return the unclamped expression.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fbm/types.hpp"

namespace fbm::bounds {

/// Thrown when a bound that needs persistent increments is requested outside H > 1/2.
class DomainError : public std::domain_error {
public:
  DomainError() : std::domain_error("theorem requires H > 1/2") {}
};

namespace detail {

inline void require_persistent(HurstParameter hurst) {
  if (!hurst.is_persistent()) throw DomainError();
}

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace detail

/// sqrt(2/pi): the constant in the refined tail bound, and E(S_1) for standard BM.
inline constexpr double kSqrtTwoOverPi = std::numbers::sqrt2 / 1.7724538509055160273;

inline double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

/// E(M_a^2) <= a^{2H}.
inline double second_moment_bound(double horizon, HurstParameter hurst) {
  detail::require_positive(horizon, "horizon");
  detail::require_persistent(hurst);
  return std::pow(horizon, 2.0 * hurst.value());
}

/// E(M_a) <= E(S_a) <= a^H.
inline double first_moment_bound(double horizon, HurstParameter hurst) {
  detail::require_positive(horizon, "horizon");
  detail::require_persistent(hurst);
  return std::pow(horizon, hurst.value());
}

inline double markov_tail_bound_raw(double horizon, HurstParameter hurst, double x) {
  detail::require_positive(x, "threshold");
  return first_moment_bound(horizon, hurst) / x;
}

/// P(S_a > x) <= a^H / x, clamped to 1.
inline double markov_tail_bound(double horizon, HurstParameter hurst, double x) {
  return clamp_probability(markov_tail_bound_raw(horizon, hurst, x));
}

inline double refined_tail_bound_raw(double horizon, HurstParameter hurst, double x) {
  detail::require_positive(horizon, "horizon");
  detail::require_positive(x, "threshold");
  detail::require_persistent(hurst);
  return kSqrtTwoOverPi * std::pow(horizon, hurst.value()) / x;
}

/// P(S_a >= x) <= sqrt(2) a^H / (x sqrt(pi)), clamped to 1.
inline double refined_tail_bound(double horizon, HurstParameter hurst, double x) {
  return clamp_probability(refined_tail_bound_raw(horizon, hurst, x));
}

/// E exp(-lambda H_a^{2H}) <= exp(-a sqrt(2 lambda)). The right side does
/// not involve H; the inequality itself is only asserted for H > 1/2.
inline double laplace_transform_bound(double lambda, double level) {
  detail::require_positive(lambda, "lambda");
  detail::require_positive(level, "level");
  return std::exp(-level * std::sqrt(2.0 * lambda));
}

inline double gap_cdf_lower_bound_raw(double horizon, HurstParameter hurst, double y) {
  detail::require_positive(y, "gap threshold");
  return 1.0 - refined_tail_bound_raw(horizon, hurst, y);
}

/// P(Y_a <= y) >= 1 - sqrt(2) a^H / (y sqrt(pi)), clamped to 0.
inline double gap_cdf_lower_bound(double horizon, HurstParameter hurst, double y) {
  return clamp_probability(gap_cdf_lower_bound_raw(horizon, hurst, y));
}

/// int_0^inf x^{k-1} e^{-x/theta} / Gamma(k) dx = theta^k.
inline double gamma_moment(double k, double theta) {
  detail::require_positive(k, "shape k");
  detail::require_positive(theta, "scale theta");
  return std::pow(theta, k);
}

/// E(T^{p/2}) for T exponential with rate lambda: Gamma((2+p)/2) / lambda^{p/2}.
inline double exp_half_moment(double p, double lambda) {
  detail::require_positive(p, "order p");
  detail::require_positive(lambda, "lambda");
  return std::tgamma(0.5 * (2.0 + p)) / std::pow(lambda, 0.5 * p);
}

/// E(S_1) <= sqrt(2/pi).
inline constexpr double expected_sup_unit_bound() { return kSqrtTwoOverPi; }

}  // namespace fbm::bounds

#endif  // FBM_BOUNDS_HPP
