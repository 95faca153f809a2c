#ifndef FBM_STATS_HPP
#define FBM_STATS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/normal.hpp>

namespace fbm::stats {

/// Pairwise (cascade) summation; the result depends only on the order of
/// the input, never on how the input was produced.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of empty sample");
  return pairwise_sum(v) / static_cast<double>(v.size());
}

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Two-sided critical value z with P(|Z| <= z) = confidence.
inline double two_sided_z(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
}

/// Point estimate with standard error and a confidence interval.
struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Wilson score interval for `successes` out of `trials`.
inline Estimate proportion(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("proportion of zero trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z = two_sided_z(confidence);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Estimate e;
  e.value = p;
  e.standard_error = std::sqrt(p * (1.0 - p) / n);
  e.ci_low = std::clamp(centre - half, 0.0, 1.0);
  e.ci_high = std::clamp(centre + half, 0.0, 1.0);
  return e;
}

/// Fraction of samples >= x with a Wilson interval.
inline Estimate empirical_tail(std::span<const double> samples, double x, double confidence) {
  if (samples.empty()) throw std::invalid_argument("empirical_tail of empty sample");
  const auto hits = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [x](double s) { return s >= x; }));
  return proportion(hits, samples.size(), confidence);
}

/// Fraction of samples <= x with a Wilson interval.
inline Estimate empirical_cdf(std::span<const double> samples, double x, double confidence) {
  if (samples.empty()) throw std::invalid_argument("empirical_cdf of empty sample");
  const auto hits = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [x](double s) { return s <= x; }));
  return proportion(hits, samples.size(), confidence);
}

/// Sample mean with normal-theory interval mean +- z SE.
inline Estimate sample_mean(std::span<const double> samples, double confidence) {
  const double m = mean(samples);
  double ss = 0.0;
  if (samples.size() > 1) {
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) sq[i] = (samples[i] - m) * (samples[i] - m);
    ss = pairwise_sum(sq) / static_cast<double>(samples.size() - 1);
  }
  const double se = std::sqrt(ss / static_cast<double>(samples.size()));
  const double z = two_sided_z(confidence);
  return Estimate{m, se, m - z * se, m + z * se};
}

/// Mean of x^order and its standard error.
inline Estimate empirical_moment(std::span<const double> samples, int order,
                                 double confidence = 0.99) {
  if (samples.empty()) throw std::invalid_argument("empirical_moment of empty sample");
  if (order < 1) throw std::invalid_argument("moment order must be positive");
  std::vector<double> powered(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) powered[i] = std::pow(samples[i], order);
  return sample_mean(powered, confidence);
}

/// Kolmogorov distribution tail Q(t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2).
inline double kolmogorov_q(double t) {
  if (t < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * t * t);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Asymptotic p-value for a two-sample KS statistic with effective size
/// n m / (n + m), using the small-sample correction of Stephens.
inline double ks_p_value(double statistic, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
  const double root = std::sqrt(ne);
  return kolmogorov_q((root + 0.12 + 0.11 / root) * statistic);
}

/// sup over x >= lower of |F_a(x) - F_b(x)| for sorted samples. Both
/// empirical CDFs only jump at sample points, so the supremum is attained
/// at `lower` or at a sample value above it.
inline double cdf_distance_sorted(std::span<const double> a, std::span<const double> b,
                                  double lower) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  auto cdf_gap = [&](double x) {
    const auto ca = std::upper_bound(a.begin(), a.end(), x) - a.begin();
    const auto cb = std::upper_bound(b.begin(), b.end(), x) - b.begin();
    return std::abs(static_cast<double>(ca) / na - static_cast<double>(cb) / nb);
  };
  double d = cdf_gap(lower);
  std::size_t i = static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), lower) - a.begin());
  std::size_t j = static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), lower) - b.begin());
  // Merge walk over the remaining jump points.
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

inline KsResult ks_two_sample(std::span<const double> a_samples, std::span<const double> b_samples) {
  if (a_samples.empty() || b_samples.empty()) {
    throw std::invalid_argument("KS test needs two nonempty samples");
  }
  std::vector<double> a(a_samples.begin(), a_samples.end());
  std::vector<double> b(b_samples.begin(), b_samples.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double lower = std::min(a.front(), b.front());
  KsResult r;
  r.statistic = cdf_distance_sorted(a, b, lower);
  r.p_value = ks_p_value(r.statistic, a.size(), b.size());
  return r;
}

/// Empirical quantile by linear interpolation between order statistics.
inline double quantile(std::vector<double> samples, double q) {
  if (samples.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(samples.begin(), samples.end());
  const double pos = q * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[hi] - samples[lo]);
}

}  // namespace fbm::stats

#endif  // FBM_STATS_HPP
