#ifndef FBM_FUNCTIONALS_HPP
#define FBM_FUNCTIONALS_HPP

// Extreme-value functionals of a sampled path. All of them work on the grid
// values only; the discrete supremum therefore underestimates the
// continuous one and hitting times are detected late. Both biases make the
// upper-bound checks downstream conservative.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "fbm/types.hpp"

namespace fbm {

/// First passage outcome: a hit time, or censoring at the simulated horizon.
class HittingResult {
public:
  static HittingResult hit(double time) { return HittingResult(time, false); }
  static HittingResult censored(double horizon) { return HittingResult(horizon, true); }

  bool is_hit() const { return !censored_; }
  bool is_censored() const { return censored_; }
  /// Hit time, or the horizon when censored.
  double time() const { return time_; }

  friend bool operator==(const HittingResult&, const HittingResult&) = default;

private:
  HittingResult(double time, bool censored) : time_(time), censored_(censored) {}
  double time_;
  bool censored_;
};

struct FunctionalRecord {
  double sup = 0.0;            // S_a
  double reflected_sup = 0.0;  // M_a
  double terminal_value = 0.0; // B_a
  double terminal_gap = 0.0;   // Y_a = S_a - B_a
  double max_drawdown = 0.0;   // D_a
  HittingResult tau1 = HittingResult::censored(0.0);  // reflected, level 1
  HittingResult h1 = HittingResult::censored(0.0);    // one-sided, level 1

  friend bool operator==(const FunctionalRecord&, const FunctionalRecord&) = default;
};

namespace detail {

inline double max_value(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }

inline double max_abs_value(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_drawdown(std::span<const double> v) {
  double peak = v.front();
  double worst = 0.0;
  for (double x : v) {
    peak = std::max(peak, x);
    worst = std::max(worst, peak - x);
  }
  return worst;
}

inline HittingResult first_hitting_time(std::span<const double> v, double spacing,
                                        double horizon, double level, bool reflected) {
  if (!(level > 0.0)) throw std::invalid_argument("hitting level must be positive");
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double x = v[k];
    const bool up = x >= level;
    const bool down = reflected && -x >= level;
    if (!up && !down) continue;
    const double target = up ? level : -level;
    const double prev = v[k - 1];
    // prev lies strictly inside the band, so the fraction is in (0, 1].
    const double frac = (target - prev) / (x - prev);
    const double t = (k == v.size() - 1 && frac == 1.0)
                         ? horizon
                         : std::min(horizon, (static_cast<double>(k - 1) + frac) * spacing);
    return HittingResult::hit(t);
  }
  return HittingResult::censored(horizon);
}

}  // namespace detail

/// S = max_k values[k]; nonnegative because values[0] = 0.
inline double supremum(const SamplePath& path) { return detail::max_value(path.values()); }

/// M = max_k |values[k]|.
inline double reflected_supremum(const SamplePath& path) {
  return detail::max_abs_value(path.values());
}

/// First grid crossing of `level` (or of |B| when reflected), refined by
/// linear interpolation on the branch that crossed.
inline HittingResult first_hitting_time(const SamplePath& path, double level, bool reflected) {
  return detail::first_hitting_time(path.values(), path.grid().spacing(), path.grid().horizon(),
                                    level, reflected);
}

/// Y = S - B_a.
inline double terminal_gap(const SamplePath& path) { return supremum(path) - path.terminal(); }

/// D = max over k of (running max up to k) - values[k].
inline double max_drawdown(const SamplePath& path) { return detail::max_drawdown(path.values()); }

inline std::vector<double> running_supremum(const SamplePath& path) {
  std::vector<double> out(path.size());
  double peak = path[0];
  for (std::size_t k = 0; k < path.size(); ++k) {
    peak = std::max(peak, path[k]);
    out[k] = peak;
  }
  return out;
}

/// All functionals in one record; hitting times at level 1.
inline FunctionalRecord compute_functionals(std::span<const double> values, double spacing,
                                            double horizon) {
  FunctionalRecord r;
  double peak = 0.0;
  double abs_peak = 0.0;
  double worst = 0.0;
  for (double x : values) {
    peak = std::max(peak, x);
    abs_peak = std::max(abs_peak, std::abs(x));
    worst = std::max(worst, peak - x);
  }
  r.sup = peak;
  r.reflected_sup = abs_peak;
  r.terminal_value = values.back();
  r.terminal_gap = peak - values.back();
  r.max_drawdown = worst;
  r.tau1 = detail::first_hitting_time(values, spacing, horizon, 1.0, true);
  r.h1 = detail::first_hitting_time(values, spacing, horizon, 1.0, false);
  return r;
}

inline FunctionalRecord compute_functionals(const SamplePath& path) {
  return compute_functionals(path.values(), path.grid().spacing(), path.grid().horizon());
}

/// CSV of records; censored times are written as the horizon with flag 1.
inline void write_records_csv(std::ostream& os, std::span<const FunctionalRecord> records) {
  os << "sup,reflected_sup,terminal,gap,drawdown,tau1,tau1_censored,h1,h1_censored\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%d\n", r.sup,
                  r.reflected_sup, r.terminal_value, r.terminal_gap, r.max_drawdown,
                  r.tau1.time(), r.tau1.is_censored() ? 1 : 0, r.h1.time(),
                  r.h1.is_censored() ? 1 : 0);
    os << buf;
  }
}

}  // namespace fbm

#endif  // FBM_FUNCTIONALS_HPP
