#ifndef FBM_RISK_HPP
#define FBM_RISK_HPP

// Fractional Black-Scholes prices Y_t = Y_0 exp((r + mu) t + sigma B^H_t) and
// drawdown statistics of the log-price. The gap bound is applied to the
// driftless component sigma B^H only; drift is reported descriptively.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbm/bounds.hpp"
#include "fbm/ensemble.hpp"
#include "fbm/functionals.hpp"
#include "fbm/report.hpp"
#include "fbm/stats.hpp"
#include "fbm/verify.hpp"

namespace fbm::risk {

struct RiskModelParams {
  double initial_price = 100.0;
  double rate = 0.0;
  double drift = 0.0;
  double volatility = 1.0;
  double maturity = 1.0;
  double hurst = 0.75;

  void validate() const {
    HurstParameter{hurst};
    if (!(initial_price > 0.0)) throw std::invalid_argument("initial price must be positive");
    if (!(volatility > 0.0)) throw std::invalid_argument("volatility must be positive");
    if (!(maturity > 0.0)) throw std::invalid_argument("maturity must be positive");
  }
};

inline nlohmann::ordered_json to_json(const RiskModelParams& p) {
  return {{"initial_price", p.initial_price}, {"rate", p.rate},         {"drift", p.drift},
          {"volatility", p.volatility},       {"maturity", p.maturity}, {"hurst", p.hurst}};
}

inline std::vector<double> fbs_price_path(const RiskModelParams& params, const SamplePath& path) {
  params.validate();
  const double horizon = path.grid().horizon();
  if (std::abs(horizon - params.maturity) > 1e-12 * params.maturity) {
    throw std::invalid_argument("path horizon " + std::to_string(horizon) +
                                " does not match maturity " + std::to_string(params.maturity));
  }
  if (path.hurst().value() != params.hurst) {
    throw std::invalid_argument("path Hurst parameter does not match the model");
  }
  const double growth = params.rate + params.drift;
  std::vector<double> prices(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    prices[k] = params.initial_price *
                std::exp(growth * path.grid().time(k) + params.volatility * path[k]);
  }
  return prices;
}

/// Lower bound on P(sigma Y_a <= y) = P(Y_a <= y / sigma).
inline double scaled_gap_risk_bound(const RiskModelParams& params, double horizon, double y) {
  params.validate();
  if (!(horizon > 0.0) || horizon > params.maturity) {
    throw std::invalid_argument("horizon must lie in (0, maturity]");
  }
  return bounds::gap_cdf_lower_bound(horizon, HurstParameter(params.hurst),
                                     y / params.volatility);
}

inline const std::vector<double>& default_report_quantiles() {
  static const std::vector<double> q{0.5, 0.9, 0.95, 0.99};
  return q;
}

struct DrawdownReport {
  std::vector<VerificationReport> reports;
  nlohmann::ordered_json quantile_table;
  nlohmann::ordered_json diagnostics;
  std::vector<FunctionalRecord> records;  // functionals of sigma B^H
  nlohmann::ordered_json params;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["params"] = params;
    j["reports"] = fbm::to_json(reports);
    j["quantile_table"] = quantile_table;
    j["diagnostics"] = diagnostics;
    return j;
  }
};

namespace detail {

struct RiskPathSample {
  FunctionalRecord scaled;        // functionals of sigma B
  double drawdown_with_drift = 0; // drawdown of (r + mu) t + sigma B
};

}  // namespace detail

/// Simulates `config.paths` log-price paths on [0, maturity] at the
/// configured resolution per unit time and tabulates drawdown statistics.
inline DrawdownReport drawdown_report(const RiskModelParams& params,
                                      const SimulationConfig& config) {
  params.validate();
  SimulationConfig c = config;
  c.hurst = params.hurst;
  c.censor_horizon = std::max(c.censor_horizon, params.maturity);
  c.validate();
  c.require_interval_paths();
  fbm::detail::Stopwatch watch;

  const double sigma = params.volatility;
  const double growth = params.rate + params.drift;
  const HurstParameter hurst(params.hurst);
  const EnsembleSpec spec{hurst,   params.maturity, c.steps_for(params.maturity),
                          c.paths, ensemble_seed(c.master_seed, EnsembleTag::kRiskDrawdown),
                          c.resolved_workers(), c.generator};
  const auto samples = map_paths<detail::RiskPathSample>(
      spec, [&](std::size_t, std::span<const double> values, const TimeGrid& grid) {
        std::vector<double> scaled(values.size()), drifted(values.size());
        for (std::size_t k = 0; k < values.size(); ++k) {
          scaled[k] = sigma * values[k];
          drifted[k] = growth * grid.time(k) + scaled[k];
        }
        detail::RiskPathSample s;
        s.scaled = compute_functionals(scaled, grid.spacing(), grid.horizon());
        s.drawdown_with_drift = fbm::detail::max_drawdown(drifted);
        return s;
      });
  const double seconds = watch.seconds();

  DrawdownReport out;
  out.params = fbm::to_json(c);
  out.params["model"] = to_json(params);
  std::vector<double> dd(samples.size()), gap(samples.size()), msup(samples.size()),
      dd_drift(samples.size()), terminal(samples.size());
  out.records.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    dd[i] = samples[i].scaled.max_drawdown;
    gap[i] = samples[i].scaled.terminal_gap;
    msup[i] = samples[i].scaled.reflected_sup;
    terminal[i] = samples[i].scaled.terminal_value;
    dd_drift[i] = samples[i].drawdown_with_drift;
    out.records.push_back(samples[i].scaled);
  }

  auto table = [](const std::vector<double>& v) {
    std::vector<double> q;
    for (double p : default_report_quantiles()) q.push_back(stats::quantile(v, p));
    return q;
  };
  out.quantile_table["quantiles"] = default_report_quantiles();
  out.quantile_table["max_drawdown"] = table(dd);
  out.quantile_table["terminal_gap"] = table(gap);
  out.quantile_table["reflected_sup"] = table(msup);
  out.quantile_table["max_drawdown_with_drift"] = table(dd_drift);

  const auto dm = stats::ks_two_sample(dd, msup);
  out.diagnostics["ks_distance_drawdown_vs_reflected_sup"] = dm.statistic;
  out.diagnostics["mean_max_drawdown"] = stats::mean(dd);
  out.diagnostics["mean_terminal_gap"] = stats::mean(gap);
  out.diagnostics["mean_max_drawdown_with_drift"] = stats::mean(dd_drift);
  out.diagnostics["note"] =
      "drawdown and gap are computed on sigma * B^H without drift; the drift column is "
      "descriptive. The drawdown/reflected-sup distance is descriptive, no relation is asserted.";

  if (hurst.is_persistent()) {
    for (double y : c.y_grid) {
      VerificationReport r = fbm::detail::base_report("risk-gap-bound", c);
      r.params["y"] = y;
      r.params["volatility"] = sigma;
      r.empirical = stats::empirical_cdf(gap, y, c.confidence);
      r.analytic_clamped = scaled_gap_risk_bound(params, params.maturity, y);
      r.analytic_unclamped =
          bounds::gap_cdf_lower_bound_raw(params.maturity, hurst, y / sigma);
      r.verdict = verdict_at_least(r.empirical.ci_low, r.empirical.ci_high, r.analytic_clamped);
      r.runtime_seconds = seconds;
      out.reports.push_back(r);
    }
  }

  if (hurst.is_brownian()) {
    // Levy: S_a - W_a has the law of |W_a|. The reference |sigma W_a| comes from
    // an independent ensemble so the two-sample test has its null distribution.
    fbm::detail::Stopwatch ref_watch;
    const EnsembleSpec ref{hurst,   params.maturity, c.steps_for(params.maturity),
                           c.paths, ensemble_seed(c.master_seed, EnsembleTag::kRiskReference),
                           c.resolved_workers(), c.generator};
    const auto reference = map_paths<double>(
        ref, [&](std::size_t, std::span<const double> values, const TimeGrid&) {
          return std::abs(sigma * values.back());
        });
    const auto ks = stats::ks_two_sample(gap, reference);
    VerificationReport r = fbm::detail::base_report("risk-levy-gap", c);
    r.empirical = stats::Estimate{ks.statistic, 0.0, 0.0, ks.statistic};
    r.verdict = ks.p_value >= c.alpha ? Verdict::kPass : Verdict::kFail;
    r.samples_used = 2 * c.paths;
    r.runtime_seconds = seconds + ref_watch.seconds();
    r.details["p_value"] = ks.p_value;
    r.details["alpha"] = c.alpha;
    r.notes = "H = 1/2: sup W - W_a and |W_a| are equal in law (Levy)";
    out.reports.push_back(r);
  }
  return out;
}

}  // namespace fbm::risk

#endif  // FBM_RISK_HPP
