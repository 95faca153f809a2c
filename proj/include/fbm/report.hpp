#ifndef FBM_REPORT_HPP
#define FBM_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbm/ensemble.hpp"
#include "fbm/stats.hpp"

namespace fbm {

enum class Verdict { kPass, kFail, kInconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

/// Claim "true value <= bound": pass when the whole interval is at or below
/// the bound, fail when it lies entirely above, inconclusive when it straddles.
inline Verdict verdict_at_most(double ci_low, double ci_high, double bound) {
  if (ci_high <= bound) return Verdict::kPass;
  if (ci_low > bound) return Verdict::kFail;
  return Verdict::kInconclusive;
}

/// Claim "true value >= bound", mirror image of verdict_at_most.
inline Verdict verdict_at_least(double ci_low, double ci_high, double bound) {
  if (ci_low >= bound) return Verdict::kPass;
  if (ci_high < bound) return Verdict::kFail;
  return Verdict::kInconclusive;
}

/// Claim "true value == target": pass iff the target lies in the interval.
inline Verdict verdict_contains(double ci_low, double ci_high, double target) {
  return (ci_low <= target && target <= ci_high) ? Verdict::kPass : Verdict::kFail;
}

struct VerificationReport {
  std::string claim_id;
  nlohmann::ordered_json params;
  stats::Estimate empirical;
  double analytic_clamped = 0.0;
  double analytic_unclamped = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::size_t samples_used = 0;
  std::size_t censored_count = 0;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::string notes;

  bool passed() const { return verdict == Verdict::kPass; }
};

inline const char* to_string(GeneratorKind k) {
  return k == GeneratorKind::kCirculant ? "circulant" : "cholesky";
}

/// Resolved configuration echo. `workers` is left out: it never changes results.
inline nlohmann::ordered_json to_json(const SimulationConfig& c) {
  nlohmann::ordered_json j;
  j["hurst"] = c.hurst;
  j["horizon"] = c.horizon;
  j["steps"] = c.steps;
  j["paths"] = c.paths;
  j["seed"] = c.master_seed;
  j["confidence"] = c.confidence;
  j["alpha"] = c.alpha;
  j["censor_horizon"] = c.censor_horizon;
  j["x_grid"] = c.x_grid;
  j["y_grid"] = c.y_grid;
  j["lambda_grid"] = c.lambda_grid;
  j["generator"] = to_string(c.generator);
  return j;
}

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["claim_id"] = r.claim_id;
  j["params"] = r.params;
  j["empirical"] = {{"estimate", r.empirical.value},
                    {"ci_low", r.empirical.ci_low},
                    {"ci_high", r.empirical.ci_high}};
  j["analytic"] = {{"clamped", r.analytic_clamped}, {"unclamped", r.analytic_unclamped}};
  j["verdict"] = to_string(r.verdict);
  j["samples_used"] = r.samples_used;
  j["censored_count"] = r.censored_count;
  j["seed"] = r.seed;
  j["runtime_seconds"] = r.runtime_seconds;
  if (!r.details.empty()) j["details"] = r.details;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline nlohmann::ordered_json to_json(const std::vector<VerificationReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

/// Process exit status for a batch: 0 all pass, 2 any fail, 3 inconclusive only.
inline int exit_code_for(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::kFail) return 2;
    if (r.verdict == Verdict::kInconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

}  // namespace fbm

#endif  // FBM_REPORT_HPP
