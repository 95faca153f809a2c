#ifndef FBM_CLI_HPP
#define FBM_CLI_HPP

// Command-line front end shared by tools/fbm_cli.cpp and the tests.
//
//   generate     one fBm path as CSV (t,value)
//   functionals  per-path functional records as CSV or JSON
//   verify       verification suites, JSON report array
//   report       drawdown report for the fractional Black-Scholes model
//
// Exit codes: 0 all reports pass, 1 usage error, 2 any fail,
// 3 inconclusive only, 4 I/O failure.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fbm/ensemble.hpp"
#include "fbm/functionals.hpp"
#include "fbm/generators.hpp"
#include "fbm/report.hpp"
#include "fbm/risk.hpp"
#include "fbm/verify.hpp"

namespace fbm::cli {

inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 4;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// --help was given; the message is the help text.
class HelpRequested : public UsageError {
public:
  using UsageError::UsageError;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { kGenerate, kFunctionals, kVerify, kReport };
enum class Format { kCsv, kJson };

struct CliConfig {
  Subcommand subcommand = Subcommand::kVerify;
  SimulationConfig sim;
  std::vector<std::string> suites;
  std::string output_path;  // empty: standard output
  Format format = Format::kJson;
  std::size_t path_index = 0;
  risk::RiskModelParams model;
};

/// Valid --suite values in canonical order.
inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "thm1-identity", "thm1-moment", "corollary-tail", "thm2-tail", "thm2-expsup",
      "eq15-laplace",  "thm3-gap",    "bm-sanity",      "risk-report", "all"};
  return names;
}

/// Hurst range a suite accepts.
inline bool suite_accepts(const std::string& suite, double hurst) {
  if (suite == "bm-sanity") return hurst == 0.5;
  if (suite == "thm1-identity" || suite == "eq15-laplace") return hurst >= 0.5;
  if (suite == "risk-report" || suite == "all") return true;
  return hurst > 0.5;
}

inline std::string suite_domain(const std::string& suite) {
  if (suite == "bm-sanity") return "requires H = 1/2";
  if (suite == "thm1-identity" || suite == "eq15-laplace") return "requires H >= 1/2";
  return "theorem requires H > 1/2";
}

/// `all` expanded to the suites whose domain contains `hurst`.
inline std::vector<std::string> expand_suites(const std::vector<std::string>& suites,
                                              double hurst) {
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& s : suites) {
    if (s == "all") {
      for (const auto& name : suite_names()) {
        if (name != "all" && suite_accepts(name, hurst)) add(name);
      }
    } else {
      add(s);
    }
  }
  return out;
}

namespace detail {

inline std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

inline void check(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

}  // namespace detail

/// Parses argv into a fully resolved configuration. Throws UsageError naming
/// the violated constraint.
inline CliConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Fractional Brownian motion simulation and verification", "fbm"};
  app.require_subcommand(1);

  CliConfig cfg;
  auto& sim = cfg.sim;
  std::optional<std::size_t> steps;
  std::optional<double> censor;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string generator = "circulant";
  std::vector<std::string> suites;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--hurst", sim.hurst, "Hurst parameter H in (0,1)");
    sub->add_option("--horizon", sim.horizon, "Time horizon a");
    sub->add_option("--steps", steps, "Grid steps over the horizon (default 2^14 per unit)");
    sub->add_option("--paths", sim.paths, "Number of simulated paths");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--confidence", sim.confidence, "Confidence level in (0,1)");
    sub->add_option("--alpha", sim.alpha, "Significance level of law tests");
    sub->add_option("--censor-horizon", censor, "Simulation horizon for hitting times");
    sub->add_option("--x-grid", sim.x_grid, "Tail thresholds x")->delimiter(',');
    sub->add_option("--y-grid", sim.y_grid, "Gap thresholds y")->delimiter(',');
    sub->add_option("--lambda-grid", sim.lambda_grid, "Laplace / exponential rates")
        ->delimiter(',');
    sub->add_option("--workers", sim.workers, "Worker threads (0: all cores)");
    sub->add_option("--generator", generator, "circulant | cholesky");
    sub->add_option("--out", cfg.output_path, "Output file (default: stdout)");
    sub->add_option("--format", format, "csv | json");
  };

  auto* gen = app.add_subcommand("generate", "Write one fBm path as CSV");
  add_common(gen);
  gen->add_option("--index", cfg.path_index, "Replication index of the path");
  auto* fun = app.add_subcommand("functionals", "Per-path functional records");
  add_common(fun);
  auto* ver = app.add_subcommand("verify", "Run verification suites");
  add_common(ver);
  ver->add_option("--suite", suites, "Suites to run")->delimiter(',');
  auto* rep = app.add_subcommand("report", "Drawdown report for the fractional Black-Scholes model");
  add_common(rep);
  for (auto* sub : {ver, rep}) {
    sub->add_option("--price0", cfg.model.initial_price, "Initial price Y0");
    sub->add_option("--rate", cfg.model.rate, "Interest rate r");
    sub->add_option("--drift", cfg.model.drift, "Drift mu");
    sub->add_option("--sigma", cfg.model.volatility, "Volatility sigma");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (gen->parsed()) cfg.subcommand = Subcommand::kGenerate;
  if (fun->parsed()) cfg.subcommand = Subcommand::kFunctionals;
  if (ver->parsed()) cfg.subcommand = Subcommand::kVerify;
  if (rep->parsed()) cfg.subcommand = Subcommand::kReport;

  using detail::check;
  check(sim.hurst > 0.0 && sim.hurst < 1.0, "--hurst: 0 < H < 1 required");
  check(sim.horizon > 0.0 && std::isfinite(sim.horizon), "--horizon: must be > 0");
  check(sim.paths >= 1, "--paths: must be >= 1");
  check(sim.confidence > 0.0 && sim.confidence < 1.0, "--confidence: must lie in (0,1)");
  check(sim.alpha > 0.0 && sim.alpha < 1.0, "--alpha: must lie in (0,1)");
  sim.steps = steps.value_or(static_cast<std::size_t>(
      std::max(1.0, std::round(static_cast<double>(kDefaultStepsPerUnit) * sim.horizon))));
  check(sim.steps >= 1, "--steps: must be >= 1");
  sim.censor_horizon = censor.value_or(4.0 * sim.horizon);
  check(sim.censor_horizon >= sim.horizon, "--censor-horizon: must be >= horizon");
  for (double x : sim.x_grid) check(x > 0.0, "--x-grid: values must be > 0");
  for (double y : sim.y_grid) check(y > 0.0, "--y-grid: values must be > 0");
  for (double l : sim.lambda_grid) check(l > 0.0, "--lambda-grid: values must be > 0");

  check(generator == "circulant" || generator == "cholesky",
        "--generator: must be circulant or cholesky");
  sim.generator = generator == "cholesky" ? GeneratorKind::kCholesky : GeneratorKind::kCirculant;
  if (sim.generator == GeneratorKind::kCholesky) {
    check(sim.steps <= kDefaultCholeskyCap,
          "--steps: cholesky generator supports at most " + std::to_string(kDefaultCholeskyCap));
  }
  check(format == "csv" || format == "json", "--format: must be csv or json");
  cfg.format = format == "csv" ? Format::kCsv : Format::kJson;

  if (seed) {
    sim.master_seed = *seed;
  } else {
    check(cfg.subcommand != Subcommand::kVerify, "--seed: required in verify mode");
  }

  cfg.model.hurst = sim.hurst;
  cfg.model.maturity = sim.horizon;
  check(cfg.model.initial_price > 0.0, "--price0: must be > 0");
  check(cfg.model.volatility > 0.0, "--sigma: must be > 0");

  if (cfg.subcommand == Subcommand::kVerify) {
    check(!suites.empty(), "--suite: required; valid suites: " + detail::join(suite_names(), ", "));
    for (const auto& s : suites) {
      const auto& names = suite_names();
      check(std::find(names.begin(), names.end(), s) != names.end(),
            "--suite: unknown suite '" + s + "'; valid suites: " + detail::join(names, ", "));
      check(suite_accepts(s, sim.hurst), "--suite " + s + ": " + suite_domain(s));
    }
    cfg.suites = expand_suites(suites, sim.hurst);
    check(!cfg.suites.empty(), "--suite: no suite applies to H = " + std::to_string(sim.hurst));
  }
  if (cfg.subcommand != Subcommand::kGenerate) {
    cfg.sim.validate();
  }
  return cfg;
}

/// All reports for the configured suites, in suite order.
inline std::vector<VerificationReport> run_suites(const CliConfig& cfg) {
  const auto& c = cfg.sim;
  std::vector<VerificationReport> out;
  std::optional<std::vector<VerificationReport>> tails;
  auto tail_reports = [&]() -> const std::vector<VerificationReport>& {
    if (!tails) tails = verify_tail_bounds(c);
    return *tails;
  };
  auto append = [&](const std::vector<VerificationReport>& v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  for (const auto& suite : cfg.suites) {
    if (suite == "thm1-identity") {
      append(verify_law_identities(c));
    } else if (suite == "thm1-moment") {
      append(verify_second_moment(c));
    } else if (suite == "corollary-tail") {
      for (const auto& r : tail_reports()) {
        if (r.claim_id == "corollary-tail") out.push_back(r);
      }
    } else if (suite == "thm2-tail") {
      for (const auto& r : tail_reports()) {
        if (r.claim_id != "corollary-tail") out.push_back(r);
      }
    } else if (suite == "thm2-expsup") {
      for (double rate : c.lambda_grid) append(verify_exponential_sup(c, rate));
    } else if (suite == "eq15-laplace") {
      append(verify_laplace_bound(c));
    } else if (suite == "thm3-gap") {
      append(verify_gap_bound(c));
    } else if (suite == "bm-sanity") {
      append(bm_sanity_suite(c));
    } else if (suite == "risk-report") {
      append(risk::drawdown_report(cfg.model, c).reports);
    }
  }
  return out;
}

namespace detail {

/// Writes to the configured file or to `fallback`.
inline void emit(const CliConfig& cfg, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& write) {
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw IoError("cannot open " + cfg.output_path + " for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("failed writing " + cfg.output_path);
}

inline nlohmann::ordered_json records_json(const std::vector<FunctionalRecord>& records,
                                           const SimulationConfig& c) {
  nlohmann::ordered_json j;
  j["params"] = to_json(c);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    arr.push_back({{"sup", r.sup},
                   {"reflected_sup", r.reflected_sup},
                   {"terminal", r.terminal_value},
                   {"gap", r.terminal_gap},
                   {"drawdown", r.max_drawdown},
                   {"tau1", r.tau1.time()},
                   {"tau1_censored", r.tau1.is_censored()},
                   {"h1", r.h1.time()},
                   {"h1_censored", r.h1.is_censored()}});
  }
  j["records"] = arr;
  return j;
}

}  // namespace detail

/// Executes a parsed configuration; returns the process exit code.
inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto& c = cfg.sim;
    switch (cfg.subcommand) {
      case Subcommand::kGenerate: {
        const TimeGrid grid(c.horizon, c.steps);
        const PathSampler sampler(std::make_shared<SamplerCache>(c.generator));
        const auto path =
            sampler.sample(grid, HurstParameter(c.hurst), RngSpec{c.master_seed, cfg.path_index});
        detail::emit(cfg, out, [&](std::ostream& os) { write_path_csv(os, path); });
        return 0;
      }
      case Subcommand::kFunctionals: {
        const auto records = simulate_ensemble(c);
        detail::emit(cfg, out, [&](std::ostream& os) {
          if (cfg.format == Format::kCsv) {
            write_records_csv(os, records);
          } else {
            os << detail::records_json(records, c).dump(2) << '\n';
          }
        });
        return 0;
      }
      case Subcommand::kVerify: {
        const auto reports = run_suites(cfg);
        detail::emit(cfg, out, [&](std::ostream& os) { os << to_json(reports).dump(2) << '\n'; });
        for (const auto& r : reports) {
          err << r.claim_id << ": " << to_string(r.verdict) << '\n';
        }
        return exit_code_for(reports);
      }
      case Subcommand::kReport: {
        const auto report = risk::drawdown_report(cfg.model, c);
        detail::emit(cfg, out, [&](std::ostream& os) {
          if (cfg.format == Format::kCsv) {
            write_records_csv(os, report.records);
          } else {
            os << report.to_json().dump(2) << '\n';
          }
        });
        return exit_code_for(report.reports);
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

/// parse_args + run with usage errors mapped to exit code 1.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
  CliConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const HelpRequested& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace fbm::cli

#endif  // FBM_CLI_HPP
