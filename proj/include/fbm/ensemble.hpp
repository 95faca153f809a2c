#ifndef FBM_ENSEMBLE_HPP
#define FBM_ENSEMBLE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fbm/functionals.hpp"
#include "fbm/generators.hpp"
#include "fbm/random.hpp"
#include "fbm/types.hpp"

namespace fbm {

inline constexpr std::size_t kDefaultStepsPerUnit = std::size_t{1} << 14;
inline constexpr std::size_t kDefaultPaths = 10000;
inline constexpr std::size_t kMinPathsForInterval = 100;

struct SimulationConfig {
  double hurst = 0.75;
  double horizon = 1.0;
  std::size_t steps = kDefaultStepsPerUnit;
  std::size_t paths = kDefaultPaths;
  std::uint64_t master_seed = 0;
  double confidence = 0.99;
  double alpha = 0.01;  // significance level of law-equality tests
  std::vector<double> x_grid{1.0, 1.5, 2.0, 3.0};
  std::vector<double> y_grid{1.0, 2.0, 4.0};
  std::vector<double> lambda_grid{0.5, 1.0, 2.0};
  double censor_horizon = 4.0;
  unsigned workers = 0;  // 0: one per hardware thread
  GeneratorKind generator = GeneratorKind::kCirculant;

  /// Grid resolution per unit of time, shared by every derived run.
  double steps_per_unit() const { return static_cast<double>(steps) / horizon; }

  /// Steps needed to cover `span` at this resolution.
  std::size_t steps_for(double span) const {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(span * steps_per_unit())));
  }

  void validate() const {
    HurstParameter{hurst};
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
      throw std::invalid_argument("horizon must be positive");
    }
    if (steps == 0) throw std::invalid_argument("steps must be >= 1");
    if (paths == 0) throw std::invalid_argument("paths must be >= 1");
    if (!(confidence > 0.0 && confidence < 1.0)) {
      throw std::invalid_argument("confidence must lie in (0, 1)");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (!(censor_horizon >= horizon)) {
      throw std::invalid_argument("censor horizon must be >= horizon");
    }
  }

  /// Interval estimators need at least kMinPathsForInterval replications.
  void require_interval_paths() const {
    if (paths < kMinPathsForInterval) {
      throw std::invalid_argument("at least " + std::to_string(kMinPathsForInterval) +
                                  " paths are required for confidence intervals");
    }
  }

  unsigned resolved_workers() const {
    if (workers > 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Runs fn(index, state) for index in [0, count) on `workers` threads, one
/// State per thread. Indices are claimed dynamically, so fn must write its
/// result to a slot owned by `index`. The exception from the lowest failing
/// index is rethrown with that index attached.
template <class State, class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  constexpr std::size_t kChunk = 8;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex error_mutex;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto body = [&] {
    State state{};
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= count) break;
      const std::size_t end = std::min(count, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i, state);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
          stop = true;
          return;
        }
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(
                                                                  std::max<std::size_t>(1, count))));
  if (n == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(body);
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw std::runtime_error("replication " + std::to_string(error_index) + ": " + e.what());
    }
  }
}

/// One ensemble run: `paths` fBm paths on [0, horizon] with `steps` steps;
/// replication i draws from stream (seed, i).
struct EnsembleSpec {
  HurstParameter hurst{0.5};
  double horizon = 1.0;
  std::size_t steps = 1;
  std::size_t paths = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  GeneratorKind generator = GeneratorKind::kCirculant;
};

/// Applies fn(index, values, grid) to each simulated path and stores the
/// returned value at `index`.
template <class T, class Fn>
std::vector<T> map_paths(const EnsembleSpec& spec, Fn&& fn) {
  const TimeGrid grid(spec.horizon, spec.steps);
  auto cache = std::make_shared<SamplerCache>(spec.generator);
  // Build the shared sampler before fanning out.
  if (spec.generator == GeneratorKind::kCirculant) {
    cache->circulant(grid.steps(), spec.hurst);
  } else {
    cache->cholesky(grid.steps(), spec.hurst);
  }
  const PathSampler sampler(cache);
  std::vector<T> out(spec.paths);
  struct State {
    SamplerWorkspace ws;
    std::vector<double> values;
  };
  parallel_for<State>(spec.paths, spec.workers, [&](std::size_t i, State& st) {
    CounterRng rng(RngSpec{spec.seed, i});
    sampler.sample_values(grid, spec.hurst, rng, st.values, st.ws);
    out[i] = fn(i, std::span<const double>(st.values), grid);
  });
  return out;
}

inline std::vector<FunctionalRecord> simulate_records(const EnsembleSpec& spec) {
  return map_paths<FunctionalRecord>(
      spec, [](std::size_t, std::span<const double> values, const TimeGrid& grid) {
        return compute_functionals(values, grid.spacing(), grid.horizon());
      });
}

/// N functional records for the configured horizon and grid.
inline std::vector<FunctionalRecord> simulate_ensemble(const SimulationConfig& config) {
  config.validate();
  return simulate_records(EnsembleSpec{HurstParameter(config.hurst), config.horizon, config.steps,
                                       config.paths, config.master_seed,
                                       config.resolved_workers(), config.generator});
}

}  // namespace fbm

#endif  // FBM_ENSEMBLE_HPP
