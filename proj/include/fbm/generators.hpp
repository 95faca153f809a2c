#ifndef FBM_GENERATORS_HPP
#define FBM_GENERATORS_HPP

// Exact samplers for fractional Gaussian noise (the increments of fBm on a
// uniform grid) and helpers that turn increments into sample paths.
//
// Both samplers work on unit spacing and scale by h^H afterwards, which is
// exact because the fGn autocovariance is homogeneous of degree 2H in h.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fbm/covariance.hpp"
#include "fbm/fft.hpp"
#include "fbm/random.hpp"
#include "fbm/types.hpp"

namespace fbm {

enum class GeneratorKind { kCirculant, kCholesky };

inline constexpr std::size_t kDefaultCholeskyCap = 4096;
inline constexpr double kDefaultEigenTolerance = 1e-12;

/// Raised when a covariance matrix or circulant embedding fails to be
/// nonnegative-definite.
class GeneratorError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Cholesky factor of the n x n unit-spacing fGn covariance.
/// O(n^2) memory, O(n^3) setup; sampling is O(n^2).
class CholeskyFgn {
public:
  CholeskyFgn(std::size_t steps, HurstParameter hurst, std::size_t cap = kDefaultCholeskyCap)
      : n_(steps), hurst_(hurst), lower_(steps * (steps + 1) / 2) {
    if (steps == 0) throw std::invalid_argument("Cholesky sampler needs at least one step");
    if (steps > cap) {
      throw std::invalid_argument("Cholesky sampler limited to " + std::to_string(cap) +
                                  " steps, got " + std::to_string(steps));
    }
    std::vector<double> gamma(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      gamma[k] = unit_fgn_autocovariance(static_cast<long long>(k), hurst.value());
    }
    // Packed row-major lower triangle: L(i, j) at i(i+1)/2 + j.
    for (std::size_t i = 0; i < n_; ++i) {
      double* row_i = &lower_[i * (i + 1) / 2];
      for (std::size_t j = 0; j <= i; ++j) {
        const double* row_j = &lower_[j * (j + 1) / 2];
        double sum = gamma[i - j];
        for (std::size_t k = 0; k < j; ++k) sum -= row_i[k] * row_j[k];
        if (i == j) {
          if (!(sum > 0.0)) {
            throw GeneratorError("fGn covariance not positive-definite at pivot " +
                                 std::to_string(i) + " (value " + std::to_string(sum) + ")");
          }
          row_i[i] = std::sqrt(sum);
        } else {
          row_i[j] = sum / row_j[j];
        }
      }
    }
  }

  std::size_t steps() const { return n_; }
  HurstParameter hurst() const { return hurst_; }

  /// Writes `steps()` increments for grid spacing `spacing` into `out`.
  void sample(CounterRng& rng, double spacing, std::span<double> out) const {
    if (out.size() != n_) throw std::invalid_argument("output length must equal steps");
    std::vector<double> z(n_);
    fill_standard_normal(rng, z);
    const double scale = std::pow(spacing, hurst_.value());
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = &lower_[i * (i + 1) / 2];
      double acc = 0.0;
      for (std::size_t k = 0; k <= i; ++k) acc += row[k] * z[k];
      out[i] = scale * acc;
    }
  }

private:
  std::size_t n_;
  HurstParameter hurst_;
  std::vector<double> lower_;
};

/// Davies-Harte circulant embedding of the unit-spacing fGn covariance into
/// a circulant of size m = 2M (M a power of two). Produces up to M exact
/// fGn values per draw with one length-m Hermitian FFT.
class CirculantFgn {
public:
  /// Smallest power-of-two embedding size m >= 2 * steps.
  static std::size_t embedding_size(std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("circulant sampler needs at least one step");
    return std::bit_ceil(2 * steps);
  }

  CirculantFgn(std::size_t steps, HurstParameter hurst,
               double eigen_tolerance = kDefaultEigenTolerance)
      : m_(embedding_size(steps)), hurst_(hurst), transform_(m_) {
    const std::size_t half = m_ / 2;
    std::vector<double> first_row(m_);
    for (std::size_t k = 0; k <= half; ++k) {
      first_row[k] = unit_fgn_autocovariance(static_cast<long long>(k), hurst.value());
    }
    for (std::size_t k = 1; k < half; ++k) first_row[m_ - k] = first_row[k];

    const auto spectrum = fft::forward_real(first_row);
    double max_eig = 0.0;
    for (const auto& c : spectrum) max_eig = std::max(max_eig, c.real());
    const double floor = -eigen_tolerance * max_eig;
    scale_.resize(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
      double eig = spectrum[k].real();
      if (eig < floor) {
        throw GeneratorError("embedding not nonnegative-definite: eigenvalue " +
                             std::to_string(eig) + " at index " + std::to_string(k));
      }
      eig = std::max(eig, 0.0);
      // Interior frequencies carry complex weights (U + iV)/sqrt(2).
      const bool real_mode = (k == 0 || k == half);
      scale_[k] = std::sqrt(eig / static_cast<double>(m_) / (real_mode ? 1.0 : 2.0));
    }
  }

  std::size_t embedding() const { return m_; }
  std::size_t capacity() const { return m_ / 2; }
  HurstParameter hurst() const { return hurst_; }

  /// Per-thread buffers for sample(); reuse across calls.
  struct Workspace {
    fft::ComplexBuffer spectrum;
    fft::RealBuffer signal;
    std::vector<double> normals;
  };

  Workspace make_workspace() const {
    return Workspace{fft::ComplexBuffer(m_ / 2 + 1), fft::RealBuffer(m_),
                     std::vector<double>(m_)};
  }

  /// Writes out.size() <= capacity() increments for grid spacing `spacing`.
  void sample(CounterRng& rng, double spacing, std::span<double> out, Workspace& ws) const {
    if (out.size() > capacity()) {
      throw std::invalid_argument("requested more increments than the embedding supports");
    }
    const std::size_t half = m_ / 2;
    fill_standard_normal(rng, ws.normals);
    ws.spectrum[0][0] = scale_[0] * ws.normals[0];
    ws.spectrum[0][1] = 0.0;
    ws.spectrum[half][0] = scale_[half] * ws.normals[1];
    ws.spectrum[half][1] = 0.0;
    for (std::size_t k = 1; k < half; ++k) {
      ws.spectrum[k][0] = scale_[k] * ws.normals[2 * k];
      ws.spectrum[k][1] = scale_[k] * ws.normals[2 * k + 1];
    }
    transform_.execute(ws.spectrum, ws.signal);
    const double factor = std::pow(spacing, hurst_.value());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = factor * ws.signal[i];
  }

  std::vector<double> sample(CounterRng& rng, double spacing, std::size_t count) const {
    auto ws = make_workspace();
    std::vector<double> out(count);
    sample(rng, spacing, out, ws);
    return out;
  }

private:
  std::size_t m_;
  HurstParameter hurst_;
  fft::HermitianToReal transform_;
  std::vector<double> scale_;
};

/// n jointly Gaussian increments with the exact fGn covariance, via Cholesky.
inline std::vector<double> fgn_cholesky(const TimeGrid& grid, HurstParameter hurst,
                                        RngSpec rng_spec,
                                        std::size_t cap = kDefaultCholeskyCap) {
  CholeskyFgn sampler(grid.steps(), hurst, cap);
  CounterRng rng(rng_spec);
  std::vector<double> out(grid.steps());
  sampler.sample(rng, grid.spacing(), out);
  return out;
}

/// n jointly Gaussian increments with the exact fGn covariance, via circulant embedding.
inline std::vector<double> fgn_circulant(const TimeGrid& grid, HurstParameter hurst,
                                         RngSpec rng_spec,
                                         double eigen_tolerance = kDefaultEigenTolerance) {
  CirculantFgn sampler(grid.steps(), hurst, eigen_tolerance);
  CounterRng rng(rng_spec);
  return sampler.sample(rng, grid.spacing(), grid.steps());
}

/// Cumulative sum of increments, starting at 0.
inline SamplePath path_from_increments(std::span<const double> increments, const TimeGrid& grid,
                                       HurstParameter hurst) {
  if (increments.size() != grid.steps()) {
    throw std::invalid_argument("increment count " + std::to_string(increments.size()) +
                                " does not match grid steps " + std::to_string(grid.steps()));
  }
  std::vector<double> values(grid.steps() + 1);
  values[0] = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    acc += increments[k];
    values[k + 1] = acc;
  }
  return SamplePath(grid, hurst, std::move(values));
}

/// Self-similarity map t -> c t: horizon scales by c, values by c^H.
inline SamplePath rescale_path(const SamplePath& path, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("rescale factor must be positive");
  const double factor = std::pow(c, path.hurst().value());
  std::vector<double> values(path.values());
  for (double& v : values) v *= factor;
  return SamplePath(TimeGrid(path.grid().horizon() * c, path.grid().steps()), path.hurst(),
                    std::move(values));
}

/// Thread-safe store of samplers keyed by (H, size), shared by an ensemble.
/// Lookups for a given key always return the same object, so every worker
/// draws through identical eigenvalues or factors.
class SamplerCache {
public:
  explicit SamplerCache(GeneratorKind kind = GeneratorKind::kCirculant,
                        std::size_t cholesky_cap = kDefaultCholeskyCap)
      : kind_(kind), cholesky_cap_(cholesky_cap) {}

  GeneratorKind kind() const { return kind_; }

  std::shared_ptr<const CirculantFgn> circulant(std::size_t steps, HurstParameter hurst) {
    const auto key = std::make_pair(hurst.value(), CirculantFgn::embedding_size(steps));
    std::lock_guard lock(mutex_);
    auto& slot = circulant_[key];
    if (!slot) slot = std::make_shared<const CirculantFgn>(steps, hurst);
    return slot;
  }

  std::shared_ptr<const CholeskyFgn> cholesky(std::size_t steps, HurstParameter hurst) {
    const auto key = std::make_pair(hurst.value(), steps);
    std::lock_guard lock(mutex_);
    auto& slot = cholesky_[key];
    if (!slot) slot = std::make_shared<const CholeskyFgn>(steps, hurst, cholesky_cap_);
    return slot;
  }

private:
  GeneratorKind kind_;
  std::size_t cholesky_cap_;
  std::mutex mutex_;
  std::map<std::pair<double, std::size_t>, std::shared_ptr<const CirculantFgn>> circulant_;
  std::map<std::pair<double, std::size_t>, std::shared_ptr<const CholeskyFgn>> cholesky_;
};

/// Per-thread scratch for PathSampler; holds one workspace per embedding size.
struct SamplerWorkspace {
  std::map<std::size_t, CirculantFgn::Workspace> circulant;
  std::vector<double> increments;
};

/// Draws fBm paths for arbitrary grids through a shared SamplerCache.
class PathSampler {
public:
  explicit PathSampler(std::shared_ptr<SamplerCache> cache) : cache_(std::move(cache)) {}

  /// Path values (steps + 1 entries, values[0] = 0) written into `values`.
  void sample_values(const TimeGrid& grid, HurstParameter hurst, CounterRng& rng,
                     std::vector<double>& values, SamplerWorkspace& ws) const {
    const std::size_t n = grid.steps();
    ws.increments.resize(n);
    if (cache_->kind() == GeneratorKind::kCholesky) {
      cache_->cholesky(n, hurst)->sample(rng, grid.spacing(), ws.increments);
    } else {
      const auto sampler = cache_->circulant(n, hurst);
      auto it = ws.circulant.find(sampler->embedding());
      if (it == ws.circulant.end()) {
        it = ws.circulant.emplace(sampler->embedding(), sampler->make_workspace()).first;
      }
      sampler->sample(rng, grid.spacing(), ws.increments, it->second);
    }
    values.resize(n + 1);
    values[0] = 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += ws.increments[k];
      values[k + 1] = acc;
    }
  }

  SamplePath sample(const TimeGrid& grid, HurstParameter hurst, RngSpec spec) const {
    CounterRng rng(spec);
    SamplerWorkspace ws;
    std::vector<double> values;
    sample_values(grid, hurst, rng, values, ws);
    return SamplePath(grid, hurst, std::move(values));
  }

private:
  std::shared_ptr<SamplerCache> cache_;
};

/// CSV with header `t,value`, times at 17 significant digits.
inline void write_path_csv(std::ostream& os, const SamplePath& path) {
  os << "t,value\n";
  char buf[64];
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", path.grid().time(k), path[k]);
    os << buf;
  }
}

}  // namespace fbm

#endif  // FBM_GENERATORS_HPP
