#ifndef FBM_FFT_HPP
#define FBM_FFT_HPP

// Thin RAII layer over FFTW. Plans are made with FFTW_ESTIMATE so that the
// chosen algorithm, and therefore every output bit, is the same on each run.

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <new>
#include <span>
#include <stdexcept>
#include <vector>

namespace fbm::fft {

namespace detail {

inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

struct PlanDestroy {
  void operator()(fftw_plan p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

}  // namespace detail

/// SIMD-aligned buffer owned by FFTW's allocator.
template <class T>
class AlignedBuffer {
public:
  AlignedBuffer() = default;
  explicit AlignedBuffer(std::size_t n)
      : data_(static_cast<T*>(fftw_malloc(sizeof(T) * n))), size_(n) {
    if (n > 0 && !data_) throw std::bad_alloc();
  }

  T* data() { return data_.get(); }
  const T* data() const { return data_.get(); }
  std::size_t size() const { return size_; }
  T& operator[](std::size_t i) { return data_.get()[i]; }
  const T& operator[](std::size_t i) const { return data_.get()[i]; }
  std::span<T> span() { return {data_.get(), size_}; }

private:
  std::unique_ptr<T, detail::FftwFree> data_;
  std::size_t size_ = 0;
};

using ComplexBuffer = AlignedBuffer<fftw_complex>;
using RealBuffer = AlignedBuffer<double>;

/// Real-to-complex forward transform of length n: out[k] = sum_j in[j] e^{-2 pi i jk/n},
/// k = 0..n/2.
inline std::vector<std::complex<double>> forward_real(std::span<const double> input) {
  const std::size_t n = input.size();
  RealBuffer in(n);
  ComplexBuffer out(n / 2 + 1);
  fftw_plan raw;
  {
    std::lock_guard lock(detail::planner_mutex());
    raw = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE);
  }
  std::unique_ptr<fftw_plan_s, detail::PlanDestroy> plan(raw);
  std::copy(input.begin(), input.end(), in.data());
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(n / 2 + 1);
  for (std::size_t k = 0; k < result.size(); ++k) {
    result[k] = {out[k][0], out[k][1]};
  }
  return result;
}

/// Reusable Hermitian-to-real backward transform of fixed length n:
/// out[j] = sum_{k=0}^{n-1} in[k] e^{+2 pi i jk/n}, with in[n-k] = conj(in[k]) implied.
/// execute() is safe to call from several threads on distinct buffers.
class HermitianToReal {
public:
  explicit HermitianToReal(std::size_t n) : n_(n) {
    ComplexBuffer in(n / 2 + 1);
    RealBuffer out(n);
    std::lock_guard lock(detail::planner_mutex());
    plan_.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE));
    if (!plan_) throw std::runtime_error("FFTW could not create a c2r plan");
  }

  std::size_t size() const { return n_; }

  /// Overwrites `in` (n/2 + 1 entries). Both buffers must come from AlignedBuffer.
  void execute(ComplexBuffer& in, RealBuffer& out) const {
    fftw_execute_dft_c2r(plan_.get(), in.data(), out.data());
  }

private:
  std::size_t n_;
  std::unique_ptr<fftw_plan_s, detail::PlanDestroy> plan_;
};

}  // namespace fbm::fft

#endif  // FBM_FFT_HPP
