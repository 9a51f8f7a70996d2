#pragma once

// Thin FFTW wrapper. Plans are built with FFTW_ESTIMATE so creating one does not
// touch the data; FFTW's planner is not thread-safe, so calls are serialized.

#include <complex>
#include <mutex>
#include <span>

#include <fftw3.h>

#include "dense.hpp"

namespace toepfact {

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// In-place DFT of any length. Forward uses exp(-2*pi*i*jk/N); the inverse
/// includes the 1/N factor.
inline void fft_inplace(std::span<Scalar> x, bool inverse = false) {
  const std::size_t len = x.size();
  if (len <= 1) return;
  auto* data = reinterpret_cast<fftw_complex*>(x.data());
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(len), data, data, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  if (!plan) throw error("fft: FFTW could not create a plan");
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (inverse) {
    const double s = 1.0 / static_cast<double>(len);
    for (auto& z : x) z *= s;
  }
}

}  // namespace toepfact
