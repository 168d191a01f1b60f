#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "tts/error.hpp"

namespace tts::dsp {

/// Real-to-complex FFT of a fixed size backed by FFTW. Planning goes through a
/// process-wide cache under a mutex (the FFTW planner is not thread-safe);
/// execution uses the new-array interface and is safe from any thread.
class RealFft {
 public:
  explicit RealFft(int n) : n_(n), in_(alloc_real(n)), out_(alloc_complex(n / 2 + 1)) {
    if (n <= 0) throw Error("fft size must be positive");
    plan_ = plan_for(n);
  }

  int size() const { return n_; }
  std::size_t bins() const { return static_cast<std::size_t>(n_ / 2 + 1); }

  /// Writes |X_k| for k = 0..n/2 into `magnitude`.
  void magnitude(std::span<const double> frame, std::span<double> magnitude) {
    for (int i = 0; i < n_; ++i) in_.get()[i] = frame[static_cast<std::size_t>(i)];
    fftw_execute_dft_r2c(plan_, in_.get(), out_.get());
    for (std::size_t k = 0; k < bins(); ++k) {
      magnitude[k] = std::hypot(out_.get()[k][0], out_.get()[k][1]);
    }
  }

 private:
  struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
  };

  static std::unique_ptr<double, FftwFree> alloc_real(int n) {
    return std::unique_ptr<double, FftwFree>(fftw_alloc_real(static_cast<std::size_t>(std::max(n, 1))));
  }
  static std::unique_ptr<fftw_complex, FftwFree> alloc_complex(int n) {
    return std::unique_ptr<fftw_complex, FftwFree>(fftw_alloc_complex(static_cast<std::size_t>(std::max(n, 1))));
  }

  // Plans live for the whole process.
  static fftw_plan plan_for(int n) {
    static std::mutex mu;
    static std::map<int, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    auto in = alloc_real(n);
    auto out = alloc_complex(n / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE);
    if (p == nullptr) throw Error("fftw planning failed");
    plans.emplace(n, p);
    return p;
  }

  int n_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  fftw_plan plan_ = nullptr;
};

}  // namespace tts::dsp
