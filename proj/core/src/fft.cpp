#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace kdvg::detail {
namespace {

struct Plans {
  fftw_plan fwd;
  fftw_plan bwd;
};

// The planner is not thread-safe; execution of a finished plan is.
std::mutex g_plan_mutex;

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* r = fftw_alloc_real(n);
  fftw_complex* c = fftw_alloc_complex(n / 2 + 1);
  Plans p;
  p.fwd = fftw_plan_dft_r2c_1d(n, r, c, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_c2r_1d(n, c, r, FFTW_ESTIMATE);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(n, p).first->second;
}

struct Buffers {
  int n = 0;
  double* r = nullptr;
  fftw_complex* c = nullptr;
  ~Buffers() {
    fftw_free(r);
    fftw_free(c);
  }
  void ensure(int m) {
    if (m == n) return;
    fftw_free(r);
    fftw_free(c);
    r = fftw_alloc_real(m);
    c = fftw_alloc_complex(m / 2 + 1);
    n = m;
  }
};

thread_local Buffers tl_buf;

}  // namespace

void r2c(int n, const double* in, std::complex<double>* out_half) {
  const Plans& p = plans_for(n);
  tl_buf.ensure(n);
  std::memcpy(tl_buf.r, in, sizeof(double) * n);
  fftw_execute_dft_r2c(p.fwd, tl_buf.r, tl_buf.c);
  std::memcpy(static_cast<void*>(out_half), tl_buf.c, sizeof(fftw_complex) * (n / 2 + 1));
}

void c2r(int n, const std::complex<double>* in_half, double* out) {
  const Plans& p = plans_for(n);
  tl_buf.ensure(n);
  std::memcpy(tl_buf.c, static_cast<const void*>(in_half), sizeof(fftw_complex) * (n / 2 + 1));
  fftw_execute_dft_c2r(p.bwd, tl_buf.c, tl_buf.r);  // destroys its input, hence the copy
  std::memcpy(out, tl_buf.r, sizeof(double) * n);
}

}  // namespace kdvg::detail
