#include "kdvg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace kdvg {
namespace {
std::atomic<int> g_threads{1};

template <class T>
T tree(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return tree(v, lo, mid) + tree(v, mid, hi);
}
}  // namespace

void set_num_threads(int n) { g_threads = std::max(1, n); }
int num_threads() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(g_threads));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::complex<double> tree_sum(const std::vector<std::complex<double>>& parts) {
  return parts.empty() ? std::complex<double>{} : tree(parts, 0, parts.size());
}

long double tree_sum(const std::vector<long double>& parts) {
  return parts.empty() ? 0.0L : tree(parts, 0, parts.size());
}

}  // namespace kdvg
