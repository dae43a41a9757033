#include "boise/common.hpp"

#include <mutex>

namespace boise {

int Rng::categorical_log(std::span<const double> log_weights) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : log_weights) mx = std::max(mx, v);
  if (!std::isfinite(mx)) fail("categorical_log: all weights are zero");
  double total = 0.0;
  for (double v : log_weights) total += std::exp(v - mx);
  const double u = uniform() * total;
  double cum = 0.0;
  for (std::size_t k = 0; k < log_weights.size(); ++k) {
    cum += std::exp(log_weights[k] - mx);
    if (u < cum) return static_cast<int>(k);
  }
  return static_cast<int>(log_weights.size()) - 1;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace boise
