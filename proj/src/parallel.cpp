#include "homcov/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace homcov {

unsigned worker_count() {
  if (const char* env = std::getenv("HOMCOV_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 64) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw < 1) hw = 1;
  if (hw > 64) hw = 64;
  return hw;
}

void parallel_chunks(
    std::uint64_t n,
    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& f) {
  if (n == 0) return;
  std::uint64_t w = worker_count();
  if (w > n) w = n;
  if (w == 1) {
    f(0, 0, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  std::uint64_t chunk = n / w, extra = n % w, begin = 0;
  for (std::uint64_t i = 0; i < w; ++i) {
    std::uint64_t end = begin + chunk + (i < extra ? 1 : 0);
    threads.emplace_back(f, static_cast<unsigned>(i), begin, end);
    begin = end;
  }
  for (auto& t : threads) t.join();
}

}  // namespace homcov
