#include "pgldes/util.hpp"

#include <atomic>
#include <thread>

namespace pgldes {

std::uint64_t binom64(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at every step: C(n-k+i, i)
    if (r > cap) return cap;
  }
  return static_cast<std::uint64_t>(r);
}

bool next_combination_colex(std::vector<std::uint64_t>& c, std::uint64_t n) {
  const std::size_t k = c.size();
  if (k == 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t limit = (i + 1 < k) ? c[i + 1] : n;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
      return true;
    }
  }
  return false;
}

std::uint64_t colex_rank(const std::vector<std::uint64_t>& c) {
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < c.size(); ++j) r += binom64(c[j], j + 1);
  return r;
}

void parallel_indices(std::size_t n, unsigned workers,
                      const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned nthreads =
      static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace pgldes
