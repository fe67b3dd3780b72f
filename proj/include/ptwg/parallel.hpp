#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptwg {

// Deterministic parallel map: each index writes its own slot, so results are
// bit-identical to the serial loop regardless of thread count or schedule.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::ptrdiff_t n, Fn&& fn) {
  std::vector<T> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<size_t>(i)] = fn(i);
  return out;
}

template <typename T, typename Fn>
std::vector<T> serial_map(std::ptrdiff_t n, Fn&& fn) {
  std::vector<T> out(static_cast<size_t>(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<size_t>(i)] = fn(i);
  return out;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace ptwg
