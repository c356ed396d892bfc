#ifndef STARSPIN_KERNELS_HPP
#define STARSPIN_KERNELS_HPP

// Low-level product kernels shared by the algebra layer. The wedge of two
// sparse term lists is the one loop in the library that grows with lattice
// size (thousands of blades on the replica signatures), so it exists twice:
// a serial reference kernel, and an OpenMP kernel that partitions the left
// operand across threads and merges per-thread accumulators in thread order
// so results stay deterministic for a fixed thread count. Everything else in
// the library is small-object work and stays serial.

#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace starspin {

enum class Exec { Auto, Serial, Parallel };

/// Pairs above this count route to the parallel kernel under Exec::Auto.
inline constexpr size_t kParallelPairThreshold = size_t{1} << 16;

/// Sign picked up when sorting the concatenation of two disjoint ascending
/// blades into one ascending blade: parity of the number of generator pairs
/// (i in a, j in b) with i > j.
inline int reorder_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

template <class C>
using TermList = std::vector<std::pair<uint32_t, C>>;

/// out[a^b] += sign * mul(ca, cb) over all pairs with disjoint blades.
template <class C, class Mul>
void wedge_accumulate_serial(const TermList<C>& a, const TermList<C>& b, Mul&& mul,
                             std::map<uint32_t, C>& out) {
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if ((ma & mb) != 0) continue;
      C prod = mul(ca, cb);
      if (reorder_sign(ma, mb) < 0) prod = -prod;
      auto [it, fresh] = out.try_emplace(ma | mb, prod);
      if (!fresh) it->second += prod;
    }
  }
}

template <class C, class Mul>
void wedge_accumulate_parallel(const TermList<C>& a, const TermList<C>& b, Mul&& mul,
                               std::map<uint32_t, C>& out) {
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
  if (threads <= 1 || a.size() < 2) {
    wedge_accumulate_serial(a, b, mul, out);
    return;
  }
  std::vector<std::map<uint32_t, C>> partial(threads);
  const size_t chunk = (a.size() + threads - 1) / threads;
#pragma omp parallel num_threads(threads)
  {
    const int tid = omp_get_thread_num();
    const size_t lo = std::min(a.size(), tid * chunk);
    const size_t hi = std::min(a.size(), lo + chunk);
    auto& mine = partial[tid];
    for (size_t k = lo; k < hi; ++k) {
      const auto& [ma, ca] = a[k];
      for (const auto& [mb, cb] : b) {
        if ((ma & mb) != 0) continue;
        C prod = mul(ca, cb);
        if (reorder_sign(ma, mb) < 0) prod = -prod;
        auto [it, fresh] = mine.try_emplace(ma | mb, prod);
        if (!fresh) it->second += prod;
      }
    }
  }
  for (auto& part : partial) {
    for (auto& [mask, c] : part) {
      auto [it, fresh] = out.try_emplace(mask, c);
      if (!fresh) it->second += c;
    }
  }
#else
  wedge_accumulate_serial(a, b, mul, out);
#endif
}

template <class C, class Mul>
void wedge_accumulate(const TermList<C>& a, const TermList<C>& b, Mul&& mul,
                      std::map<uint32_t, C>& out, Exec exec) {
  const bool big = a.size() * b.size() >= kParallelPairThreshold;
  if (exec == Exec::Parallel || (exec == Exec::Auto && big)) {
    wedge_accumulate_parallel(a, b, mul, out);
  } else {
    wedge_accumulate_serial(a, b, mul, out);
  }
}

}  // namespace starspin

#endif
