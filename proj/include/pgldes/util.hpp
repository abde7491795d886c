#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace pgldes {

// Binomial coefficient with saturation: results larger than `cap` come back
// as `cap` (so callers can test feasibility without overflow).
std::uint64_t binom64(std::uint64_t n, std::uint64_t k,
                      std::uint64_t cap = UINT64_MAX);

// Advance a k-subset of {0,...,n-1} (strictly increasing entries) to its
// colexicographic successor.  Returns false once the last subset has been
// consumed.  The first subset is {0,1,...,k-1}.
bool next_combination_colex(std::vector<std::uint64_t>& c, std::uint64_t n);

// Colex rank of a strictly increasing t-subset: sum of C(c[j], j+1).
std::uint64_t colex_rank(const std::vector<std::uint64_t>& c);

// Run fn(i) for every i in [0,n) using `workers` threads (serial when
// workers <= 1).  Work items must be independent; each one may only write
// state owned by its own index, which keeps results schedule-independent.
void parallel_indices(std::size_t n, unsigned workers,
                      const std::function<void(std::size_t)>& fn);

// Fixed seed used wherever a deterministic default RNG stream is needed.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eed1ULL;

}  // namespace pgldes
