#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pnelect/types.hpp"

namespace pnelect {

// C(n, k), saturated at UINT64_MAX on overflow. Throws invalid_k unless
// 1 <= k <= n.
std::uint64_t committee_count(int n, int k);

// The k-subset at the given lexicographic rank (combinatorial number system).
std::vector<int> unrank_committee(int n, int k, std::uint64_t rank);

// Streams the k-subsets of [0, n) in lexicographic order of their sorted
// member indices: {0,1,..,k-1} first, {n-k,..,n-1} last. This order is the
// canonical tie-break order used throughout the library.
class CommitteeEnumerator {
  public:
    CommitteeEnumerator(int n, int k);
    CommitteeEnumerator(int n, int k, std::uint64_t start_rank);

    // Copies the current subset into `out` and advances. Returns false once
    // the stream is exhausted.
    bool next(std::vector<int>& out);

  private:
    int n_;
    int k_;
    bool done_ = false;
    std::vector<int> current_;
};

// Runs `fn` on every committee in canonical order. Convenience for tests and
// small instances; solvers stream via CommitteeEnumerator.
void for_each_committee(int n, int k, const std::function<void(const std::vector<int>&)>& fn);

// Materializes the full enumeration. Intended for small n only.
std::vector<Committee> enumerate_committees(int n, int k);

}  // namespace pnelect
