#include "pnelect/combinations.hpp"

#include <limits>
#include <numeric>

namespace pnelect {

namespace {

void check_nk(int n, int k) {
    if (n < 1 || k < 1 || k > n) {
        fail(ErrorCode::invalid_k,
             "need 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
    }
}

// C(n, k) with the degenerate cases mapped to 0/1 instead of errors.
std::uint64_t binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k == 0 || k == n) return 1;
    const int small = std::min(k, n - k);
    unsigned __int128 result = 1;
    constexpr unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
    for (int i = 1; i <= small; ++i) {
        // Exact at every step: the running value is C(n - small + i, i).
        result = result * static_cast<unsigned>(n - small + i) / static_cast<unsigned>(i);
        if (result > cap) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(result);
}

}  // namespace

std::uint64_t committee_count(int n, int k) {
    check_nk(n, k);
    return binom(n, k);
}

std::vector<int> unrank_committee(int n, int k, std::uint64_t rank) {
    check_nk(n, k);
    std::vector<int> members;
    members.reserve(static_cast<std::size_t>(k));
    int next = 0;
    for (int pos = 0; pos < k; ++pos) {
        for (int value = next; value < n; ++value) {
            const int rest = k - pos - 1;
            const std::uint64_t block = rest == 0 ? 1 : binom(n - value - 1, rest);
            if (rank < block) {
                members.push_back(value);
                next = value + 1;
                break;
            }
            rank -= block;
        }
    }
    if (static_cast<int>(members.size()) != k) {
        fail(ErrorCode::invalid_k, "rank out of range for C(n, k)");
    }
    return members;
}

CommitteeEnumerator::CommitteeEnumerator(int n, int k) : n_(n), k_(k) {
    check_nk(n, k);
    current_.resize(static_cast<std::size_t>(k));
    std::iota(current_.begin(), current_.end(), 0);
}

CommitteeEnumerator::CommitteeEnumerator(int n, int k, std::uint64_t start_rank) : n_(n), k_(k) {
    check_nk(n, k);
    if (start_rank >= committee_count(n, k)) {
        done_ = true;
    } else {
        current_ = unrank_committee(n, k, start_rank);
    }
}

bool CommitteeEnumerator::next(std::vector<int>& out) {
    if (done_) return false;
    out = current_;
    // Advance: bump the rightmost member that can still move, reset the tail.
    int i = k_ - 1;
    while (i >= 0 && current_[static_cast<std::size_t>(i)] == n_ - k_ + i) --i;
    if (i < 0) {
        done_ = true;
    } else {
        ++current_[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k_; ++j) {
            current_[static_cast<std::size_t>(j)] = current_[static_cast<std::size_t>(i)] + j - i;
        }
    }
    return true;
}

void for_each_committee(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    CommitteeEnumerator stream(n, k);
    std::vector<int> members;
    while (stream.next(members)) fn(members);
}

std::vector<Committee> enumerate_committees(int n, int k) {
    std::vector<Committee> all;
    for_each_committee(n, k, [&](const std::vector<int>& members) {
        all.emplace_back(members, n);
    });
    return all;
}

}  // namespace pnelect
