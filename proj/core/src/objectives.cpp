#include "pnelect/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pnelect {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void check_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        fail(ErrorCode::invalid_p, "p must be a finite positive number");
    }
}

// log(sum_d nu_d * d^p) via the usual max-shift, so p in the thousands stays
// finite. Returns -inf when every voter sits at distance zero.
double log_power_sum(const DistanceHistogram& hist, double p) {
    std::vector<double> terms;
    terms.reserve(hist.counts().size());
    for (const auto& [d, count] : hist.counts()) {
        if (d == 0) continue;
        terms.push_back(std::log(static_cast<double>(count)) + p * std::log(static_cast<double>(d)));
    }
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    const double peak = *std::max_element(terms.begin(), terms.end());
    double accum = 0.0;
    for (double t : terms) accum += std::exp(t - peak);
    return peak + std::log(accum);
}

bool is_exact_integer_p(double p) {
    return p >= 1.0 && p <= kExactFallbackMaxP && p == std::floor(p);
}

BigInt exact_power_sum(const DistanceHistogram& hist, unsigned p) {
    BigInt sum = 0;
    for (const auto& [d, count] : hist.counts()) {
        if (d == 0) continue;
        sum += BigInt(count) * boost::multiprecision::pow(BigInt(d), p);
    }
    return sum;
}

std::strong_ordering order_doubles(double a, double b) {
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// Compare counts from the top distance downward; the committee with fewer
// voters at the first differing level wins.
std::strong_ordering lex_from_top(const DistanceHistogram& a, const DistanceHistogram& b) {
    for (int d = std::max(a.max_distance(), b.max_distance()); d >= 0; --d) {
        const auto ordering = a.nu(d) <=> b.nu(d);
        if (ordering != std::strong_ordering::equal) return ordering;
    }
    return std::strong_ordering::equal;
}

}  // namespace

std::string to_string(KeyVariant variant) {
    switch (variant) {
        case KeyVariant::finite_p: return "finite-p";
        case KeyVariant::p_zero_limit: return "p-zero-limit";
        case KeyVariant::max_distance_lex: return "max-distance-lex";
        case KeyVariant::minimax: return "minimax";
    }
    return "unknown";
}

int max_scale_distance(const BallotProfile& profile, int k) {
    const int n = profile.candidate_count();
    if (k < 1 || k > n) {
        fail(ErrorCode::invalid_k,
             "need 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
    }
    const std::optional<int> budget = profile.opinion_budget();
    if (profile.mode() == Mode::binary) {
        // Hamming distance between subsets of [n] never exceeds n; with a
        // fixed approval count b it also never exceeds b + k.
        return budget ? std::min(n, *budget + k) : n;
    }
    // Ternary: (n - opinions) + 2 * contradicted, maximal when every opinion
    // is contradicted.
    return budget ? n + *budget : 2 * n;
}

double pnorm_score(const DistanceHistogram& hist, double p) {
    check_p(p);
    const double log_sum = log_power_sum(hist, p);
    return std::isinf(log_sum) ? 0.0 : std::exp(log_sum / p);
}

double power_sum(const DistanceHistogram& hist, double p) {
    check_p(p);
    const double log_sum = log_power_sum(hist, p);
    return std::isinf(log_sum) ? 0.0 : std::exp(log_sum);
}

ComparisonKey ComparisonKey::finite_p(DistanceHistogram hist, double p, int scale_distance) {
    check_p(p);
    if (scale_distance < 1 || scale_distance < hist.max_distance()) {
        fail(ErrorCode::invalid_p, "scale distance must cover every attained distance");
    }
    ComparisonKey key(KeyVariant::finite_p, std::move(hist));
    key.p_ = p;
    key.scale_distance_ = scale_distance;
    // Ascending distance order sums the small scaled terms first.
    double sum = 0.0;
    for (const auto& [d, count] : key.hist_.counts()) {
        if (d == 0) continue;
        sum += static_cast<double>(count) *
               std::pow(static_cast<double>(d) / static_cast<double>(scale_distance), p);
    }
    key.scaled_sum_ = sum;
    return key;
}

ComparisonKey ComparisonKey::p_zero_limit(DistanceHistogram hist) {
    return ComparisonKey(KeyVariant::p_zero_limit, std::move(hist));
}

ComparisonKey ComparisonKey::max_distance_lex(DistanceHistogram hist) {
    return ComparisonKey(KeyVariant::max_distance_lex, std::move(hist));
}

ComparisonKey ComparisonKey::minimax(DistanceHistogram hist) {
    return ComparisonKey(KeyVariant::minimax, std::move(hist));
}

KeyComparison compare_keys(const ComparisonKey& a, const ComparisonKey& b) {
    if (a.variant() != b.variant()) {
        fail(ErrorCode::variant_mismatch, "comparing keys of different variants");
    }
    if (a.histogram().total() != b.histogram().total()) {
        fail(ErrorCode::variant_mismatch, "comparing keys from different voter counts");
    }
    if (a.variant() == KeyVariant::finite_p &&
        (a.p() != b.p() || a.scale_distance() != b.scale_distance())) {
        fail(ErrorCode::variant_mismatch, "comparing keys built for different p or scale");
    }
    KeyComparison result;
    if (a.histogram() == b.histogram()) return result;

    switch (a.variant()) {
        case KeyVariant::p_zero_limit: {
            const std::int64_t misses_a = a.histogram().total() - a.histogram().nu(0);
            const std::int64_t misses_b = b.histogram().total() - b.histogram().nu(0);
            result.order = misses_a <=> misses_b;
            return result;
        }
        case KeyVariant::max_distance_lex: {
            result.order = lex_from_top(a.histogram(), b.histogram());
            return result;
        }
        case KeyVariant::minimax: {
            result.order = a.histogram().max_distance() <=> b.histogram().max_distance();
            return result;
        }
        case KeyVariant::finite_p: break;
    }

    const double fa = a.scaled_sum();
    const double fb = b.scaled_sum();
    const double gap = std::abs(fa - fb);
    const double magnitude = std::max(std::abs(fa), std::abs(fb));
    if (gap > kRelTolerance * magnitude) {
        result.order = order_doubles(fa, fb);
        return result;
    }

    result.near_tie = true;
    if (is_exact_integer_p(a.p())) {
        const auto exponent = static_cast<unsigned>(a.p());
        result.order = [&] {
            const BigInt sa = exact_power_sum(a.histogram(), exponent);
            const BigInt sb = exact_power_sum(b.histogram(), exponent);
            if (sa < sb) return std::strong_ordering::less;
            if (sa > sb) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        }();
        result.exact_resolved = true;
        return result;
    }
    result.order = order_doubles(fa, fb);
    return result;
}

std::strong_ordering compare(const ComparisonKey& a, const ComparisonKey& b) {
    return compare_keys(a, b).order;
}

}  // namespace pnelect
