#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "aaa/tagger.hpp"

// Brute-force reference implementations the library is checked against.
namespace aaa::oracle {

// NFA for a+ c+ s+ with states {start, in_a, in_c, in_s}, simulated as a state set.
inline bool nfa_classic(const std::vector<TagValue>& seq) {
    std::set<int> states{0};
    for (auto v : seq) {
        std::set<int> next;
        for (int st : states) {
            if (v == TagValue::Arrange && (st == 0 || st == 1)) next.insert(1);
            if (v == TagValue::Act && (st == 1 || st == 2)) next.insert(2);
            if (v == TagValue::Assert && (st == 2 || st == 3)) next.insert(3);
        }
        states = std::move(next);
        if (states.empty()) return false;
    }
    return states.count(3) != 0;
}

// Membership in a* c+ s+ for seq[b, e).
inline bool in_block_language(const std::vector<TagValue>& seq, std::size_t b, std::size_t e) {
    std::size_t i = b;
    while (i < e && seq[i] == TagValue::Arrange) ++i;
    const auto c0 = i;
    while (i < e && seq[i] == TagValue::Act) ++i;
    if (i == c0) return false;
    const auto s0 = i;
    while (i < e && seq[i] == TagValue::Assert) ++i;
    return i != s0 && i == e;
}

// Largest number of blocks covering the sequence, over all split points; 0 when no cover exists.
inline std::size_t dp_blocks(const std::vector<TagValue>& seq) {
    const std::size_t n = seq.size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> best(n + 1, kNone);
    best[0] = 0;
    for (std::size_t e = 1; e <= n; ++e) {
        for (std::size_t b = 0; b < e; ++b) {
            if (best[b] == kNone || !in_block_language(seq, b, e)) continue;
            if (best[e] == kNone || best[b] + 1 > best[e]) best[e] = best[b] + 1;
        }
    }
    return best[n] == kNone ? 0 : best[n];
}

// Sequence number `code` of length `len` in base 3 over {a, c, s}.
inline std::vector<TagValue> decode(std::uint64_t code, int len) {
    std::vector<TagValue> seq;
    for (int i = 0; i < len; ++i) {
        seq.push_back(code % 3 == 0 ? TagValue::Arrange : code % 3 == 1 ? TagValue::Act : TagValue::Assert);
        code /= 3;
    }
    return seq;
}

// Number of ways to pick `k` of the ranks 1..n with each possible rank sum.
inline std::vector<double> rank_sum_counts(std::size_t n, std::size_t k) {
    const std::size_t max_sum = n * (n + 1) / 2;
    // ways[j][s]: subsets of size j with sum s over the ranks seen so far.
    std::vector<std::vector<double>> ways(k + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1;
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t j = std::min(k, r); j >= 1; --j) {
            for (std::size_t s = max_sum; s >= r; --s) ways[j][s] += ways[j - 1][s - r];
        }
    }
    return ways[k];
}

// Two-sided exact Mann-Whitney p from the rank-sum distribution, for tie-free samples.
inline double exact_p(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> pooled = x;
    pooled.insert(pooled.end(), y.begin(), y.end());
    std::sort(pooled.begin(), pooled.end());
    double rx = 0;
    for (double v : x) rx += static_cast<double>(std::lower_bound(pooled.begin(), pooled.end(), v) - pooled.begin() + 1);
    const auto counts = rank_sum_counts(pooled.size(), x.size());
    double le = 0, ge = 0, all = 0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
        all += counts[s];
        if (static_cast<double>(s) <= rx) le += counts[s];
        if (static_cast<double>(s) >= rx) ge += counts[s];
    }
    return std::min(1.0, 2 * std::min(le, ge) / all);
}

// Two-sided permutation p of U for tie-free samples of sizes n and m, by random relabeling.
inline double monte_carlo_p(double u, std::size_t n, std::size_t m, std::size_t resamples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> ranks(n + m);
    std::iota(ranks.begin(), ranks.end(), 1);
    const double mu = static_cast<double>(n * m) / 2;
    const double observed = std::abs(u - mu);
    const double offset = static_cast<double>(n * (n + 1)) / 2;
    std::size_t extreme = 0;
    for (std::size_t k = 0; k < resamples; ++k) {
        std::shuffle(ranks.begin(), ranks.end(), rng);
        const int sum = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(n), 0);
        if (std::abs(sum - offset - mu) >= observed - 1e-9) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(resamples);
}

// Cohen's kappa in 2x2 table form: 2(ad - bc) / ((a+b)(b+d) + (a+c)(c+d)).
inline double kappa_table(const std::vector<TagValue>& x, const std::vector<TagValue>& y, TagValue v) {
    double a = 0, b = 0, c = 0, d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool p = x[i] == v, q = y[i] == v;
        if (p && q) ++a;
        else if (p) ++b;
        else if (q) ++c;
        else ++d;
    }
    return 2 * (a * d - b * c) / ((a + b) * (b + d) + (a + c) * (c + d));
}

}  // namespace aaa::oracle
