#include "aaa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aaa {
namespace {

constexpr std::size_t kExactLimit = 12;

std::vector<double> midranks(const std::vector<double>& pooled, double& tie_term) {
    std::vector<std::size_t> order(pooled.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> ranks(pooled.size());
    tie_term = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        const auto t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    return ranks;
}

// Two-sided exact p: U over every way of choosing which ranks belong to x.
double exact_p(std::size_t n, std::size_t m, double u) {
    const std::size_t total = n + m;
    std::vector<double> counts(n * m + 1, 0.0);
    std::vector<int> pick(total, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(n), 1);
    std::sort(pick.begin(), pick.end());
    double all = 0;
    do {
        // Ranks are 1..N; x holds the ranks where pick == 1.
        std::size_t rank_sum = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (pick[i] != 0) rank_sum += i + 1;
        }
        const std::size_t ux = rank_sum - n * (n + 1) / 2;
        counts[ux] += 1;
        all += 1;
    } while (std::next_permutation(pick.begin(), pick.end()));
    double le = 0;
    double ge = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (static_cast<double>(k) <= u + 1e-9) le += counts[k];
        if (static_cast<double>(k) >= u - 1e-9) ge += counts[k];
    }
    return std::min(1.0, 2.0 * std::min(le, ge) / all);
}

}  // namespace

MannWhitney mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("mann_whitney_u needs two non-empty samples");
    std::vector<double> pooled = x;
    pooled.insert(pooled.end(), y.begin(), y.end());
    double tie_term = 0;
    const auto ranks = midranks(pooled, tie_term);
    const auto n = static_cast<double>(x.size());
    const auto m = static_cast<double>(y.size());
    double rx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) rx += ranks[i];

    MannWhitney r;
    r.u = rx - n * (n + 1) / 2;
    if (x.size() + y.size() <= kExactLimit && tie_term == 0) {
        r.exact = true;
        r.p = exact_p(x.size(), y.size(), r.u);
    } else {
        const double big_n = n + m;
        const double mu = n * m / 2;
        const double var = n * m / 12.0 * ((big_n + 1) - tie_term / (big_n * (big_n - 1)));
        if (var <= 0) {
            r.p = 1;
        } else {
            const double z = std::max(0.0, std::abs(r.u - mu) - 0.5) / std::sqrt(var);
            r.p = std::erfc(z / std::sqrt(2.0));
        }
    }
    r.p = std::clamp(r.p, std::numeric_limits<double>::min(), 1.0);
    return r;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

CorpusSummary summarize(const std::vector<TestResult>& results) {
    CorpusSummary s;
    s.total = results.size();
    for (const auto& r : results) {
        const Verdict v = r.classification.verdict;
        ++s.verdicts[v];
        if (r.classification.special) ++s.specials[*r.classification.special];
        for (const auto& i : r.issues) ++s.issues[i.kind];
        if (v == Verdict::NonUnitTest) continue;
        s.samples.push_back({v, r.metrics.loc, r.metrics.cyclomatic, r.metrics.n_arrange, r.metrics.n_act,
                             r.metrics.n_assert});
    }
    // Keep samples in a canonical order so the summary does not depend on input order.
    std::sort(s.samples.begin(), s.samples.end(), [](const MetricSample& a, const MetricSample& b) {
        return std::tuple(a.verdict, a.loc, a.cyclomatic, a.n_arrange, a.n_act, a.n_assert) <
               std::tuple(b.verdict, b.loc, b.cyclomatic, b.n_arrange, b.n_act, b.n_assert);
    });
    s.unit_tests = s.samples.size();
    if (s.unit_tests == 0) {
        s.warnings.emplace_back("no unit tests were analyzed");
        return s;
    }
    const auto unit = static_cast<double>(s.unit_tests);
    auto count = [&](Verdict v) { return s.verdicts.count(v) != 0 ? static_cast<double>(s.verdicts.at(v)) : 0.0; };
    s.share_classic = count(Verdict::ClassicAAA) / unit;
    s.share_special = count(Verdict::SpecialAAA) / unit;
    s.share_anti = count(Verdict::AntiAAA) / unit;

    using Getter = int MetricSample::*;
    const std::pair<const char*, Getter> metrics[] = {
        {"loc", &MetricSample::loc},           {"cyclomatic", &MetricSample::cyclomatic},
        {"n_arrange", &MetricSample::n_arrange}, {"n_act", &MetricSample::n_act},
        {"n_assert", &MetricSample::n_assert},
    };
    for (const auto& [name, field] : metrics) {
        std::vector<double> aaa;
        std::vector<double> anti;
        for (const auto& m : s.samples) {
            (m.verdict == Verdict::AntiAAA ? anti : aaa).push_back(m.*field);
        }
        Comparison c;
        c.metric = name;
        c.n_aaa = aaa.size();
        c.n_anti = anti.size();
        c.median_aaa = median(aaa);
        c.median_anti = median(anti);
        if (!aaa.empty() && !anti.empty()) c.test = mann_whitney_u(aaa, anti);
        s.comparisons.push_back(std::move(c));
    }
    if (s.comparisons.front().n_aaa == 0 || s.comparisons.front().n_anti == 0) {
        s.warnings.emplace_back("one verdict group is empty; comparisons are not computable");
    }
    return s;
}

}  // namespace aaa
