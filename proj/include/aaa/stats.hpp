#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aaa/analyzer.hpp"

namespace aaa {

struct MannWhitney {
    double u = 0;  // U of the first sample
    double p = 1;  // two-sided
    bool exact = false;
};

// Midranks for ties. Exact p by enumeration when the samples hold at most 12
// values together and no ties, otherwise the normal approximation with tie
// and continuity correction. Throws std::invalid_argument on an empty sample.
MannWhitney mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y);

struct MetricSample {
    Verdict verdict = Verdict::AntiAAA;
    int loc = 0;
    int cyclomatic = 1;
    int n_arrange = 0;
    int n_act = 0;
    int n_assert = 0;
};

struct Comparison {
    std::string metric;
    std::size_t n_aaa = 0;
    std::size_t n_anti = 0;
    double median_aaa = 0;
    double median_anti = 0;
    std::optional<MannWhitney> test;  // empty when a group has no tests
};

struct CorpusSummary {
    std::size_t total = 0;
    std::size_t unit_tests = 0;
    std::map<Verdict, std::size_t> verdicts;
    std::map<SpecialKind, std::size_t> specials;
    std::map<IssueKind, std::size_t> issues;
    std::vector<MetricSample> samples;  // unit tests only
    double share_classic = 0;
    double share_special = 0;
    double share_anti = 0;
    std::vector<Comparison> comparisons;  // loc, cyclomatic, n_arrange, n_act, n_assert
    std::vector<std::string> warnings;
};

// AAA group = ClassicAAA and SpecialAAA; non-unit tests are left out of shares and samples.
CorpusSummary summarize(const std::vector<TestResult>& results);

double median(std::vector<double> values);

}  // namespace aaa
