#pragma once

#include <string>
#include <vector>

#include "aaa/classifier.hpp"
#include "aaa/detector.hpp"
#include "aaa/rules.hpp"
#include "aaa/source_model.hpp"
#include "aaa/tagger.hpp"

namespace aaa {

struct TestResult {
    TestId id;
    std::string qualified_class;
    int line = 0;
    TaggedSheet tagged;
    LayoutEncoding encoding;
    Classification classification;
    std::vector<Issue> issues;
    TestMetrics metrics;
};

// Expands, tags, classifies and inspects one test of a parsed file.
TestResult analyze_test(const SourceFile& file, const TestClassModel& cls, const TestCaseModel& test,
                        const SourceCorpus& corpus, const RuleSet& rules);

// Every test of the corpus (or only those in `only`), sorted by (file, class, test).
std::vector<TestResult> analyze_corpus(const SourceCorpus& corpus, const RuleSet& rules, unsigned jobs = 1,
                                       const std::set<TestId>* only = nullptr);

// Ids of every test in the corpus, sorted.
std::vector<TestId> test_ids(const SourceCorpus& corpus);

// Convenience for a single in-memory file; `project_types` defaults to the types it declares.
std::vector<TestResult> analyze_source(const std::string& path, std::string_view content, const RuleSet& rules,
                                       const std::set<std::string>& extra_project_types = {});

}  // namespace aaa
