#include "aaa/analyzer.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace aaa {

TestResult analyze_test(const SourceFile& file, const TestClassModel& cls, const TestCaseModel& test,
                        const SourceCorpus& corpus, const RuleSet& rules) {
    const TestClassModel* super = nullptr;
    if (rules.expand_superclass && !cls.superclass.empty()) {
        super = corpus.find_class(cls.superclass);
        if (super == &cls) super = nullptr;
    }
    TagSheet sheet = expand(test, cls, rules.expansion_limit, super);
    sheet.id = {file.path, cls.name, test.name};
    sheet = attach_lifecycle(std::move(sheet), cls, rules.expansion_limit, super);

    TestResult r;
    r.id = {file.path, cls.name, test.name};
    r.qualified_class = cls.qualified_name;
    r.line = test.declaration_range.line;
    r.tagged = tag_sheet(std::move(sheet), rules);
    r.encoding = encode(r.tagged);
    ClassifierContext ctx{&rules, &corpus.project_types};
    r.classification = classify(test, cls, r.tagged, r.encoding, ctx);
    if (r.classification.verdict != Verdict::NonUnitTest) {
        r.issues = detect_all(test, r.classification, r.tagged, r.encoding, rules);
        for (auto& issue : r.issues) issue.test = r.id;
    }
    r.metrics = compute_metrics(test, r.tagged, r.encoding, file.content);
    return r;
}

std::vector<TestId> test_ids(const SourceCorpus& corpus) {
    std::vector<TestId> ids;
    for (const auto& f : corpus.files) {
        for (const auto& c : f.classes) {
            for (const auto& t : c.tests) ids.push_back({f.path, c.name, t.name});
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<TestResult> analyze_corpus(const SourceCorpus& corpus, const RuleSet& rules, unsigned jobs,
                                       const std::set<TestId>* only) {
    struct Work {
        const SourceFile* file;
        const TestClassModel* cls;
        const TestCaseModel* test;
    };
    std::vector<Work> work;
    for (const auto& f : corpus.files) {
        for (const auto& c : f.classes) {
            for (const auto& t : c.tests) {
                if (only == nullptr || only->count({f.path, c.name, t.name}) != 0) work.push_back({&f, &c, &t});
            }
        }
    }
    std::vector<TestResult> out(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
            out[i] = analyze_test(*work[i].file, *work[i].cls, *work[i].test, corpus, rules);
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, work.size()))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::stable_sort(out.begin(), out.end(), [](const TestResult& a, const TestResult& b) { return a.id < b.id; });
    return out;
}

std::vector<TestResult> analyze_source(const std::string& path, std::string_view content, const RuleSet& rules,
                                       const std::set<std::string>& extra_project_types) {
    SourceCorpus corpus;
    SourceFile file;
    file.path = path;
    file.content = std::string(content);
    ParseOptions po;
    po.test_markers = rules.test_markers;
    file.classes = parse_file(path, file.content, po);
    corpus.project_types = declared_type_names(file.content);
    corpus.project_types.insert(extra_project_types.begin(), extra_project_types.end());
    corpus.files.push_back(std::move(file));
    return analyze_corpus(corpus, rules);
}

}  // namespace aaa
