#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aaa/classifier.hpp"

namespace aaa {

enum class IssueKind {
    MultipleAAA,
    MissingAssert,
    AssertPrecondition,
    ObscureAssert,
    ArrangeAndQuit,
    MultipleActs,
    SuppressedException,
};

enum class RefactoringKind {
    ReplaceAssertWithAssume,
    ReplaceIfReturnWithAssume,
    RemoveCatchAddThrows,
    SplitIntoPerBlockTests,
    SplitPerAct,
    AddAssertFromExpectedResource,
    SimplifyAssertLogic,
};

std::string_view to_string(IssueKind k);
std::string_view to_string(RefactoringKind k);
// Kebab-case id used by --fix and SARIF, e.g. "assert-precondition".
std::string_view issue_id(IssueKind k);
std::optional<IssueKind> parse_issue_id(std::string_view id);

bool is_anti_pattern(IssueKind k);  // MultipleAAA, MissingAssert, AssertPrecondition
bool is_automatable(IssueKind k);
RefactoringKind suggested_refactoring(IssueKind k);

// Rule catalog text.
std::string_view drawback(IssueKind k);
std::string_view suggestion_text(RefactoringKind k);

struct EvidenceRow {
    long row = -1;  // sheet row, -1 when the evidence is the method itself
    int line = 0;
    int depth = 0;

    friend bool operator==(const EvidenceRow&, const EvidenceRow&) = default;
};

struct Issue {
    IssueKind kind = IssueKind::MultipleAAA;
    TestId test;
    std::vector<EvidenceRow> evidence;
    std::string message;
    bool automatable = false;
    RefactoringKind suggestion = RefactoringKind::SplitIntoPerBlockTests;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // MultipleAAA: sheet-row ranges per block
};

struct TestMetrics {
    int loc = 0;
    int cyclomatic = 1;
    int n_arrange = 0;
    int n_act = 0;
    int n_assert = 0;

    friend bool operator==(const TestMetrics&, const TestMetrics&) = default;
};

std::optional<Issue> detect_multiple_aaa(const Classification& cls, const TaggedSheet& ts);
// Abstains when the sheet contains elided placeholder rows.
std::optional<Issue> detect_missing_assert(const TaggedSheet& ts, const TestCaseModel& test, const RuleSet& rules);
std::optional<Issue> detect_assert_precondition(const TaggedSheet& ts, const LayoutEncoding& e);
std::optional<Issue> detect_obscure_assert(const TaggedSheet& ts, const RuleSet& rules);
std::optional<Issue> detect_arrange_and_quit(const TestCaseModel& test, const TaggedSheet& ts);
std::optional<Issue> detect_multiple_acts(const TaggedSheet& ts);
std::optional<Issue> detect_suppressed_exception(const TestCaseModel& test, const TaggedSheet& ts,
                                                 const RuleSet& rules);

// All seven detectors in catalog order.
std::vector<Issue> detect_all(const TestCaseModel& test, const Classification& cls, const TaggedSheet& ts,
                              const LayoutEncoding& e, const RuleSet& rules);

// `content` is the text of the file the test was parsed from.
TestMetrics compute_metrics(const TestCaseModel& test, const TaggedSheet& ts, const LayoutEncoding& e,
                            std::string_view content);

int count_decision_points(const std::vector<Statement>& stmts);

// If-statement whose then-branch is exactly a bare `return;` and that has no else.
bool is_if_bare_return(const Statement& s);

}  // namespace aaa
