#include "aaa/detector.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "java_lexer.hpp"

namespace aaa {

std::string_view to_string(IssueKind k) {
    switch (k) {
        case IssueKind::MultipleAAA: return "MultipleAAA";
        case IssueKind::MissingAssert: return "MissingAssert";
        case IssueKind::AssertPrecondition: return "AssertPrecondition";
        case IssueKind::ObscureAssert: return "ObscureAssert";
        case IssueKind::ArrangeAndQuit: return "ArrangeAndQuit";
        case IssueKind::MultipleActs: return "MultipleActs";
        case IssueKind::SuppressedException: return "SuppressedException";
    }
    return "MultipleAAA";
}

std::string_view to_string(RefactoringKind k) {
    switch (k) {
        case RefactoringKind::ReplaceAssertWithAssume: return "ReplaceAssertWithAssume";
        case RefactoringKind::ReplaceIfReturnWithAssume: return "ReplaceIfReturnWithAssume";
        case RefactoringKind::RemoveCatchAddThrows: return "RemoveCatchAddThrows";
        case RefactoringKind::SplitIntoPerBlockTests: return "SplitIntoPerBlockTests";
        case RefactoringKind::SplitPerAct: return "SplitPerAct";
        case RefactoringKind::AddAssertFromExpectedResource: return "AddAssertFromExpectedResource";
        case RefactoringKind::SimplifyAssertLogic: return "SimplifyAssertLogic";
    }
    return "SplitIntoPerBlockTests";
}

std::string_view issue_id(IssueKind k) {
    switch (k) {
        case IssueKind::MultipleAAA: return "multiple-aaa";
        case IssueKind::MissingAssert: return "missing-assert";
        case IssueKind::AssertPrecondition: return "assert-precondition";
        case IssueKind::ObscureAssert: return "obscure-assert";
        case IssueKind::ArrangeAndQuit: return "arrange-and-quit";
        case IssueKind::MultipleActs: return "multiple-acts";
        case IssueKind::SuppressedException: return "suppressed-exception";
    }
    return "multiple-aaa";
}

std::optional<IssueKind> parse_issue_id(std::string_view id) {
    for (auto k : {IssueKind::MultipleAAA, IssueKind::MissingAssert, IssueKind::AssertPrecondition,
                   IssueKind::ObscureAssert, IssueKind::ArrangeAndQuit, IssueKind::MultipleActs,
                   IssueKind::SuppressedException}) {
        if (issue_id(k) == id) return k;
    }
    return std::nullopt;
}

bool is_anti_pattern(IssueKind k) {
    return k == IssueKind::MultipleAAA || k == IssueKind::MissingAssert || k == IssueKind::AssertPrecondition;
}

bool is_automatable(IssueKind k) {
    return k == IssueKind::AssertPrecondition || k == IssueKind::ArrangeAndQuit ||
           k == IssueKind::SuppressedException;
}

RefactoringKind suggested_refactoring(IssueKind k) {
    switch (k) {
        case IssueKind::MultipleAAA: return RefactoringKind::SplitIntoPerBlockTests;
        case IssueKind::MissingAssert: return RefactoringKind::AddAssertFromExpectedResource;
        case IssueKind::AssertPrecondition: return RefactoringKind::ReplaceAssertWithAssume;
        case IssueKind::ObscureAssert: return RefactoringKind::SimplifyAssertLogic;
        case IssueKind::ArrangeAndQuit: return RefactoringKind::ReplaceIfReturnWithAssume;
        case IssueKind::MultipleActs: return RefactoringKind::SplitPerAct;
        case IssueKind::SuppressedException: return RefactoringKind::RemoveCatchAddThrows;
    }
    return RefactoringKind::SplitIntoPerBlockTests;
}

std::string_view drawback(IssueKind k) {
    switch (k) {
        case IssueKind::MultipleAAA:
            return "Several arrange/act/assert blocks share one test method. A failure can come from any "
                   "scenario, and the method grows with every scenario added.";
        case IssueKind::MissingAssert:
            return "No assertion and no expected exception: the test passes whatever the code under test "
                   "returns. Printed output only helps someone who reads it by hand.";
        case IssueKind::AssertPrecondition:
            return "An assertion checks arranged state before the act. A failure there reports a broken "
                   "precondition as a broken unit, and the act never runs.";
        case IssueKind::ObscureAssert:
            return "Assertions sit inside loops or branches, so the reader has to trace control flow to "
                   "learn what is actually checked.";
        case IssueKind::ArrangeAndQuit:
            return "The test returns early when the arranged state is unexpected. It then passes silently "
                   "without exercising anything.";
        case IssueKind::MultipleActs:
            return "More than one function under test is exercised. When the test fails it is unclear "
                   "which one broke, and intermediate results go unchecked.";
        case IssueKind::SuppressedException:
            return "A catch block swallows an exception raised by the act, so errors are printed at best "
                   "and the test still passes.";
    }
    return "";
}

std::string_view suggestion_text(RefactoringKind k) {
    switch (k) {
        case RefactoringKind::ReplaceAssertWithAssume:
            return "Turn the precondition assertion into an assumption (assumeTrue/assumeNotNull) so an "
                   "unmet precondition skips the test instead of failing it.";
        case RefactoringKind::ReplaceIfReturnWithAssume:
            return "Replace the if-return guard with an assumption on the negated condition.";
        case RefactoringKind::RemoveCatchAddThrows:
            return "Drop the catch clause, keep the guarded statements, and declare the caught exception "
                   "types in the method's throws clause.";
        case RefactoringKind::SplitIntoPerBlockTests:
            return "Split the method into one test per AAA block, repeating the shared arrange steps. If "
                   "the new tests differ only in literals, consider a parameterized test.";
        case RefactoringKind::SplitPerAct:
            return "Write one test per function under test; earlier acts become arrange steps and each "
                   "test gets its own assertions.";
        case RefactoringKind::AddAssertFromExpectedResource:
            return "Assert on the produced values. For long outputs, keep the expected values in a test "
                   "resource and compare against it.";
        case RefactoringKind::SimplifyAssertLogic:
            return "Replace the control flow around the assertions with a single assertion, for example a "
                   "collection matcher such as assertThat(items, everyItem(equalTo(x))).";
    }
    return "";
}

namespace {

EvidenceRow evidence_of(const TaggedSheet& ts, std::size_t i) {
    const auto& r = ts.sheet.rows[i];
    return {static_cast<long>(i), r.statement.line, r.depth};
}

Issue make_issue(IssueKind kind, const TaggedSheet& ts, std::string message) {
    Issue issue;
    issue.kind = kind;
    issue.test = ts.sheet.id;
    issue.message = std::move(message);
    issue.automatable = is_automatable(kind);
    issue.suggestion = suggested_refactoring(kind);
    return issue;
}

std::optional<std::size_t> first_body(const TaggedSheet& ts, TagValue v) {
    for (std::size_t i = 0; i < ts.sheet.rows.size(); ++i) {
        if (ts.sheet.rows[i].role == RowRole::Body && ts.tags[i].value == v) return i;
    }
    return std::nullopt;
}

bool is_variable_name(const std::string& n) {
    return !n.empty() && (std::islower(static_cast<unsigned char>(n[0])) || n[0] == '_') && n != "assert";
}

// Walks nested statements looking for an assertion under a branch (or a loop,
// when loops are not allowed). `fail` inside a try with handlers is the
// expected-exception idiom and does not count.
bool obscured(const Statement& s, const RuleSet& rules, bool under_branch, bool under_loop, bool in_guarded_try) {
    auto asserts_here = [&] {
        for (const auto& c : s.calls) {
            if (!assert_rule(c, rules)) continue;
            if (c.callee.method == "fail" && in_guarded_try) continue;
            return true;
        }
        return s.java_assert;
    };
    if ((under_branch || (under_loop && !rules.allow_loop_assert)) && asserts_here()) return true;
    const bool branch = under_branch || s.kind == StatementKind::Conditional;
    const bool loop = under_loop || s.kind == StatementKind::Loop;
    const bool guarded = in_guarded_try || (s.kind == StatementKind::TryBlock && !s.catches.empty());
    for (const auto& c : s.children) {
        if (obscured(c, rules, branch, loop, guarded)) return true;
    }
    for (const auto& f : s.finally_body) {
        if (obscured(f, rules, branch, loop, in_guarded_try)) return true;
    }
    return false;
}

bool handler_propagates(const std::vector<Statement>& body, const RuleSet& rules) {
    for (const auto& s : body) {
        if (s.kind == StatementKind::Throw || s.java_assert) return true;
        for (const auto* c : all_calls(s, true)) {
            if (assert_rule(*c, rules)) return true;
        }
        if (handler_propagates(s.children, rules) || handler_propagates(s.finally_body, rules)) return true;
        for (const auto& h : s.catches) {
            if (handler_propagates(h.body, rules)) return true;
        }
    }
    return false;
}

}  // namespace

bool is_if_bare_return(const Statement& s) {
    if (s.form != ControlForm::If || s.else_index != s.children.size() || s.children.size() != 1) return false;
    const Statement& r = s.children.front();
    return r.kind == StatementKind::Return && !r.returns_value;
}

std::optional<Issue> detect_multiple_aaa(const Classification& cls, const TaggedSheet& ts) {
    if (cls.blocks < 2) return std::nullopt;
    Issue issue = make_issue(IssueKind::MultipleAAA, ts,
                             "test contains " + std::to_string(cls.blocks) + " arrange/act/assert blocks");
    for (const auto& ev : cls.evidence) {
        if (ev.rule != "aaa-block" || ev.rows.empty()) continue;
        issue.evidence.push_back(evidence_of(ts, ev.rows.front()));
        issue.blocks.emplace_back(ev.rows.front(), ev.rows.back() + 1);
    }
    return issue;
}

std::optional<Issue> detect_missing_assert(const TaggedSheet& ts, const TestCaseModel& test, const RuleSet& rules) {
    if (rules.accept_implicit_no_throw) return std::nullopt;
    if (std::any_of(ts.tags.begin(), ts.tags.end(), [](const Tag& t) { return t.value == TagValue::Assert; })) {
        return std::nullopt;
    }
    if (has_expected_attribute(test) || uses_assert_throws(ts)) return std::nullopt;
    // An elided `...` line may hide the assertion.
    if (std::any_of(ts.sheet.rows.begin(), ts.sheet.rows.end(),
                    [](const ExpandedStatement& r) { return r.statement.elided; })) {
        return std::nullopt;
    }
    Issue issue = make_issue(IssueKind::MissingAssert, ts, "test has no assertion and no expected exception");
    for (std::size_t i = 0; i < ts.sheet.rows.size(); ++i) {
        const auto calls = all_calls(ts.sheet.rows[i].statement, true);
        if (std::any_of(calls.begin(), calls.end(), [&](const Invocation* c) { return is_print_call(*c, rules); })) {
            issue.evidence.push_back(evidence_of(ts, i));
        }
    }
    if (!issue.evidence.empty()) {
        issue.message += "; results are only printed";
    } else {
        for (std::size_t i = 0; i < ts.tags.size(); ++i) {
            if (ts.tags[i].value == TagValue::Act) issue.evidence.push_back(evidence_of(ts, i));
        }
    }
    if (issue.evidence.empty()) issue.evidence.push_back({-1, test.range.line, 0});
    return issue;
}

std::optional<Issue> detect_assert_precondition(const TaggedSheet& ts, const LayoutEncoding& e) {
    if (e.precondition_remap.empty()) return std::nullopt;
    Issue issue = make_issue(IssueKind::AssertPrecondition, ts, "assertion on arranged state before the act");
    for (auto i : e.precondition_remap) {
        if (ts.sheet.rows[i].role != RowRole::Body) continue;
        std::set<std::string> vars;
        for (const auto& n : referenced_names(ts.sheet.rows[i].statement)) {
            if (is_variable_name(n)) vars.insert(n);
        }
        if (vars.empty()) continue;
        bool all_arranged = true;
        for (const auto& v : vars) {
            bool defined = false;
            for (std::size_t j = 0; j < i; ++j) {
                if (ts.tags[j].value != TagValue::Arrange) continue;
                const auto d = defined_names(ts.sheet.rows[j].statement);
                if (std::find(d.begin(), d.end(), v) != d.end()) defined = true;
            }
            all_arranged = all_arranged && defined;
        }
        if (all_arranged) issue.evidence.push_back(evidence_of(ts, i));
    }
    if (issue.evidence.empty()) return std::nullopt;
    return issue;
}

std::optional<Issue> detect_obscure_assert(const TaggedSheet& ts, const RuleSet& rules) {
    auto first = first_body(ts, TagValue::Assert);
    if (!first) return std::nullopt;
    Issue issue = make_issue(IssueKind::ObscureAssert, ts, "assertions are wrapped in control flow");
    for (std::size_t i = *first; i < ts.sheet.rows.size(); ++i) {
        const auto& row = ts.sheet.rows[i];
        if (row.role != RowRole::Body || ts.tags[i].value != TagValue::Assert) continue;
        if (obscured(row.statement, rules, false, false, false)) issue.evidence.push_back(evidence_of(ts, i));
    }
    if (issue.evidence.empty()) return std::nullopt;
    return issue;
}

std::optional<Issue> detect_arrange_and_quit(const TestCaseModel&, const TaggedSheet& ts) {
    auto limit = first_body(ts, TagValue::Act);
    if (!limit) limit = first_body(ts, TagValue::Assert);
    const std::size_t end = limit ? *limit : ts.sheet.rows.size();
    Issue issue = make_issue(IssueKind::ArrangeAndQuit, ts, "test returns early when the arranged state is off");
    for (std::size_t i = 0; i < end; ++i) {
        const auto& row = ts.sheet.rows[i];
        if (row.role == RowRole::Body && is_if_bare_return(row.statement)) issue.evidence.push_back(evidence_of(ts, i));
    }
    if (issue.evidence.empty()) return std::nullopt;
    return issue;
}

std::optional<Issue> detect_multiple_acts(const TaggedSheet& ts) {
    std::set<std::string> callees;
    std::vector<EvidenceRow> rows;
    for (std::size_t i = 0; i < ts.tags.size(); ++i) {
        if (ts.tags[i].value != TagValue::Act) continue;
        const std::string& c = i < ts.act_callee.size() ? ts.act_callee[i] : std::string();
        if (callees.insert(c).second) rows.push_back(evidence_of(ts, i));
    }
    if (callees.size() < 2) return std::nullopt;
    std::string names;
    for (const auto& c : callees) names += (names.empty() ? "" : ", ") + c;
    Issue issue = make_issue(IssueKind::MultipleActs, ts, "test acts on " + names);
    issue.evidence = std::move(rows);
    return issue;
}

std::optional<Issue> detect_suppressed_exception(const TestCaseModel&, const TaggedSheet& ts, const RuleSet& rules) {
    Issue issue = make_issue(IssueKind::SuppressedException, ts, "exception from the act is caught and dropped");
    for (std::size_t i = 0; i < ts.sheet.rows.size(); ++i) {
        const Statement& s = ts.sheet.rows[i].statement;
        if (ts.tags[i].value != TagValue::Act || s.kind != StatementKind::TryBlock || s.catches.empty()) continue;
        const bool suppressing = std::none_of(s.catches.begin(), s.catches.end(), [&](const CatchClause& c) {
            return handler_propagates(c.body, rules);
        });
        if (suppressing) issue.evidence.push_back(evidence_of(ts, i));
    }
    if (issue.evidence.empty()) return std::nullopt;
    return issue;
}

std::vector<Issue> detect_all(const TestCaseModel& test, const Classification& cls, const TaggedSheet& ts,
                              const LayoutEncoding& e, const RuleSet& rules) {
    std::vector<Issue> out;
    auto add = [&](std::optional<Issue> i) {
        if (i) out.push_back(std::move(*i));
    };
    add(detect_multiple_aaa(cls, ts));
    add(detect_missing_assert(ts, test, rules));
    add(detect_assert_precondition(ts, e));
    add(detect_obscure_assert(ts, rules));
    add(detect_arrange_and_quit(test, ts));
    add(detect_multiple_acts(ts));
    add(detect_suppressed_exception(test, ts, rules));
    return out;
}

int count_decision_points(const std::vector<Statement>& stmts) {
    int n = 0;
    for (const auto& s : stmts) {
        n += s.decision_points;
        n += count_decision_points(s.children);
        n += count_decision_points(s.finally_body);
        for (const auto& c : s.catches) n += count_decision_points(c.body);
    }
    return n;
}

TestMetrics compute_metrics(const TestCaseModel& test, const TaggedSheet& ts, const LayoutEncoding& e,
                            std::string_view content) {
    TestMetrics m;
    m.cyclomatic = 1 + count_decision_points(test.statements);
    if (test.has_body && test.body_range.end <= content.size() && test.body_range.end > test.body_range.begin + 1) {
        const auto inner = content.substr(test.body_range.begin + 1, test.body_range.end - test.body_range.begin - 2);
        std::set<int> lines;
        try {
            for (const auto& t : java::tokenize(inner)) {
                if (t.kind == java::TokenKind::EndOfFile || t.is("{") || t.is("}")) continue;
                lines.insert(t.line);
            }
        } catch (const ParseError&) {
            // unreachable: the same text lexed during parsing
        }
        m.loc = static_cast<int>(lines.size());
    }
    for (std::size_t k = 0; k < e.symbols.size(); ++k) {
        if (ts.sheet.rows[e.rows[k]].role != RowRole::Body) continue;
        switch (e.symbols[k]) {
            case TagValue::Arrange: ++m.n_arrange; break;
            case TagValue::Act: ++m.n_act; break;
            case TagValue::Assert: ++m.n_assert; break;
            default: break;
        }
    }
    return m;
}

}  // namespace aaa
