#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aaa/analyzer.hpp"

namespace aaa {

enum class BehaviorNote { Preserving, Strengthening };
enum class Framework { JUnit4, JUnit5 };

std::string_view to_string(BehaviorNote b);

struct SourceEdit {
    std::string file;
    SourceRange span;
    std::string expected;  // text found at span when the plan was made
    std::string replacement;
    std::optional<std::string> requires_import;  // e.g. "static org.junit.Assume.assumeNotNull"

    friend bool operator==(const SourceEdit&, const SourceEdit&) = default;
};

struct RefactoringPlan {
    RefactoringKind kind = RefactoringKind::SplitIntoPerBlockTests;
    TestId target;
    std::vector<std::size_t> rows;
    std::vector<SourceEdit> edits;  // ordered by position
    bool automatable = false;
    BehaviorNote behavior = BehaviorNote::Preserving;
    std::string suggestion;
    std::vector<std::string> notes;
    std::vector<std::string> drafted_tests;
};

class StaleEditError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class RollbackError : public std::runtime_error {
   public:
    RollbackError(const std::string& message, ParseDiagnostic diagnostic)
        : std::runtime_error(message), diagnostic_(std::move(diagnostic)) {}
    const ParseDiagnostic& diagnostic() const { return diagnostic_; }

   private:
    ParseDiagnostic diagnostic_;
};

class InvalidPlanError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// Everything a planner needs about one analyzed test.
struct PlanContext {
    const SourceFile& file;
    const TestClassModel& cls;
    const TestCaseModel& test;
    const TestResult& result;
    const RuleSet& rules;
};

// JUnit 5 when a jupiter import is present, JUnit 4 for other org.junit imports, JUnit 5 otherwise.
Framework detect_framework(const TestClassModel& cls);

RefactoringPlan plan_assert_to_assume(const Issue& issue, const PlanContext& ctx);
RefactoringPlan plan_if_return_to_assume(const Issue& issue, const PlanContext& ctx);
RefactoringPlan plan_remove_catch(const Issue& issue, const PlanContext& ctx);
// nullopt when the layout has fewer than two blocks.
std::optional<RefactoringPlan> draft_split_multiple_aaa(const PlanContext& ctx);
// nullopt when the test acts on fewer than two distinct callees.
std::optional<RefactoringPlan> draft_split_per_act(const Issue& issue, const PlanContext& ctx);
RefactoringPlan suggest_add_assert(const Issue& issue, const PlanContext& ctx);
RefactoringPlan suggest_simplify_assert(const Issue& issue, const PlanContext& ctx);

// The plan for an issue's suggested refactoring.
std::optional<RefactoringPlan> plan_for(const Issue& issue, const PlanContext& ctx);

struct ApplyOptions {
    bool allow_draft = false;  // also apply review-required drafts
    ParseOptions parse;
};

// Applies all edits or none. Throws InvalidPlanError for overlapping edits,
// StaleEditError when a span no longer holds its expected text and
// RollbackError when the result does not parse.
std::string apply(const RefactoringPlan& plan, std::string_view content, const ApplyOptions& options = {});

// Adds `import <name>;` unless an equivalent or wildcard import exists.
std::string ensure_import(std::string_view content, std::string_view name);

// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string patch_file_name(const RefactoringPlan& plan);

std::string unified_diff(std::string_view before, std::string_view after, std::string_view from_name,
                         std::string_view to_name, int context = 3);

}  // namespace aaa
