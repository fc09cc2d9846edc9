#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aaa/analyzer.hpp"
#include "aaa/refactor.hpp"
#include "aaa/stats.hpp"

namespace aaa {

inline constexpr std::string_view kToolName = "aaa-lint";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kSarifSchema = "https://json.schemastore.org/sarif-2.1.0.json";

enum class ReportFormat { Json, Csv, Markdown, Sarif };

std::optional<ReportFormat> parse_format(std::string_view name);  // json, csv, md|markdown, sarif
std::string_view extension(ReportFormat f);

struct AppliedFix {
    std::string file;
    TestId test;
    IssueKind issue = IssueKind::AssertPrecondition;
    RefactoringKind kind = RefactoringKind::ReplaceAssertWithAssume;
};

struct ReportInput {
    const std::vector<TestResult>& results;
    const CorpusSummary& summary;
    const std::vector<ParseDiagnostic>& diagnostics;
    const std::vector<AppliedFix>& fixes;
    const std::vector<RefactoringPlan>& plans;  // suggestions, drafts and downgraded fixes
};

nlohmann::json to_json(const TestResult& r);
nlohmann::json to_json(const CorpusSummary& s);
nlohmann::json to_json(const RefactoringPlan& p);

std::string report_json(const ReportInput& in);
// file,class,test,verdict,special_kind,blocks,loc,cyclomatic,n_arrange,n_act,n_assert,issues
std::string report_csv(const std::vector<TestResult>& results);
std::string report_markdown(const ReportInput& in);
std::string report_sarif(const std::vector<TestResult>& results);
std::string emit_report(const ReportInput& in, ReportFormat f);

// file,test_class,test_case,seq,depth,origin,stmt_kind,tag,text
std::string tag_sheet_csv(const std::vector<TestResult>& results);

struct GoldRow {
    std::string test_class;
    std::string test_case;
    std::size_t seq = 0;
    TagValue tag = TagValue::Unknown;
};

// Reads a CSV with at least the columns test_class, test_case, seq and tag.
std::vector<GoldRow> parse_gold(std::string_view text);

struct GoldComparison {
    std::size_t matched = 0;    // rows present in both
    std::size_t unmatched = 0;  // gold rows without a tool row
    std::map<TagValue, std::optional<double>> kappa;  // Arrange, Act, Assert
    // confusion[gold][tool] over Arrange, Act, Assert, Teardown, Unknown.
    std::array<std::array<std::size_t, 5>, 5> confusion{};
};

GoldComparison compare_gold(const std::vector<TestResult>& results, const std::vector<GoldRow>& gold);
std::string render_gold(const GoldComparison& g);

}  // namespace aaa
