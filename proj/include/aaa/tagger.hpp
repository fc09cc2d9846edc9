#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aaa/rules.hpp"
#include "aaa/tag_sheet.hpp"

namespace aaa {

enum class TagValue { Arrange, Act, Assert, Teardown, Unknown };
enum class Confidence { High, Low };

std::string_view to_string(TagValue value);
std::optional<TagValue> parse_tag(std::string_view text);
std::string_view to_string(Confidence c);

struct Tag {
    TagValue value = TagValue::Unknown;
    std::string rule;  // empty iff value is Unknown
    Confidence confidence = Confidence::High;

    friend bool operator==(const Tag&, const Tag&) = default;
};

struct TaggedSheet {
    TagSheet sheet;
    std::vector<Tag> tags;
    std::vector<std::size_t> act_candidates;  // best first
    // Per row: the production call the act decision was made on (empty when none).
    std::vector<std::string> act_callee;
};

// Rule identifiers reported in Tag::rule.
namespace rule {
inline constexpr std::string_view kAssertApi = "assert-api";
inline constexpr std::string_view kAssertQualified = "assert-qualified";
inline constexpr std::string_view kMockVerify = "mock-verify";
inline constexpr std::string_view kJavaAssert = "java-assert";
inline constexpr std::string_view kConstructor = "constructor";
inline constexpr std::string_view kDeclaration = "declaration";
inline constexpr std::string_view kSetter = "setter";
inline constexpr std::string_view kMockApi = "mock-api";
inline constexpr std::string_view kAssume = "assume";
inline constexpr std::string_view kLifecyclePrologue = "lifecycle-prologue";
inline constexpr std::string_view kActName = "act-name";
inline constexpr std::string_view kActConstructorName = "act-constructor-name";
inline constexpr std::string_view kActDataflow = "act-dataflow";
inline constexpr std::string_view kActPosition = "act-position";
inline constexpr std::string_view kActRepeat = "act-repeat";
inline constexpr std::string_view kDemoted = "demoted-candidate";
inline constexpr std::string_view kRelease = "release";
inline constexpr std::string_view kLifecycleEpilogue = "lifecycle-epilogue";
}  // namespace rule

// The assert rule that fires on a single call, if any.
std::optional<std::string_view> assert_rule(const Invocation& call, const RuleSet& rules);
// Asserting calls of a statement, its nested statements and finally blocks;
// catch handlers are not searched.
std::vector<const Invocation*> assert_calls(const Statement& s, const RuleSet& rules);

bool tag_assert(const ExpandedStatement& row, const RuleSet& rules);
std::optional<std::string_view> assert_rule(const ExpandedStatement& row, const RuleSet& rules);
bool tag_arrange(const ExpandedStatement& row, const RuleSet& rules);
std::optional<std::string_view> arrange_rule(const ExpandedStatement& row, const RuleSet& rules);

// True when every call the row makes only prints or logs.
bool is_print_only(const Statement& s, const RuleSet& rules);
bool is_print_call(const Invocation& call, const RuleSet& rules);

// Test-name tokens after dropping a leading "test" and a trailing "_scenario".
std::vector<std::string> test_name_tokens(std::string_view test_name);
bool tokens_similar(std::string_view a, std::string_view b);

// Ranks production-call body rows and fills act/arrange tags in place.
void select_act(const TagSheet& sheet, std::vector<Tag>& tags, std::string_view test_name, const RuleSet& rules,
                std::vector<std::size_t>& candidates, std::vector<std::string>& act_callee);

void tag_teardown(const TagSheet& sheet, std::vector<Tag>& tags, const RuleSet& rules);

// Runs the full tagging pipeline over a sheet (lifecycle rows included if attached).
TaggedSheet tag_sheet(TagSheet sheet, const RuleSet& rules);

// Names a statement defines for data-flow purposes: declared or assigned
// variables and the plain-variable receiver of its main call.
std::vector<std::string> defined_names(const Statement& s);
// Names a statement reads, including nested statements.
std::vector<std::string> referenced_names(const Statement& s, bool include_handlers = false);

// Cohen's kappa on the binarization "is `a`" of two tag sequences.
// Returns nullopt for empty input; 1.0 when both raters are constant and equal.
// Throws std::invalid_argument on length mismatch.
std::optional<double> kappa(const std::vector<TagValue>& first, const std::vector<TagValue>& second, TagValue a);

}  // namespace aaa
