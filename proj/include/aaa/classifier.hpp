#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aaa/rules.hpp"
#include "aaa/tagger.hpp"

namespace aaa {

struct LayoutEncoding {
    std::vector<TagValue> symbols;  // only Arrange, Act, Assert
    std::vector<std::size_t> rows;  // sheet row of each symbol
    std::vector<std::size_t> omitted;
    std::vector<std::size_t> precondition_remap;

    // "a", "c" and "s" per symbol, e.g. "aacs".
    std::string str() const;
};

enum class Verdict { ClassicAAA, SpecialAAA, AntiAAA, NonUnitTest };
enum class SpecialKind { NoArrangeStaticConstructor, SharedBeforeAfter, ExpectedException, ImplicitAct };

std::string_view to_string(Verdict v);
std::string_view to_string(SpecialKind k);

struct Evidence {
    std::string rule;
    std::vector<std::size_t> rows;

    friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct Classification {
    Verdict verdict = Verdict::AntiAAA;
    std::optional<SpecialKind> special;
    std::size_t blocks = 0;
    std::vector<Evidence> evidence;
    std::string non_unit_reason;
};

// Symbols of the sheet in row order. Teardown/unknown rows are dropped.
// Raw asserts before the first act become arrange when an act exists.
// Lifecycle rows are skipped unless `include_lifecycle` is set.
LayoutEncoding encode(const TaggedSheet& ts, bool include_lifecycle = false);

// Builds an encoding from a symbol string over {a, c, s}; used by tests and tools.
LayoutEncoding encoding_from_string(std::string_view symbols);

bool match_classic(const std::vector<TagValue>& symbols);
inline bool match_classic(const LayoutEncoding& e) { return match_classic(e.symbols); }

// Half-open symbol ranges of the unique left-to-right a* c+ s+ cover;
// empty when the sequence cannot be covered.
std::vector<std::pair<std::size_t, std::size_t>> aaa_blocks(const std::vector<TagValue>& symbols);
std::size_t count_aaa_blocks(const std::vector<TagValue>& symbols);
inline std::size_t count_aaa_blocks(const LayoutEncoding& e) { return count_aaa_blocks(e.symbols); }

struct ClassifierContext {
    const RuleSet* rules = nullptr;
    const std::set<std::string>* project_types = nullptr;  // types declared under the analyzed roots
};

std::optional<SpecialKind> detect_special(const TestCaseModel& test, const TestClassModel& cls, const TaggedSheet& ts,
                                          const LayoutEncoding& e, const ClassifierContext& ctx);

Classification classify(const TestCaseModel& test, const TestClassModel& cls, const TaggedSheet& ts,
                        const LayoutEncoding& e, const ClassifierContext& ctx);

// The `expected` attribute of the test's marker annotation, if any.
bool has_expected_attribute(const TestCaseModel& test);
bool uses_assert_throws(const TaggedSheet& ts);

}  // namespace aaa
