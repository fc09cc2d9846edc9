#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aaa/source_model.hpp"

namespace aaa {

enum class RowRole { Prologue, Body, Epilogue };

std::string_view to_string(RowRole role);

struct TraceFrame {
    std::string method;
    int line = 0;

    friend bool operator==(const TraceFrame&, const TraceFrame&) = default;
};

struct ExpandedStatement {
    std::vector<TraceFrame> origin;  // test method first, then each inlined helper
    Statement statement;
    int depth = 0;  // origin.size() - 1
    bool production_call = false;
    bool truncated = false;  // a helper call left unexpanded (depth limit or cycle)
    bool helper_inlined = false;  // the row's helper call already precedes it as inlined rows
    RowRole role = RowRole::Body;
    std::optional<LifecycleKind> lifecycle;
};

struct TestId {
    std::string file;
    std::string class_name;
    std::string test_name;

    friend auto operator<=>(const TestId&, const TestId&) = default;
};

struct TagSheet {
    TestId id;
    std::vector<ExpandedStatement> rows;
};

// Resolves an unqualified (or `this.`) call to a method of `cls` by name,
// then by arity; the first declaration wins among equal candidates.
const MethodModel* resolve_local_method(const TestClassModel& cls, const Invocation& call);

// Inlines calls to methods of `cls` (and of `superclass` when given) into
// their statements, recursively up to `limit` levels.
TagSheet expand(const TestCaseModel& test, const TestClassModel& cls, int limit = 8,
                const TestClassModel* superclass = nullptr);

// Re-expands rows of an existing sheet; a fully expanded sheet is returned unchanged.
TagSheet expand(const TagSheet& sheet, const TestClassModel& cls, int limit = 8,
                const TestClassModel* superclass = nullptr);

// Prepends before-all then before-each rows and appends after-each then
// after-all rows, each expanded like the body.
TagSheet attach_lifecycle(TagSheet sheet, const TestClassModel& cls, int limit = 8,
                          const TestClassModel* superclass = nullptr);

// Calls made by the statement itself and its nested statements, in source
// order. Catch handler bodies are skipped unless `include_handlers` is set.
std::vector<const Invocation*> all_calls(const Statement& s, bool include_handlers = false);

}  // namespace aaa
