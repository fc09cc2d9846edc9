#include "aaa/tag_sheet.hpp"

#include <algorithm>

namespace aaa {

std::string_view to_string(RowRole role) {
    switch (role) {
        case RowRole::Prologue: return "prologue";
        case RowRole::Body: return "body";
        case RowRole::Epilogue: return "epilogue";
    }
    return "body";
}

namespace {

void collect_calls(const Statement& s, bool include_handlers, std::vector<const Invocation*>& out) {
    for (const auto& c : s.calls) out.push_back(&c);
    for (const auto& c : s.children) collect_calls(c, include_handlers, out);
    if (include_handlers) {
        for (const auto& h : s.catches) {
            for (const auto& b : h.body) collect_calls(b, include_handlers, out);
        }
    }
    for (const auto& f : s.finally_body) collect_calls(f, include_handlers, out);
}

bool arity_matches(const MethodModel& m, std::size_t args) {
    const auto& ps = m.parameters;
    if (!ps.empty() && ps.back().type.size() >= 3 && ps.back().type.compare(ps.back().type.size() - 3, 3, "...") == 0) {
        return args + 1 >= ps.size();
    }
    return ps.size() == args;
}

const MethodModel* find_in(const TestClassModel& cls, const Invocation& call) {
    if (call.callee.is_constructor) return nullptr;
    if (!call.callee.receiver.empty() && call.callee.receiver != "this") return nullptr;
    std::vector<const MethodModel*> named;
    for (const auto& t : cls.tests) {
        if (t.name == call.callee.method) named.push_back(&t);
    }
    for (const auto& h : cls.lifecycle) {
        if (h.method.name == call.callee.method) named.push_back(&h.method);
    }
    for (const auto& h : cls.helpers) {
        if (h.method.name == call.callee.method && !h.method.is_constructor) named.push_back(&h.method);
    }
    for (const auto* m : named) {
        if (arity_matches(*m, call.args.size())) return m;
    }
    return named.empty() ? nullptr : named.front();
}

class Expander {
   public:
    Expander(const TestClassModel& cls, const TestClassModel* superclass, int limit)
        : cls_(cls), super_(superclass), limit_(limit) {}

    const MethodModel* resolve(const Invocation& call) const {
        if (const auto* m = find_in(cls_, call)) return m;
        if (super_ != nullptr && call.callee.receiver != "this") return find_in(*super_, call);
        return nullptr;
    }

    // The helper call that makes up a leaf statement's main expression.
    const Invocation* main_local_call(const Statement& s) const {
        if (s.is_control_flow() || !s.callee) return nullptr;
        for (const auto& c : s.calls) {
            if (c.in_lambda || !(c.callee == *s.callee)) continue;
            if (resolve(c) != nullptr) return &c;
        }
        return nullptr;
    }

    bool is_production(const Statement& s, const Invocation* skip = nullptr) const {
        for (const auto* c : all_calls(s)) {
            if (c == skip) continue;
            if (resolve(*c) == nullptr) return true;
        }
        return false;
    }

    void emit(const Statement& s, const std::vector<TraceFrame>& callers, const std::string& method,
              std::vector<std::string>& stack, std::vector<ExpandedStatement>& out) const {
        std::vector<TraceFrame> trace = callers;
        trace.push_back({method, s.line});
        const int depth = static_cast<int>(trace.size()) - 1;

        if (const Invocation* call = main_local_call(s)) {
            const MethodModel* target = resolve(*call);
            if (target->has_body) {
                const bool cyclic = std::find(stack.begin(), stack.end(), target->name) != stack.end();
                if (cyclic || depth + 1 > limit_) {
                    ExpandedStatement row = make_row(s, trace);
                    row.production_call = false;
                    row.truncated = true;
                    out.push_back(std::move(row));
                    return;
                }
                stack.push_back(target->name);
                for (const auto& inner : target->statements) emit(inner, trace, target->name, stack, out);
                stack.pop_back();
                if (s.kind != StatementKind::Invocation) {
                    ExpandedStatement row = make_row(s, trace);
                    row.production_call = is_production(s, call);
                    row.helper_inlined = true;
                    out.push_back(std::move(row));
                }
                return;
            }
        }
        ExpandedStatement row = make_row(s, trace);
        if (s.is_control_flow()) inline_nested(row.statement, depth, stack);
        row.production_call = is_production(row.statement);
        out.push_back(std::move(row));
    }

    // Helper calls nested in control flow are inlined in place, keeping the block structure.
    void inline_nested(Statement& s, int depth, std::vector<std::string>& stack) const {
        auto rewrite = [&](std::vector<Statement>& stmts, std::size_t* split_index) {
            std::vector<Statement> next;
            for (std::size_t i = 0; i < stmts.size(); ++i) {
                if (split_index != nullptr && i == *split_index) *split_index = next.size();
                inline_into(stmts[i], depth, stack, next);
            }
            if (split_index != nullptr && *split_index >= stmts.size()) *split_index = next.size();
            stmts = std::move(next);
        };
        std::size_t else_index = s.else_index;
        rewrite(s.children, s.form == ControlForm::If ? &else_index : nullptr);
        if (s.form == ControlForm::If) s.else_index = else_index;
        for (auto& c : s.catches) rewrite(c.body, nullptr);
        rewrite(s.finally_body, nullptr);
    }

    void inline_into(const Statement& s, int depth, std::vector<std::string>& stack, std::vector<Statement>& out) const {
        if (const Invocation* call = main_local_call(s)) {
            const MethodModel* target = resolve(*call);
            const bool cyclic = std::find(stack.begin(), stack.end(), target->name) != stack.end();
            if (target->has_body && !cyclic && depth + 1 <= limit_) {
                stack.push_back(target->name);
                for (const auto& inner : target->statements) inline_into(inner, depth + 1, stack, out);
                stack.pop_back();
                if (s.kind != StatementKind::Invocation) out.push_back(s);
                return;
            }
        }
        Statement copy = s;
        if (copy.is_control_flow()) inline_nested(copy, depth, stack);
        out.push_back(std::move(copy));
    }

    static ExpandedStatement make_row(const Statement& s, const std::vector<TraceFrame>& trace) {
        ExpandedStatement row;
        row.origin = trace;
        row.statement = s;
        row.depth = static_cast<int>(trace.size()) - 1;
        return row;
    }

   private:
    const TestClassModel& cls_;
    const TestClassModel* super_;
    int limit_;
};

std::vector<ExpandedStatement> expand_method(const Expander& ex, const MethodModel& m,
                                             const std::vector<TraceFrame>& callers, std::vector<std::string> stack) {
    std::vector<ExpandedStatement> rows;
    stack.push_back(m.name);
    for (const auto& s : m.statements) ex.emit(s, callers, m.name, stack, rows);
    return rows;
}

}  // namespace

std::vector<const Invocation*> all_calls(const Statement& s, bool include_handlers) {
    std::vector<const Invocation*> out;
    collect_calls(s, include_handlers, out);
    return out;
}

const MethodModel* resolve_local_method(const TestClassModel& cls, const Invocation& call) {
    return find_in(cls, call);
}

TagSheet expand(const TestCaseModel& test, const TestClassModel& cls, int limit, const TestClassModel* superclass) {
    Expander ex(cls, superclass, limit);
    TagSheet sheet;
    sheet.id = {test.file, cls.name, test.name};
    sheet.rows = expand_method(ex, test, {}, {});
    return sheet;
}

TagSheet expand(const TagSheet& sheet, const TestClassModel& cls, int limit, const TestClassModel* superclass) {
    Expander ex(cls, superclass, limit);
    TagSheet out;
    out.id = sheet.id;
    for (const auto& row : sheet.rows) {
        if (row.truncated || row.helper_inlined || ex.main_local_call(row.statement) == nullptr) {
            out.rows.push_back(row);
            continue;
        }
        std::vector<TraceFrame> callers(row.origin.begin(), row.origin.end() - 1);
        std::vector<std::string> stack;
        for (const auto& f : callers) stack.push_back(f.method);
        std::vector<ExpandedStatement> rows;
        ex.emit(row.statement, callers, row.origin.back().method, stack, rows);
        for (auto& r : rows) {
            r.role = row.role;
            r.lifecycle = row.lifecycle;
            out.rows.push_back(std::move(r));
        }
    }
    return out;
}

TagSheet attach_lifecycle(TagSheet sheet, const TestClassModel& cls, int limit, const TestClassModel* superclass) {
    Expander ex(cls, superclass, limit);
    const int test_line = sheet.rows.empty() ? 0 : sheet.rows.front().origin.front().line;
    int decl_line = test_line;
    for (const auto& t : cls.tests) {
        if (t.name == sheet.id.test_name) decl_line = t.range.line;
    }
    const std::vector<TraceFrame> callers{{sheet.id.test_name, decl_line}};

    auto rows_of = [&](LifecycleKind kind, RowRole role) {
        std::vector<ExpandedStatement> rows;
        for (const auto& h : cls.lifecycle) {
            if (h.lifecycle != kind) continue;
            for (auto& r : expand_method(ex, h.method, callers, {sheet.id.test_name})) {
                r.role = role;
                r.lifecycle = kind;
                rows.push_back(std::move(r));
            }
        }
        return rows;
    };

    std::vector<ExpandedStatement> rows = rows_of(LifecycleKind::BeforeAll, RowRole::Prologue);
    for (auto& r : rows_of(LifecycleKind::BeforeEach, RowRole::Prologue)) rows.push_back(std::move(r));
    for (auto& r : sheet.rows) rows.push_back(std::move(r));
    for (auto& r : rows_of(LifecycleKind::AfterEach, RowRole::Epilogue)) rows.push_back(std::move(r));
    for (auto& r : rows_of(LifecycleKind::AfterAll, RowRole::Epilogue)) rows.push_back(std::move(r));
    sheet.rows = std::move(rows);
    return sheet;
}

}  // namespace aaa
