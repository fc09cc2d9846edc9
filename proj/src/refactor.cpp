#include "aaa/refactor.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "java_lexer.hpp"

namespace aaa {
namespace {

std::string slice(std::string_view content, std::size_t begin, std::size_t end) {
    return std::string(content.substr(begin, end - begin));
}

std::string slice(std::string_view content, const SourceRange& r) { return slice(content, r.begin, r.end); }

std::size_t line_start(std::string_view content, std::size_t offset) {
    while (offset > 0 && content[offset - 1] != '\n') --offset;
    return offset;
}

std::size_t line_end(std::string_view content, std::size_t offset) {
    while (offset < content.size() && content[offset] != '\n') ++offset;
    return offset;
}

// Leading whitespace of the line holding `offset`.
std::string indent_at(std::string_view content, std::size_t offset) {
    std::size_t b = line_start(content, offset);
    std::size_t e = b;
    while (e < content.size() && (content[e] == ' ' || content[e] == '\t')) ++e;
    return slice(content, b, e);
}

// The `// ...` comment that ends the line after `offset`, if nothing else is there.
std::string trailing_comment(std::string_view content, std::size_t offset) {
    std::size_t i = offset;
    while (i < content.size() && (content[i] == ' ' || content[i] == '\t')) ++i;
    if (i + 1 < content.size() && content[i] == '/' && content[i + 1] == '/') {
        return slice(content, i, line_end(content, i));
    }
    return {};
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_lines(std::string_view s) {
    std::vector<std::string> out;
    std::size_t b = 0;
    while (true) {
        const std::size_t e = s.find('\n', b);
        if (e == std::string_view::npos) {
            out.emplace_back(s.substr(b));
            break;
        }
        out.emplace_back(s.substr(b, e - b));
        b = e + 1;
    }
    return out;
}

// Re-indents a multi-line fragment so its first line sits at `indent` and
// later lines keep their position relative to the least indented one.
std::string reindent(std::string_view text, const std::string& indent) {
    auto lines = split_lines(text);
    while (!lines.empty() && trim(lines.front()).empty()) lines.erase(lines.begin());
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) return {};
    std::size_t common = std::string::npos;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::size_t n = 0;
        while (n < lines[i].size() && (lines[i][n] == ' ' || lines[i][n] == '\t')) ++n;
        common = std::min(common, n);
    }
    std::string out = trim(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        out += '\n';
        if (trim(lines[i]).empty()) continue;
        out += indent + lines[i].substr(std::min(common, lines[i].size()));
    }
    return out;
}

bool simple_operand(std::string_view arg) {
    int depth = 0;
    for (char c : arg) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth == 0 && !(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '.' ||
                            c == ')' || c == ']')) {
            return false;
        }
    }
    return true;
}

std::string operand(const std::string& arg) { return simple_operand(arg) ? arg : "(" + arg + ")"; }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

const Invocation* top_call(const Statement& s) {
    if (!s.callee) return nullptr;
    const Invocation* best = nullptr;
    for (const auto& c : s.calls) {
        if (c.in_lambda || !(c.callee == *s.callee)) continue;
        if (best == nullptr || c.range.end - c.range.begin > best->range.end - best->range.begin) best = &c;
    }
    return best;
}

RefactoringPlan base_plan(RefactoringKind kind, const PlanContext& ctx, const Issue* issue) {
    RefactoringPlan p;
    p.kind = kind;
    p.target = ctx.result.id;
    p.automatable = kind == RefactoringKind::ReplaceAssertWithAssume ||
                    kind == RefactoringKind::ReplaceIfReturnWithAssume ||
                    kind == RefactoringKind::RemoveCatchAddThrows;
    switch (kind) {
        case RefactoringKind::ReplaceAssertWithAssume:
        case RefactoringKind::ReplaceIfReturnWithAssume:
        case RefactoringKind::RemoveCatchAddThrows:
        case RefactoringKind::AddAssertFromExpectedResource: p.behavior = BehaviorNote::Strengthening; break;
        default: p.behavior = BehaviorNote::Preserving; break;
    }
    if (issue != nullptr) {
        for (const auto& ev : issue->evidence) {
            if (ev.row >= 0) p.rows.push_back(static_cast<std::size_t>(ev.row));
        }
        p.suggestion = std::string(drawback(issue->kind)) + " " + std::string(suggestion_text(kind));
    } else {
        p.suggestion = std::string(suggestion_text(kind));
    }
    return p;
}

RefactoringPlan downgrade(RefactoringPlan p, std::string why) {
    p.automatable = false;
    p.edits.clear();
    p.notes.push_back(std::move(why));
    return p;
}

SourceEdit make_edit(const PlanContext& ctx, std::size_t begin, std::size_t end, std::string replacement,
                     std::optional<std::string> import = std::nullopt) {
    SourceEdit e;
    e.file = ctx.file.path;
    e.span.begin = begin;
    e.span.end = end;
    auto locate = [&](std::size_t off, int& line, int& col) {
        line = 1 + static_cast<int>(std::count(ctx.file.content.begin(), ctx.file.content.begin() + off, '\n'));
        col = 1 + static_cast<int>(off - line_start(ctx.file.content, off));
    };
    locate(begin, e.span.line, e.span.column);
    locate(end, e.span.end_line, e.span.end_column);
    e.expected = slice(ctx.file.content, begin, end);
    e.replacement = std::move(replacement);
    e.requires_import = std::move(import);
    return e;
}

void sort_edits(std::vector<SourceEdit>& edits) {
    std::stable_sort(edits.begin(), edits.end(), [](const SourceEdit& a, const SourceEdit& b) {
        return std::pair(a.span.begin, a.span.end) < std::pair(b.span.begin, b.span.end);
    });
}

const ExpandedStatement* body_row(const PlanContext& ctx, long row, std::string& why) {
    const auto& rows = ctx.result.tagged.sheet.rows;
    if (row < 0 || static_cast<std::size_t>(row) >= rows.size()) {
        why = "issue evidence does not point at a statement";
        return nullptr;
    }
    const auto& r = rows[static_cast<std::size_t>(row)];
    if (r.role != RowRole::Body || r.depth != 0) {
        why = "the statement comes from a helper or lifecycle method shared with other tests";
        return nullptr;
    }
    return &r;
}

struct AssumeForm {
    std::string text;
    std::string import;
};

std::optional<AssumeForm> assume_for(const Invocation& call, Framework fw) {
    const auto& m = call.callee.method;
    const auto& a = call.args;
    std::string qualifier;
    if (call.callee.receiver == "Assert" || call.callee.receiver == "org.junit.Assert") {
        fw = Framework::JUnit4;
        qualifier = "Assume.";
    } else if (call.callee.receiver == "Assertions" || call.callee.receiver == "org.junit.jupiter.api.Assertions") {
        fw = Framework::JUnit5;
        qualifier = "Assumptions.";
    } else if (!call.callee.receiver.empty()) {
        return std::nullopt;
    }
    const std::string cls = fw == Framework::JUnit4 ? "org.junit.Assume" : "org.junit.jupiter.api.Assumptions";

    std::string name;
    std::vector<std::string> args;
    if (m == "assertTrue" || m == "assertFalse") {
        if (a.empty() || a.size() > 2) return std::nullopt;
        name = m == "assertTrue" ? "assumeTrue" : "assumeFalse";
        args = a;
    } else if (m == "assertNotNull") {
        if (fw == Framework::JUnit4) {
            if (a.size() != 1) return std::nullopt;
            name = "assumeNotNull";
            args = a;
        } else {
            if (a.empty() || a.size() > 2) return std::nullopt;
            name = "assumeTrue";
            args = {operand(a[0]) + " != null"};
            if (a.size() == 2) args.push_back(a[1]);
        }
    } else if (m == "assertNull") {
        if (a.size() != 1 && !(fw == Framework::JUnit5 && a.size() == 2)) return std::nullopt;
        name = "assumeTrue";
        args = {operand(a[0]) + " == null"};
        if (a.size() == 2) args.push_back(a[1]);
    } else if (m == "assertEquals") {
        if (a.size() == 2) {
            args = {"java.util.Objects.equals(" + a[0] + ", " + a[1] + ")"};
        } else if (a.size() == 3 && fw == Framework::JUnit5) {
            args = {"java.util.Objects.equals(" + a[0] + ", " + a[1] + ")", a[2]};
        } else if (a.size() == 3) {
            args = {a[0], "java.util.Objects.equals(" + a[1] + ", " + a[2] + ")"};
        } else {
            return std::nullopt;
        }
        name = "assumeTrue";
    } else {
        return std::nullopt;
    }
    AssumeForm f;
    f.text = qualifier + name + "(" + join(args, ", ") + ")";
    f.import = qualifier.empty() ? "static " + cls + "." + name : cls;
    return f;
}

std::string assume_import(Framework fw, std::string_view method) {
    return std::string("static ") + (fw == Framework::JUnit4 ? "org.junit.Assume." : "org.junit.jupiter.api.Assumptions.") +
           std::string(method);
}

// Comments found in source text between statements.
std::string comments_in(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i + 1 < text.size()) {
        if (text[i] == '/' && text[i + 1] == '/') {
            const std::size_t e = line_end(text, i);
            out.push_back(trim(text.substr(i, e - i)));
            i = e;
        } else if (text[i] == '/' && text[i + 1] == '*') {
            const std::size_t e = text.find("*/", i + 2);
            const std::size_t end = e == std::string_view::npos ? text.size() : e + 2;
            out.push_back(std::string(text.substr(i, end - i)));
            i = end;
        } else {
            ++i;
        }
    }
    return join(out, " ");
}

// Statement text plus the line comment that follows it on the same line.
std::string render_statement(std::string_view content, const Statement& s) {
    std::string text = slice(content, s.range);
    const std::string comment = trailing_comment(content, s.range.end);
    if (!comment.empty()) text += comment;
    return text;
}

// Maps sheet rows back to the test's own top-level statements.
std::vector<std::size_t> anchor_rows(const PlanContext& ctx) {
    const auto& rows = ctx.result.tagged.sheet.rows;
    const auto& stmts = ctx.test.statements;
    std::vector<std::size_t> anchor(rows.size(), stmts.size());
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.role != RowRole::Body || r.origin.empty()) continue;
        for (std::size_t k = cursor; k < stmts.size(); ++k) {
            const bool hit = r.depth == 0 ? stmts[k].range.begin == r.statement.range.begin
                                          : stmts[k].line == r.origin.front().line;
            if (hit) {
                anchor[i] = k;
                cursor = k;
                break;
            }
        }
    }
    return anchor;
}

std::string method_header(const PlanContext& ctx, const std::string& name) {
    const auto& content = ctx.file.content;
    const std::string indent = indent_at(content, ctx.test.declaration_range.begin);
    std::string out;
    for (const auto& a : ctx.test.annotations) out += slice(content, a.range) + "\n" + indent;
    std::string decl = trim(slice(content, ctx.test.declaration_range.begin, ctx.test.body_range.begin));
    const std::size_t at = decl.find(ctx.test.name + "(");
    const std::size_t at_ws = decl.find(ctx.test.name + " ");
    const std::size_t pos = std::min(at, at_ws);
    if (pos != std::string::npos) decl.replace(pos, ctx.test.name.size(), name);
    return out + decl;
}

std::string render_method(const PlanContext& ctx, const std::string& name, const std::vector<std::string>& body) {
    const auto& content = ctx.file.content;
    const std::string indent = indent_at(content, ctx.test.declaration_range.begin);
    std::string inner = indent + "    ";
    if (!ctx.test.statements.empty()) {
        const std::string first = indent_at(content, ctx.test.statements.front().range.begin);
        if (first.size() > indent.size()) inner = first;
    }
    std::string out = method_header(ctx, name) + "{\n";
    for (const auto& line : body) out += inner + line + "\n";
    out += indent + "}";
    return out;
}

// Span of the whole test method plus a comment trailing its closing brace.
std::pair<std::size_t, std::size_t> method_span(const PlanContext& ctx) {
    std::size_t end = ctx.test.range.end;
    const std::string comment = trailing_comment(ctx.file.content, end);
    if (!comment.empty()) end = line_end(ctx.file.content, end);
    return {ctx.test.range.begin, end};
}

std::set<std::string> existing_method_names(const TestClassModel& cls) {
    std::set<std::string> names;
    for (const auto& t : cls.tests) names.insert(t.name);
    for (const auto& h : cls.helpers) names.insert(h.method.name);
    for (const auto& h : cls.lifecycle) names.insert(h.method.name);
    return names;
}

std::string unique_name(std::string name, std::set<std::string>& taken) {
    std::string candidate = name;
    for (int n = 2; taken.count(candidate) != 0; ++n) candidate = name + "_" + std::to_string(n);
    taken.insert(candidate);
    return candidate;
}

bool is_constant_name(std::string_view n) {
    if (n.size() < 2 || !std::isupper(static_cast<unsigned char>(n[0]))) return false;
    return std::all_of(n.begin(), n.end(), [](char c) {
        return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::vector<std::string> all_names(const Statement& s) {
    std::vector<std::string> out = s.names;
    for (const auto& c : s.children) {
        auto inner = all_names(c);
        out.insert(out.end(), inner.begin(), inner.end());
    }
    return out;
}

// True when the two fragments tokenize identically except for literals.
bool differ_only_in_literals(const std::string& a, const std::string& b) {
    try {
        const auto ta = java::tokenize(a);
        const auto tb = java::tokenize(b);
        if (ta.size() != tb.size()) return false;
        bool any = false;
        for (std::size_t i = 0; i < ta.size(); ++i) {
            if (ta[i].text == tb[i].text && ta[i].kind == tb[i].kind) continue;
            if (!ta[i].is_literal() || !tb[i].is_literal()) return false;
            any = true;
        }
        return any;
    } catch (const ParseError&) {
        return false;
    }
}

std::string declared_type_of(const PlanContext& ctx, const std::string& name) {
    for (const auto& s : ctx.test.statements) {
        if (std::find(s.declared.begin(), s.declared.end(), name) != s.declared.end()) return s.declared_type;
    }
    return {};
}

std::string callee_key(const Statement& s) {
    if (!s.callee || s.callee->is_constructor || s.callee->receiver.empty()) return {};
    return s.callee->receiver + "." + s.callee->method;
}

}  // namespace

std::string_view to_string(BehaviorNote b) { return b == BehaviorNote::Preserving ? "preserving" : "strengthening"; }

Framework detect_framework(const TestClassModel& cls) {
    bool junit4 = false;
    for (const auto& i : cls.imports) {
        if (i.name.rfind("org.junit.jupiter", 0) == 0) return Framework::JUnit5;
        if (i.name.rfind("org.junit", 0) == 0) junit4 = true;
    }
    return junit4 ? Framework::JUnit4 : Framework::JUnit5;
}

RefactoringPlan plan_assert_to_assume(const Issue& issue, const PlanContext& ctx) {
    RefactoringPlan plan = base_plan(RefactoringKind::ReplaceAssertWithAssume, ctx, &issue);
    const Framework fw = detect_framework(ctx.cls);
    const auto& rows = ctx.result.tagged.sheet.rows;
    for (const auto& ev : issue.evidence) {
        std::string why;
        const ExpandedStatement* row = body_row(ctx, ev.row, why);
        if (row == nullptr) return downgrade(std::move(plan), why);
        const Statement& s = row->statement;
        const Invocation* call = s.kind == StatementKind::Invocation ? top_call(s) : nullptr;
        if (call == nullptr) return downgrade(std::move(plan), "the precondition is not a plain assertion call");
        const auto form = assume_for(*call, fw);
        if (!form) {
            return downgrade(std::move(plan), "no assumption counterpart for `" + call->callee.method + "` with " +
                                                  std::to_string(call->args.size()) + " argument(s)");
        }
        plan.edits.push_back(make_edit(ctx, call->range.begin, call->range.end, form->text, form->import));

        // A print right after the precondition only reported it.
        const auto next = static_cast<std::size_t>(ev.row) + 1;
        if (next < rows.size() && rows[next].role == RowRole::Body && rows[next].depth == 0 &&
            rows[next].statement.kind == StatementKind::Invocation &&
            is_print_only(rows[next].statement, ctx.rules)) {
            const std::size_t end = rows[next].statement.range.end;
            plan.edits.push_back(make_edit(ctx, s.range.end, end, ""));
            plan.rows.push_back(next);
        }
    }
    if (plan.edits.empty()) return downgrade(std::move(plan), "no precondition assertion in the test body");
    sort_edits(plan.edits);
    return plan;
}

RefactoringPlan plan_if_return_to_assume(const Issue& issue, const PlanContext& ctx) {
    RefactoringPlan plan = base_plan(RefactoringKind::ReplaceIfReturnWithAssume, ctx, &issue);
    const Framework fw = detect_framework(ctx.cls);
    for (const auto& ev : issue.evidence) {
        std::string why;
        const ExpandedStatement* row = body_row(ctx, ev.row, why);
        if (row == nullptr) return downgrade(std::move(plan), why);
        const Statement& s = row->statement;
        if (s.form != ControlForm::If) return downgrade(std::move(plan), "the guard is not an if statement");
        if (!is_if_bare_return(s)) {
            return downgrade(std::move(plan), "the guard returns a value or does more than return");
        }
        if (s.condition_has_side_effects) {
            return downgrade(std::move(plan), "the guard condition has side effects");
        }
        std::string text;
        std::string method;
        if (!s.null_checked.empty()) {
            if (fw == Framework::JUnit4) {
                method = "assumeNotNull";
                text = "assumeNotNull(" + s.null_checked + ");";
            } else {
                method = "assumeTrue";
                text = "assumeTrue(" + s.null_checked + " != null);";
            }
        } else {
            method = "assumeFalse";
            text = "assumeFalse(" + trim(s.condition) + ");";
        }
        plan.edits.push_back(make_edit(ctx, s.range.begin, s.range.end, text, assume_import(fw, method)));
    }
    if (plan.edits.empty()) return downgrade(std::move(plan), "no if-return guard in the test body");
    sort_edits(plan.edits);
    return plan;
}

RefactoringPlan plan_remove_catch(const Issue& issue, const PlanContext& ctx) {
    RefactoringPlan plan = base_plan(RefactoringKind::RemoveCatchAddThrows, ctx, &issue);
    const auto& content = ctx.file.content;
    std::vector<std::string> added;
    for (const auto& ev : issue.evidence) {
        std::string why;
        const ExpandedStatement* row = body_row(ctx, ev.row, why);
        if (row == nullptr) return downgrade(std::move(plan), why);
        const Statement& s = row->statement;
        if (s.kind != StatementKind::TryBlock || s.catches.empty()) {
            return downgrade(std::move(plan), "the act is not wrapped in a try-catch");
        }
        for (const auto& c : s.catches) {
            for (const auto& h : c.body) {
                if (!is_print_only(h, ctx.rules)) {
                    return downgrade(std::move(plan), "the catch block does more than report the exception");
                }
            }
            for (const auto& t : c.types) {
                const bool declared = std::find(ctx.test.thrown.begin(), ctx.test.thrown.end(), t) != ctx.test.thrown.end();
                if (!declared && std::find(added.begin(), added.end(), t) == added.end()) added.push_back(t);
            }
        }
        if (s.resources_range || s.finally_range) {
            plan.edits.push_back(make_edit(ctx, s.body_range.end, s.catches.back().range.end, ""));
        } else {
            const std::string indent = indent_at(content, s.range.begin);
            std::string body = reindent(content.substr(s.body_range.begin + 1, s.body_range.end - s.body_range.begin - 2),
                                        indent);
            const std::string notes = comments_in(content.substr(s.body_range.end, s.catches.front().range.begin -
                                                                                       s.body_range.end));
            if (!notes.empty()) body += " " + notes;
            plan.edits.push_back(make_edit(ctx, s.range.begin, s.range.end, body));
        }
    }
    if (!added.empty()) {
        if (ctx.test.thrown.empty()) {
            plan.edits.push_back(make_edit(ctx, ctx.test.params_close, ctx.test.params_close, " throws " + join(added, ", ")));
        } else {
            plan.edits.push_back(make_edit(ctx, ctx.test.throws_end, ctx.test.throws_end, ", " + join(added, ", ")));
        }
    }
    if (plan.edits.empty()) return downgrade(std::move(plan), "no suppressing try-catch in the test body");
    sort_edits(plan.edits);
    return plan;
}

std::optional<RefactoringPlan> draft_split_multiple_aaa(const PlanContext& ctx) {
    const auto& r = ctx.result;
    const auto blocks = aaa_blocks(r.encoding.symbols);
    if (blocks.size() < 2) return std::nullopt;
    const auto& stmts = ctx.test.statements;
    const auto anchor = anchor_rows(ctx);

    // Block and role of each top-level statement, from its first encoded row.
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> block_of(stmts.size(), kNone);
    std::vector<bool> is_arrange(stmts.size(), true);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (auto k = blocks[b].first; k < blocks[b].second; ++k) {
            const std::size_t row = r.encoding.rows[k];
            const std::size_t st = anchor[row];
            if (st >= stmts.size()) continue;
            if (block_of[st] == kNone) block_of[st] = b;
            if (r.encoding.symbols[k] != TagValue::Arrange) is_arrange[st] = false;
        }
    }
    // Unencoded statements join the next block, trailing ones the last.
    std::size_t next = blocks.size() - 1;
    for (std::size_t i = stmts.size(); i-- > 0;) {
        if (block_of[i] == kNone) {
            block_of[i] = next;
        } else {
            next = block_of[i];
        }
    }

    std::vector<std::vector<std::size_t>> members(blocks.size());
    for (std::size_t i = 0; i < stmts.size(); ++i) members[block_of[i]].push_back(i);
    std::vector<std::size_t> leading;
    for (auto i : members[0]) {
        if (!is_arrange[i]) break;
        leading.push_back(i);
    }

    RefactoringPlan plan = base_plan(RefactoringKind::SplitIntoPerBlockTests, ctx, nullptr);
    plan.target = r.id;

    // Scenario suffixes from constants only one block uses.
    std::vector<std::set<std::string>> constants(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (auto i : members[b]) {
            for (const auto& n : all_names(stmts[i])) {
                if (is_constant_name(n)) constants[b].insert(n);
            }
        }
    }
    std::vector<std::string> suffix(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (auto i : members[b]) {
            for (const auto& n : all_names(stmts[i])) {
                if (!is_constant_name(n) || !suffix[b].empty()) continue;
                bool unique = true;
                for (std::size_t o = 0; o < blocks.size(); ++o) {
                    if (o != b && constants[o].count(n) != 0) unique = false;
                }
                if (unique) suffix[b] = n.substr(0, n.find('_'));
            }
        }
    }
    std::set<std::string> distinct(suffix.begin(), suffix.end());
    if (distinct.size() != blocks.size() || distinct.count("") != 0) {
        for (std::size_t b = 0; b < blocks.size(); ++b) suffix[b] = std::to_string(b + 1);
    }

    auto taken = existing_method_names(ctx.cls);
    taken.erase(ctx.test.name);
    std::vector<std::string> methods;
    std::vector<std::string> bodies;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::vector<std::size_t> picked;
        if (b > 0) {
            std::set<std::string> overridden;
            for (auto i : members[b]) {
                if (const auto key = callee_key(stmts[i]); !key.empty()) overridden.insert(key);
                for (const auto& d : stmts[i].declared) overridden.insert("var:" + d);
            }
            for (auto i : leading) {
                const auto key = callee_key(stmts[i]);
                bool skip = !key.empty() && overridden.count(key) != 0;
                for (const auto& d : stmts[i].declared) skip = skip || overridden.count("var:" + d) != 0;
                if (!skip) picked.push_back(i);
            }
        }
        picked.insert(picked.end(), members[b].begin(), members[b].end());

        std::set<std::string> declared;
        std::vector<std::string> body;
        for (auto i : picked) {
            const Statement& s = stmts[i];
            std::string text = render_statement(ctx.file.content, s);
            if (s.kind == StatementKind::Assignment && !s.assigned.empty() && declared.count(s.assigned) == 0) {
                const std::string type = declared_type_of(ctx, s.assigned);
                if (!type.empty()) {
                    text = type + " " + text;
                    declared.insert(s.assigned);
                }
            }
            declared.insert(s.declared.begin(), s.declared.end());
            body.push_back(std::move(text));
        }
        const std::string name = unique_name(ctx.test.name + "_" + suffix[b], taken);
        plan.drafted_tests.push_back(name);
        bodies.push_back(join(body, "\n"));
        methods.push_back(render_method(ctx, name, body));
    }

    bool clones = true;
    for (std::size_t b = 1; b < bodies.size(); ++b) clones = clones && differ_only_in_literals(bodies[0], bodies[b]);
    if (clones) {
        plan.notes.push_back(
            "the drafted tests differ only in literal values; a JUnit 5 parameterized test can replace them");
    }

    const std::string indent = indent_at(ctx.file.content, ctx.test.declaration_range.begin);
    const auto [begin, end] = method_span(ctx);
    plan.edits.push_back(make_edit(ctx, begin, end, join(methods, "\n\n" + indent)));
    for (std::size_t k = 0; k < r.encoding.rows.size(); ++k) plan.rows.push_back(r.encoding.rows[k]);
    return plan;
}

std::optional<RefactoringPlan> draft_split_per_act(const Issue& issue, const PlanContext& ctx) {
    const auto& r = ctx.result;
    const auto& rows = r.tagged.sheet.rows;
    const auto& stmts = ctx.test.statements;
    const auto anchor = anchor_rows(ctx);

    std::vector<std::string> acts;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> act_of(stmts.size(), kNone);
    std::vector<bool> asserts(stmts.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t st = anchor[i];
        if (st >= stmts.size()) continue;
        const auto& tag = r.tagged.tags[i];
        if (tag.value == TagValue::Assert) asserts[st] = true;
        if (tag.value != TagValue::Act) continue;
        const std::string& callee = r.tagged.act_callee[i];
        auto it = std::find(acts.begin(), acts.end(), callee);
        if (it == acts.end()) {
            acts.push_back(callee);
            it = acts.end() - 1;
        }
        if (act_of[st] == kNone) act_of[st] = static_cast<std::size_t>(it - acts.begin());
    }
    if (acts.size() < 2) return std::nullopt;

    // Names each act defines, for routing asserts and dropping dependents.
    std::vector<std::set<std::string>> defines(acts.size());
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        if (act_of[i] == kNone) continue;
        for (const auto& n : defined_names(stmts[i])) defines[act_of[i]].insert(n);
    }
    auto reads_from = [&](const Statement& s) {
        std::size_t owner = kNone;
        for (const auto& n : referenced_names(s)) {
            for (std::size_t a = 0; a < acts.size(); ++a) {
                if (defines[a].count(n) != 0 && (owner == kNone || a > owner)) owner = a;
            }
        }
        return owner;
    };

    RefactoringPlan plan = base_plan(RefactoringKind::SplitPerAct, ctx, &issue);
    auto taken = existing_method_names(ctx.cls);
    taken.erase(ctx.test.name);
    std::vector<std::string> methods;
    for (std::size_t a = 0; a < acts.size(); ++a) {
        std::string method = acts[a];
        if (method.rfind("new ", 0) == 0) method = method.substr(4);
        std::vector<std::string> body;
        bool asserted = false;
        std::size_t last_act_line = 0;
        for (std::size_t i = 0; i < stmts.size(); ++i) {
            const Statement& s = stmts[i];
            if (act_of[i] != kNone && act_of[i] > a) continue;
            const std::size_t owner = reads_from(s);
            if (asserts[i]) {
                if (owner == a) {
                    asserted = true;
                } else if (owner == kNone) {
                    body.push_back("// review: this assertion is not tied to a single act");
                } else {
                    continue;
                }
            } else if (act_of[i] == kNone && owner != kNone && owner > a) {
                continue;
            }
            body.push_back(render_statement(ctx.file.content, s));
            if (act_of[i] == a) last_act_line = body.size();
        }
        if (!asserted) {
            body.insert(body.begin() + static_cast<long>(last_act_line),
                        "// review: add an assertion on the effect of " + method);
            plan.notes.push_back("draft for " + method + " has no assertion of its own");
        }
        const std::string name = unique_name("test" + capitalize(method), taken);
        plan.drafted_tests.push_back(name);
        methods.push_back(render_method(ctx, name, body));
    }
    const std::string indent = indent_at(ctx.file.content, ctx.test.declaration_range.begin);
    const auto [begin, end] = method_span(ctx);
    plan.edits.push_back(make_edit(ctx, begin, end, join(methods, "\n\n" + indent)));
    return plan;
}

RefactoringPlan suggest_add_assert(const Issue& issue, const PlanContext& ctx) {
    RefactoringPlan plan = base_plan(RefactoringKind::AddAssertFromExpectedResource, ctx, &issue);
    plan.notes.push_back("store the expected output in src/test/resources/" + ctx.cls.name + "/" + ctx.test.name +
                         ".expected, load it after the act and assert the result against it");
    return plan;
}

RefactoringPlan suggest_simplify_assert(const Issue& issue, const PlanContext& ctx) {
    RefactoringPlan plan = base_plan(RefactoringKind::SimplifyAssertLogic, ctx, &issue);
    plan.notes.push_back(
        "for element-wise checks over a collection, a matcher such as "
        "assertThat(items, everyItem(equalTo(expected))) can replace the loop");
    return plan;
}

std::optional<RefactoringPlan> plan_for(const Issue& issue, const PlanContext& ctx) {
    switch (issue.kind) {
        case IssueKind::AssertPrecondition: return plan_assert_to_assume(issue, ctx);
        case IssueKind::ArrangeAndQuit: return plan_if_return_to_assume(issue, ctx);
        case IssueKind::SuppressedException: return plan_remove_catch(issue, ctx);
        case IssueKind::MultipleAAA: return draft_split_multiple_aaa(ctx);
        case IssueKind::MultipleActs: return draft_split_per_act(issue, ctx);
        case IssueKind::MissingAssert: return suggest_add_assert(issue, ctx);
        case IssueKind::ObscureAssert: return suggest_simplify_assert(issue, ctx);
    }
    return std::nullopt;
}

std::string ensure_import(std::string_view content, std::string_view name) {
    const bool is_static = name.rfind("static ", 0) == 0;
    const std::string target(is_static ? name.substr(7) : name);
    const std::string owner = target.substr(0, target.rfind('.'));
    std::regex import_re(R"(^\s*import\s+(static\s+)?([\w.]+(\.\*)?)\s*;)");
    std::size_t insert_at = std::string_view::npos;
    std::size_t package_end = std::string_view::npos;
    std::size_t pos = 0;
    while (pos < content.size()) {
        const std::size_t e = line_end(content, pos);
        const std::string line(content.substr(pos, e - pos));
        std::smatch m;
        if (std::regex_search(line, m, import_re)) {
            const bool st = m[1].matched;
            const std::string n = m[2];
            if (st == is_static && (n == target || n == owner + ".*")) return std::string(content);
            insert_at = std::min(e + 1, content.size());
        } else if (line.rfind("package ", 0) == 0) {
            package_end = std::min(e + 1, content.size());
        } else if (std::regex_search(line, std::regex(R"(^\s*(public|final|abstract|class|interface|@)\b)"))) {
            break;
        }
        pos = e + 1;
    }
    std::string text = "import " + std::string(name) + ";\n";
    std::string out(content);
    if (insert_at != std::string_view::npos) {
        if (insert_at == out.size() && !out.empty() && out.back() != '\n') text = "\n" + text;
        out.insert(insert_at, text);
    } else if (package_end != std::string_view::npos) {
        out.insert(package_end, "\n" + text);
    } else {
        out.insert(0, text + "\n");
    }
    return out;
}

std::string apply(const RefactoringPlan& plan, std::string_view content, const ApplyOptions& options) {
    if (!plan.automatable && !options.allow_draft) {
        throw InvalidPlanError("plan is review-required and has no automatic edits");
    }
    if (plan.edits.empty()) throw InvalidPlanError("plan has no edits");
    std::vector<SourceEdit> edits = plan.edits;
    sort_edits(edits);
    for (std::size_t i = 0; i < edits.size(); ++i) {
        const auto& e = edits[i];
        if (e.span.end < e.span.begin || e.span.end > content.size()) {
            throw StaleEditError("edit span lies outside the file " + e.file);
        }
        if (i > 0 && edits[i - 1].span.end > e.span.begin) throw InvalidPlanError("plan edits overlap");
        if (i > 0 && edits[i - 1].file != e.file) throw InvalidPlanError("plan edits span several files");
    }
    for (const auto& e : edits) {
        if (content.substr(e.span.begin, e.span.end - e.span.begin) != e.expected) {
            throw StaleEditError("source changed at " + e.file + ":" + std::to_string(e.span.line) + ":" +
                                 std::to_string(e.span.column));
        }
    }
    std::string out(content);
    for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
        out.replace(it->span.begin, it->span.end - it->span.begin, it->replacement);
    }
    std::set<std::string> imports;
    for (const auto& e : edits) {
        if (e.requires_import) imports.insert(*e.requires_import);
    }
    for (const auto& i : imports) out = ensure_import(out, i);

    const std::string path = edits.front().file;
    try {
        parse_file(path, out, options.parse);
    } catch (const ParseError& err) {
        throw RollbackError("refactored " + path + " does not parse: " + err.what(),
                            {path, err.line(), err.column(), err.detail()});
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".aaa-lint.tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot replace " + path.string() + ": " + ec.message());
    }
}

std::string patch_file_name(const RefactoringPlan& plan) {
    return plan.target.class_name + "." + plan.target.test_name + "." + std::string(to_string(plan.kind)) + ".patch";
}

}  // namespace aaa
