#include "aaa/classifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace aaa {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::ClassicAAA: return "ClassicAAA";
        case Verdict::SpecialAAA: return "SpecialAAA";
        case Verdict::AntiAAA: return "AntiAAA";
        case Verdict::NonUnitTest: return "NonUnitTest";
    }
    return "AntiAAA";
}

std::string_view to_string(SpecialKind k) {
    switch (k) {
        case SpecialKind::NoArrangeStaticConstructor: return "NoArrangeStaticConstructor";
        case SpecialKind::SharedBeforeAfter: return "SharedBeforeAfter";
        case SpecialKind::ExpectedException: return "ExpectedException";
        case SpecialKind::ImplicitAct: return "ImplicitAct";
    }
    return "ImplicitAct";
}

std::string LayoutEncoding::str() const {
    std::string out;
    for (auto s : symbols) out.push_back(s == TagValue::Arrange ? 'a' : s == TagValue::Act ? 'c' : 's');
    return out;
}

LayoutEncoding encoding_from_string(std::string_view symbols) {
    LayoutEncoding e;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        switch (symbols[i]) {
            case 'a': e.symbols.push_back(TagValue::Arrange); break;
            case 'c': e.symbols.push_back(TagValue::Act); break;
            case 's': e.symbols.push_back(TagValue::Assert); break;
            default: throw std::invalid_argument("encoding symbols must be a, c or s");
        }
        e.rows.push_back(i);
    }
    return e;
}

LayoutEncoding encode(const TaggedSheet& ts, bool include_lifecycle) {
    LayoutEncoding e;
    const auto& rows = ts.sheet.rows;
    std::optional<std::size_t> first_act;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!include_lifecycle && rows[i].role != RowRole::Body) continue;
        if (ts.tags[i].value == TagValue::Act) {
            first_act = i;
            break;
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!include_lifecycle && rows[i].role != RowRole::Body) continue;
        TagValue v = ts.tags[i].value;
        if (v == TagValue::Teardown || v == TagValue::Unknown) {
            e.omitted.push_back(i);
            continue;
        }
        if (v == TagValue::Assert && first_act && i < *first_act) {
            v = TagValue::Arrange;
            e.precondition_remap.push_back(i);
        }
        e.symbols.push_back(v);
        e.rows.push_back(i);
    }
    return e;
}

bool match_classic(const std::vector<TagValue>& s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto run = [&](TagValue v) {
        const std::size_t start = i;
        while (i < n && s[i] == v) ++i;
        return i - start;
    };
    return run(TagValue::Arrange) > 0 && run(TagValue::Act) > 0 && run(TagValue::Assert) > 0 && i == n;
}

std::vector<std::pair<std::size_t, std::size_t>> aaa_blocks(const std::vector<TagValue>& s) {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const std::size_t start = i;
        while (i < n && s[i] == TagValue::Arrange) ++i;
        const std::size_t acts = i;
        while (i < n && s[i] == TagValue::Act) ++i;
        if (i == acts) return {};
        const std::size_t asserts = i;
        while (i < n && s[i] == TagValue::Assert) ++i;
        if (i == asserts) return {};
        blocks.emplace_back(start, i);
    }
    return blocks;
}

std::size_t count_aaa_blocks(const std::vector<TagValue>& s) { return aaa_blocks(s).size(); }

bool has_expected_attribute(const TestCaseModel& test) {
    for (const auto& a : test.annotations) {
        if (a.attributes.count("expected") != 0) return true;
    }
    return false;
}

bool uses_assert_throws(const TaggedSheet& ts) {
    for (const auto& row : ts.sheet.rows) {
        for (const auto* c : all_calls(row.statement, true)) {
            if (c->callee.method == "assertThrows" && !c->callee.is_constructor) return true;
        }
    }
    return false;
}

namespace {

bool is_pattern(const std::vector<TagValue>& s, TagValue first, TagValue second) {
    std::size_t i = 0;
    auto run = [&](TagValue v) {
        const std::size_t start = i;
        while (i < s.size() && s[i] == v) ++i;
        return i - start;
    };
    return run(first) > 0 && run(second) > 0 && i == s.size();
}

bool compares_project_instances(const TaggedSheet& ts, const LayoutEncoding& e, const ClassifierContext& ctx) {
    if (ctx.project_types == nullptr || ctx.rules == nullptr) return false;
    auto project = [&](const std::string& type) { return !type.empty() && ctx.project_types->count(type) != 0; };
    for (std::size_t k = 0; k < e.symbols.size(); ++k) {
        if (e.symbols[k] != TagValue::Assert) continue;
        const Statement& s = ts.sheet.rows[e.rows[k]].statement;
        for (const auto* c : all_calls(s)) {
            const auto& m = c->callee.method;
            if ((m == "assertEquals" || m == "assertNotEquals") && c->arg_types.size() >= 2) {
                const auto& x = c->arg_types[c->arg_types.size() - 2];
                const auto& y = c->arg_types.back();
                if (project(x) && project(y)) return true;
            }
            if (m == "equals" && project(c->callee.receiver_type)) return true;
        }
    }
    return false;
}

}  // namespace

std::optional<SpecialKind> detect_special(const TestCaseModel& test, const TestClassModel&, const TaggedSheet& ts,
                                          const LayoutEncoding& e, const ClassifierContext& ctx) {
    if (has_expected_attribute(test) || uses_assert_throws(ts)) return SpecialKind::ExpectedException;

    const bool has_lifecycle = std::any_of(ts.sheet.rows.begin(), ts.sheet.rows.end(),
                                           [](const ExpandedStatement& r) { return r.role != RowRole::Body; });
    if (has_lifecycle && !match_classic(e) && match_classic(encode(ts, true))) return SpecialKind::SharedBeforeAfter;

    if (is_pattern(e.symbols, TagValue::Act, TagValue::Assert)) {
        bool all_static = true;
        for (std::size_t k = 0; k < e.symbols.size(); ++k) {
            if (e.symbols[k] != TagValue::Act) continue;
            const auto& row = ts.sheet.rows[e.rows[k]];
            const std::string& callee = ts.act_callee.size() > e.rows[k] ? ts.act_callee[e.rows[k]] : std::string();
            bool found = false;
            for (const auto* c : all_calls(row.statement)) {
                const std::string name = c->callee.is_constructor ? "new " + c->callee.method : c->callee.method;
                if (name != callee) continue;
                found = true;
                if (!c->callee.is_static && !c->callee.is_constructor) all_static = false;
            }
            if (!found) all_static = false;
        }
        if (all_static) return SpecialKind::NoArrangeStaticConstructor;
    }

    if (is_pattern(e.symbols, TagValue::Arrange, TagValue::Assert) && compares_project_instances(ts, e, ctx)) {
        return SpecialKind::ImplicitAct;
    }
    return std::nullopt;
}

Classification classify(const TestCaseModel& test, const TestClassModel& cls, const TaggedSheet& ts,
                        const LayoutEncoding& e, const ClassifierContext& ctx) {
    Classification c;
    const auto blocks = aaa_blocks(e.symbols);
    c.blocks = blocks.size();
    for (const auto& [b, end] : blocks) {
        Evidence ev{"aaa-block", {}};
        for (auto k = b; k < end; ++k) ev.rows.push_back(e.rows[k]);
        c.evidence.push_back(std::move(ev));
    }
    if (ctx.rules != nullptr && !ctx.rules->include_non_unit) {
        const auto verdict = is_probable_non_unit_test(test, cls, *ctx.rules);
        if (verdict.non_unit) {
            c.verdict = Verdict::NonUnitTest;
            c.non_unit_reason = verdict.reason;
            c.evidence.push_back({"non-unit", {}});
            return c;
        }
    }
    if (match_classic(e)) {
        c.verdict = Verdict::ClassicAAA;
        return c;
    }
    if (auto kind = detect_special(test, cls, ts, e, ctx)) {
        c.verdict = Verdict::SpecialAAA;
        c.special = kind;
        c.evidence.push_back({"special:" + std::string(to_string(*kind)), {}});
        return c;
    }
    c.verdict = Verdict::AntiAAA;
    return c;
}

}  // namespace aaa
