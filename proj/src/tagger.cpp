#include "aaa/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace aaa {

std::string_view to_string(TagValue value) {
    switch (value) {
        case TagValue::Arrange: return "arrange";
        case TagValue::Act: return "act";
        case TagValue::Assert: return "assert";
        case TagValue::Teardown: return "teardown";
        case TagValue::Unknown: return "unknown";
    }
    return "unknown";
}

std::optional<TagValue> parse_tag(std::string_view text) {
    std::string t;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(c)));
    }
    for (auto v : {TagValue::Arrange, TagValue::Act, TagValue::Assert, TagValue::Teardown, TagValue::Unknown}) {
        if (t == to_string(v)) return v;
    }
    if (t.empty()) return TagValue::Unknown;
    return std::nullopt;
}

std::string_view to_string(Confidence c) { return c == Confidence::High ? "high" : "low"; }

namespace {

std::string capitalize(std::string_view s) {
    std::string out(s);
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::string_view last_segment(std::string_view s) {
    const auto dot = s.rfind('.');
    return dot == std::string_view::npos ? s : s.substr(dot + 1);
}

bool contains_java_assert(const Statement& s) {
    if (s.java_assert) return true;
    for (const auto& c : s.children) {
        if (contains_java_assert(c)) return true;
    }
    for (const auto& f : s.finally_body) {
        if (contains_java_assert(f)) return true;
    }
    return false;
}

bool is_simple_variable(std::string_view s) {
    if (s.empty() || !(std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; });
}

void names_into(const Statement& s, bool handlers, std::vector<std::string>& out) {
    out.insert(out.end(), s.names.begin(), s.names.end());
    for (const auto& c : s.children) names_into(c, handlers, out);
    if (handlers) {
        for (const auto& h : s.catches) {
            for (const auto& b : h.body) names_into(b, handlers, out);
        }
    }
    for (const auto& f : s.finally_body) names_into(f, handlers, out);
}

// Production calls of a row that may be the function under test.
std::vector<const Invocation*> act_calls(const ExpandedStatement& row, const RuleSet& rules) {
    std::vector<const Invocation*> out;
    for (const auto* c : all_calls(row.statement)) {
        if (assert_rule(*c, rules) || is_print_call(*c, rules)) continue;
        if (row.helper_inlined && row.statement.callee && c->callee == *row.statement.callee) continue;
        out.push_back(c);
    }
    return out;
}

bool references(const Statement& s, const std::string& name) {
    const auto names = referenced_names(s);
    return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

std::optional<std::string_view> assert_rule(const Invocation& call, const RuleSet& rules) {
    const Callee& c = call.callee;
    if (c.is_constructor) return std::nullopt;
    if (rules.assert_apis.count(c.method) != 0) return rule::kAssertApi;
    if (rules.mock_verify_as_assert && rules.verify_apis.count(c.method) != 0) return rule::kMockVerify;
    // `assert.Equals(...)`: a receiver spelled like the API prefix.
    if (iequals(last_segment(c.receiver), "assert") && rules.assert_apis.count("assert" + capitalize(c.method)) != 0) {
        return rule::kAssertQualified;
    }
    return std::nullopt;
}

std::vector<const Invocation*> assert_calls(const Statement& s, const RuleSet& rules) {
    std::vector<const Invocation*> out;
    for (const auto* c : all_calls(s)) {
        if (assert_rule(*c, rules)) out.push_back(c);
    }
    return out;
}

std::optional<std::string_view> assert_rule(const ExpandedStatement& row, const RuleSet& rules) {
    for (const auto* c : all_calls(row.statement)) {
        if (auto r = assert_rule(*c, rules)) return r;
    }
    if (contains_java_assert(row.statement)) return rule::kJavaAssert;
    return std::nullopt;
}

bool tag_assert(const ExpandedStatement& row, const RuleSet& rules) { return assert_rule(row, rules).has_value(); }

std::optional<std::string_view> arrange_rule(const ExpandedStatement& row, const RuleSet& rules) {
    const Statement& s = row.statement;
    if (s.callee && s.callee->is_constructor && !s.is_control_flow()) return rule::kConstructor;
    if (s.kind == StatementKind::Declaration) return rule::kDeclaration;
    if (s.callee && !s.callee->is_constructor && !s.is_control_flow()) {
        if (rules.is_mock_api(s.callee->method)) return rule::kMockApi;
        if (rules.assume_apis.count(s.callee->method) != 0) return rule::kAssume;
        if (rules.is_setter(s.callee->method)) return rule::kSetter;
    }
    if (!s.is_control_flow()) {
        for (const auto& c : s.calls) {
            if (!c.callee.is_constructor && rules.is_mock_api(c.callee.method)) return rule::kMockApi;
        }
    }
    return std::nullopt;
}

bool tag_arrange(const ExpandedStatement& row, const RuleSet& rules) { return arrange_rule(row, rules).has_value(); }

bool is_print_call(const Invocation& call, const RuleSet& rules) {
    const Callee& c = call.callee;
    if (c.is_constructor) return false;
    if (rules.print_apis.count(c.method) != 0) {
        if (c.method == "printStackTrace") return true;
        if (c.receiver == "System.out" || c.receiver == "System.err") return true;
    }
    return rules.log_receivers.count(std::string(last_segment(c.receiver))) != 0 && rules.log_apis.count(c.method) != 0;
}

bool is_print_only(const Statement& s, const RuleSet& rules) {
    const auto calls = all_calls(s, true);
    if (calls.empty()) return false;
    return std::all_of(calls.begin(), calls.end(), [&](const Invocation* c) {
        // Arguments like `d.getData()` feed the print and do not change its nature.
        return is_print_call(*c, rules) ||
               std::any_of(calls.begin(), calls.end(), [&](const Invocation* p) {
                   return p != c && is_print_call(*p, rules) && p->range.begin <= c->range.begin &&
                          c->range.end <= p->range.end;
               });
    });
}

std::vector<std::string> test_name_tokens(std::string_view test_name) {
    std::string_view name = test_name;
    const bool test_prefix = name.size() > 4 && iequals(name.substr(0, 4), "test");
    if (test_prefix) {
        name.remove_prefix(4);
        // testFoo_Scenario: the suffix names a scenario, not the function under test.
        const auto underscore = name.find('_');
        if (underscore != std::string_view::npos && underscore > 0) name = name.substr(0, underscore);
    }
    std::vector<std::string> out;
    for (auto& t : split_identifier(name)) {
        if (t.size() >= 3 && !(out.empty() && t == "test")) out.push_back(std::move(t));
    }
    return out;
}

bool tokens_similar(std::string_view a, std::string_view b) {
    if (a.size() < 3 || b.size() < 3) return false;
    if (a == b) return true;
    std::size_t p = 0;
    while (p < a.size() && p < b.size() && a[p] == b[p]) ++p;
    return p >= 4 && p + 2 >= std::min(a.size(), b.size());
}

std::vector<std::string> defined_names(const Statement& s) {
    std::vector<std::string> out = s.declared;
    if (!s.assigned.empty()) out.push_back(s.assigned);
    if (s.callee && !s.callee->is_constructor && is_simple_variable(s.callee->receiver)) {
        out.push_back(s.callee->receiver);
    }
    return out;
}

std::vector<std::string> referenced_names(const Statement& s, bool include_handlers) {
    std::vector<std::string> out;
    names_into(s, include_handlers, out);
    return out;
}

void select_act(const TagSheet& sheet, std::vector<Tag>& tags, std::string_view test_name, const RuleSet& rules,
                std::vector<std::size_t>& candidates, std::vector<std::string>& act_callee) {
    const auto& rows = sheet.rows;
    const auto name_tokens = test_name_tokens(test_name);
    act_callee.assign(rows.size(), "");

    std::optional<std::size_t> first_assert;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].role == RowRole::Body && tags[i].value == TagValue::Assert) {
            first_assert = i;
            break;
        }
    }

    struct Score {
        std::size_t row;
        bool by_method = false;
        bool by_constructor = false;
        bool dataflow = false;
        std::string callee;
    };
    std::vector<Score> scores;
    auto similar_to_name = [&](std::string_view identifier) {
        for (const auto& t : split_identifier(identifier)) {
            for (const auto& n : name_tokens) {
                if (tokens_similar(t, n)) return true;
            }
        }
        return false;
    };

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.role != RowRole::Body || !row.production_call || tags[i].value == TagValue::Assert) continue;
        if (tags[i].rule == rule::kMockApi || tags[i].rule == rule::kAssume) continue;
        if (is_print_only(row.statement, rules)) continue;
        const auto calls = act_calls(row, rules);
        if (calls.empty()) continue;
        Score sc;
        sc.row = i;
        for (const auto* c : calls) {
            if (!c->callee.is_constructor && similar_to_name(c->callee.method) && !sc.by_method) {
                sc.by_method = true;
                sc.callee = c->callee.method;
            }
        }
        if (!sc.by_method) {
            for (const auto* c : calls) {
                if (c->callee.is_constructor && similar_to_name(c->callee.method)) {
                    sc.by_constructor = true;
                    sc.callee = "new " + c->callee.method;
                    break;
                }
            }
        }
        if (sc.callee.empty()) {
            const Statement& s = row.statement;
            const Invocation* main = nullptr;
            for (const auto* c : calls) {
                if (s.callee && c->callee == *s.callee) main = c;
            }
            if (main == nullptr) main = calls.front();
            sc.callee = main->callee.is_constructor ? "new " + main->callee.method : main->callee.method;
        }
        for (const auto& v : defined_names(row.statement)) {
            for (std::size_t j = i + 1; j < rows.size() && !sc.dataflow; ++j) {
                if (tags[j].value == TagValue::Assert && references(rows[j].statement, v)) {
                    sc.dataflow = true;
                    break;
                }
                const auto redefined = defined_names(rows[j].statement);
                if (std::find(redefined.begin(), redefined.end(), v) != redefined.end()) break;
            }
        }
        scores.push_back(std::move(sc));
    }

    candidates.clear();
    if (scores.empty()) return;

    // Implicit act: an equality assertion is itself the function under test.
    const bool names_equality = std::any_of(name_tokens.begin(), name_tokens.end(),
                                            [](const std::string& t) { return tokens_similar(t, "equals"); });
    const bool method_named = std::any_of(scores.begin(), scores.end(), [](const Score& s) { return s.by_method; });
    bool equality_assert = false;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (tags[j].value != TagValue::Assert) continue;
        for (const auto* c : assert_calls(rows[j].statement, rules)) {
            if (c->callee.method == "assertEquals" || c->callee.method == "assertNotEquals") equality_assert = true;
        }
        for (const auto* c : all_calls(rows[j].statement)) {
            if (c->callee.method == "equals") equality_assert = true;
        }
    }
    const bool implicit_act = names_equality && equality_assert && !method_named;

    std::vector<std::size_t> chosen;
    std::string_view chosen_rule;
    Confidence confidence = Confidence::High;
    if (!implicit_act) {
        const bool ctor_named = std::any_of(scores.begin(), scores.end(), [](const Score& s) { return s.by_constructor; });
        const bool any_flow = std::any_of(scores.begin(), scores.end(), [](const Score& s) { return s.dataflow; });
        if (method_named || ctor_named) {
            chosen_rule = method_named ? rule::kActName : rule::kActConstructorName;
            for (const auto& s : scores) {
                if (method_named ? s.by_method : s.by_constructor) chosen.push_back(s.row);
            }
        } else {
            // Latest qualifying row before the first assert, else the latest overall.
            auto pick = [&](auto pred) -> std::optional<std::size_t> {
                std::optional<std::size_t> before, any;
                for (const auto& s : scores) {
                    if (!pred(s)) continue;
                    any = s.row;
                    if (!first_assert || s.row < *first_assert) before = s.row;
                }
                return before ? before : any;
            };
            std::optional<std::size_t> row;
            if (any_flow) {
                row = pick([](const Score& s) { return s.dataflow; });
                chosen_rule = rule::kActDataflow;
            } else {
                row = pick([](const Score&) { return true; });
                chosen_rule = rule::kActPosition;
                confidence = Confidence::Low;
            }
            if (row) chosen.push_back(*row);
        }
    }

    std::vector<std::string> acted;
    for (auto r : chosen) {
        tags[r] = {TagValue::Act, std::string(chosen_rule), confidence};
        for (const auto& s : scores) {
            if (s.row == r) acted.push_back(s.callee);
        }
    }
    for (const auto& s : scores) {
        act_callee[s.row] = s.callee;
        if (tags[s.row].value == TagValue::Act) continue;
        if (!acted.empty() && std::find(acted.begin(), acted.end(), s.callee) != acted.end()) {
            tags[s.row] = {TagValue::Act, std::string(rule::kActRepeat), confidence};
        } else if (tags[s.row].value != TagValue::Arrange) {
            tags[s.row] = {TagValue::Arrange, std::string(rule::kDemoted), Confidence::High};
        }
    }

    // Ranking: acts first, then by score, later rows first.
    std::vector<const Score*> order;
    for (const auto& s : scores) order.push_back(&s);
    std::stable_sort(order.begin(), order.end(), [&](const Score* a, const Score* b) {
        auto key = [&](const Score* s) {
            return std::make_tuple(tags[s->row].value == TagValue::Act, s->by_method, s->by_constructor, s->dataflow,
                                   s->row);
        };
        return key(a) > key(b);
    });
    for (const auto* s : order) candidates.push_back(s->row);
}

void tag_teardown(const TagSheet& sheet, std::vector<Tag>& tags, const RuleSet& rules) {
    const auto& rows = sheet.rows;
    std::optional<std::size_t> last_assert;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (tags[i].value == TagValue::Assert) last_assert = i;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (tags[i].value == TagValue::Assert) continue;
        if (rows[i].role == RowRole::Epilogue) {
            tags[i] = {TagValue::Teardown, std::string(rule::kLifecycleEpilogue), Confidence::High};
            continue;
        }
        if (!last_assert || i < *last_assert || rows[i].role != RowRole::Body) continue;
        const Statement& s = rows[i].statement;
        if (s.callee && !s.callee->is_constructor && rules.release_apis.count(s.callee->method) != 0) {
            tags[i] = {TagValue::Teardown, std::string(rule::kRelease), Confidence::High};
        }
    }
}

TaggedSheet tag_sheet(TagSheet sheet, const RuleSet& rules) {
    TaggedSheet out;
    const auto& rows = sheet.rows;
    out.tags.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (auto r = assert_rule(rows[i], rules)) {
            out.tags[i] = {TagValue::Assert, std::string(*r), Confidence::High};
        } else if (auto a = arrange_rule(rows[i], rules)) {
            out.tags[i] = {TagValue::Arrange, std::string(*a), Confidence::High};
        } else if (rows[i].role == RowRole::Prologue && rows[i].production_call) {
            out.tags[i] = {TagValue::Arrange, std::string(rule::kLifecyclePrologue), Confidence::High};
        }
    }
    select_act(sheet, out.tags, sheet.id.test_name, rules, out.act_candidates, out.act_callee);
    tag_teardown(sheet, out.tags, rules);
    out.sheet = std::move(sheet);
    return out;
}

std::optional<double> kappa(const std::vector<TagValue>& first, const std::vector<TagValue>& second, TagValue a) {
    if (first.size() != second.size()) throw std::invalid_argument("kappa: sequences differ in length");
    if (first.empty()) return std::nullopt;
    const double n = static_cast<double>(first.size());
    double agree = 0, p1 = 0, p2 = 0;
    for (std::size_t i = 0; i < first.size(); ++i) {
        const bool x = first[i] == a;
        const bool y = second[i] == a;
        agree += x == y ? 1 : 0;
        p1 += x ? 1 : 0;
        p2 += y ? 1 : 0;
    }
    const double po = agree / n;
    p1 /= n;
    p2 /= n;
    const double pe = p1 * p2 + (1 - p1) * (1 - p2);
    if (pe >= 1.0) return 1.0;
    return (po - pe) / (1 - pe);
}

}  // namespace aaa
