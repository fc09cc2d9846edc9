#include "aaa/rules.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aaa {
namespace {

bool starts_with_lower(std::string_view name, std::string_view prefix) {
    if (name.size() < prefix.size() || name.substr(0, prefix.size()) != prefix) return false;
    // "settle" is not a setter; "set", "setX" and "set_x" are.
    if (name.size() == prefix.size()) return true;
    const auto next = static_cast<unsigned char>(name[prefix.size()]);
    return std::isupper(next) || next == '_' || std::isdigit(next);
}

template <typename T>
void read(const nlohmann::json& doc, const char* key, T& out) {
    if (auto it = doc.find(key); it != doc.end()) out = it->get<T>();
}

}  // namespace

bool RuleSet::is_assert_api(std::string_view method) const {
    if (assert_apis.count(std::string(method)) != 0) return true;
    return mock_verify_as_assert && verify_apis.count(std::string(method)) != 0;
}

bool RuleSet::is_setter(std::string_view method) const {
    for (const auto& p : setter_prefixes) {
        if (starts_with_lower(method, p)) return true;
    }
    return false;
}

bool RuleSet::is_mock_api(std::string_view method) const {
    if (mock_apis.count(std::string(method)) != 0) return true;
    for (const auto& p : mock_prefixes) {
        if (starts_with_lower(method, p)) return true;
    }
    return false;
}

RuleSet rules_from_json(const nlohmann::json& doc, RuleSet base) {
    if (!doc.is_object()) throw std::runtime_error("rules document must be a JSON object");
    read(doc, "assert_apis", base.assert_apis);
    read(doc, "verify_apis", base.verify_apis);
    read(doc, "mock_verify_as_assert", base.mock_verify_as_assert);
    read(doc, "setter_prefixes", base.setter_prefixes);
    read(doc, "mock_apis", base.mock_apis);
    read(doc, "mock_prefixes", base.mock_prefixes);
    read(doc, "assume_apis", base.assume_apis);
    read(doc, "release_apis", base.release_apis);
    read(doc, "print_apis", base.print_apis);
    read(doc, "log_receivers", base.log_receivers);
    read(doc, "log_apis", base.log_apis);
    read(doc, "non_unit_callee_tokens", base.non_unit_callee_tokens);
    read(doc, "detect_sql", base.detect_sql);
    read(doc, "include_non_unit", base.include_non_unit);
    read(doc, "test_markers", base.test_markers);
    read(doc, "expansion_limit", base.expansion_limit);
    read(doc, "expand_superclass", base.expand_superclass);
    read(doc, "allow_loop_assert", base.allow_loop_assert);
    read(doc, "accept_implicit_no_throw", base.accept_implicit_no_throw);
    if (base.expansion_limit < 1) throw std::runtime_error("expansion_limit must be positive");
    return base;
}

nlohmann::json rules_to_json(const RuleSet& r) {
    return {
        {"assert_apis", r.assert_apis},
        {"verify_apis", r.verify_apis},
        {"mock_verify_as_assert", r.mock_verify_as_assert},
        {"setter_prefixes", r.setter_prefixes},
        {"mock_apis", r.mock_apis},
        {"mock_prefixes", r.mock_prefixes},
        {"assume_apis", r.assume_apis},
        {"release_apis", r.release_apis},
        {"print_apis", r.print_apis},
        {"log_receivers", r.log_receivers},
        {"log_apis", r.log_apis},
        {"non_unit_callee_tokens", r.non_unit_callee_tokens},
        {"detect_sql", r.detect_sql},
        {"include_non_unit", r.include_non_unit},
        {"test_markers", r.test_markers},
        {"expansion_limit", r.expansion_limit},
        {"expand_superclass", r.expand_superclass},
        {"allow_loop_assert", r.allow_loop_assert},
        {"accept_implicit_no_throw", r.accept_implicit_no_throw},
    };
}

RuleSet load_rules(const std::filesystem::path& path, RuleSet base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read rules file " + path.string());
    try {
        return rules_from_json(nlohmann::json::parse(in), std::move(base));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("invalid rules file " + path.string() + ": " + e.what());
    }
}

std::vector<std::string> split_identifier(std::string_view name) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
    };
    for (std::size_t i = 0; i < name.size(); ++i) {
        const auto c = static_cast<unsigned char>(name[i]);
        if (c == '_' || c == '$') {
            flush();
            continue;
        }
        if (std::isupper(c)) {
            const bool prev_lower = i > 0 && (std::islower(static_cast<unsigned char>(name[i - 1])) ||
                                              std::isdigit(static_cast<unsigned char>(name[i - 1])));
            const bool acronym_end = i > 0 && std::isupper(static_cast<unsigned char>(name[i - 1])) &&
                                     i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
            if (prev_lower || acronym_end) flush();
        }
        cur.push_back(static_cast<char>(std::tolower(c)));
    }
    flush();
    return out;
}

}  // namespace aaa
