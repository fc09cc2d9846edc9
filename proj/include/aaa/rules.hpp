#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace aaa {

// Every name list and flag the heuristics consult. Defaults reproduce the
// behavior documented in the README; a JSON rules file can override any key.
struct RuleSet {
    std::set<std::string> assert_apis{"assertEquals", "assertTrue",       "assertFalse", "assertNull",
                                      "assertNotNull", "assertSame",      "assertNotSame", "assertArrayEquals",
                                      "assertThat",    "assertThrows",    "assertAll",   "fail"};
    std::set<std::string> verify_apis{"verify"};
    bool mock_verify_as_assert = true;

    std::vector<std::string> setter_prefixes{"set", "add", "put", "register", "config"};
    std::set<std::string> mock_apis{"mock", "when", "thenReturn", "doReturn", "spy"};
    std::vector<std::string> mock_prefixes{"any"};
    std::set<std::string> assume_apis{"assumeTrue", "assumeFalse", "assumeNotNull", "assumeThat", "assumeNoException",
                                      "assumingThat"};

    std::set<std::string> release_apis{"close", "shutdown", "delete", "clear", "reset", "tearDown"};

    // Calls whose only effect is output for manual inspection.
    std::set<std::string> print_apis{"print", "println", "printf", "printStackTrace"};
    std::set<std::string> log_receivers{"log", "LOG", "logger", "LOGGER", "Log", "Logger"};
    std::set<std::string> log_apis{"trace", "debug", "info", "warn", "error", "fatal", "log"};

    // Non-unit markers: camel-case tokens of a callee, and SQL in string literals.
    std::vector<std::string> non_unit_callee_tokens{"exec"};
    bool detect_sql = true;
    bool include_non_unit = false;

    std::set<std::string> test_markers{"Test"};
    int expansion_limit = 8;
    bool expand_superclass = false;

    bool allow_loop_assert = true;
    bool accept_implicit_no_throw = false;

    bool is_assert_api(std::string_view method) const;
    bool is_setter(std::string_view method) const;
    bool is_mock_api(std::string_view method) const;
};

RuleSet rules_from_json(const nlohmann::json& doc, RuleSet base = {});
nlohmann::json rules_to_json(const RuleSet& rules);
// Throws std::runtime_error when the file cannot be read or is not valid JSON.
RuleSet load_rules(const std::filesystem::path& path, RuleSet base = {});

// Splits an identifier into lower-case camel-case / underscore tokens:
// "getAllProperties" -> {"get", "all", "properties"}, "HTTPClient" -> {"http", "client"}.
std::vector<std::string> split_identifier(std::string_view name);

}  // namespace aaa
