#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "aaa/report.hpp"
#include "aaa/rules.hpp"

namespace aaa {

struct SampleSpec {
    std::optional<double> fraction;    // in (0, 1]
    std::optional<std::size_t> count;  // number of tests
    std::uint64_t seed = 0;
};

struct RunConfig {
    std::vector<std::filesystem::path> roots;
    std::vector<std::string> include;  // empty means the discovery defaults
    std::vector<std::string> exclude;
    RuleSet rules;
    std::optional<SampleSpec> sample;
    std::set<IssueKind> fix;
    std::vector<ReportFormat> formats{ReportFormat::Markdown};
    std::optional<std::filesystem::path> gold;
    std::optional<std::filesystem::path> out;
    bool include_it = false;
    bool tag_sheets = false;
    unsigned jobs = 1;
};

// Throws std::invalid_argument naming the first bad field.
void validate(const RunConfig& config);

// Reads the config-file fields: roots, include, exclude, sample {fraction|count, seed},
// fix, formats, gold, out, rules (object), rules_file, include_it, tag_sheets, jobs.
// Relative paths resolve against `base_dir`.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {},
                           const std::filesystem::path& base_dir = {});

// Parses "0.25" as a fraction and "40" as a count.
SampleSpec parse_sample(std::string_view text, std::uint64_t seed);

// Seeded selection over the sorted ids; the result is sorted.
std::vector<TestId> sample_tests(std::vector<TestId> ids, const SampleSpec& spec);

// Discovers, analyzes, optionally fixes, and reports. Returns 0 when no
// issue remains, 1 when issues were found and 2 on an execution error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace aaa
