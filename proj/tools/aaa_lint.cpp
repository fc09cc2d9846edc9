#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "aaa/app.hpp"

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& values) {
    std::vector<std::string> out;
    for (const auto& v : values) {
        std::size_t b = 0;
        while (b <= v.size()) {
            const std::size_t e = std::min(v.find(',', b), v.size());
            if (e > b) out.push_back(v.substr(b, e - b));
            b = e + 1;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks Java unit tests against the arrange-act-assert structure", "aaa-lint"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(aaa::kToolVersion));

    auto* analyze = app.add_subcommand("analyze", "Analyze test sources under the given roots");
    std::vector<std::string> roots;
    std::vector<std::string> include;
    std::vector<std::string> exclude;
    std::string sample;
    std::uint64_t seed = 0;
    std::string gold;
    std::vector<std::string> fix;
    std::vector<std::string> formats;
    std::string out_dir;
    std::string rules_file;
    std::string config_file;
    unsigned jobs = 1;
    bool include_it = false;
    bool tag_sheets = false;

    analyze->add_option("roots", roots, "Source roots to scan");
    analyze->add_option("--include", include, "Glob of files to analyze (repeatable)");
    analyze->add_option("--exclude", exclude, "Glob of files to skip (repeatable)");
    analyze->add_option("--sample", sample, "Fraction (0.03) or count (40) of tests to analyze");
    analyze->add_option("--seed", seed, "Seed for --sample");
    analyze->add_option("--gold", gold, "CSV of manual tags; prints kappa per A and a confusion table");
    analyze->add_option("--fix", fix, "Apply automatic fixes: assert-precondition, arrange-and-quit, suppressed-exception, all");
    analyze->add_option("--format", formats, "Report formats: json, csv, md, sarif");
    analyze->add_option("--out", out_dir, "Directory for reports and patches (default: stdout)");
    analyze->add_option("--rules", rules_file, "JSON file overriding rule sets");
    analyze->add_option("--config", config_file, "JSON run configuration; flags override it");
    analyze->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    analyze->add_flag("--include-it", include_it, "Analyze integration tests (classes ending in IT) as unit tests");
    analyze->add_flag("--tag-sheets", tag_sheets, "Also emit the expanded tag sheets as CSV");

    auto* rules_cmd = app.add_subcommand("rules", "Print the default rule sets as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (rules_cmd->parsed()) {
        std::cout << aaa::rules_to_json(aaa::RuleSet{}).dump(2) << "\n";
        return 0;
    }

    aaa::RunConfig config;
    try {
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in) throw std::runtime_error("cannot read config " + config_file);
            config = aaa::config_from_json(nlohmann::json::parse(in), config,
                                           std::filesystem::path(config_file).parent_path());
        }
        if (!roots.empty()) config.roots.assign(roots.begin(), roots.end());
        if (!include.empty()) config.include = include;
        if (!exclude.empty()) config.exclude = exclude;
        if (!rules_file.empty()) config.rules = aaa::load_rules(rules_file, config.rules);
        if (!sample.empty()) config.sample = aaa::parse_sample(sample, seed);
        else if (config.sample && analyze->count("--seed") != 0) config.sample->seed = seed;
        if (!gold.empty()) config.gold = gold;
        if (!out_dir.empty()) config.out = out_dir;
        if (analyze->count("--jobs") != 0) config.jobs = jobs;
        if (include_it) config.include_it = true;
        if (tag_sheets) config.tag_sheets = true;
        if (!fix.empty()) {
            config.fix.clear();
            for (const auto& id : split_list(fix)) {
                if (id == "all") {
                    config.fix = {aaa::IssueKind::AssertPrecondition, aaa::IssueKind::ArrangeAndQuit,
                                  aaa::IssueKind::SuppressedException};
                    continue;
                }
                const auto kind = aaa::parse_issue_id(id);
                if (!kind) throw std::invalid_argument("unknown issue kind '" + id + "'");
                config.fix.insert(*kind);
            }
        }
        if (!formats.empty()) {
            config.formats.clear();
            for (const auto& name : split_list(formats)) {
                const auto f = aaa::parse_format(name);
                if (!f) throw std::invalid_argument("unknown format '" + name + "'");
                config.formats.push_back(*f);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "aaa-lint: " << e.what() << "\n";
        return 2;
    }
    return aaa::run(config, std::cout, std::cerr);
}
