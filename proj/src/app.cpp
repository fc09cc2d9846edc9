#include "aaa/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace aaa {
namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, std::string_view text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

const TestClassModel* find_class(const SourceFile& f, const std::string& name) {
    for (const auto& c : f.classes) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

const TestCaseModel* find_test(const TestClassModel& c, const std::string& name) {
    for (const auto& t : c.tests) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

// Applies requested automatable fixes to one file until none is left, one plan at a time.
std::vector<AppliedFix> fix_file(const SourceFile& original, const SourceCorpus& corpus, const RunConfig& config,
                                 std::ostream& err) {
    std::vector<AppliedFix> applied;
    SourceCorpus scratch;
    scratch.project_types = corpus.project_types;
    ParseOptions po;
    po.test_markers = config.rules.test_markers;
    std::set<std::tuple<std::string, std::string, IssueKind>> done;
    std::string content = original.content;

    for (int round = 0; round < 64; ++round) {
        SourceFile file;
        file.path = original.path;
        file.fs_path = original.fs_path;
        file.content = content;
        try {
            file.classes = parse_file(file.path, file.content, po);
        } catch (const ParseError&) {
            break;
        }
        scratch.files = {file};
        const SourceFile& sf = scratch.files.front();
        bool progressed = false;
        for (const auto& cls : sf.classes) {
            for (const auto& test : cls.tests) {
                const TestResult r = analyze_test(sf, cls, test, scratch, config.rules);
                for (const auto& issue : r.issues) {
                    if (config.fix.count(issue.kind) == 0) continue;
                    const auto key = std::tuple(cls.name, test.name, issue.kind);
                    if (done.count(key) != 0) continue;
                    done.insert(key);
                    const PlanContext ctx{sf, cls, test, r, config.rules};
                    const auto plan = plan_for(issue, ctx);
                    if (!plan || !plan->automatable) {
                        err << "aaa-lint: not fixing " << cls.name << "." << test.name << " (" << issue_id(issue.kind)
                            << ")";
                        if (plan && !plan->notes.empty()) err << ": " << plan->notes.front();
                        err << "\n";
                        continue;
                    }
                    try {
                        content = apply(*plan, sf.content, {false, po});
                        applied.push_back({sf.path, r.id, issue.kind, plan->kind});
                        progressed = true;
                    } catch (const std::exception& e) {
                        err << "aaa-lint: fix for " << cls.name << "." << test.name << " rejected: " << e.what()
                            << "\n";
                    }
                    break;
                }
                if (progressed) break;
            }
            if (progressed) break;
        }
        if (!progressed) break;
    }
    if (content != original.content) write_file_atomic(original.fs_path, content);
    return applied;
}

}  // namespace

void validate(const RunConfig& c) {
    if (c.roots.empty()) throw std::invalid_argument("no root paths given");
    if (c.sample) {
        if (c.sample->fraction && !(*c.sample->fraction > 0 && *c.sample->fraction <= 1)) {
            throw std::invalid_argument("sample fraction must be in (0, 1]");
        }
        if (c.sample->count && *c.sample->count == 0) throw std::invalid_argument("sample count must be positive");
        if (!c.sample->fraction && !c.sample->count) throw std::invalid_argument("sample needs a fraction or a count");
    }
    for (auto k : c.fix) {
        if (!is_automatable(k)) {
            throw std::invalid_argument(std::string(issue_id(k)) + " has no automatic fix");
        }
    }
    if (c.formats.empty()) throw std::invalid_argument("no output format selected");
    if (c.rules.expansion_limit < 1) throw std::invalid_argument("expansion limit must be positive");
}

SampleSpec parse_sample(std::string_view text, std::uint64_t seed) {
    SampleSpec s;
    s.seed = seed;
    const std::string t(text);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad sample value '" + t + "'");
    }
    if (used != t.size() || !(v > 0)) throw std::invalid_argument("bad sample value '" + t + "'");
    if (t.find_first_of(".eE") != std::string::npos || v < 1) {
        s.fraction = v;
    } else {
        if (v != std::floor(v)) throw std::invalid_argument("bad sample value '" + t + "'");
        s.count = static_cast<std::size_t>(v);
    }
    return s;
}

std::vector<TestId> sample_tests(std::vector<TestId> ids, const SampleSpec& spec) {
    std::sort(ids.begin(), ids.end());
    std::size_t k = ids.size();
    if (spec.count) k = std::min(k, *spec.count);
    if (spec.fraction) k = std::min(k, static_cast<std::size_t>(std::ceil(*spec.fraction * static_cast<double>(ids.size()))));
    std::mt19937_64 rng(spec.seed);
    // Partial Fisher-Yates with explicit index draws keeps the selection independent of library shuffles.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (ids.size() - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
}

RunConfig config_from_json(const nlohmann::json& doc, RunConfig base, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    auto path_of = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() || base_dir.empty() ? fp : base_dir / fp;
    };
    try {
        if (doc.contains("roots")) {
            base.roots.clear();
            for (const auto& r : doc.at("roots")) base.roots.push_back(path_of(r.get<std::string>()));
        }
        if (doc.contains("include")) base.include = doc.at("include").get<std::vector<std::string>>();
        if (doc.contains("exclude")) base.exclude = doc.at("exclude").get<std::vector<std::string>>();
        if (doc.contains("rules_file")) base.rules = load_rules(path_of(doc.at("rules_file").get<std::string>()), base.rules);
        if (doc.contains("rules")) base.rules = rules_from_json(doc.at("rules"), base.rules);
        if (doc.contains("sample") && !doc.at("sample").is_null()) {
            const auto& s = doc.at("sample");
            SampleSpec spec;
            if (s.contains("fraction")) spec.fraction = s.at("fraction").get<double>();
            if (s.contains("count")) spec.count = s.at("count").get<std::size_t>();
            if (s.contains("seed")) spec.seed = s.at("seed").get<std::uint64_t>();
            base.sample = spec;
        }
        if (doc.contains("fix")) {
            base.fix.clear();
            for (const auto& f : doc.at("fix")) {
                const auto id = f.get<std::string>();
                const auto kind = parse_issue_id(id);
                if (!kind) throw std::invalid_argument("unknown issue kind '" + id + "'");
                base.fix.insert(*kind);
            }
        }
        if (doc.contains("formats")) {
            base.formats.clear();
            for (const auto& f : doc.at("formats")) {
                const auto name = f.get<std::string>();
                const auto fmt = parse_format(name);
                if (!fmt) throw std::invalid_argument("unknown format '" + name + "'");
                base.formats.push_back(*fmt);
            }
        }
        if (doc.contains("gold")) base.gold = path_of(doc.at("gold").get<std::string>());
        if (doc.contains("out")) base.out = path_of(doc.at("out").get<std::string>());
        if (doc.contains("include_it")) base.include_it = doc.at("include_it").get<bool>();
        if (doc.contains("tag_sheets")) base.tag_sheets = doc.at("tag_sheets").get<bool>();
        if (doc.contains("jobs")) base.jobs = doc.at("jobs").get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad config: ") + e.what());
    }
    return base;
}

int run(const RunConfig& input, std::ostream& out, std::ostream& err) {
    RunConfig config = input;
    try {
        validate(config);
    } catch (const std::exception& e) {
        err << "aaa-lint: " << e.what() << "\n";
        return 2;
    }
    if (config.include_it) config.rules.include_non_unit = true;

    DiscoveryOptions discovery;
    if (!config.include.empty()) discovery.include = config.include;
    if (config.include_it) discovery.include.emplace_back("**/*IT.java");
    discovery.exclude = config.exclude;
    discovery.parse.test_markers = config.rules.test_markers;
    discovery.jobs = std::max(1u, config.jobs);

    try {
        SourceCorpus corpus = load_corpus(config.roots, discovery);

        std::vector<AppliedFix> fixes;
        if (!config.fix.empty()) {
            for (const auto& f : corpus.files) {
                if (f.classes.empty()) continue;
                auto applied = fix_file(f, corpus, config, err);
                fixes.insert(fixes.end(), applied.begin(), applied.end());
            }
            if (!fixes.empty()) corpus = load_corpus(config.roots, discovery);
        }

        std::optional<std::set<TestId>> only;
        if (config.sample) {
            const auto picked = sample_tests(test_ids(corpus), *config.sample);
            only.emplace(picked.begin(), picked.end());
        }
        const auto results = analyze_corpus(corpus, config.rules, discovery.jobs, only ? &*only : nullptr);
        const CorpusSummary summary = summarize(results);

        std::vector<RefactoringPlan> plans;
        std::vector<std::pair<RefactoringPlan, const SourceFile*>> patches;
        for (const auto& r : results) {
            if (r.issues.empty()) continue;
            const SourceFile* file = nullptr;
            for (const auto& f : corpus.files) {
                if (f.path == r.id.file) file = &f;
            }
            const TestClassModel* cls = file != nullptr ? find_class(*file, r.id.class_name) : nullptr;
            const TestCaseModel* test = cls != nullptr ? find_test(*cls, r.id.test_name) : nullptr;
            if (test == nullptr) continue;
            const PlanContext ctx{*file, *cls, *test, r, config.rules};
            for (const auto& issue : r.issues) {
                auto plan = plan_for(issue, ctx);
                if (!plan) continue;
                if (!plan->edits.empty()) patches.emplace_back(*plan, file);
                plans.push_back(std::move(*plan));
            }
        }

        const ReportInput in{results, summary, corpus.diagnostics, fixes, plans};
        for (const auto& d : corpus.diagnostics) {
            err << "aaa-lint: " << d.path << ":" << d.line << ":" << d.column << ": " << d.message << "\n";
        }
        for (const auto& w : summary.warnings) err << "aaa-lint: warning: " << w << "\n";

        if (config.out) {
            std::filesystem::create_directories(*config.out);
            for (auto f : config.formats) {
                write_file(*config.out / ("report." + std::string(extension(f))), emit_report(in, f));
            }
            if (config.tag_sheets) write_file(*config.out / "tag_sheets.csv", tag_sheet_csv(results));
            if (!patches.empty()) {
                const auto dir = *config.out / "patches";
                std::filesystem::create_directories(dir);
                for (const auto& [plan, file] : patches) {
                    try {
                        const std::string after = apply(plan, file->content, {true, {}});
                        write_file(dir / patch_file_name(plan),
                                   unified_diff(file->content, after, "a/" + file->path, "b/" + file->path));
                    } catch (const std::exception& e) {
                        err << "aaa-lint: no patch for " << plan.target.class_name << "." << plan.target.test_name
                            << ": " << e.what() << "\n";
                    }
                }
            }
        } else {
            for (auto f : config.formats) out << emit_report(in, f);
            if (config.tag_sheets) out << tag_sheet_csv(results);
        }

        if (config.gold) {
            const auto comparison = compare_gold(results, parse_gold(read_file(*config.gold)));
            const std::string text = render_gold(comparison);
            out << text;
            if (config.out) write_file(*config.out / "gold.txt", text);
        }

        const bool issues =
            std::any_of(results.begin(), results.end(), [](const TestResult& r) { return !r.issues.empty(); });
        return issues ? 1 : 0;
    } catch (const std::exception& e) {
        err << "aaa-lint: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace aaa
