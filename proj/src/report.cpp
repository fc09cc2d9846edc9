#include "aaa/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aaa/csv.hpp"

namespace aaa {
namespace {

using nlohmann::json;

constexpr IssueKind kAllIssues[] = {IssueKind::MultipleAAA,    IssueKind::MissingAssert, IssueKind::AssertPrecondition,
                                    IssueKind::ObscureAssert,  IssueKind::ArrangeAndQuit, IssueKind::MultipleActs,
                                    IssueKind::SuppressedException};

std::string_view title(IssueKind k) {
    switch (k) {
        case IssueKind::MultipleAAA: return "Multiple AAA";
        case IssueKind::MissingAssert: return "Missing Assert";
        case IssueKind::AssertPrecondition: return "Assert Precondition";
        case IssueKind::ObscureAssert: return "Obscure Assert";
        case IssueKind::ArrangeAndQuit: return "Arrange & Quit";
        case IssueKind::MultipleActs: return "Multiple Acts";
        case IssueKind::SuppressedException: return "Suppressed Exception";
    }
    return "";
}

std::string_view category(IssueKind k) { return is_anti_pattern(k) ? "anti-pattern" : "design-flaw"; }

std::string origin_text(const ExpandedStatement& row) {
    std::string out;
    for (const auto& f : row.origin) {
        if (!out.empty()) out += '>';
        out += f.method + ":" + std::to_string(f.line);
    }
    return out;
}

std::string one_line(std::string_view text) {
    std::string out;
    bool space = false;
    for (char c : text) {
        if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pvalue(double p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, p < 1e-3 ? "%.2e" : "%.4f", p);
    return buf;
}

std::string md_cell(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

const TagValue kTagOrder[] = {TagValue::Arrange, TagValue::Act, TagValue::Assert, TagValue::Teardown, TagValue::Unknown};

std::size_t tag_index(TagValue v) {
    return static_cast<std::size_t>(std::find(std::begin(kTagOrder), std::end(kTagOrder), v) - std::begin(kTagOrder));
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "md" || name == "markdown") return ReportFormat::Markdown;
    if (name == "sarif") return ReportFormat::Sarif;
    return std::nullopt;
}

std::string_view extension(ReportFormat f) {
    switch (f) {
        case ReportFormat::Json: return "json";
        case ReportFormat::Csv: return "csv";
        case ReportFormat::Markdown: return "md";
        case ReportFormat::Sarif: return "sarif";
    }
    return "txt";
}

json to_json(const TestResult& r) {
    json j;
    j["file"] = r.id.file;
    j["class"] = r.id.class_name;
    j["qualified_class"] = r.qualified_class;
    j["test"] = r.id.test_name;
    j["line"] = r.line;
    j["verdict"] = to_string(r.classification.verdict);
    j["special_kind"] = r.classification.special ? json(to_string(*r.classification.special)) : json(nullptr);
    j["blocks"] = r.classification.blocks;
    j["encoding"] = r.encoding.str();
    if (!r.classification.non_unit_reason.empty()) j["non_unit_reason"] = r.classification.non_unit_reason;
    j["metrics"] = {{"loc", r.metrics.loc},
                    {"cyclomatic", r.metrics.cyclomatic},
                    {"n_arrange", r.metrics.n_arrange},
                    {"n_act", r.metrics.n_act},
                    {"n_assert", r.metrics.n_assert}};
    json evidence = json::array();
    for (const auto& e : r.classification.evidence) evidence.push_back({{"rule", e.rule}, {"rows", e.rows}});
    j["evidence"] = std::move(evidence);
    json issues = json::array();
    for (const auto& i : r.issues) {
        json ev = json::array();
        for (const auto& e : i.evidence) ev.push_back({{"row", e.row}, {"line", e.line}, {"depth", e.depth}});
        json ji = {{"kind", to_string(i.kind)},
                   {"id", issue_id(i.kind)},
                   {"category", category(i.kind)},
                   {"message", i.message},
                   {"automatable", i.automatable},
                   {"suggestion", to_string(i.suggestion)},
                   {"evidence", std::move(ev)}};
        if (!i.blocks.empty()) ji["blocks"] = i.blocks;
        issues.push_back(std::move(ji));
    }
    j["issues"] = std::move(issues);
    json rows = json::array();
    const auto& sheet = r.tagged.sheet.rows;
    for (std::size_t k = 0; k < sheet.size(); ++k) {
        const auto& row = sheet[k];
        const auto& tag = r.tagged.tags[k];
        json jr = {{"seq", k},
                   {"depth", row.depth},
                   {"role", to_string(row.role)},
                   {"origin", origin_text(row)},
                   {"kind", to_string(row.statement.kind)},
                   {"line", row.statement.line},
                   {"tag", to_string(tag.value)},
                   {"rule", tag.rule},
                   {"confidence", to_string(tag.confidence)},
                   {"text", one_line(row.statement.text)}};
        if (row.truncated) jr["truncated"] = true;
        rows.push_back(std::move(jr));
    }
    j["tag_sheet"] = std::move(rows);
    return j;
}

json to_json(const CorpusSummary& s) {
    json j;
    j["total"] = s.total;
    j["unit_tests"] = s.unit_tests;
    json verdicts = json::object();
    for (auto v : {Verdict::ClassicAAA, Verdict::SpecialAAA, Verdict::AntiAAA, Verdict::NonUnitTest}) {
        verdicts[std::string(to_string(v))] = s.verdicts.count(v) != 0 ? s.verdicts.at(v) : 0;
    }
    j["verdicts"] = std::move(verdicts);
    json specials = json::object();
    for (auto k : {SpecialKind::NoArrangeStaticConstructor, SpecialKind::SharedBeforeAfter,
                   SpecialKind::ExpectedException, SpecialKind::ImplicitAct}) {
        specials[std::string(to_string(k))] = s.specials.count(k) != 0 ? s.specials.at(k) : 0;
    }
    j["special_kinds"] = std::move(specials);
    json issues = json::object();
    for (auto k : kAllIssues) issues[std::string(to_string(k))] = s.issues.count(k) != 0 ? s.issues.at(k) : 0;
    j["issues"] = std::move(issues);
    j["shares"] = {{"ClassicAAA", s.share_classic}, {"SpecialAAA", s.share_special}, {"AntiAAA", s.share_anti}};
    json cmp = json::array();
    for (const auto& c : s.comparisons) {
        json jc = {{"metric", c.metric},
                   {"n_aaa", c.n_aaa},
                   {"n_anti", c.n_anti},
                   {"median_aaa", c.median_aaa},
                   {"median_anti", c.median_anti}};
        if (c.test) {
            jc["u"] = c.test->u;
            jc["p"] = c.test->p;
            jc["exact"] = c.test->exact;
        } else {
            jc["u"] = nullptr;
            jc["p"] = nullptr;
        }
        cmp.push_back(std::move(jc));
    }
    j["comparisons"] = std::move(cmp);
    j["warnings"] = s.warnings;
    return j;
}

json to_json(const RefactoringPlan& p) {
    json edits = json::array();
    for (const auto& e : p.edits) {
        json je = {{"file", e.file},
                   {"start", {{"line", e.span.line}, {"column", e.span.column}}},
                   {"end", {{"line", e.span.end_line}, {"column", e.span.end_column}}},
                   {"replacement", e.replacement}};
        if (e.requires_import) je["import"] = *e.requires_import;
        edits.push_back(std::move(je));
    }
    return {{"kind", to_string(p.kind)},
            {"file", p.target.file},
            {"class", p.target.class_name},
            {"test", p.target.test_name},
            {"automatable", p.automatable},
            {"behavior", to_string(p.behavior)},
            {"suggestion", p.suggestion},
            {"notes", p.notes},
            {"drafted_tests", p.drafted_tests},
            {"edits", std::move(edits)}};
}

std::string report_json(const ReportInput& in) {
    json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["summary"] = to_json(in.summary);
    json tests = json::array();
    for (const auto& r : in.results) tests.push_back(to_json(r));
    j["tests"] = std::move(tests);
    json diags = json::array();
    for (const auto& d : in.diagnostics) {
        diags.push_back({{"file", d.path}, {"line", d.line}, {"column", d.column}, {"message", d.message}});
    }
    j["diagnostics"] = std::move(diags);
    json fixes = json::array();
    for (const auto& f : in.fixes) {
        fixes.push_back({{"file", f.file},
                         {"class", f.test.class_name},
                         {"test", f.test.test_name},
                         {"issue", issue_id(f.issue)},
                         {"refactoring", to_string(f.kind)}});
    }
    j["fixes"] = std::move(fixes);
    json plans = json::array();
    for (const auto& p : in.plans) plans.push_back(to_json(p));
    j["plans"] = std::move(plans);
    return j.dump(2) + "\n";
}

std::string report_csv(const std::vector<TestResult>& results) {
    std::string out = csv::row({"file", "class", "test", "verdict", "special_kind", "blocks", "loc", "cyclomatic",
                                "n_arrange", "n_act", "n_assert", "issues"});
    for (const auto& r : results) {
        std::vector<std::string> kinds;
        for (const auto& i : r.issues) kinds.emplace_back(to_string(i.kind));
        std::string issues;
        for (std::size_t k = 0; k < kinds.size(); ++k) issues += (k != 0 ? ";" : "") + kinds[k];
        out += csv::row({r.id.file, r.id.class_name, r.id.test_name, std::string(to_string(r.classification.verdict)),
                         r.classification.special ? std::string(to_string(*r.classification.special)) : "",
                         std::to_string(r.classification.blocks), std::to_string(r.metrics.loc),
                         std::to_string(r.metrics.cyclomatic), std::to_string(r.metrics.n_arrange),
                         std::to_string(r.metrics.n_act), std::to_string(r.metrics.n_assert), issues});
    }
    return out;
}

std::string tag_sheet_csv(const std::vector<TestResult>& results) {
    std::string out = csv::row({"file", "test_class", "test_case", "seq", "depth", "origin", "stmt_kind", "tag", "text"});
    for (const auto& r : results) {
        const auto& rows = r.tagged.sheet.rows;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            out += csv::row({r.id.file, r.id.class_name, r.id.test_name, std::to_string(k),
                             std::to_string(rows[k].depth), origin_text(rows[k]),
                             std::string(to_string(rows[k].statement.kind)),
                             std::string(to_string(r.tagged.tags[k].value)), one_line(rows[k].statement.text)});
        }
    }
    return out;
}

std::string report_markdown(const ReportInput& in) {
    const auto& s = in.summary;
    std::ostringstream md;
    md << "# " << kToolName << " report\n\n";
    md << "Analyzed " << s.total << " test(s), " << s.unit_tests << " unit test(s).\n\n";
    md << "| Verdict | Tests | Share of unit tests |\n|---|---:|---:|\n";
    auto verdict_count = [&](Verdict v) { return s.verdicts.count(v) != 0 ? s.verdicts.at(v) : 0; };
    md << "| ClassicAAA | " << verdict_count(Verdict::ClassicAAA) << " | " << fixed(100 * s.share_classic, 1) << "% |\n";
    md << "| SpecialAAA | " << verdict_count(Verdict::SpecialAAA) << " | " << fixed(100 * s.share_special, 1) << "% |\n";
    md << "| AntiAAA | " << verdict_count(Verdict::AntiAAA) << " | " << fixed(100 * s.share_anti, 1) << "% |\n";
    md << "| NonUnitTest | " << verdict_count(Verdict::NonUnitTest) << " | |\n\n";

    if (!s.specials.empty()) {
        md << "Special AAA kinds:";
        for (const auto& [k, n] : s.specials) md << " " << to_string(k) << " " << n << ";";
        md << "\n\n";
    }

    md << "## AAA vs Anti-AAA\n\n| Metric | AAA n | Anti n | AAA median | Anti median | U | p |\n"
          "|---|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& c : s.comparisons) {
        md << "| " << c.metric << " | " << c.n_aaa << " | " << c.n_anti << " | " << fixed(c.median_aaa, 1) << " | "
           << fixed(c.median_anti, 1) << " | ";
        if (c.test) {
            md << fixed(c.test->u, 1) << " | " << pvalue(c.test->p) << (c.test->exact ? " (exact)" : "") << " |\n";
        } else {
            md << "n/a | n/a |\n";
        }
    }
    for (const auto& w : s.warnings) md << "\n> " << w << "\n";
    md << "\n";

    for (auto kind : kAllIssues) {
        std::vector<const TestResult*> hits;
        for (const auto& r : in.results) {
            if (std::any_of(r.issues.begin(), r.issues.end(), [&](const Issue& i) { return i.kind == kind; })) {
                hits.push_back(&r);
            }
        }
        if (hits.empty()) continue;
        const RefactoringKind fix = suggested_refactoring(kind);
        md << "## " << title(kind) << " (" << category(kind) << ", " << hits.size() << ")\n\n";
        md << "Drawback: " << drawback(kind) << "\n\n";
        md << "Suggestion (" << to_string(fix) << (is_automatable(kind) ? ", automatable with --fix " : ", review required")
           << (is_automatable(kind) ? std::string(issue_id(kind)) : "") << "): " << suggestion_text(fix) << "\n\n";
        for (const auto* r : hits) {
            for (const auto& i : r->issues) {
                if (i.kind != kind) continue;
                const int line = i.evidence.empty() ? r->line : i.evidence.front().line;
                md << "- `" << md_cell(r->id.class_name) << "." << md_cell(r->id.test_name) << "` (" << r->id.file << ":"
                   << line << "): " << i.message << "\n";
            }
        }
        md << "\n";
    }

    if (!in.plans.empty()) {
        md << "## Refactoring notes\n\n";
        for (const auto& p : in.plans) {
            md << "- `" << p.target.class_name << "." << p.target.test_name << "` " << to_string(p.kind) << " ("
               << to_string(p.behavior) << ")";
            if (!p.drafted_tests.empty()) {
                md << ": drafts";
                for (const auto& d : p.drafted_tests) md << " `" << d << "`";
            }
            for (const auto& n : p.notes) md << "; " << n;
            md << "\n";
        }
        md << "\n";
    }
    if (!in.fixes.empty()) {
        md << "## Applied fixes\n\n";
        for (const auto& f : in.fixes) {
            md << "- " << f.file << ": `" << f.test.class_name << "." << f.test.test_name << "` " << to_string(f.kind)
               << "\n";
        }
        md << "\n";
    }
    if (!in.diagnostics.empty()) {
        md << "## Diagnostics\n\n";
        for (const auto& d : in.diagnostics) {
            md << "- " << d.path << ":" << d.line << ":" << d.column << ": " << d.message << "\n";
        }
        md << "\n";
    }
    return md.str();
}

std::string report_sarif(const std::vector<TestResult>& results) {
    json rules = json::array();
    for (auto k : kAllIssues) {
        const RefactoringKind fix = suggested_refactoring(k);
        rules.push_back({{"id", issue_id(k)},
                         {"name", to_string(k)},
                         {"shortDescription", {{"text", title(k)}}},
                         {"fullDescription", {{"text", drawback(k)}}},
                         {"help", {{"text", suggestion_text(fix)}}},
                         {"properties", {{"category", category(k)}, {"automatable", is_automatable(k)}}}});
    }
    json out = json::array();
    for (const auto& r : results) {
        for (const auto& i : r.issues) {
            const auto index = static_cast<std::size_t>(std::find(std::begin(kAllIssues), std::end(kAllIssues), i.kind) -
                                                        std::begin(kAllIssues));
            const int line = std::max(1, i.evidence.empty() ? r.line : i.evidence.front().line);
            json locations = json::array();
            locations.push_back({{"physicalLocation",
                                  {{"artifactLocation", {{"uri", r.id.file}}}, {"region", {{"startLine", line}}}}},
                                 {"logicalLocations",
                                  json::array({{{"fullyQualifiedName", r.qualified_class + "." + r.id.test_name},
                                                {"kind", "function"}}})}});
            out.push_back({{"ruleId", issue_id(i.kind)},
                           {"ruleIndex", index},
                           {"level", "warning"},
                           {"message", {{"text", r.id.class_name + "." + r.id.test_name + ": " + i.message}}},
                           {"locations", std::move(locations)}});
        }
    }
    json doc = {{"$schema", kSarifSchema},
                {"version", "2.1.0"},
                {"runs", json::array({{{"tool",
                                        {{"driver",
                                          {{"name", kToolName},
                                           {"version", kToolVersion},
                                           {"rules", std::move(rules)}}}}},
                                       {"results", std::move(out)}}})}};
    return doc.dump(2) + "\n";
}

std::string emit_report(const ReportInput& in, ReportFormat f) {
    switch (f) {
        case ReportFormat::Json: return report_json(in);
        case ReportFormat::Csv: return report_csv(in.results);
        case ReportFormat::Markdown: return report_markdown(in);
        case ReportFormat::Sarif: return report_sarif(in.results);
    }
    return {};
}

std::vector<GoldRow> parse_gold(std::string_view text) {
    const auto rows = csv::parse(text);
    if (rows.empty()) throw std::runtime_error("gold file is empty");
    const auto& header = rows.front();
    auto column = [&](std::string_view name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error("gold file lacks column " + std::string(name));
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_class = column("test_class");
    const std::size_t c_case = column("test_case");
    const std::size_t c_seq = column("seq");
    const std::size_t c_tag = column("tag");
    std::vector<GoldRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() == 1 && r[0].empty()) continue;
        if (r.size() != header.size()) {
            throw std::runtime_error("gold row " + std::to_string(i + 1) + " has " + std::to_string(r.size()) +
                                     " fields, expected " + std::to_string(header.size()));
        }
        const auto tag = parse_tag(r[c_tag]);
        if (!tag) throw std::runtime_error("gold row " + std::to_string(i + 1) + ": unknown tag '" + r[c_tag] + "'");
        GoldRow g;
        g.test_class = r[c_class];
        g.test_case = r[c_case];
        try {
            g.seq = std::stoul(r[c_seq]);
        } catch (const std::exception&) {
            throw std::runtime_error("gold row " + std::to_string(i + 1) + ": bad seq '" + r[c_seq] + "'");
        }
        g.tag = *tag;
        out.push_back(std::move(g));
    }
    return out;
}

GoldComparison compare_gold(const std::vector<TestResult>& results, const std::vector<GoldRow>& gold) {
    std::map<std::pair<std::string, std::string>, const TestResult*> index;
    for (const auto& r : results) index[{r.id.class_name, r.id.test_name}] = &r;
    GoldComparison g;
    std::vector<TagValue> gold_tags;
    std::vector<TagValue> tool_tags;
    for (const auto& row : gold) {
        const auto it = index.find({row.test_class, row.test_case});
        if (it == index.end() || row.seq >= it->second->tagged.tags.size()) {
            ++g.unmatched;
            continue;
        }
        const TagValue tool = it->second->tagged.tags[row.seq].value;
        gold_tags.push_back(row.tag);
        tool_tags.push_back(tool);
        ++g.confusion[tag_index(row.tag)][tag_index(tool)];
        ++g.matched;
    }
    for (auto a : {TagValue::Arrange, TagValue::Act, TagValue::Assert}) g.kappa[a] = kappa(gold_tags, tool_tags, a);
    return g;
}

std::string render_gold(const GoldComparison& g) {
    std::ostringstream out;
    out << "gold rows matched: " << g.matched << ", unmatched: " << g.unmatched << "\n";
    for (const auto& [tag, k] : g.kappa) {
        out << "kappa " << to_string(tag) << ": " << (k ? fixed(*k, 3) : std::string("n/a")) << "\n";
    }
    out << "confusion (rows gold, columns tool):\n";
    out << "gold\\tool";
    for (auto t : kTagOrder) out << "\t" << to_string(t);
    out << "\n";
    for (std::size_t i = 0; i < 5; ++i) {
        out << to_string(kTagOrder[i]);
        for (std::size_t j = 0; j < 5; ++j) out << "\t" << g.confusion[i][j];
        out << "\n";
    }
    return out.str();
}

}  // namespace aaa
