#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aaa/source_model.hpp"

namespace aaa {
namespace fs = std::filesystem;

namespace {

bool match_segment(std::string_view pat, std::string_view seg) {
    // Classic two-pointer wildcard match with backtracking on the last '*'.
    std::size_t p = 0, s = 0, star = std::string_view::npos, mark = 0;
    while (s < seg.size()) {
        if (p < pat.size() && (pat[p] == '?' || pat[p] == seg[s])) {
            ++p;
            ++s;
        } else if (p < pat.size() && pat[p] == '*') {
            star = p++;
            mark = s;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto slash = s.find('/', start);
        out.push_back(s.substr(start, slash == std::string_view::npos ? slash : slash - start));
        if (slash == std::string_view::npos) return out;
        start = slash + 1;
    }
}

bool match_parts(const std::vector<std::string_view>& pat, std::size_t i, const std::vector<std::string_view>& path,
                 std::size_t j) {
    if (i == pat.size()) return j == path.size();
    if (pat[i] == "**") {
        for (std::size_t k = j; k <= path.size(); ++k) {
            if (match_parts(pat, i + 1, path, k)) return true;
        }
        return false;
    }
    return j < path.size() && match_segment(pat[i], path[j]) && match_parts(pat, i + 1, path, j + 1);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Candidate {
    fs::path fs_path;
    std::string rel;  // relative to its root, '/'-separated
    std::string reported;
};

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
    return match_parts(split(pattern), 0, split(path), 0);
}

SourceCorpus load_corpus(const std::vector<fs::path>& roots, const DiscoveryOptions& options) {
    SourceCorpus corpus;
    corpus.roots = roots;
    std::vector<Candidate> all;
    for (const auto& root : roots) {
        std::error_code ec;
        if (!fs::exists(root, ec)) throw std::runtime_error("root does not exist: " + root.string());
        const std::string prefix = roots.size() > 1 ? root.filename().generic_string() + "/" : "";
        if (fs::is_regular_file(root, ec)) {
            all.push_back({root, root.filename().generic_string(), prefix + root.filename().generic_string()});
            continue;
        }
        fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
        if (ec) throw std::runtime_error("cannot read root " + root.string() + ": " + ec.message());
        for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
            if (ec) throw std::runtime_error("cannot read root " + root.string() + ": " + ec.message());
            if (!it->is_regular_file(ec) || it->path().extension() != ".java") continue;
            const std::string rel = fs::relative(it->path(), root, ec).generic_string();
            all.push_back({it->path(), rel, prefix + rel});
        }
    }
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.reported < b.reported; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const Candidate& a, const Candidate& b) { return a.reported == b.reported; }),
              all.end());

    std::vector<std::string> contents(all.size());
    std::vector<char> selected(all.size(), 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
        contents[i] = read_file(all[i].fs_path);
        auto matches = [&](const std::vector<std::string>& globs) {
            return std::any_of(globs.begin(), globs.end(),
                               [&](const std::string& g) { return glob_match(g, all[i].rel); });
        };
        selected[i] = matches(options.include) && !matches(options.exclude);
        for (auto& name : declared_type_names(contents[i])) corpus.project_types.insert(std::move(name));
    }

    struct Outcome {
        std::vector<TestClassModel> classes;
        std::optional<ParseDiagnostic> error;
    };
    std::vector<Outcome> outcomes(all.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < all.size(); i = next++) {
            if (!selected[i]) continue;
            try {
                outcomes[i].classes = parse_file(all[i].reported, contents[i], options.parse);
            } catch (const ParseError& e) {
                outcomes[i].error = ParseDiagnostic{all[i].reported, e.line(), e.column(), e.detail()};
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(all.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!selected[i]) continue;
        if (outcomes[i].error) {
            corpus.diagnostics.push_back(*outcomes[i].error);
            continue;
        }
        corpus.files.push_back({all[i].reported, all[i].fs_path, std::move(contents[i]), std::move(outcomes[i].classes)});
    }
    return corpus;
}

}  // namespace aaa
