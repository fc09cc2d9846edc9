#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "aaa/analyzer.hpp"
#include "aaa/refactor.hpp"
#include "aaa/rules.hpp"
#include "aaa/source_model.hpp"

namespace aaa::testing {

inline std::filesystem::path fixtures_dir() { return std::filesystem::path(AAA_FIXTURES_DIR); }

inline std::filesystem::path fixture(const std::string& relative) { return fixtures_dir() / relative; }

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

// Drops // and /* */ comments and all whitespace outside string literals.
inline std::string normalize_code(const std::string& s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.compare(i, 2, "//") == 0) {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (s.compare(i, 2, "/*") == 0) {
            auto end = s.find("*/", i + 2);
            i = end == std::string::npos ? s.size() : end + 2;
        } else if (s[i] == '"' || s[i] == '\'') {
            const char q = s[i];
            out += s[i++];
            while (i < s.size() && s[i] != q) {
                if (s[i] == '\\' && i + 1 < s.size()) out += s[i++];
                out += s[i++];
            }
            if (i < s.size()) out += s[i++];
        } else if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        } else {
            out += s[i++];
        }
    }
    return out;
}

// A single parsed fixture file with its analysis.
struct Analyzed {
    SourceCorpus corpus;
    std::vector<TestResult> results;
    RuleSet rules;

    const SourceFile& file() const { return corpus.files.front(); }

    const TestResult& result(const std::string& test) const {
        for (const auto& r : results) {
            if (r.id.test_name == test) return r;
        }
        throw std::runtime_error("no result for " + test);
    }

    const TestClassModel& cls_of(const std::string& test) const {
        for (const auto& f : corpus.files) {
            for (const auto& c : f.classes) {
                for (const auto& t : c.tests) {
                    if (t.name == test) return c;
                }
            }
        }
        throw std::runtime_error("no class for " + test);
    }

    const SourceFile& file_of(const std::string& test) const {
        const auto& r = result(test);
        for (const auto& f : corpus.files) {
            if (f.path == r.id.file) return f;
        }
        throw std::runtime_error("no file for " + test);
    }

    const TestCaseModel& test(const std::string& name) const {
        for (const auto& t : cls_of(name).tests) {
            if (t.name == name) return t;
        }
        throw std::runtime_error("no test " + name);
    }

    PlanContext context(const std::string& name) const {
        return PlanContext{file_of(name), cls_of(name), test(name), result(name), rules};
    }

    const Issue* issue(const std::string& name, IssueKind kind) const {
        for (const auto& i : result(name).issues) {
            if (i.kind == kind) return &i;
        }
        return nullptr;
    }
};

// Loads and analyzes every .java file under `dir`.
inline Analyzed analyze_dir(const std::filesystem::path& dir, RuleSet rules = {}) {
    Analyzed a;
    a.rules = rules;
    DiscoveryOptions opts;
    opts.include = {"**/*.java"};
    opts.parse.test_markers = rules.test_markers;
    a.corpus = load_corpus({dir}, opts);
    a.results = analyze_corpus(a.corpus, a.rules);
    return a;
}

// A fresh directory under the system temp path, removed on destruction.
class TempDir {
   public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("aaa_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

   private:
    std::filesystem::path path_;
};

// Writes `content` as `name` into a temporary directory and analyzes it.
inline Analyzed analyze_text(const std::string& name, const std::string& content, RuleSet rules = {}) {
    TempDir dir;
    write_text(dir.path() / name, content);
    return analyze_dir(dir.path(), rules);
}

}  // namespace aaa::testing
