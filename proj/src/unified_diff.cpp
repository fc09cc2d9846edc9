#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "aaa/refactor.hpp"

namespace aaa {
namespace {

struct Line {
    std::string_view text;  // without the newline
    bool newline = true;
};

std::vector<Line> lines_of(std::string_view s) {
    std::vector<Line> out;
    std::size_t b = 0;
    while (b < s.size()) {
        const std::size_t e = s.find('\n', b);
        if (e == std::string_view::npos) {
            out.push_back({s.substr(b), false});
            break;
        }
        out.push_back({s.substr(b, e - b), true});
        b = e + 1;
    }
    return out;
}

bool same(const Line& a, const Line& b) { return a.text == b.text && a.newline == b.newline; }

enum class Op { Keep, Del, Add };

struct Step {
    Op op;
    std::size_t a;  // index into before (Keep/Del)
    std::size_t b;  // index into after (Keep/Add)
};

// Line-level edit script via LCS over the region between common prefix and suffix.
std::vector<Step> script(const std::vector<Line>& x, const std::vector<Line>& y) {
    std::size_t pre = 0;
    while (pre < x.size() && pre < y.size() && same(x[pre], y[pre])) ++pre;
    std::size_t suf = 0;
    while (suf < x.size() - pre && suf < y.size() - pre && same(x[x.size() - 1 - suf], y[y.size() - 1 - suf])) ++suf;
    const std::size_t n = x.size() - pre - suf;
    const std::size_t m = y.size() - pre - suf;

    std::vector<Step> out;
    for (std::size_t i = 0; i < pre; ++i) out.push_back({Op::Keep, i, i});
    if (n * m <= 16'000'000) {
        std::vector<std::vector<unsigned>> lcs(n + 1, std::vector<unsigned>(m + 1, 0));
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = m; j-- > 0;) {
                lcs[i][j] = same(x[pre + i], y[pre + j]) ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
            }
        }
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < n || j < m) {
            if (i < n && j < m && same(x[pre + i], y[pre + j])) {
                out.push_back({Op::Keep, pre + i, pre + j});
                ++i;
                ++j;
            } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
                if (i < n && lcs[i][j + 1] == lcs[i + 1][j]) {
                    out.push_back({Op::Del, pre + i, pre + j});
                    ++i;
                } else {
                    out.push_back({Op::Add, pre + i, pre + j});
                    ++j;
                }
            } else {
                out.push_back({Op::Del, pre + i, pre + j});
                ++i;
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) out.push_back({Op::Del, pre + i, pre});
        for (std::size_t j = 0; j < m; ++j) out.push_back({Op::Add, pre + n, pre + j});
    }
    for (std::size_t k = 0; k < suf; ++k) out.push_back({Op::Keep, pre + n + k, pre + m + k});
    return out;
}

std::string range_text(std::size_t start, std::size_t count) {
    // An empty range names the line before it.
    const std::size_t first = count == 0 ? start : start + 1;
    if (count == 1) return std::to_string(first);
    return std::to_string(first) + "," + std::to_string(count);
}

}  // namespace

std::string unified_diff(std::string_view before, std::string_view after, std::string_view from_name,
                         std::string_view to_name, int context) {
    const auto x = lines_of(before);
    const auto y = lines_of(after);
    const auto steps = script(x, y);
    const auto ctx = static_cast<std::size_t>(std::max(0, context));

    std::string out;
    std::size_t k = 0;
    bool header = false;
    while (k < steps.size()) {
        while (k < steps.size() && steps[k].op == Op::Keep) ++k;
        if (k == steps.size()) break;
        std::size_t begin = k >= ctx ? k - ctx : 0;
        // Extend the hunk while changes are within 2*context kept lines of each other.
        std::size_t end = k;
        while (end < steps.size()) {
            if (steps[end].op != Op::Keep) {
                ++end;
                continue;
            }
            std::size_t run = end;
            while (run < steps.size() && steps[run].op == Op::Keep) ++run;
            if (run == steps.size() || run - end > 2 * ctx) {
                end = std::min(run, end + ctx);
                break;
            }
            end = run;
        }
        while (begin < k && steps[begin].op != Op::Keep) ++begin;

        std::size_t a_start = steps[begin].a;
        std::size_t b_start = steps[begin].b;
        std::size_t a_count = 0;
        std::size_t b_count = 0;
        for (std::size_t i = begin; i < end; ++i) {
            if (steps[i].op != Op::Add) ++a_count;
            if (steps[i].op != Op::Del) ++b_count;
        }
        if (!header) {
            out += "--- " + std::string(from_name) + "\n";
            out += "+++ " + std::string(to_name) + "\n";
            header = true;
        }
        out += "@@ -" + range_text(a_start, a_count) + " +" + range_text(b_start, b_count) + " @@\n";
        for (std::size_t i = begin; i < end; ++i) {
            const Line& l = steps[i].op == Op::Add ? y[steps[i].b] : x[steps[i].a];
            out += steps[i].op == Op::Keep ? ' ' : steps[i].op == Op::Del ? '-' : '+';
            out += l.text;
            out += '\n';
            if (!l.newline) out += "\\ No newline at end of file\n";
        }
        k = end;
    }
    return out;
}

}  // namespace aaa
