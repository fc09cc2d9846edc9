#include <gtest/gtest.h>

#include "aaa/refactor.hpp"
#include "support.hpp"

namespace aaa {
namespace {

using testing::analyze_dir;
using testing::analyze_text;
using testing::fixture;
using testing::normalize_code;
using testing::read_text;

// Declaration text (from the first modifier) of `test` in `content`.
std::string method_text(const std::string& content, const std::string& test) {
    for (const auto& c : parse_file("X.java", content)) {
        for (const auto& t : c.tests) {
            if (t.name == test) {
                const auto& r = t.declaration_range;
                return content.substr(r.begin, r.end - r.begin);
            }
        }
    }
    return {};
}

bool has_issue(const std::string& name, const std::string& content, const std::string& test, IssueKind kind) {
    const auto a = analyze_text(name, content);
    return a.issue(test, kind) != nullptr;
}

RefactoringPlan plan_of(const testing::Analyzed& a, const std::string& test, IssueKind kind) {
    const auto* issue = a.issue(test, kind);
    if (issue == nullptr) throw std::runtime_error("missing issue on " + test);
    auto plan = plan_for(*issue, a.context(test));
    if (!plan) throw std::runtime_error("no plan for " + test);
    return *plan;
}

TEST(AssertToAssume, FixtureListing) {
    const auto a = analyze_dir(fixture("listings"));
    const auto plan = plan_of(a, "testPoll", IssueKind::AssertPrecondition);
    EXPECT_EQ(plan.kind, RefactoringKind::ReplaceAssertWithAssume);
    EXPECT_TRUE(plan.automatable);
    EXPECT_EQ(plan.behavior, BehaviorNote::Strengthening);
    ASSERT_EQ(plan.edits.size(), 1u);
    EXPECT_EQ(plan.edits[0].expected, "assertNotNull(s)");
    EXPECT_EQ(plan.edits[0].requires_import.value_or(""), "static org.junit.Assume.assumeNotNull");

    const auto& file = a.file_of("testPoll");
    const auto out = aaa::apply(plan, file.content);
    EXPECT_NE(out.find("import static org.junit.Assume.assumeNotNull;"), std::string::npos);
    EXPECT_EQ(normalize_code(method_text(out, "testPoll")),
              normalize_code(read_text(fixture("expected/SnapshotTest.testPoll.assume.java"))));
    EXPECT_FALSE(has_issue("SnapshotTest.java", out, "testPoll", IssueKind::AssertPrecondition));
    EXPECT_THROW(aaa::apply(plan, out), StaleEditError);
}

TEST(AssertToAssume, JUnit5WithAdjacentPrint) {
    const std::string src = R"(import org.junit.jupiter.api.Assertions;
import org.junit.jupiter.api.Test;

class ProviderTest {
    @Test
    void testExport() {
        List<String> pList = registry.lookup();
        Assertions.assertTrue(!pList.isEmpty());
        System.out.println(pList);
        int n = exporter.export(pList);
        Assertions.assertEquals(2, n);
    }
}
)";
    const auto a = analyze_text("ProviderTest.java", src);
    const auto plan = plan_of(a, "testExport", IssueKind::AssertPrecondition);
    ASSERT_TRUE(plan.automatable);
    const auto out = aaa::apply(plan, a.file().content);
    EXPECT_NE(out.find("Assumptions.assumeTrue(!pList.isEmpty());"), std::string::npos);
    EXPECT_EQ(out.find("System.out.println(pList);"), std::string::npos);
    EXPECT_NE(out.find("import org.junit.jupiter.api.Assumptions;"), std::string::npos);
    EXPECT_FALSE(has_issue("ProviderTest.java", out, "testExport", IssueKind::AssertPrecondition));
}

TEST(AssertToAssume, JUnit5NotNull) {
    const std::string src = R"(import org.junit.jupiter.api.Test;
import static org.junit.jupiter.api.Assertions.*;

class PollTest {
    @Test
    void testPoll() {
        Snapshot s = mgr.createSnapshot();
        assertNotNull(s);
        String v = s.poll();
        assertEquals("x", v);
    }
}
)";
    const auto a = analyze_text("PollTest.java", src);
    const auto plan = plan_of(a, "testPoll", IssueKind::AssertPrecondition);
    const auto out = aaa::apply(plan, a.file().content);
    EXPECT_NE(out.find("assumeTrue(s != null);"), std::string::npos);
    EXPECT_NE(out.find("import static org.junit.jupiter.api.Assumptions.assumeTrue;"), std::string::npos);
}

TEST(AssertToAssume, EqualsBecomesEqualityAssumption) {
    const std::string src = R"(import org.junit.Test;
import static org.junit.Assert.*;

class ModeTest {
    @Test
    public void testRun() {
        Config c = loader.load();
        assertEquals("fast", c.mode());
        int r = runner.run(c);
        assertEquals(1, r);
    }
}
)";
    const auto a = analyze_text("ModeTest.java", src);
    const auto plan = plan_of(a, "testRun", IssueKind::AssertPrecondition);
    ASSERT_TRUE(plan.automatable);
    const auto out = aaa::apply(plan, a.file().content);
    EXPECT_NE(out.find("assumeTrue(java.util.Objects.equals(\"fast\", c.mode()));"), std::string::npos);
}

TEST(AssertToAssume, AssertThatIsDowngraded) {
    const std::string src = R"(import org.junit.Test;
import static org.junit.Assert.*;

class MatchTest {
    @Test
    public void testRun() {
        Config c = loader.load();
        assertThat(c, notNullValue());
        int r = runner.run(c);
        assertEquals(1, r);
    }
}
)";
    const auto a = analyze_text("MatchTest.java", src);
    const auto plan = plan_of(a, "testRun", IssueKind::AssertPrecondition);
    EXPECT_FALSE(plan.automatable);
    EXPECT_TRUE(plan.edits.empty());
    EXPECT_FALSE(plan.notes.empty());
    EXPECT_FALSE(plan.suggestion.empty());
    EXPECT_THROW(aaa::apply(plan, a.file().content), InvalidPlanError);
}

TEST(IfReturnToAssume, FixtureListing) {
    const auto a = analyze_dir(fixture("listings"));
    const auto plan = plan_of(a, "testSetException", IssueKind::ArrangeAndQuit);
    EXPECT_EQ(plan.kind, RefactoringKind::ReplaceIfReturnWithAssume);
    EXPECT_TRUE(plan.automatable);
    EXPECT_EQ(plan.behavior, BehaviorNote::Strengthening);
    ASSERT_EQ(plan.edits.size(), 1u);
    const auto out = aaa::apply(plan, a.file_of("testSetException").content);
    EXPECT_EQ(normalize_code(method_text(out, "testSetException")),
              normalize_code(read_text(fixture("expected/AppExceptionTest.testSetException.assume.java"))));
    EXPECT_FALSE(has_issue("AppExceptionTest.java", out, "testSetException", IssueKind::ArrangeAndQuit));
}

TEST(IfReturnToAssume, GeneralConditionBecomesAssumeFalse) {
    const std::string src = R"(import org.junit.Test;

class PathTest {
    @Test
    public void testResolve() {
        if (isWindows()) return;
        Path p = resolver.resolve("a/b");
        assertEquals("a/b", p.toString());
    }
}
)";
    const auto a = analyze_text("PathTest.java", src);
    const auto plan = plan_of(a, "testResolve", IssueKind::ArrangeAndQuit);
    ASSERT_TRUE(plan.automatable);
    ASSERT_EQ(plan.edits.size(), 1u);
    EXPECT_EQ(plan.edits[0].replacement, "assumeFalse(isWindows());");
    const auto out = aaa::apply(plan, a.file().content);
    EXPECT_NE(out.find("import static org.junit.Assume.assumeFalse;"), std::string::npos);
    EXPECT_FALSE(has_issue("PathTest.java", out, "testResolve", IssueKind::ArrangeAndQuit));
}

TEST(IfReturnToAssume, ValueReturnIsDowngraded) {
    const std::string src = R"(class ValTest {
    @Test
    public void testRun() {
        Foo f = new Foo();
        if (f.broken()) return 0;
        int v = f.run();
        assertEquals(1, v);
    }
}
)";
    const auto a = analyze_text("ValTest.java", src);
    Issue issue;
    issue.kind = IssueKind::ArrangeAndQuit;
    issue.test = a.result("testRun").id;
    issue.evidence.push_back({1, 5, 0});
    const auto plan = plan_if_return_to_assume(issue, a.context("testRun"));
    EXPECT_FALSE(plan.automatable);
    EXPECT_TRUE(plan.edits.empty());
    ASSERT_FALSE(plan.notes.empty());
}

TEST(RemoveCatch, FixtureListing) {
    const auto a = analyze_dir(fixture("listings"));
    const auto plan = plan_of(a, "testHttpclient", IssueKind::SuppressedException);
    EXPECT_EQ(plan.kind, RefactoringKind::RemoveCatchAddThrows);
    EXPECT_TRUE(plan.automatable);
    EXPECT_EQ(plan.behavior, BehaviorNote::Strengthening);
    const auto out = aaa::apply(plan, a.file_of("testHttpclient").content);
    // The expected listing names the exception type of the original project.
    std::string expected = read_text(fixture("expected/HttpClientTest.testHttpclient.throws.java"));
    expected.replace(expected.find("ClientProtocolException"), 23, "ClientException");
    EXPECT_EQ(normalize_code(method_text(out, "testHttpclient")), normalize_code(expected));
    EXPECT_FALSE(has_issue("HttpClientTest.java", out, "testHttpclient", IssueKind::SuppressedException));
    EXPECT_THROW(aaa::apply(plan, out), StaleEditError);
}

TEST(RemoveCatch, ThrowsClauseIsMergedAndDeduplicated) {
    const std::string src = R"(class NetTest {
    @Test
    public void testSend() throws IOException {
        Client c = new Client();
        try {
            c.send();
        } catch (IOException | TimeoutException e) {
            e.printStackTrace();
        } catch (TimeoutException e) {
            LOG.warn("late", e);
        }
    }
}
)";
    const auto a = analyze_text("NetTest.java", src);
    const auto plan = plan_of(a, "testSend", IssueKind::SuppressedException);
    ASSERT_TRUE(plan.automatable);
    const auto out = aaa::apply(plan, a.file().content);
    EXPECT_NE(out.find("public void testSend() throws IOException, TimeoutException {"), std::string::npos);
    EXPECT_EQ(out.find("catch"), std::string::npos);
    EXPECT_NE(out.find("        c.send();\n"), std::string::npos);
}

TEST(RemoveCatch, TryWithResourcesKeepsHeader) {
    const std::string src = R"(class ResTest {
    @Test
    public void testRead() {
        Store s = new Store();
        try (Reader r = s.open()) {
            r.read();
        } catch (IOException e) {
            e.printStackTrace();
        } finally {
            s.release();
        }
    }
}
)";
    const auto a = analyze_text("ResTest.java", src);
    const auto plan = plan_of(a, "testRead", IssueKind::SuppressedException);
    ASSERT_TRUE(plan.automatable);
    const auto out = aaa::apply(plan, a.file().content);
    EXPECT_NE(out.find("try (Reader r = s.open()) {"), std::string::npos);
    EXPECT_NE(out.find("finally"), std::string::npos);
    EXPECT_EQ(out.find("catch"), std::string::npos);
    EXPECT_NE(out.find("testRead() throws IOException"), std::string::npos);
    EXPECT_NO_THROW(parse_file("ResTest.java", out));
}

TEST(RemoveCatch, HandlerWithLogicIsDowngraded) {
    const std::string src = R"(class ErrTest {
    private Exception err;
    @Test
    public void testSend() {
        Client c = new Client();
        try { c.send(); } catch (IOException e) { this.err = e; }
        report(err);
    }
}
)";
    const auto a = analyze_text("ErrTest.java", src);
    const auto* issue = a.issue("testSend", IssueKind::SuppressedException);
    if (issue != nullptr) {
        const auto plan = plan_remove_catch(*issue, a.context("testSend"));
        EXPECT_FALSE(plan.automatable);
        EXPECT_TRUE(plan.edits.empty());
    }
    Issue forced;
    forced.kind = IssueKind::SuppressedException;
    forced.test = a.result("testSend").id;
    forced.evidence.push_back({1, 6, 0});
    const auto plan = plan_remove_catch(forced, a.context("testSend"));
    EXPECT_FALSE(plan.automatable);
    EXPECT_TRUE(plan.edits.empty());
}

TEST(SplitMultipleAAA, FixtureListing) {
    const auto a = analyze_dir(fixture("listings"));
    const auto plan = plan_of(a, "testGetByPrefix", IssueKind::MultipleAAA);
    EXPECT_EQ(plan.kind, RefactoringKind::SplitIntoPerBlockTests);
    EXPECT_FALSE(plan.automatable);
    EXPECT_EQ(plan.behavior, BehaviorNote::Preserving);
    EXPECT_EQ(plan.drafted_tests, (std::vector<std::string>{"testGetByPrefix_PROP", "testGetByPrefix_SCAN"}));
    EXPECT_THROW(aaa::apply(plan, a.file_of("testGetByPrefix").content), InvalidPlanError);

    ApplyOptions opts;
    opts.allow_draft = true;
    const auto out = aaa::apply(plan, a.file_of("testGetByPrefix").content, opts);
    const auto re = analyze_text("ConfigPrefixTest.java", out);
    ASSERT_EQ(re.results.size(), 2u);
    for (const auto& r : re.results) {
        EXPECT_EQ(r.classification.verdict, Verdict::ClassicAAA) << r.id.test_name;
        EXPECT_TRUE(match_classic(r.encoding));
        EXPECT_TRUE(r.issues.empty());
    }
    // The drafted methods differ from the refactored listing only in layout.
    const auto expected = normalize_code(read_text(fixture("expected/ConfigPrefixTest.testGetByPrefix.split.java")));
    const auto drafted = normalize_code(method_text(out, "testGetByPrefix_PROP")) + "@Test" +
                         normalize_code(method_text(out, "testGetByPrefix_SCAN"));
    EXPECT_EQ(drafted, expected);
}

TEST(SplitMultipleAAA, ParameterizedNoteWhenOnlyLiteralsDiffer) {
    const std::string src = R"(class ParseTest {
    @Test
    public void testParse() {
        Parser p = new Parser();
        int a = p.parse("1");
        assertEquals(1, a);
        a = p.parse("2");
        assertEquals(2, a);
    }
}
)";
    const auto a = analyze_text("ParseTest.java", src);
    const auto plan = plan_of(a, "testParse", IssueKind::MultipleAAA);
    ASSERT_EQ(plan.drafted_tests.size(), 2u);
    EXPECT_EQ(plan.drafted_tests[0], "testParse_1");
    bool note = false;
    for (const auto& n : plan.notes) note |= n.find("parameterized") != std::string::npos;
    EXPECT_TRUE(note);

    const std::string distinct = R"(class ParseTest {
    @Test
    public void testParse() {
        Parser p = new Parser();
        int a = p.parse("1");
        assertEquals(1, a);
        Parser q = new Parser();
        int b = q.parse("2");
        assertEquals(2, b);
    }
}
)";
    const auto d = analyze_text("ParseTest.java", distinct);
    const auto other = plan_of(d, "testParse", IssueKind::MultipleAAA);
    for (const auto& n : other.notes) EXPECT_EQ(n.find("parameterized"), std::string::npos);
}

TEST(SplitMultipleAAA, SingleBlockHasNoDraft) {
    const auto a = analyze_dir(fixture("listings"));
    EXPECT_FALSE(draft_split_multiple_aaa(a.context("testGetByPrefix_Drop")).has_value());
}

TEST(SplitPerAct, FixtureListing) {
    const auto a = analyze_dir(fixture("listings"));
    const auto plan = plan_of(a, "testCreateAndInfo", IssueKind::MultipleActs);
    EXPECT_EQ(plan.kind, RefactoringKind::SplitPerAct);
    EXPECT_FALSE(plan.automatable);
    EXPECT_EQ(plan.drafted_tests, (std::vector<std::string>{"testCreate", "testInfo"}));
    ApplyOptions opts;
    opts.allow_draft = true;
    const auto out = aaa::apply(plan, a.file_of("testCreateAndInfo").content, opts);
    const auto create = method_text(out, "testCreate");
    const auto info = method_text(out, "testInfo");
    EXPECT_NE(create.find("qemu.create(file);"), std::string::npos);
    EXPECT_EQ(create.find("qemu.info(file)"), std::string::npos);
    EXPECT_NE(info.find("qemu.create(file);"), std::string::npos);
    EXPECT_NE(info.find("qemu.info(file)"), std::string::npos);
}

TEST(SplitPerAct, MissingAssertGetsReviewMarker) {
    const std::string src = R"(class DiskTest {
    @Test
    public void testCreateAndInfo() {
        Disk d = new Disk();
        d.create(file);
        Map info = d.info(file);
        assertEquals(2, info.size());
    }
}
)";
    const auto a = analyze_text("DiskTest.java", src);
    const auto plan = plan_of(a, "testCreateAndInfo", IssueKind::MultipleActs);
    ApplyOptions opts;
    opts.allow_draft = true;
    const auto out = aaa::apply(plan, a.file().content, opts);
    const auto create = method_text(out, "testCreate");
    const auto info = method_text(out, "testInfo");
    EXPECT_NE(create.find("// review:"), std::string::npos);
    EXPECT_EQ(create.find("assertEquals"), std::string::npos);
    EXPECT_NE(info.find("assertEquals(2, info.size());"), std::string::npos);
}

TEST(Suggestions, MissingAndObscure) {
    const auto a = analyze_dir(fixture("listings"));
    const auto add = plan_of(a, "testDataGenerator", IssueKind::MissingAssert);
    EXPECT_EQ(add.kind, RefactoringKind::AddAssertFromExpectedResource);
    EXPECT_EQ(add.behavior, BehaviorNote::Strengthening);
    EXPECT_FALSE(add.automatable);
    const auto simplify = plan_of(a, "testCluster", IssueKind::ObscureAssert);
    EXPECT_EQ(simplify.kind, RefactoringKind::SimplifyAssertLogic);
    EXPECT_EQ(simplify.behavior, BehaviorNote::Preserving);
    EXPECT_FALSE(simplify.suggestion.empty());
}

TEST(Apply, RejectsOverlappingEdits) {
    const std::string content = "class A { void f() { x(); } }";
    RefactoringPlan plan;
    plan.kind = RefactoringKind::ReplaceAssertWithAssume;
    plan.automatable = true;
    SourceEdit e1;
    e1.span.begin = 21;
    e1.span.end = 25;
    e1.expected = content.substr(21, 4);
    e1.replacement = "y()";
    SourceEdit e2 = e1;
    e2.span.begin = 23;
    e2.span.end = 26;
    e2.expected = content.substr(23, 3);
    plan.edits = {e1, e2};
    EXPECT_THROW(aaa::apply(plan, content), InvalidPlanError);
}

TEST(Apply, RollsBackUnparseableResult) {
    const std::string content = "class ATest { @Test void t() { x(); } }";
    RefactoringPlan plan;
    plan.kind = RefactoringKind::ReplaceAssertWithAssume;
    plan.automatable = true;
    SourceEdit e;
    e.span.begin = content.find("x();");
    e.span.end = e.span.begin + 4;
    e.expected = "x();";
    e.replacement = "x(;";
    plan.edits = {e};
    try {
        aaa::apply(plan, content);
        FAIL() << "expected RollbackError";
    } catch (const RollbackError& err) {
        EXPECT_GT(err.diagnostic().line, 0);
    }
}

TEST(Apply, ImportsAreIdempotent) {
    const std::string content = "package p;\n\nimport org.junit.Test;\n\nclass A {}\n";
    const auto once = ensure_import(content, "static org.junit.Assume.assumeNotNull");
    EXPECT_NE(once.find("import static org.junit.Assume.assumeNotNull;\n"), std::string::npos);
    EXPECT_EQ(ensure_import(once, "static org.junit.Assume.assumeNotNull"), once);
    const std::string wildcard = "import static org.junit.Assume.*;\nclass A {}\n";
    EXPECT_EQ(ensure_import(wildcard, "static org.junit.Assume.assumeTrue"), wildcard);
    const auto bare = ensure_import("class A {}\n", "java.util.List");
    EXPECT_EQ(bare.rfind("import java.util.List;", 0), 0u);
}

TEST(Apply, FrameworkDetection) {
    EXPECT_EQ(detect_framework(parse_file("A.java", "import org.junit.Test; class ATest { @Test void t() {} }").at(0)),
              Framework::JUnit4);
    EXPECT_EQ(detect_framework(
                  parse_file("A.java", "import org.junit.jupiter.api.Test; class ATest { @Test void t() {} }").at(0)),
              Framework::JUnit5);
    EXPECT_EQ(detect_framework(parse_file("A.java", "class ATest { @Test void t() {} }").at(0)), Framework::JUnit5);
}

TEST(Apply, AtomicWrite) {
    testing::TempDir dir;
    const auto p = dir.path() / "A.java";
    write_file_atomic(p, "one");
    write_file_atomic(p, "two");
    EXPECT_EQ(read_text(p), "two");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++entries;
    EXPECT_EQ(entries, 1u);
}

TEST(Apply, PatchFileName) {
    RefactoringPlan plan;
    plan.kind = RefactoringKind::SplitIntoPerBlockTests;
    plan.target = {"a/ConfigPrefixTest.java", "ConfigPrefixTest", "testGetByPrefix"};
    EXPECT_EQ(patch_file_name(plan), "ConfigPrefixTest.testGetByPrefix.SplitIntoPerBlockTests.patch");
}

}  // namespace
}  // namespace aaa
