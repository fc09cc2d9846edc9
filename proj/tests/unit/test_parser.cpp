#include <gtest/gtest.h>

#include "aaa/rules.hpp"
#include "aaa/source_model.hpp"
#include "support.hpp"

namespace aaa {
namespace {

using testing::fixture;
using testing::read_text;

std::string slice(std::string_view content, const SourceRange& r) {
    return std::string(content.substr(r.begin, r.end - r.begin));
}

TEST(Parser, ParsesClassicFixture) {
    const auto content = read_text(fixture("listings/ConfigDropTest.java"));
    const auto classes = parse_file("ConfigDropTest.java", content);
    ASSERT_EQ(classes.size(), 1u);
    const auto& cls = classes[0];
    EXPECT_EQ(cls.name, "ConfigDropTest");
    EXPECT_EQ(cls.package, "fixtures.config");
    EXPECT_EQ(cls.qualified_name, "fixtures.config.ConfigDropTest");
    ASSERT_EQ(cls.tests.size(), 1u);
    const auto& t = cls.tests[0];
    EXPECT_EQ(t.name, "testGetByPrefix_Drop");
    EXPECT_TRUE(t.has_annotation("Test"));
    ASSERT_EQ(t.statements.size(), 4u);
    EXPECT_EQ(t.statements[0].kind, StatementKind::Declaration);
    EXPECT_EQ(t.statements[1].kind, StatementKind::Invocation);
    EXPECT_EQ(t.statements[2].kind, StatementKind::Declaration);
    EXPECT_EQ(t.statements[3].kind, StatementKind::Invocation);
    ASSERT_TRUE(t.statements[0].callee.has_value());
    EXPECT_TRUE(t.statements[0].callee->is_constructor);
    EXPECT_EQ(t.statements[0].callee->method, "Config");
    EXPECT_EQ(t.statements[2].callee->method, "getAllProperties");
    EXPECT_EQ(t.statements[2].callee->receiver, "tc");
    EXPECT_EQ(t.statements[2].declared, std::vector<std::string>{"p"});
    EXPECT_EQ(t.statements[3].callee->method, "assertEquals");
    EXPECT_NE(cls.field("PROP_PREFIX"), nullptr);
    EXPECT_NE(cls.field("tc"), nullptr);
}

TEST(Parser, StatementRangesSliceTheirText) {
    for (const char* name : {"listings/ConfigPrefixTest.java", "listings/ClusterTest.java", "listings/HttpClientTest.java",
                             "listings/SnapshotTest.java", "listings/DataConfigTest.java"}) {
        const auto content = read_text(fixture(name));
        for (const auto& cls : parse_file(name, content)) {
            for (const auto& t : cls.tests) {
                for (const auto& s : t.statements) {
                    EXPECT_EQ(slice(content, s.range), s.text) << name;
                    EXPECT_GT(s.line, 0);
                }
                EXPECT_EQ(content[t.body_range.begin], '{');
                EXPECT_EQ(content[t.body_range.end - 1], '}');
            }
        }
    }
}

TEST(Parser, DeclarationRangeStartsAtModifier) {
    const auto content = read_text(fixture("listings/SnapshotTest.java"));
    const auto cls = parse_file("SnapshotTest.java", content).at(0);
    const auto& t = cls.tests.at(0);
    EXPECT_EQ(slice(content, t.declaration_range).rfind("public void testPoll()", 0), 0u);
    EXPECT_EQ(slice(content, t.range).rfind("@Test", 0), 0u);
}

TEST(Parser, ControlFlowHasChildren) {
    const auto content = read_text(fixture("listings/ClusterTest.java"));
    const auto classes = parse_file("ClusterTest.java", content);
    const auto& t = classes.at(0).tests.at(0);
    ASSERT_EQ(t.statements.size(), 4u);
    EXPECT_TRUE(t.statements[0].elided);
    const auto& loop = t.statements[2];
    EXPECT_EQ(loop.kind, StatementKind::Loop);
    EXPECT_EQ(loop.form, ControlForm::ForEach);
    ASSERT_EQ(loop.children.size(), 1u);
    const auto& cond = loop.children[0];
    EXPECT_EQ(cond.kind, StatementKind::Conditional);
    EXPECT_EQ(cond.then_count(), 1u);
    EXPECT_EQ(cond.children.size(), 2u);
    for (const auto& s : t.statements) {
        if (!s.is_control_flow()) EXPECT_TRUE(s.children.empty());
    }
}

TEST(Parser, TryDetails) {
    const auto content = read_text(fixture("listings/HttpClientTest.java"));
    const auto classes = parse_file("HttpClientTest.java", content);
    const auto& t = classes.at(0).tests.at(0);
    const Statement* tr = nullptr;
    for (const auto& s : t.statements) {
        if (s.kind == StatementKind::TryBlock) tr = &s;
    }
    ASSERT_NE(tr, nullptr);
    ASSERT_EQ(tr->catches.size(), 1u);
    EXPECT_EQ(tr->catches[0].types, std::vector<std::string>{"ClientException"});
    EXPECT_EQ(tr->catches[0].variable, "e");
    EXPECT_EQ(tr->catches[0].body.size(), 1u);
    EXPECT_FALSE(tr->resources_range.has_value());
    EXPECT_EQ(tr->children.size(), 1u);
}

TEST(Parser, TryWithResources) {
    const auto content = read_text(fixture("listings/ClientExceptionTest.java"));
    const auto classes = parse_file("ClientExceptionTest.java", content);
    const auto& t = classes.at(0).tests.at(0);
    ASSERT_EQ(t.statements.size(), 1u);
    const auto& tr = t.statements[0];
    EXPECT_EQ(tr.kind, StatementKind::TryBlock);
    ASSERT_TRUE(tr.resources_range.has_value());
    EXPECT_EQ(tr.declared, std::vector<std::string>{"client"});
    const auto* a = t.annotation("Test");
    ASSERT_NE(a, nullptr);
    EXPECT_EQ(a->attributes.at("expected"), "ClientException.class");
    EXPECT_EQ(t.thrown, std::vector<std::string>{"Exception"});
}

TEST(Parser, IfReturnDetails) {
    const auto s = parse_statement("if (thr == null) {return;}");
    EXPECT_EQ(s.kind, StatementKind::Conditional);
    EXPECT_EQ(s.null_checked, "thr");
    EXPECT_EQ(s.condition, "thr == null");
    EXPECT_FALSE(s.condition_has_side_effects);
    EXPECT_TRUE(is_if_bare_return(s));
    EXPECT_FALSE(is_if_bare_return(parse_statement("if (x) { return 0; }")));
    EXPECT_FALSE(is_if_bare_return(parse_statement("if (x) { return; } else { y(); }")));
    EXPECT_TRUE(parse_statement("if ((n = it.next()) == null) return;").condition_has_side_effects);
    EXPECT_FALSE(parse_statement("if (isWindows()) return;").condition_has_side_effects);
}

TEST(Parser, LifecycleAndHelpers) {
    const auto content = read_text(fixture("listings/DataConfigTest.java"));
    const auto cls = parse_file("DataConfigTest.java", content).at(0);
    ASSERT_EQ(cls.lifecycle.size(), 2u);
    EXPECT_EQ(cls.lifecycle[0].lifecycle, LifecycleKind::BeforeEach);
    EXPECT_EQ(cls.lifecycle[1].lifecycle, LifecycleKind::AfterEach);
    EXPECT_EQ(cls.tests.size(), 1u);

    const auto gen = read_text(fixture("listings/DataGeneratorTest.java"));
    const auto gcls = parse_file("DataGeneratorTest.java", gen).at(0);
    ASSERT_EQ(gcls.helpers.size(), 1u);
    EXPECT_EQ(gcls.helpers[0].method.name, "printData");
}

TEST(Parser, JUnit5MarkersAndNestedClasses) {
    const std::string src = R"(package p;
import org.junit.jupiter.api.*;
class OuterTest {
    @BeforeEach void init() { x = 1; }
    @Test void plain() { int y = f(); assertEquals(1, y); }
    @Nested class Inner {
        @Test void inner() { g(); }
    }
    static class NotATest { void h() {} }
}
)";
    const auto classes = parse_file("OuterTest.java", src);
    ASSERT_EQ(classes.size(), 2u);
    EXPECT_EQ(classes[0].name, "OuterTest");
    EXPECT_EQ(classes[0].lifecycle.size(), 1u);
    EXPECT_EQ(classes[1].name, "OuterTest.Inner");
    EXPECT_EQ(classes[1].tests.at(0).name, "inner");
}

TEST(Parser, CustomMarkers) {
    const std::string src = "class ATest { @Property void p() { f(); } @Test void t() { g(); } }";
    ParseOptions opts;
    opts.test_markers = {"Property"};
    const auto classes = parse_file("ATest.java", src, opts);
    ASSERT_EQ(classes.size(), 1u);
    ASSERT_EQ(classes[0].tests.size(), 1u);
    EXPECT_EQ(classes[0].tests[0].name, "p");
}

TEST(Parser, LambdaAndGenericsAndSwitch) {
    const std::string src = R"(class LTest {
    @Test void t() throws Exception {
        List<Map<String, Integer>> xs = new ArrayList<>();
        Runnable r = () -> { xs.add(null); };
        assertThrows(IllegalStateException.class, () -> service.run(xs));
        switch (k) { case 1: a(); break; default: b(); }
        int[] arr = {1, 2, 3};
        String s = switch (k) { case 1 -> "a"; default -> "b"; };
        label: for (int i = 0; i < 3; i++) { continue label; }
        do { k--; } while (k > 0);
    }
})";
    const auto classes = parse_file("LTest.java", src);
    const auto& t = classes.at(0).tests.at(0);
    ASSERT_EQ(t.statements.size(), 8u);
    EXPECT_EQ(t.statements[0].declared_type, "List<Map<String, Integer>>");
    bool lambda_call = false;
    for (const auto& c : t.statements[2].calls) lambda_call |= c.in_lambda && c.callee.method == "run";
    EXPECT_TRUE(lambda_call);
    EXPECT_EQ(t.statements[3].kind, StatementKind::Conditional);
    EXPECT_EQ(t.statements[3].form, ControlForm::Switch);
    EXPECT_EQ(t.statements[6].form, ControlForm::Labeled);
    EXPECT_EQ(t.statements[7].form, ControlForm::DoWhile);
}

TEST(Parser, ErrorsCarryPosition) {
    try {
        parse_file("Bad.java", "class BadTest {\n  @Test void t() {\n    int x = ;\n  }\n}\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_GT(e.column(), 0);
        EXPECT_FALSE(e.detail().empty());
    }
    EXPECT_THROW(parse_file("Bad.java", "class BadTest { @Test void t() { f(; } }"), ParseError);
    EXPECT_THROW(parse_file("Bad.java", "class BadTest { @Test void t() { \"unterminated } }"), ParseError);
}

TEST(Parser, DeepNestingIsAnErrorNotACrash) {
    std::string body;
    for (int i = 0; i < 5000; ++i) body += "{";
    for (int i = 0; i < 5000; ++i) body += "}";
    EXPECT_THROW(parse_file("Deep.java", "class DeepTest { @Test void t() " + body + " }"), ParseError);
}

TEST(Parser, DeclaredTypeNamesTolerateErrors) {
    const auto names = declared_type_names("class A {} interface B {} enum C { X } record D(int x) {} class E { int");
    EXPECT_TRUE(names.count("A"));
    EXPECT_TRUE(names.count("B"));
    EXPECT_TRUE(names.count("C"));
    EXPECT_TRUE(names.count("D"));
    EXPECT_TRUE(names.count("E"));
}

TEST(Glob, Matching) {
    EXPECT_TRUE(glob_match("**/*Test*.java", "FooTest.java"));
    EXPECT_TRUE(glob_match("**/*Test*.java", "a/b/FooTests.java"));
    EXPECT_FALSE(glob_match("**/*Test*.java", "a/b/Foo.java"));
    EXPECT_TRUE(glob_match("src/*.java", "src/A.java"));
    EXPECT_FALSE(glob_match("src/*.java", "src/x/A.java"));
    EXPECT_TRUE(glob_match("src/**/A?.java", "src/x/y/AB.java"));
    EXPECT_FALSE(glob_match("src/**/A?.java", "src/x/y/ABC.java"));
}

TEST(Corpus, LoadsAndReportsDiagnostics) {
    DiscoveryOptions opts;
    const auto corpus = load_corpus({fixture("broken")}, opts);
    EXPECT_EQ(corpus.files.size(), 2u);
    ASSERT_EQ(corpus.diagnostics.size(), 1u);
    EXPECT_NE(corpus.diagnostics[0].path.find("BrokenTest.java"), std::string::npos);
    EXPECT_GT(corpus.diagnostics[0].line, 0);
    EXPECT_THROW(load_corpus({fixture("does-not-exist")}, opts), std::runtime_error);
}

TEST(Corpus, ProjectTypesComeFromAllJavaFiles) {
    DiscoveryOptions opts;
    const auto corpus = load_corpus({fixture("listings")}, opts);
    EXPECT_TRUE(corpus.project_types.count("Client"));
    EXPECT_NE(corpus.find_class("ClientEqualsTest"), nullptr);
    EXPECT_EQ(corpus.find_class("Client"), nullptr);
}

TEST(NonUnit, NameSqlAndExec) {
    RuleSet rules;
    const auto it = parse_file("IngestIT.java", read_text(fixture("nonunit/IngestIT.java"))).at(0);
    EXPECT_TRUE(is_probable_non_unit_test(it.tests.at(0), it, rules).non_unit);

    const auto rq = parse_file("ReportQueryTest.java", read_text(fixture("nonunit/ReportQueryTest.java"))).at(0);
    for (const auto& t : rq.tests) {
        const auto v = is_probable_non_unit_test(t, rq, rules);
        EXPECT_EQ(v.non_unit, t.name != "testFormat") << t.name;
        if (v.non_unit) EXPECT_FALSE(v.reason.empty());
    }

    const auto http = parse_file("HttpClientTest.java", read_text(fixture("listings/HttpClientTest.java"))).at(0);
    EXPECT_FALSE(is_probable_non_unit_test(http.tests.at(0), http, rules).non_unit);
}

TEST(Rules, SplitIdentifier) {
    EXPECT_EQ(split_identifier("getAllProperties"), (std::vector<std::string>{"get", "all", "properties"}));
    EXPECT_EQ(split_identifier("HTTPClient"), (std::vector<std::string>{"http", "client"}));
    EXPECT_EQ(split_identifier("test_get_byPrefix"), (std::vector<std::string>{"test", "get", "by", "prefix"}));
}

TEST(Rules, JsonRoundTrip) {
    RuleSet r;
    r.assert_apis.insert("assertJson");
    r.expansion_limit = 3;
    r.include_non_unit = true;
    const auto back = rules_from_json(rules_to_json(r));
    EXPECT_EQ(rules_to_json(back), rules_to_json(r));
    EXPECT_TRUE(back.is_assert_api("assertJson"));
    EXPECT_EQ(back.expansion_limit, 3);
}

}  // namespace
}  // namespace aaa
