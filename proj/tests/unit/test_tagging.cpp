#include <gtest/gtest.h>

#include <random>

#include "aaa/tag_sheet.hpp"
#include "aaa/tagger.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace aaa {
namespace {

using testing::fixture;
using testing::read_text;

std::vector<TagValue> values(const TaggedSheet& ts) {
    std::vector<TagValue> v;
    for (const auto& t : ts.tags) v.push_back(t.value);
    return v;
}

TaggedSheet tag_source(const std::string& src, const std::string& test, RuleSet rules = {}) {
    const auto classes = parse_file("X.java", src);
    for (const auto& c : classes) {
        for (const auto& t : c.tests) {
            if (t.name == test) return tag_sheet(attach_lifecycle(expand(t, c), c), rules);
        }
    }
    throw std::runtime_error("missing test " + test);
}

constexpr auto A = TagValue::Arrange;
constexpr auto C = TagValue::Act;
constexpr auto S = TagValue::Assert;
constexpr auto T = TagValue::Teardown;
constexpr auto U = TagValue::Unknown;

TEST(Expansion, InlinesHelperWithTrace) {
    const auto content = read_text(fixture("listings/DataGeneratorTest.java"));
    const auto classes = parse_file("DataGeneratorTest.java", content);
    const auto& cls = classes.at(0);
    const auto sheet = expand(cls.tests.at(0), cls);
    ASSERT_EQ(sheet.rows.size(), 3u);
    EXPECT_EQ(sheet.rows[0].depth, 0);
    EXPECT_EQ(sheet.rows[1].depth, 0);
    const auto& inlined = sheet.rows[2];
    EXPECT_EQ(inlined.depth, 1);
    ASSERT_EQ(inlined.origin.size(), 2u);
    EXPECT_EQ(inlined.origin[0].method, "testDataGenerator");
    EXPECT_EQ(inlined.origin[1].method, "printData");
    EXPECT_EQ(inlined.statement.kind, StatementKind::Loop);
    EXPECT_EQ(inlined.statement.children.size(), 1u);
    for (const auto& r : sheet.rows) EXPECT_EQ(r.depth + 1, static_cast<int>(r.origin.size()));
}

TEST(Expansion, IsIdempotent) {
    const auto content = read_text(fixture("listings/DataGeneratorTest.java"));
    const auto classes = parse_file("DataGeneratorTest.java", content);
    const auto& cls = classes.at(0);
    const auto once = expand(cls.tests.at(0), cls);
    const auto twice = expand(once, cls);
    ASSERT_EQ(twice.rows.size(), once.rows.size());
    for (std::size_t i = 0; i < once.rows.size(); ++i) {
        EXPECT_EQ(twice.rows[i].statement.text, once.rows[i].statement.text);
        EXPECT_EQ(twice.rows[i].origin, once.rows[i].origin);
    }
}

TEST(Expansion, CyclesAndDepthLimitTruncate) {
    const std::string src = R"(class RTest {
    @Test void t() { ping(3); assertTrue(true); }
    void ping(int n) { pong(n); }
    void pong(int n) { ping(n - 1); }
    void a() { b(); }
    void b() { c(); }
    void c() { work(); }
    @Test void deep() { a(); }
})";
    const auto classes = parse_file("RTest.java", src);
    const auto& cls = classes.at(0);
    const auto cyc = expand(cls.tests.at(0), cls);
    ASSERT_EQ(cyc.rows.size(), 2u);
    EXPECT_TRUE(cyc.rows[0].truncated);
    EXPECT_EQ(cyc.rows[0].depth, 2);
    EXPECT_EQ(cyc.rows[0].statement.text, "ping(n - 1);");

    const auto full = expand(cls.tests.at(1), cls, 8);
    ASSERT_EQ(full.rows.size(), 1u);
    EXPECT_EQ(full.rows[0].depth, 3);
    EXPECT_FALSE(full.rows[0].truncated);

    const auto cut = expand(cls.tests.at(1), cls, 1);
    ASSERT_EQ(cut.rows.size(), 1u);
    EXPECT_TRUE(cut.rows[0].truncated);
    EXPECT_EQ(cut.rows[0].depth, 1);
}

TEST(Expansion, ResolveByArity) {
    const std::string src = R"(class OTest {
    @Test void t() { h(1, 2); }
    void h(int a) { one(); }
    void h(int a, int b) { two(); }
})";
    const auto classes = parse_file("OTest.java", src);
    const auto& cls = classes.at(0);
    const auto& call = cls.tests.at(0).statements.at(0).calls.at(0);
    const auto* m = resolve_local_method(cls, call);
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->parameters.size(), 2u);
    const auto sheet = expand(cls.tests.at(0), cls);
    ASSERT_EQ(sheet.rows.size(), 1u);
    EXPECT_EQ(sheet.rows[0].statement.text, "two();");
}

TEST(Expansion, LifecycleOrder) {
    const std::string src = R"(class LTest {
    @BeforeClass public static void once() { boot(); }
    @Before public void each() { init(); }
    @After public void done() { cleanup(); }
    @AfterClass public static void last() { halt(); }
    @Test public void t() { run(); assertTrue(ok()); }
})";
    const auto classes = parse_file("LTest.java", src);
    const auto& cls = classes.at(0);
    const auto sheet = attach_lifecycle(expand(cls.tests.at(0), cls), cls);
    std::vector<std::string> texts;
    for (const auto& r : sheet.rows) texts.push_back(r.statement.text);
    EXPECT_EQ(texts, (std::vector<std::string>{"boot();", "init();", "run();", "assertTrue(ok());", "cleanup();",
                                               "halt();"}));
    EXPECT_EQ(sheet.rows[0].role, RowRole::Prologue);
    EXPECT_EQ(sheet.rows[0].lifecycle, LifecycleKind::BeforeAll);
    EXPECT_EQ(sheet.rows[1].lifecycle, LifecycleKind::BeforeEach);
    EXPECT_EQ(sheet.rows[2].role, RowRole::Body);
    EXPECT_EQ(sheet.rows[4].role, RowRole::Epilogue);
    EXPECT_EQ(sheet.rows[5].lifecycle, LifecycleKind::AfterAll);
}

TEST(Tagger, ClassicFixture) {
    const auto ts = tag_source(read_text(fixture("listings/ConfigDropTest.java")), "testGetByPrefix_Drop");
    EXPECT_EQ(values(ts), (std::vector<TagValue>{A, A, C, S}));
    EXPECT_EQ(ts.tags[0].rule, rule::kConstructor);
    EXPECT_EQ(ts.tags[1].rule, rule::kSetter);
    EXPECT_EQ(ts.tags[3].rule, rule::kAssertApi);
    EXPECT_EQ(ts.act_callee[2], "getAllProperties");
}

TEST(Tagger, RuleFamilies) {
    const std::string src = R"(class RTest {
    @Test public void testCompute() {
        Service svc = mock(Service.class);
        when(svc.load()).thenReturn(3);
        Calculator calc = new Calculator(svc);
        int r = calc.compute();
        System.out.println(r);
        Assert.assertEquals(3, r);
        verify(svc).load();
        assert r > 0;
        calc.close();
    }
})";
    const auto ts = tag_source(src, "testCompute");
    EXPECT_EQ(values(ts), (std::vector<TagValue>{A, A, A, C, U, S, S, S, T}));
    EXPECT_EQ(ts.tags[1].rule, rule::kMockApi);
    EXPECT_EQ(ts.tags[5].rule, rule::kAssertApi);
    EXPECT_EQ(ts.tags[6].rule, rule::kMockVerify);
    EXPECT_EQ(ts.tags[7].rule, rule::kJavaAssert);
    EXPECT_EQ(ts.tags[8].rule, rule::kRelease);
    EXPECT_TRUE(ts.tags[4].rule.empty());
    for (const auto& t : ts.tags) EXPECT_EQ(t.value == TagValue::Unknown, t.rule.empty());
}

TEST(Tagger, ReceiverSpelledAsAssert) {
    const auto ts = tag_source(read_text(fixture("listings/AppExceptionTest.java")), "testSetException");
    ASSERT_EQ(ts.tags.size(), 4u);
    EXPECT_EQ(ts.tags[3].value, TagValue::Assert);
    EXPECT_EQ(ts.tags[3].rule, rule::kAssertQualified);
}

TEST(Tagger, VerifyCanBeDisabled) {
    const std::string src = R"(class VTest {
    @Test public void testRun() { Job j = mock(Job.class); runner.run(j); verify(j).start(); }
})";
    RuleSet rules;
    rules.mock_verify_as_assert = false;
    const auto ts = tag_source(src, "testRun", rules);
    EXPECT_NE(ts.tags.back().value, TagValue::Assert);
}

TEST(Tagger, AssumeIsArrange) {
    const std::string src = R"(class UTest {
    @Test public void testPoll() { Snapshot s = mgr.create(); assumeNotNull(s); String v = s.poll(); assertEquals("x", v); }
})";
    const auto ts = tag_source(src, "testPoll");
    EXPECT_EQ(values(ts), (std::vector<TagValue>{A, A, C, S}));
    EXPECT_EQ(ts.tags[1].rule, rule::kAssume);
}

TEST(Tagger, LifecycleRowsTagged) {
    const auto ts = tag_source(read_text(fixture("listings/DataConfigTest.java")), "testConfigBig");
    ASSERT_EQ(ts.tags.size(), 3u);
    EXPECT_EQ(ts.tags[0].value, TagValue::Arrange);
    EXPECT_EQ(ts.tags[1].value, TagValue::Act);
    EXPECT_EQ(ts.tags[2].value, TagValue::Assert);
}

TEST(Tagger, ActRankingPrefersNameMatch) {
    const std::string src = R"(class NTest {
    @Test public void testParse() {
        Reader r = source.open();
        Doc d = parser.parse(r);
        assertNotNull(d);
    }
})";
    const auto ts = tag_source(src, "testParse");
    EXPECT_EQ(values(ts), (std::vector<TagValue>{A, C, S}));
    EXPECT_EQ(ts.tags[1].rule, rule::kActName);
    ASSERT_FALSE(ts.act_candidates.empty());
    EXPECT_EQ(ts.act_candidates.front(), 1u);
}

TEST(Tagger, NameTokens) {
    EXPECT_EQ(test_name_tokens("testGetByPrefix_Drop"), (std::vector<std::string>{"get", "prefix"}));
    EXPECT_EQ(test_name_tokens("testPoll"), std::vector<std::string>{"poll"});
    EXPECT_TRUE(tokens_similar("properties", "property"));
    EXPECT_FALSE(tokens_similar("poll", "push"));
}

TEST(Tagger, PrintDetection) {
    RuleSet rules;
    EXPECT_TRUE(is_print_only(parse_statement("System.out.println(x);"), rules));
    EXPECT_TRUE(is_print_only(parse_statement("LOG.info(\"x {}\", y);"), rules));
    EXPECT_TRUE(is_print_only(parse_statement("e.printStackTrace();"), rules));
    EXPECT_FALSE(is_print_only(parse_statement("this.err = e;"), rules));
    EXPECT_FALSE(is_print_only(parse_statement("list.add(x);"), rules));
}

TEST(Tagger, TagParsing) {
    for (auto v : {A, C, S, T, U}) EXPECT_EQ(parse_tag(to_string(v)), v);
    EXPECT_EQ(parse_tag("ARRANGE"), A);
    EXPECT_FALSE(parse_tag("blah").has_value());
}

TEST(Kappa, IdenticalIsOne) {
    const std::vector<TagValue> x{A, A, C, S, S, T};
    for (auto a : {A, C, S}) EXPECT_DOUBLE_EQ(*kappa(x, x, a), 1.0);
}

TEST(Kappa, HandComputedFourRows) {
    // Arrange indicator: first = 1110, second = 1101. p_o = 1/2, p_e = 5/8.
    const std::vector<TagValue> first{A, A, A, C};
    const std::vector<TagValue> second{A, A, S, A};
    EXPECT_NEAR(*kappa(first, second, A), -1.0 / 3.0, 1e-12);
}

TEST(Kappa, EdgeCases) {
    EXPECT_FALSE(kappa({}, {}, A).has_value());
    EXPECT_THROW(kappa({A}, {A, C}, A), std::invalid_argument);
    EXPECT_DOUBLE_EQ(*kappa({C, C}, {S, S}, A), 1.0);
}

TEST(Kappa, MatchesTableFormulaAndIsSymmetric) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> sym(0, 4), len(2, 40);
    int checked = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<TagValue> x(len(rng)), y;
        for (auto& v : x) v = static_cast<TagValue>(sym(rng));
        for (std::size_t i = 0; i < x.size(); ++i) y.push_back(static_cast<TagValue>(sym(rng)));
        for (auto a : {A, C, S}) {
            const auto k = kappa(x, y, a);
            const auto back = kappa(y, x, a);
            ASSERT_TRUE(k && back);
            EXPECT_NEAR(*k, *back, 1e-12);
            const double expected = oracle::kappa_table(x, y, a);
            if (std::isfinite(expected)) {
                EXPECT_NEAR(*k, expected, 1e-9);
                EXPECT_LE(*k, 1.0 + 1e-12);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 5000);
}

}  // namespace
}  // namespace aaa
