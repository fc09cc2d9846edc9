#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aaa {

struct RuleSet;

class ParseError : public std::runtime_error {
   public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

   private:
    int line_;
    int column_;
    std::string detail_;
};

// Byte offsets are half-open [begin, end) into the file content. Lines and
// columns are 1-based; end_line/end_column point at the last character.
struct SourceRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 0;
    int column = 0;
    int end_line = 0;
    int end_column = 0;

    bool empty() const { return end <= begin; }
    friend bool operator==(const SourceRange&, const SourceRange&) = default;
};

struct Callee {
    std::string receiver;       // verbatim receiver expression, empty when unqualified
    std::string receiver_type;  // best-effort declared type of the receiver
    std::string method;         // method name, or the type name for constructors
    bool is_static = false;
    bool is_constructor = false;

    friend bool operator==(const Callee&, const Callee&) = default;
};

struct Invocation {
    Callee callee;
    std::vector<std::string> args;
    std::vector<std::string> arg_types;  // parallel to args; empty string when unknown
    std::vector<SourceRange> arg_ranges;
    SourceRange range;
    bool in_lambda = false;

    friend bool operator==(const Invocation&, const Invocation&) = default;
};

enum class StatementKind {
    Invocation,
    Declaration,  // local variable declaration with an initializer
    Assignment,
    Conditional,
    Loop,
    TryBlock,
    Return,
    Throw,
    Block,  // bare block, synchronized or labeled statement
    Other,
};

enum class ControlForm {
    None,
    If,
    Switch,
    For,
    ForEach,
    While,
    DoWhile,
    Try,
    Block,
    Synchronized,
    Labeled,
};

std::string_view to_string(StatementKind kind);

struct CatchClause;

struct Statement {
    StatementKind kind = StatementKind::Other;
    ControlForm form = ControlForm::None;
    std::string text;
    int line = 0;
    SourceRange range;

    // Outermost call of the statement's main expression (the invocation
    // itself, a declaration initializer or an assignment right-hand side).
    std::optional<Callee> callee;
    // Every call in the statement's own expressions, in source order.
    // Calls inside nested statements live on those statements.
    std::vector<Invocation> calls;
    std::vector<std::string> names;  // identifiers read by own expressions
    std::vector<std::string> string_literals;
    std::vector<std::string> declared;  // variables introduced here
    std::string declared_type;
    std::string assigned;  // simple-name assignment target
    int decision_points = 0;

    std::vector<Statement> children;
    std::size_t else_index = 0;  // for If: children[else_index..] form the else branch

    // Conditional details.
    std::string condition;
    SourceRange condition_range;
    std::string null_checked;  // `x` when the condition is `x == null` / `null == x`
    bool condition_has_side_effects = false;

    // Try details.
    std::vector<CatchClause> catches;
    std::vector<Statement> finally_body;
    std::optional<SourceRange> resources_range;
    std::optional<SourceRange> finally_range;
    SourceRange body_range;  // braces of a try body or of an if's then-block

    bool returns_value = false;
    bool java_assert = false;  // the `assert` keyword statement
    bool elided = false;       // a `...` placeholder line

    bool is_control_flow() const {
        return kind == StatementKind::Conditional || kind == StatementKind::Loop ||
               kind == StatementKind::TryBlock || kind == StatementKind::Block;
    }
    std::size_t then_count() const { return form == ControlForm::If ? else_index : children.size(); }
};

struct CatchClause {
    std::vector<std::string> types;
    std::string variable;
    SourceRange range;       // `catch (...) { ... }`
    SourceRange body_range;  // the braces of the handler
    std::vector<Statement> body;
};

struct Annotation {
    std::string name;  // simple name, e.g. "Test"
    std::string qualified_name;
    std::map<std::string, std::string> attributes;  // a bare value is stored under "value"
    SourceRange range;
};

enum class LifecycleKind { BeforeEach, AfterEach, BeforeAll, AfterAll };

std::string_view to_string(LifecycleKind kind);

struct Parameter {
    std::string type;
    std::string name;
};

struct MethodModel {
    std::string name;
    std::vector<Annotation> annotations;
    std::vector<std::string> modifiers;
    std::vector<Parameter> parameters;
    std::vector<std::string> thrown;
    std::vector<Statement> statements;
    std::string file;
    SourceRange range;             // whole declaration including annotations
    SourceRange declaration_range; // from the first modifier/type after annotations
    SourceRange body_range;        // the braces
    std::size_t params_close = 0;  // offset just past `)` of the parameter list
    std::size_t throws_end = 0;    // offset just past the throws clause (== params_close when absent)
    bool is_static = false;
    bool is_constructor = false;
    bool has_body = false;

    const Annotation* annotation(std::string_view simple_name) const;
    bool has_annotation(std::string_view simple_name) const { return annotation(simple_name) != nullptr; }
};

using TestCaseModel = MethodModel;

struct HelperMethod {
    MethodModel method;
    std::optional<LifecycleKind> lifecycle;
};

struct FieldModel {
    std::string name;
    std::string type;
    bool is_static = false;
    SourceRange range;
};

struct ImportModel {
    std::string name;
    bool is_static = false;
    bool wildcard = false;
};

struct TestClassModel {
    std::string name;            // simple name (Outer.Inner for nested test classes)
    std::string qualified_name;  // package-qualified
    std::string package;
    std::string superclass;
    std::string file;
    SourceRange range;
    std::vector<TestCaseModel> tests;
    std::vector<HelperMethod> lifecycle;
    std::vector<HelperMethod> helpers;
    std::vector<FieldModel> fields;
    std::vector<ImportModel> imports;
    std::size_t method_count = 0;

    const FieldModel* field(std::string_view name) const;
};

struct ParseOptions {
    std::set<std::string> test_markers{"Test"};
};

// Parses one Java compilation unit and returns every class that declares at
// least one test-marker method. Throws ParseError on malformed input.
std::vector<TestClassModel> parse_file(const std::string& path, std::string_view content,
                                       const ParseOptions& options = {});

// Parses `text` as a single block statement; used for round-trip checks.
Statement parse_statement(std::string_view text);

// Names of classes, interfaces, enums and records declared in `content`.
// Tolerates malformed files (returns what it found before the error).
std::set<std::string> declared_type_names(std::string_view content);

struct NonUnitVerdict {
    bool non_unit = false;
    std::string reason;
};

NonUnitVerdict is_probable_non_unit_test(const TestCaseModel& test, const TestClassModel& cls,
                                         const RuleSet& rules);

struct SourceFile {
    std::string path;          // as reported (relative to its root when possible)
    std::filesystem::path fs_path;
    std::string content;
    std::vector<TestClassModel> classes;
};

struct ParseDiagnostic {
    std::string path;
    int line = 0;
    int column = 0;
    std::string message;
};

struct SourceCorpus {
    std::vector<std::filesystem::path> roots;
    std::vector<SourceFile> files;
    std::vector<ParseDiagnostic> diagnostics;
    std::set<std::string> project_types;

    const TestClassModel* find_class(std::string_view simple_name) const;
};

struct DiscoveryOptions {
    std::vector<std::string> include{"**/*Test*.java", "**/Test*.java"};
    std::vector<std::string> exclude;
    ParseOptions parse;
    unsigned jobs = 1;
};

// Glob matching over '/'-separated relative paths: `**` spans directories,
// `*` and `?` stay within one segment. A leading `**/` also matches at the root.
bool glob_match(std::string_view pattern, std::string_view path);

// Walks the roots, parses every matching file and indexes declared types
// from all .java files. Parse failures become diagnostics. Throws
// std::runtime_error when a root does not exist or cannot be read.
SourceCorpus load_corpus(const std::vector<std::filesystem::path>& roots, const DiscoveryOptions& options);

}  // namespace aaa
