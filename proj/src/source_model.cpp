#include "aaa/source_model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <regex>

#include "aaa/rules.hpp"
#include "java_lexer.hpp"
#include "java_parser.hpp"

namespace aaa {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

std::string_view to_string(StatementKind kind) {
    switch (kind) {
        case StatementKind::Invocation: return "invocation";
        case StatementKind::Declaration: return "declaration";
        case StatementKind::Assignment: return "assignment";
        case StatementKind::Conditional: return "conditional";
        case StatementKind::Loop: return "loop";
        case StatementKind::TryBlock: return "try";
        case StatementKind::Return: return "return";
        case StatementKind::Throw: return "throw";
        case StatementKind::Block: return "block";
        case StatementKind::Other: return "other";
    }
    return "other";
}

std::string_view to_string(LifecycleKind kind) {
    switch (kind) {
        case LifecycleKind::BeforeEach: return "before-each";
        case LifecycleKind::AfterEach: return "after-each";
        case LifecycleKind::BeforeAll: return "before-all";
        case LifecycleKind::AfterAll: return "after-all";
    }
    return "before-each";
}

const Annotation* MethodModel::annotation(std::string_view simple_name) const {
    for (const auto& a : annotations) {
        if (a.name == simple_name) return &a;
    }
    return nullptr;
}

const FieldModel* TestClassModel::field(std::string_view field_name) const {
    for (const auto& f : fields) {
        if (f.name == field_name) return &f;
    }
    return nullptr;
}

const TestClassModel* SourceCorpus::find_class(std::string_view simple_name) const {
    for (const auto& f : files) {
        for (const auto& c : f.classes) {
            if (c.name == simple_name) return &c;
        }
    }
    return nullptr;
}

namespace {

std::optional<LifecycleKind> lifecycle_of(const MethodModel& m) {
    for (const auto& a : m.annotations) {
        if (a.name == "Before" || a.name == "BeforeEach") return LifecycleKind::BeforeEach;
        if (a.name == "After" || a.name == "AfterEach") return LifecycleKind::AfterEach;
        if (a.name == "BeforeClass" || a.name == "BeforeAll") return LifecycleKind::BeforeAll;
        if (a.name == "AfterClass" || a.name == "AfterAll") return LifecycleKind::AfterAll;
    }
    return std::nullopt;
}

bool is_test(const MethodModel& m, const ParseOptions& options) {
    return std::any_of(m.annotations.begin(), m.annotations.end(),
                       [&](const Annotation& a) { return options.test_markers.count(a.name) != 0; });
}

bool has_tests(const java::TypeDecl& t, const ParseOptions& options) {
    return std::any_of(t.methods.begin(), t.methods.end(),
                       [&](const MethodModel& m) { return is_test(m, options); });
}

std::string strip_type(std::string_view type) {
    std::string t(type);
    if (auto lt = t.find('<'); lt != std::string::npos) t.resize(lt);
    while (!t.empty() && (t.back() == ']' || t.back() == '[' || t.back() == ' ' || t.back() == '.')) t.pop_back();
    if (auto dot = t.rfind('.'); dot != std::string::npos) t = t.substr(dot + 1);
    return t;
}

bool is_simple_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_' || s[0] == '$')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
    });
}

bool is_qualified_name(std::string_view s) {
    std::size_t start = 0;
    for (;;) {
        const auto dot = s.find('.', start);
        if (!is_simple_identifier(s.substr(start, dot == std::string_view::npos ? dot : dot - start))) return false;
        if (dot == std::string_view::npos) return true;
        start = dot + 1;
    }
}

bool upper_initial(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

// Best-effort syntactic receiver resolution over a lexical scope.
class Resolver {
   public:
    Resolver(const java::TypeDecl& type, const std::vector<ImportModel>& imports) {
        for (const auto& f : type.fields) fields_[f.name] = strip_type(f.type);
        for (const auto& m : type.methods) {
            auto& entry = methods_[m.name];
            entry = entry || m.is_static;
        }
        for (const auto& imp : imports) {
            if (!imp.is_static) continue;
            if (imp.wildcard) {
                static_wildcard_ = true;
            } else {
                const auto dot = imp.name.rfind('.');
                static_imports_.insert(dot == std::string::npos ? imp.name : imp.name.substr(dot + 1));
            }
        }
    }

    void resolve(MethodModel& m) const {
        Scope scope = fields_;
        for (const auto& p : m.parameters) scope[p.name] = strip_type(p.type);
        resolve_all(m.statements, scope);
    }

   private:
    using Scope = std::map<std::string, std::string>;

    void resolve_all(std::vector<Statement>& stmts, Scope& scope) const {
        for (auto& s : stmts) resolve(s, scope);
    }

    void resolve(Statement& s, Scope& scope) const {
        Scope inner = scope;
        const bool scoped_decl = s.kind == StatementKind::Loop || s.kind == StatementKind::TryBlock;
        Scope& target = scoped_decl ? inner : scope;
        for (const auto& d : s.declared) target[d] = strip_type(s.declared_type);
        // An initializer may not see its own variable, but the difference is immaterial here.
        for (auto& inv : s.calls) resolve(inv, target);
        if (s.callee) resolve(*s.callee, target);
        resolve_all(s.children, inner);
        for (auto& c : s.catches) {
            Scope handler = scope;
            handler[c.variable] = c.types.size() == 1 ? strip_type(c.types.front()) : "Exception";
            resolve_all(c.body, handler);
        }
        Scope fin = scope;
        resolve_all(s.finally_body, fin);
    }

    void resolve(Invocation& inv, const Scope& scope) const {
        resolve(inv.callee, scope);
        for (std::size_t i = 0; i < inv.args.size() && i < inv.arg_types.size(); ++i) {
            if (!inv.arg_types[i].empty()) continue;
            if (auto it = scope.find(inv.args[i]); it != scope.end()) inv.arg_types[i] = it->second;
        }
    }

    void resolve(Callee& c, const Scope& scope) const {
        if (c.is_constructor) {
            c.receiver_type = c.method;
            return;
        }
        if (c.receiver.empty()) {
            if (auto it = methods_.find(c.method); it != methods_.end()) {
                c.is_static = it->second;
            } else {
                c.is_static = static_imports_.count(c.method) != 0 || static_wildcard_;
            }
            return;
        }
        if (c.receiver == "this" || c.receiver == "super") return;
        if (is_simple_identifier(c.receiver)) {
            if (auto it = scope.find(c.receiver); it != scope.end()) {
                c.receiver_type = it->second;
                c.is_static = false;
            } else if (upper_initial(c.receiver)) {
                c.receiver_type = c.receiver;
                c.is_static = true;
            }
            return;
        }
        if (is_qualified_name(c.receiver)) {
            const auto last = c.receiver.substr(c.receiver.rfind('.') + 1);
            if (upper_initial(last) && scope.count(c.receiver.substr(0, c.receiver.find('.'))) == 0) {
                c.receiver_type = last;
                c.is_static = true;
            }
        }
    }

    Scope fields_;
    std::map<std::string, bool> methods_;  // name -> some overload is static
    std::set<std::string> static_imports_;
    bool static_wildcard_ = false;
};

void set_file(MethodModel& m, const std::string& path) { m.file = path; }

// Methods of nested types without tests, plus anonymous/local class methods,
// become helpers of the enclosing test class.
void gather_helpers(java::TypeDecl& t, std::vector<MethodModel>& out) {
    for (auto& m : t.methods) out.push_back(std::move(m));
    for (auto& m : t.inner_methods) out.push_back(std::move(m));
    for (auto& n : t.nested) gather_helpers(n, out);
}

void collect(java::TypeDecl& type, const std::string& prefix, const java::CompilationUnit& unit,
             const std::string& path, const ParseOptions& options, std::vector<TestClassModel>& out) {
    const std::string name = prefix.empty() ? type.name : prefix + "." + type.name;
    const bool tests_here = has_tests(type, options);

    // Nested classes with their own tests are reported separately.
    std::vector<java::TypeDecl*> test_nested;
    for (auto& n : type.nested) {
        if (has_tests(n, options)) test_nested.push_back(&n);
    }

    if (tests_here) {
        TestClassModel cls;
        cls.name = name;
        cls.package = unit.package;
        cls.qualified_name = unit.package.empty() ? name : unit.package + "." + name;
        cls.superclass = type.superclass;
        cls.file = path;
        cls.range = type.range;
        cls.fields = type.fields;
        cls.imports = unit.imports;

        Resolver resolver(type, unit.imports);
        std::vector<MethodModel> extra;
        for (auto& m : type.inner_methods) extra.push_back(std::move(m));
        for (auto& n : type.nested) {
            if (std::find(test_nested.begin(), test_nested.end(), &n) == test_nested.end()) gather_helpers(n, extra);
        }
        cls.method_count = type.methods.size() + extra.size();

        for (auto& m : type.methods) {
            set_file(m, path);
            resolver.resolve(m);
            if (is_test(m, options)) {
                cls.tests.push_back(std::move(m));
            } else if (auto kind = lifecycle_of(m)) {
                cls.lifecycle.push_back({std::move(m), kind});
            } else {
                cls.helpers.push_back({std::move(m), std::nullopt});
            }
        }
        for (auto& m : extra) {
            set_file(m, path);
            resolver.resolve(m);
            cls.helpers.push_back({std::move(m), std::nullopt});
        }
        out.push_back(std::move(cls));
    }
    for (auto* n : test_nested) collect(*n, name, unit, path, options, out);
    if (!tests_here) {
        // Test classes may hide deeper inside non-test containers.
        for (auto& n : type.nested) {
            if (std::find(test_nested.begin(), test_nested.end(), &n) == test_nested.end()) {
                collect(n, name, unit, path, options, out);
            }
        }
    }
}

bool any_call(const std::vector<Statement>& stmts, const std::function<bool(const Invocation&)>& pred);

bool any_call(const Statement& s, const std::function<bool(const Invocation&)>& pred) {
    if (std::any_of(s.calls.begin(), s.calls.end(), pred)) return true;
    if (any_call(s.children, pred) || any_call(s.finally_body, pred)) return true;
    return std::any_of(s.catches.begin(), s.catches.end(),
                       [&](const CatchClause& c) { return any_call(c.body, pred); });
}

bool any_call(const std::vector<Statement>& stmts, const std::function<bool(const Invocation&)>& pred) {
    return std::any_of(stmts.begin(), stmts.end(), [&](const Statement& s) { return any_call(s, pred); });
}

bool any_literal(const Statement& s, const std::function<bool(const std::string&)>& pred) {
    if (std::any_of(s.string_literals.begin(), s.string_literals.end(), pred)) return true;
    auto in = [&](const std::vector<Statement>& v) {
        return std::any_of(v.begin(), v.end(), [&](const Statement& c) { return any_literal(c, pred); });
    };
    if (in(s.children) || in(s.finally_body)) return true;
    return std::any_of(s.catches.begin(), s.catches.end(), [&](const CatchClause& c) { return in(c.body); });
}

}  // namespace

std::vector<TestClassModel> parse_file(const std::string& path, std::string_view content,
                                       const ParseOptions& options) {
    java::CompilationUnit unit = java::parse_compilation_unit(content);
    std::vector<TestClassModel> out;
    for (auto& t : unit.types) collect(t, "", unit, path, options, out);
    return out;
}

Statement parse_statement(std::string_view text) { return java::parse_single_statement(text); }

std::set<std::string> declared_type_names(std::string_view content) {
    std::set<std::string> names;
    try {
        const auto toks = java::tokenize(content);
        for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
            const auto& t = toks[i];
            const bool decl = t.is("class") || t.is("interface") || t.is("enum") ||
                              (t.is_identifier() && t.text == "record" && i + 2 < toks.size() &&
                               toks[i + 2].is("("));
            // `Foo.class` literals are not declarations.
            if (decl && toks[i + 1].is_identifier() && !(i > 0 && toks[i - 1].is("."))) {
                names.emplace(toks[i + 1].text);
            }
        }
    } catch (const ParseError&) {
        static const std::regex decl(R"(\b(?:class|interface|enum|record)\s+([A-Za-z_$][A-Za-z0-9_$]*))");
        const std::string text(content);
        for (auto it = std::sregex_iterator(text.begin(), text.end(), decl); it != std::sregex_iterator(); ++it) {
            names.insert((*it)[1].str());
        }
    }
    return names;
}

NonUnitVerdict is_probable_non_unit_test(const TestCaseModel& test, const TestClassModel& cls,
                                         const RuleSet& rules) {
    const std::string_view simple = std::string_view(cls.name).substr(
        cls.name.rfind('.') == std::string::npos ? 0 : cls.name.rfind('.') + 1);
    if (simple.size() > 2 && simple.substr(simple.size() - 2) == "IT") {
        return {true, "class name ends with IT"};
    }
    std::string hit;
    const bool exec = any_call(test.statements, [&](const Invocation& inv) {
        if (inv.callee.is_constructor) return false;
        for (const auto& token : split_identifier(inv.callee.method)) {
            for (const auto& marker : rules.non_unit_callee_tokens) {
                if (token == marker) {
                    hit = inv.callee.method;
                    return true;
                }
            }
        }
        return false;
    });
    if (exec) return {true, "external command wrapper (" + hit + ")"};
    if (rules.detect_sql) {
        static const std::regex sql(
            R"(\b(SELECT\b[\s\S]*\bFROM|INSERT\s+INTO|UPDATE\b[\s\S]*\bSET|DELETE\s+FROM|(CREATE|DROP|ALTER)\s+TABLE)\b)",
            std::regex::icase);
        const bool has_sql = std::any_of(test.statements.begin(), test.statements.end(), [&](const Statement& s) {
            return any_literal(s, [&](const std::string& lit) { return std::regex_search(lit, sql); });
        });
        if (has_sql) return {true, "SQL wrapper"};
    }
    return {};
}

}  // namespace aaa
