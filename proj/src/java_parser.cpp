#include "java_parser.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <optional>

#include "java_lexer.hpp"

namespace aaa::java {
namespace {

constexpr int kMaxNesting = 300;

constexpr std::array<std::string_view, 9> kPrimitives = {"boolean", "byte", "char",  "short", "int",
                                                         "long",    "float", "double", "void"};

constexpr std::array<std::string_view, 14> kModifiers = {
    "public",    "protected", "private",  "static",       "final",    "abstract", "native",
    "transient", "volatile",  "strictfp", "synchronized", "default",  "sealed",   "non-sealed"};

bool is_primitive(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           std::find(kPrimitives.begin(), kPrimitives.end(), t.text) != kPrimitives.end();
}

// Expression tree used only while parsing; statements keep the flattened
// facts (calls, names, decision points) extracted from it.
struct Expr {
    enum class Kind {
        Name,
        Literal,
        Call,
        New,
        NewArray,
        Field,
        Binary,
        Unary,
        Postfix,
        Ternary,
        Assign,
        Cast,
        Paren,
        Lambda,
        MethodRef,
        Index,
        ArrayInit,
        InstanceOf,
        Switch,
        ClassLiteral,
        This,
    };

    Kind kind = Kind::Name;
    std::string op;
    std::string name;  // identifier, method name or created type
    TokenKind literal_kind = TokenKind::EndOfFile;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::unique_ptr<Expr> receiver;
    std::vector<std::unique_ptr<Expr>> operands;  // binary/ternary/unary/assign/cast/index operands
    std::vector<std::unique_ptr<Expr>> args;
    std::vector<Statement> statements;  // lambda blocks and switch expressions
};

using ExprPtr = std::unique_ptr<Expr>;

class Parser {
   public:
    explicit Parser(std::string_view src) : src_(src), toks_(tokenize(src)) {
        line_starts_.push_back(0);
        for (std::size_t i = 0; i < src_.size(); ++i) {
            if (src_[i] == '\n') line_starts_.push_back(i + 1);
        }
    }

    CompilationUnit compilation_unit() {
        CompilationUnit unit;
        std::vector<Annotation> pending = annotations();
        if (cur().is("package")) {
            advance();
            unit.package = qualified_name();
            expect(";");
            pending.clear();
        }
        while (cur().is("import")) {
            advance();
            ImportModel imp;
            if (cur().is("static")) {
                advance();
                imp.is_static = true;
            }
            imp.name = qualified_name();
            if (cur().is(".") && peek(1).is("*")) {
                advance();
                advance();
                imp.wildcard = true;
            }
            expect(";");
            unit.imports.push_back(std::move(imp));
        }
        while (!at_end()) {
            if (cur().is(";")) {
                advance();
                continue;
            }
            const std::size_t start = cur().begin;
            std::vector<Annotation> annots = annotations();
            skip_modifiers(annots);
            if (!annots.empty()) pending = annots;
            if (is_type_decl_start()) {
                unit.types.push_back(type_decl(start));
            } else if (cur().is_identifier() && (cur().text == "module" || cur().text == "open")) {
                // module-info.java: nothing to analyze
                while (!at_end()) advance();
            } else {
                fail(cur(), "expected a type declaration");
            }
        }
        return unit;
    }

    Statement single_statement() {
        Statement s = statement();
        if (!at_end()) fail(cur(), "trailing tokens after statement");
        return s;
    }

   private:
    // ---------------------------------------------------------------------
    // Token cursor
    // ---------------------------------------------------------------------

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t k) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    const Token& at(std::size_t i) const { return toks_[std::min(i, toks_.size() - 1)]; }
    bool at_end() const { return cur().kind == TokenKind::EndOfFile; }
    const Token& advance() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(std::string_view s) {
        if (cur().is(s)) {
            advance();
            return true;
        }
        return false;
    }
    const Token& expect(std::string_view s) {
        if (!cur().is(s)) fail(cur(), "expected '" + std::string(s) + "'");
        return advance();
    }
    std::string_view expect_identifier() {
        if (!cur().is_identifier()) fail(cur(), "expected identifier");
        return advance().text;
    }
    [[noreturn]] void fail(const Token& t, const std::string& message) const {
        std::string found = t.kind == TokenKind::EndOfFile ? "end of file" : "'" + std::string(t.text) + "'";
        throw ParseError(t.line, t.column, message + ", found " + found);
    }
    std::size_t prev_end() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].end; }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxNesting) parser.fail(parser.cur(), "nesting too deep");
        }
        ~DepthGuard() { --parser.depth_; }
        Parser& parser;
    };

    // ---------------------------------------------------------------------
    // Source positions
    // ---------------------------------------------------------------------

    std::pair<int, int> line_col(std::size_t offset) const {
        auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
        const auto line = static_cast<int>(it - line_starts_.begin());
        const std::size_t start = line_starts_[static_cast<std::size_t>(line - 1)];
        return {line, static_cast<int>(offset - start) + 1};
    }

    SourceRange range(std::size_t begin, std::size_t end) const {
        SourceRange r;
        r.begin = begin;
        r.end = std::max(begin, end);
        std::tie(r.line, r.column) = line_col(begin);
        std::tie(r.end_line, r.end_column) = line_col(r.end > r.begin ? r.end - 1 : r.begin);
        return r;
    }

    std::string slice(std::size_t begin, std::size_t end) const {
        return end > begin ? std::string(src_.substr(begin, end - begin)) : std::string();
    }

    // ---------------------------------------------------------------------
    // Lookahead scanners (no side effects)
    // ---------------------------------------------------------------------

    bool skip_balanced(std::size_t& i, std::string_view open, std::string_view close) const {
        if (!at(i).is(open)) return false;
        int depth = 0;
        for (; at(i).kind != TokenKind::EndOfFile; ++i) {
            if (at(i).is(open)) {
                ++depth;
            } else if (at(i).is(close)) {
                if (--depth == 0) {
                    ++i;
                    return true;
                }
            }
        }
        return false;
    }

    bool skip_annotation(std::size_t& i) const {
        if (!at(i).is("@") || at(i + 1).is("interface")) return false;
        ++i;
        if (!at(i).is_identifier()) return false;
        ++i;
        while (at(i).is(".") && at(i + 1).is_identifier()) i += 2;
        if (at(i).is("(")) return skip_balanced(i, "(", ")");
        return true;
    }

    bool skip_type_args(std::size_t& i) const {
        if (!at(i).is("<")) return false;
        int depth = 0;
        for (; at(i).kind != TokenKind::EndOfFile; ++i) {
            const Token& t = at(i);
            if (t.is("<")) {
                ++depth;
            } else if (t.is(">")) {
                if (--depth == 0) {
                    ++i;
                    return true;
                }
            } else if (t.is("@")) {
                std::size_t j = i;
                if (!skip_annotation(j)) return false;
                i = j - 1;
            } else if (!(t.is_identifier() || is_primitive(t) || t.is("?") || t.is(",") || t.is(".") ||
                         t.is("&") || t.is("[") || t.is("]") || t.is("extends") || t.is("super"))) {
                return false;
            }
        }
        return false;
    }

    bool skip_type(std::size_t& i) const {
        while (at(i).is("@")) {
            if (!skip_annotation(i)) return false;
        }
        if (is_primitive(at(i))) {
            ++i;
        } else if (at(i).is_identifier()) {
            ++i;
            for (;;) {
                if (at(i).is("<") && !skip_type_args(i)) return false;
                if (at(i).is(".") && at(i + 1).is_identifier()) {
                    i += 2;
                    continue;
                }
                if (at(i).is(".") && at(i + 1).is("@")) {
                    ++i;
                    while (at(i).is("@")) {
                        if (!skip_annotation(i)) return false;
                    }
                    if (!at(i).is_identifier()) return false;
                    ++i;
                    continue;
                }
                break;
            }
        } else {
            return false;
        }
        while (at(i).is("@")) {
            if (!skip_annotation(i)) return false;
        }
        while (at(i).is("[") && at(i + 1).is("]")) i += 2;
        return true;
    }

    bool is_modifier(const Token& t) const {
        if (t.kind == TokenKind::Keyword) {
            return std::find(kModifiers.begin(), kModifiers.end(), t.text) != kModifiers.end();
        }
        return t.is_identifier() && (t.text == "sealed" || (t.text == "non" && at(pos_ + 1).is("-")));
    }

    bool is_type_decl_start() const {
        const Token& t = cur();
        if (t.is("class") || t.is("interface") || t.is("enum")) return true;
        if (t.is("@") && peek(1).is("interface")) return true;
        return t.is_identifier() && t.text == "record" && peek(1).is_identifier() &&
               (peek(2).is("(") || peek(2).is("<"));
    }

    bool is_lambda_start() const {
        if (cur().is_identifier() && peek(1).is("->")) return true;
        if (!cur().is("(")) return false;
        std::size_t i = pos_;
        if (!skip_balanced(i, "(", ")")) return false;
        return at(i).is("->");
    }

    // Local variable declaration lookahead: [modifiers] Type name (= | ; | , | [ | :)
    bool looks_like_declaration() const {
        std::size_t i = pos_;
        for (;;) {
            if (at(i).is("final")) {
                ++i;
            } else if (at(i).is("@")) {
                if (!skip_annotation(i)) return false;
            } else {
                break;
            }
        }
        if (!skip_type(i)) return false;
        if (!at(i).is_identifier()) return false;
        const Token& next = at(i + 1);
        return next.is("=") || next.is(";") || next.is(",") || next.is("[") || next.is(":");
    }

    // ---------------------------------------------------------------------
    // Declarations
    // ---------------------------------------------------------------------

    std::string qualified_name() {
        std::string name(expect_identifier());
        while (cur().is(".") && peek(1).is_identifier()) {
            advance();
            name += ".";
            name += advance().text;
        }
        return name;
    }

    std::string type_text() {
        std::size_t i = pos_;
        if (!skip_type(i)) fail(cur(), "expected type");
        const std::size_t begin = cur().begin;
        pos_ = i;
        return slice(begin, prev_end());
    }

    std::vector<Annotation> annotations() {
        std::vector<Annotation> out;
        while (cur().is("@") && !peek(1).is("interface")) out.push_back(annotation());
        return out;
    }

    Annotation annotation() {
        Annotation a;
        const std::size_t begin = expect("@").begin;
        a.qualified_name = qualified_name();
        const auto dot = a.qualified_name.rfind('.');
        a.name = dot == std::string::npos ? a.qualified_name : a.qualified_name.substr(dot + 1);
        if (cur().is("(")) {
            advance();
            if (!cur().is(")")) {
                if (cur().is_identifier() && peek(1).is("=")) {
                    for (;;) {
                        std::string key(expect_identifier());
                        expect("=");
                        a.attributes[key] = element_value();
                        if (!accept(",")) break;
                    }
                } else {
                    a.attributes["value"] = element_value();
                }
            }
            expect(")");
        }
        a.range = range(begin, prev_end());
        return a;
    }

    // Verbatim text of an annotation element value.
    std::string element_value() {
        const std::size_t begin = cur().begin;
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && (t.is(",") || t.is(")"))) break;
            if (t.is("(") || t.is("{") || t.is("[")) ++depth;
            if (t.is(")") || t.is("}") || t.is("]")) --depth;
            advance();
        }
        if (prev_end() <= begin) fail(cur(), "expected annotation value");
        return slice(begin, prev_end());
    }

    std::vector<std::string> skip_modifiers(std::vector<Annotation>& annots, std::size_t* first_modifier = nullptr) {
        std::vector<std::string> mods;
        for (;;) {
            if (first_modifier != nullptr && mods.empty() && !cur().is("@")) *first_modifier = cur().begin;
            if (cur().is("@") && !peek(1).is("interface")) {
                annots.push_back(annotation());
            } else if (cur().is_identifier() && cur().text == "non" && peek(1).is("-") &&
                       peek(2).text == "sealed") {
                advance();
                advance();
                advance();
                mods.emplace_back("non-sealed");
            } else if (is_modifier(cur()) && !(cur().is("default") && (peek(1).is(":") || peek(1).is("->")))) {
                mods.emplace_back(advance().text);
            } else {
                return mods;
            }
        }
    }

    static std::string simple_type_name(std::string_view type) {
        std::string t(type);
        if (auto lt = t.find('<'); lt != std::string::npos) t.resize(lt);
        while (!t.empty() && (t.back() == ']' || t.back() == '[' || t.back() == ' ')) t.pop_back();
        if (auto dot = t.rfind('.'); dot != std::string::npos) t = t.substr(dot + 1);
        return t;
    }

    TypeDecl type_decl(std::size_t start) {
        DepthGuard guard(*this);
        TypeDecl decl;
        if (accept("class")) {
            decl.kind = "class";
        } else if (accept("interface")) {
            decl.kind = "interface";
        } else if (accept("enum")) {
            decl.kind = "enum";
        } else if (cur().is("@")) {
            advance();
            expect("interface");
            decl.kind = "annotation";
        } else {
            advance();  // record
            decl.kind = "record";
        }
        decl.name = std::string(expect_identifier());
        if (cur().is("<")) {
            std::size_t i = pos_;
            if (!skip_type_args(i)) fail(cur(), "malformed type parameters");
            pos_ = i;
        }
        if (decl.kind == "record") {
            std::size_t i = pos_;
            if (!skip_balanced(i, "(", ")")) fail(cur(), "malformed record header");
            pos_ = i;
        }
        for (;;) {
            if (accept("extends")) {
                std::string first = type_text();
                if (decl.kind == "class") decl.superclass = simple_type_name(first);
                while (accept(",")) type_text();
            } else if (accept("implements")) {
                type_text();
                while (accept(",")) type_text();
            } else if (cur().is_identifier() && cur().text == "permits") {
                advance();
                type_text();
                while (accept(",")) type_text();
            } else {
                break;
            }
        }
        expect("{");
        type_stack_.push_back(&decl);
        if (decl.kind == "enum") enum_constants(decl);
        class_body(decl);
        type_stack_.pop_back();
        expect("}");
        decl.range = range(start, prev_end());
        return decl;
    }

    void enum_constants(TypeDecl& decl) {
        while (!cur().is(";") && !cur().is("}")) {
            annotations();
            expect_identifier();
            if (cur().is("(")) {
                std::vector<ExprPtr> ignored;
                arguments(ignored);
            }
            if (cur().is("{")) anonymous_body();
            if (!accept(",")) break;
        }
        accept(";");
        (void)decl;
    }

    void class_body(TypeDecl& decl) {
        while (!cur().is("}") && !at_end()) {
            if (accept(";")) continue;
            const std::size_t start = cur().begin;
            if (cur().is("{") || (cur().is("static") && peek(1).is("{"))) {
                accept("static");
                block();  // initializer blocks are not analyzed
                continue;
            }
            std::vector<Annotation> annots;
            std::size_t decl_start = cur().begin;
            std::vector<std::string> mods = skip_modifiers(annots, &decl_start);
            if (is_type_decl_start()) {
                decl.nested.push_back(type_decl(start));
                continue;
            }
            if (cur().is("<")) {
                std::size_t i = pos_;
                if (!skip_type_args(i)) fail(cur(), "malformed type parameters");
                pos_ = i;
            }
            MethodModel m;
            m.annotations = std::move(annots);
            m.modifiers = mods;
            m.is_static = std::find(mods.begin(), mods.end(), "static") != mods.end();
            if (cur().is_identifier() && cur().text == decl.name && (peek(1).is("(") || peek(1).is("{"))) {
                m.name = std::string(advance().text);
                m.is_constructor = true;
                if (cur().is("{")) {  // compact record constructor
                    m.params_close = m.throws_end = prev_end();
                    method_body(m);
                    m.range = range(start, prev_end());
                    m.declaration_range = range(decl_start, prev_end());
                    decl.methods.push_back(std::move(m));
                    continue;
                }
            } else {
                const std::string type = type_text();
                m.name = std::string(expect_identifier());
                if (!cur().is("(")) {
                    field_declarators(decl, type, m.is_static, start);
                    continue;
                }
            }
            parameters(m);
            while (cur().is("[") && peek(1).is("]")) {
                advance();
                advance();
            }
            m.throws_end = m.params_close;
            if (accept("throws")) {
                m.thrown.push_back(type_text());
                while (accept(",")) m.thrown.push_back(type_text());
                m.throws_end = prev_end();
            }
            if (cur().is("default")) {  // annotation element default
                advance();
                element_value();
            }
            if (cur().is("{")) {
                method_body(m);
            } else {
                expect(";");
            }
            m.range = range(start, prev_end());
            m.declaration_range = range(decl_start, prev_end());
            decl.methods.push_back(std::move(m));
        }
    }

    void field_declarators(TypeDecl& decl, const std::string& type, bool is_static, std::size_t start) {
        // The first declarator's name was already consumed.
        std::string name(toks_[pos_ - 1].text);
        for (;;) {
            while (cur().is("[") && peek(1).is("]")) {
                advance();
                advance();
            }
            if (accept("=")) variable_initializer();
            FieldModel f;
            f.name = name;
            f.type = type;
            f.is_static = is_static;
            f.range = range(start, prev_end());
            decl.fields.push_back(std::move(f));
            if (!accept(",")) break;
            name = std::string(expect_identifier());
        }
        expect(";");
    }

    void parameters(MethodModel& m) {
        expect("(");
        while (!cur().is(")")) {
            std::vector<Annotation> ignored;
            skip_modifiers(ignored);
            Parameter p;
            p.type = type_text();
            if (accept("...")) p.type += "...";
            if (cur().is("this")) {  // receiver parameter
                advance();
            } else if (cur().is_identifier() && peek(1).is(".") && peek(2).is("this")) {
                advance();
                advance();
                advance();
            } else {
                p.name = std::string(expect_identifier());
                while (cur().is("[") && peek(1).is("]")) {
                    advance();
                    advance();
                    p.type += "[]";
                }
                m.parameters.push_back(std::move(p));
            }
            if (!accept(",")) break;
        }
        expect(")");
        m.params_close = prev_end();
    }

    void method_body(MethodModel& m) {
        const std::size_t open = cur().begin;
        m.statements = block();
        m.body_range = range(open, prev_end());
        m.has_body = true;
    }

    void anonymous_body() {
        TypeDecl anon;
        anon.kind = "class";
        expect("{");
        type_stack_.push_back(&anon);
        class_body(anon);
        type_stack_.pop_back();
        expect("}");
        absorb_local_type(anon);
    }

    // Methods of anonymous and local classes become helper candidates of the
    // innermost enclosing named type.
    void absorb_local_type(TypeDecl& local) {
        if (type_stack_.empty()) return;
        TypeDecl& owner = *type_stack_.back();
        for (auto& m : local.methods) owner.inner_methods.push_back(std::move(m));
        for (auto& m : local.inner_methods) owner.inner_methods.push_back(std::move(m));
        for (auto& n : local.nested) absorb_local_type(n);
    }

    // ---------------------------------------------------------------------
    // Statements
    // ---------------------------------------------------------------------

    std::vector<Statement> block() {
        expect("{");
        std::vector<Statement> out;
        while (!cur().is("}")) {
            if (at_end()) fail(cur(), "expected '}'");
            out.push_back(statement());
        }
        expect("}");
        return out;
    }

    Statement finish(Statement s, std::size_t begin) const {
        s.range = range(begin, prev_end());
        s.text = slice(begin, prev_end());
        s.line = s.range.line;
        return s;
    }

    // Body of if/loops: a block contributes its statements, anything else itself.
    std::vector<Statement> body_statements(SourceRange* braces = nullptr) {
        if (cur().is("{")) {
            const std::size_t open = cur().begin;
            auto stmts = block();
            if (braces != nullptr) *braces = range(open, prev_end());
            return stmts;
        }
        std::vector<Statement> out;
        out.push_back(statement());
        return out;
    }

    Statement statement() {
        DepthGuard guard(*this);
        const std::size_t begin = cur().begin;
        Statement s;
        const Token& t = cur();

        if (t.is("{")) {
            s.kind = StatementKind::Block;
            s.form = ControlForm::Block;
            s.children = block();
            s.body_range = range(begin, prev_end());
            return finish(std::move(s), begin);
        }
        if (t.is(";")) {
            advance();
            return finish(std::move(s), begin);
        }
        if (t.is("...")) {
            advance();
            accept(";");
            s.elided = true;
            return finish(std::move(s), begin);
        }
        if (t.is("if")) return if_statement(begin);
        if (t.is("for")) return for_statement(begin);
        if (t.is("while")) {
            advance();
            s.kind = StatementKind::Loop;
            s.form = ControlForm::While;
            s.decision_points = 1;
            paren_condition(s);
            s.children = body_statements(&s.body_range);
            return finish(std::move(s), begin);
        }
        if (t.is("do")) {
            advance();
            s.kind = StatementKind::Loop;
            s.form = ControlForm::DoWhile;
            s.decision_points = 1;
            s.children = body_statements(&s.body_range);
            expect("while");
            paren_condition(s);
            expect(";");
            return finish(std::move(s), begin);
        }
        if (t.is("try")) return try_statement(begin);
        if (t.is("switch")) {
            s.kind = StatementKind::Conditional;
            s.form = ControlForm::Switch;
            advance();
            paren_condition(s);
            switch_body(s.children, s);
            accept(";");
            return finish(std::move(s), begin);
        }
        if (t.is("return")) {
            advance();
            s.kind = StatementKind::Return;
            if (!cur().is(";")) {
                s.returns_value = true;
                auto e = expression();
                absorb(s, *e, false);
                s.callee = top_callee(*e);
            }
            expect(";");
            return finish(std::move(s), begin);
        }
        if (t.is("throw")) {
            advance();
            s.kind = StatementKind::Throw;
            auto e = expression();
            absorb(s, *e, false);
            s.callee = top_callee(*e);
            expect(";");
            return finish(std::move(s), begin);
        }
        if (t.is("break") || t.is("continue")) {
            advance();
            if (cur().is_identifier()) advance();
            expect(";");
            return finish(std::move(s), begin);
        }
        if (t.is("synchronized") && peek(1).is("(")) {
            advance();
            s.kind = StatementKind::Block;
            s.form = ControlForm::Synchronized;
            paren_condition(s);
            s.condition.clear();
            const std::size_t open = cur().begin;
            s.children = block();
            s.body_range = range(open, prev_end());
            return finish(std::move(s), begin);
        }
        if (t.is("assert") && !peek(1).is(".")) {
            advance();
            s.java_assert = true;
            auto e = expression();
            absorb(s, *e, false);
            if (accept(":")) {
                auto msg = expression();
                absorb(s, *msg, false);
            }
            expect(";");
            return finish(std::move(s), begin);
        }
        if (t.is_identifier() && t.text == "yield" && !peek(1).is("=") && !peek(1).is("(") &&
            !peek(1).is(".") && !peek(1).is("[") && !peek(1).is("++") && !peek(1).is("--") &&
            !peek(1).is("->") && !peek(1).is(";")) {
            advance();
            auto e = expression();
            absorb(s, *e, false);
            s.callee = top_callee(*e);
            expect(";");
            return finish(std::move(s), begin);
        }
        if (t.is_identifier() && peek(1).is(":") ) {
            advance();
            advance();
            s.kind = StatementKind::Block;
            s.form = ControlForm::Labeled;
            s.children.push_back(statement());
            return finish(std::move(s), begin);
        }
        if (local_type_ahead()) {
            std::vector<Annotation> annots;
            skip_modifiers(annots);
            TypeDecl local = type_decl(begin);
            absorb_local_type(local);
            return finish(std::move(s), begin);
        }
        if (looks_like_declaration()) return declaration(begin);
        return expression_statement(begin);
    }

    bool local_type_ahead() const {
        std::size_t i = pos_;
        while (at(i).is("final") || at(i).is("abstract") || at(i).is("static") || at(i).is("strictfp") ||
               at(i).is("@")) {
            if (at(i).is("@")) {
                if (at(i + 1).is("interface")) break;
                if (!skip_annotation(i)) return false;
            } else {
                ++i;
            }
        }
        const Token& t = at(i);
        if (t.is("class") || t.is("interface") || t.is("enum")) return true;
        if (t.is("@") && at(i + 1).is("interface")) return true;
        return t.is_identifier() && t.text == "record" && at(i + 1).is_identifier() &&
               (at(i + 2).is("(") || at(i + 2).is("<"));
    }

    void paren_condition(Statement& s) {
        expect("(");
        const std::size_t begin = cur().begin;
        auto e = expression();
        s.condition = slice(begin, e->end);
        s.condition_range = range(begin, e->end);
        analyze_condition(s, *e);
        absorb(s, *e, false);
        expect(")");
    }

    void analyze_condition(Statement& s, const Expr& e) {
        const Expr* c = &e;
        while (c->kind == Expr::Kind::Paren && !c->operands.empty()) c = c->operands[0].get();
        if (c->kind == Expr::Kind::Binary && c->op == "==" && c->operands.size() == 2) {
            const Expr& l = *c->operands[0];
            const Expr& r = *c->operands[1];
            auto is_null = [](const Expr& x) { return x.kind == Expr::Kind::Literal && x.name == "null"; };
            if (l.kind == Expr::Kind::Name && is_null(r)) s.null_checked = l.name;
            if (r.kind == Expr::Kind::Name && is_null(l)) s.null_checked = r.name;
        }
        s.condition_has_side_effects = has_side_effects(e);
    }

    static bool has_side_effects(const Expr& e) {
        if (e.kind == Expr::Kind::Assign) return true;
        if ((e.kind == Expr::Kind::Unary || e.kind == Expr::Kind::Postfix) && (e.op == "++" || e.op == "--")) {
            return true;
        }
        if (e.receiver && has_side_effects(*e.receiver)) return true;
        for (const auto& o : e.operands) {
            if (o && has_side_effects(*o)) return true;
        }
        for (const auto& a : e.args) {
            if (a && has_side_effects(*a)) return true;
        }
        return false;
    }

    Statement if_statement(std::size_t begin) {
        Statement s;
        s.kind = StatementKind::Conditional;
        s.form = ControlForm::If;
        s.decision_points = 1;
        expect("if");
        paren_condition(s);
        s.children = body_statements(&s.body_range);
        s.else_index = s.children.size();
        if (accept("else")) {
            if (cur().is("if")) {
                const std::size_t nested = cur().begin;
                s.children.push_back(if_statement(nested));
            } else {
                auto rest = body_statements();
                for (auto& r : rest) s.children.push_back(std::move(r));
            }
        }
        return finish(std::move(s), begin);
    }

    Statement for_statement(std::size_t begin) {
        Statement s;
        s.kind = StatementKind::Loop;
        s.decision_points = 1;
        expect("for");
        expect("(");
        if (foreach_header_ahead()) {
            s.form = ControlForm::ForEach;
            std::vector<Annotation> ignored;
            skip_modifiers(ignored);
            s.declared_type = type_text();
            s.declared.emplace_back(expect_identifier());
            expect(":");
            const std::size_t cb = cur().begin;
            auto e = expression();
            s.condition = slice(cb, e->end);
            s.condition_range = range(cb, e->end);
            absorb(s, *e, false);
        } else {
            s.form = ControlForm::For;
            if (!cur().is(";")) {
                if (looks_like_declaration()) {
                    std::vector<Annotation> ignored;
                    skip_modifiers(ignored);
                    s.declared_type = type_text();
                    for (;;) {
                        s.declared.emplace_back(expect_identifier());
                        while (cur().is("[") && peek(1).is("]")) {
                            advance();
                            advance();
                        }
                        if (accept("=")) {
                            auto init = variable_initializer();
                            absorb(s, *init, false);
                        }
                        if (!accept(",")) break;
                    }
                } else {
                    for (;;) {
                        auto e = expression();
                        absorb(s, *e, false);
                        if (!accept(",")) break;
                    }
                }
            }
            expect(";");
            if (!cur().is(";")) {
                const std::size_t cb = cur().begin;
                auto e = expression();
                s.condition = slice(cb, e->end);
                s.condition_range = range(cb, e->end);
                absorb(s, *e, false);
            }
            expect(";");
            while (!cur().is(")")) {
                auto e = expression();
                absorb(s, *e, false);
                if (!accept(",")) break;
            }
        }
        expect(")");
        s.children = body_statements(&s.body_range);
        return finish(std::move(s), begin);
    }

    bool foreach_header_ahead() const {
        std::size_t i = pos_;
        while (at(i).is("final") || at(i).is("@")) {
            if (at(i).is("@")) {
                if (!skip_annotation(i)) return false;
            } else {
                ++i;
            }
        }
        if (!skip_type(i)) return false;
        return at(i).is_identifier() && at(i + 1).is(":");
    }

    Statement try_statement(std::size_t begin) {
        Statement s;
        s.kind = StatementKind::TryBlock;
        s.form = ControlForm::Try;
        expect("try");
        if (cur().is("(")) {
            const std::size_t rb = cur().begin;
            advance();
            while (!cur().is(")")) {
                if (looks_like_declaration()) {
                    std::vector<Annotation> ignored;
                    skip_modifiers(ignored);
                    s.declared_type = type_text();
                    s.declared.emplace_back(expect_identifier());
                    expect("=");
                    auto init = expression();
                    absorb(s, *init, false);
                } else {
                    auto e = expression();
                    absorb(s, *e, false);
                }
                if (!accept(";")) break;
            }
            expect(")");
            s.resources_range = range(rb, prev_end());
        }
        const std::size_t open = cur().begin;
        s.children = block();
        s.body_range = range(open, prev_end());
        while (cur().is("catch")) {
            CatchClause c;
            const std::size_t cb = advance().begin;
            expect("(");
            std::vector<Annotation> ignored;
            skip_modifiers(ignored);
            c.types.push_back(type_text());
            while (accept("|")) c.types.push_back(type_text());
            c.variable = std::string(expect_identifier());
            expect(")");
            const std::size_t bb = cur().begin;
            c.body = block();
            c.body_range = range(bb, prev_end());
            c.range = range(cb, prev_end());
            s.catches.push_back(std::move(c));
            ++s.decision_points;
        }
        if (cur().is("finally")) {
            const std::size_t fb = advance().begin;
            s.finally_body = block();
            s.finally_range = range(fb, prev_end());
        }
        if (s.catches.empty() && !s.finally_range && !s.resources_range) {
            fail(cur(), "expected 'catch' or 'finally'");
        }
        return finish(std::move(s), begin);
    }

    // Parses `{ case ... }` for switch statements and expressions.
    void switch_body(std::vector<Statement>& out, Statement& owner) {
        expect("{");
        while (!cur().is("}")) {
            if (at_end()) fail(cur(), "expected '}'");
            if (cur().is("case") || cur().is("default")) {
                const bool is_default = cur().is("default");
                advance();
                if (!is_default) {
                    ++owner.decision_points;
                    int depth = 0;
                    while (!at_end()) {
                        if (depth == 0 && (cur().is(":") || cur().is("->"))) break;
                        if (cur().is("(")) ++depth;
                        if (cur().is(")")) --depth;
                        advance();
                    }
                }
                if (accept("->")) {
                    const std::size_t b = cur().begin;
                    if (cur().is("{")) {
                        auto stmts = block();
                        for (auto& st : stmts) out.push_back(std::move(st));
                    } else if (cur().is("throw")) {
                        out.push_back(statement());
                    } else {
                        out.push_back(expression_statement(b));
                    }
                } else {
                    expect(":");
                }
                continue;
            }
            out.push_back(statement());
        }
        expect("}");
    }

    Statement declaration(std::size_t begin) {
        Statement s;
        std::vector<Annotation> ignored;
        skip_modifiers(ignored);
        s.declared_type = type_text();
        bool initialized = false;
        for (;;) {
            s.declared.emplace_back(expect_identifier());
            while (cur().is("[") && peek(1).is("]")) {
                advance();
                advance();
            }
            if (accept("=")) {
                initialized = true;
                auto init = variable_initializer();
                absorb(s, *init, false);
                if (!s.callee) s.callee = top_callee(*init);
            }
            if (!accept(",")) break;
        }
        expect(";");
        s.kind = initialized ? StatementKind::Declaration : StatementKind::Other;
        return finish(std::move(s), begin);
    }

    Statement expression_statement(std::size_t begin) {
        Statement s;
        auto e = expression();
        absorb(s, *e, false);
        const Expr* top = e.get();
        while (top->kind == Expr::Kind::Paren && !top->operands.empty()) top = top->operands[0].get();
        if (top->kind == Expr::Kind::Call || top->kind == Expr::Kind::New) {
            s.kind = StatementKind::Invocation;
            s.callee = top_callee(*top);
        } else if (top->kind == Expr::Kind::Assign ||
                   ((top->kind == Expr::Kind::Unary || top->kind == Expr::Kind::Postfix) &&
                    (top->op == "++" || top->op == "--"))) {
            s.kind = StatementKind::Assignment;
            const Expr& target = *top->operands[0];
            if (target.kind == Expr::Kind::Name) {
                s.assigned = target.name;
            } else if (target.kind == Expr::Kind::Field && target.receiver &&
                       target.receiver->kind == Expr::Kind::This) {
                s.assigned = target.name;
            }
            if (top->kind == Expr::Kind::Assign) s.callee = top_callee(*top->operands[1]);
        } else {
            s.kind = StatementKind::Other;
        }
        expect(";");
        return finish(std::move(s), begin);
    }

    // ---------------------------------------------------------------------
    // Expression facts
    // ---------------------------------------------------------------------

    std::optional<Callee> top_callee(const Expr& e) const {
        const Expr* c = &e;
        while ((c->kind == Expr::Kind::Paren || c->kind == Expr::Kind::Cast) && !c->operands.empty()) {
            c = c->operands.back().get();
        }
        if (c->kind == Expr::Kind::Call || c->kind == Expr::Kind::New) return callee_of(*c);
        return first_call(*c);
    }

    std::optional<Callee> first_call(const Expr& e) const {
        if (e.kind == Expr::Kind::Lambda) return std::nullopt;
        if (e.kind == Expr::Kind::Call || e.kind == Expr::Kind::New) return callee_of(e);
        if (e.receiver) {
            if (auto c = first_call(*e.receiver)) return c;
        }
        for (const auto& o : e.operands) {
            if (o) {
                if (auto c = first_call(*o)) return c;
            }
        }
        for (const auto& a : e.args) {
            if (a) {
                if (auto c = first_call(*a)) return c;
            }
        }
        return std::nullopt;
    }

    Callee callee_of(const Expr& e) const {
        Callee c;
        c.method = e.name;
        c.is_constructor = e.kind == Expr::Kind::New;
        if (c.is_constructor) c.receiver_type = e.name;
        if (e.receiver) c.receiver = slice(e.receiver->begin, e.receiver->end);
        return c;
    }

    // Appends the calls, names, literals and decision points of `e` to `s`.
    void absorb(Statement& s, const Expr& e, bool in_lambda) const {
        switch (e.kind) {
            case Expr::Kind::Name:
                s.names.push_back(e.name);
                break;
            case Expr::Kind::Literal:
                if (e.literal_kind == TokenKind::StringLiteral || e.literal_kind == TokenKind::TextBlock) {
                    s.string_literals.push_back(e.name);
                }
                break;
            case Expr::Kind::Call:
            case Expr::Kind::New: {
                Invocation inv;
                inv.callee = callee_of(e);
                inv.range = range(e.begin, e.end);
                inv.in_lambda = in_lambda;
                for (const auto& a : e.args) {
                    inv.args.push_back(slice(a->begin, a->end));
                    inv.arg_ranges.push_back(range(a->begin, a->end));
                    std::string type;
                    if (a->kind == Expr::Kind::New) type = a->name;
                    inv.arg_types.push_back(type);
                }
                // Receivers evaluate first, so their calls come first.
                if (e.receiver) absorb(s, *e.receiver, in_lambda);
                s.calls.push_back(std::move(inv));
                for (const auto& a : e.args) absorb(s, *a, in_lambda);
                for (const auto& st : e.statements) absorb_statement(s, st);
                return;
            }
            case Expr::Kind::Binary:
                if (e.op == "&&" || e.op == "||") ++s.decision_points;
                break;
            case Expr::Kind::Ternary:
                ++s.decision_points;
                break;
            case Expr::Kind::Lambda:
                for (const auto& o : e.operands) absorb(s, *o, true);
                for (const auto& st : e.statements) absorb_statement(s, st);
                return;
            case Expr::Kind::Switch:
                s.decision_points += std::stoi(e.op.empty() ? "0" : e.op);
                break;
            default:
                break;
        }
        if (e.receiver) absorb(s, *e.receiver, in_lambda);
        for (const auto& o : e.operands) {
            if (o) absorb(s, *o, in_lambda);
        }
        for (const auto& a : e.args) {
            if (a) absorb(s, *a, in_lambda);
        }
        for (const auto& st : e.statements) absorb_statement(s, st);
    }

    // Statements nested in an expression (lambda blocks, switch expressions)
    // are flattened into the enclosing statement's facts.
    static void absorb_statement(Statement& s, const Statement& inner) {
        for (auto inv : inner.calls) {
            inv.in_lambda = true;
            s.calls.push_back(std::move(inv));
        }
        s.names.insert(s.names.end(), inner.names.begin(), inner.names.end());
        s.string_literals.insert(s.string_literals.end(), inner.string_literals.begin(),
                                 inner.string_literals.end());
        s.decision_points += inner.decision_points;
        for (const auto& c : inner.children) absorb_statement(s, c);
        for (const auto& c : inner.catches) {
            for (const auto& b : c.body) absorb_statement(s, b);
        }
        for (const auto& f : inner.finally_body) absorb_statement(s, f);
    }

    // ---------------------------------------------------------------------
    // Expressions
    // ---------------------------------------------------------------------

    ExprPtr node(Expr::Kind kind, std::size_t begin) const {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        e->begin = begin;
        return e;
    }

    ExprPtr variable_initializer() {
        if (cur().is("{")) return array_initializer();
        return expression();
    }

    ExprPtr array_initializer() {
        auto e = node(Expr::Kind::ArrayInit, cur().begin);
        expect("{");
        while (!cur().is("}")) {
            e->operands.push_back(variable_initializer());
            if (!accept(",")) break;
        }
        expect("}");
        e->end = prev_end();
        return e;
    }

    ExprPtr expression() {
        DepthGuard guard(*this);
        if (is_lambda_start()) return lambda();
        auto lhs = ternary();
        const auto [op, count] = peek_operator();
        if (is_assignment_op(op)) {
            for (int i = 0; i < count; ++i) advance();
            auto e = node(Expr::Kind::Assign, lhs->begin);
            e->op = op;
            e->operands.push_back(std::move(lhs));
            e->operands.push_back(expression());
            e->end = e->operands.back()->end;
            return e;
        }
        return lhs;
    }

    static bool is_assignment_op(std::string_view op) {
        return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "%=" || op == "&=" ||
               op == "|=" || op == "^=" || op == "<<=" || op == ">>=" || op == ">>>=";
    }

    // Glues adjacent '>' tokens (and a trailing '=') into one operator.
    std::pair<std::string, int> peek_operator() const {
        const Token& t = cur();
        if (t.kind != TokenKind::Punct && !t.is("instanceof")) return {"", 0};
        if (!t.is(">")) return {std::string(t.text), 1};
        std::string op = ">";
        int n = 1;
        std::size_t end = t.end;
        while (n < 3 && peek(n).is(">") && peek(n).begin == end) {
            end = peek(n).end;
            op += ">";
            ++n;
        }
        if (peek(n).is("=") && peek(n).begin == end) {
            op += "=";
            ++n;
        }
        return {op, n};
    }

    static int precedence(std::string_view op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "|") return 3;
        if (op == "^") return 4;
        if (op == "&") return 5;
        if (op == "==" || op == "!=") return 6;
        if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
        if (op == "<<" || op == ">>" || op == ">>>") return 8;
        if (op == "+" || op == "-") return 9;
        if (op == "*" || op == "/" || op == "%") return 10;
        return 0;
    }

    ExprPtr ternary() {
        auto cond = binary(1);
        if (!cur().is("?")) return cond;
        advance();
        auto e = node(Expr::Kind::Ternary, cond->begin);
        e->operands.push_back(std::move(cond));
        e->operands.push_back(is_lambda_start() ? lambda() : ternary());
        expect(":");
        e->operands.push_back(is_lambda_start() ? lambda() : ternary());
        e->end = e->operands.back()->end;
        return e;
    }

    ExprPtr binary(int min_prec) {
        auto lhs = unary();
        for (;;) {
            const auto [op, count] = peek_operator();
            const int prec = precedence(op);
            if (prec == 0 || prec < min_prec) return lhs;
            for (int i = 0; i < count; ++i) advance();
            if (op == "instanceof") {
                auto e = node(Expr::Kind::InstanceOf, lhs->begin);
                accept("final");
                e->name = type_text();
                if (cur().is("(")) {  // record pattern
                    std::size_t i = pos_;
                    skip_balanced(i, "(", ")");
                    pos_ = i;
                }
                if (cur().is_identifier()) advance();
                e->operands.push_back(std::move(lhs));
                e->end = prev_end();
                lhs = std::move(e);
                continue;
            }
            auto rhs = binary(prec + 1);
            auto e = node(Expr::Kind::Binary, lhs->begin);
            e->op = op;
            e->end = rhs->end;
            e->operands.push_back(std::move(lhs));
            e->operands.push_back(std::move(rhs));
            lhs = std::move(e);
        }
    }

    ExprPtr unary() {
        DepthGuard guard(*this);
        const Token& t = cur();
        if (t.is("+") || t.is("-") || t.is("++") || t.is("--") || t.is("!") || t.is("~")) {
            auto e = node(Expr::Kind::Unary, t.begin);
            e->op = std::string(advance().text);
            e->operands.push_back(unary());
            e->end = e->operands.back()->end;
            return e;
        }
        if (t.is("(") && cast_ahead()) {
            auto e = node(Expr::Kind::Cast, t.begin);
            advance();
            e->name = type_text();
            while (accept("&")) type_text();
            expect(")");
            e->operands.push_back(is_lambda_start() ? lambda() : unary());
            e->end = e->operands.back()->end;
            return e;
        }
        return postfix(primary());
    }

    bool cast_ahead() const {
        std::size_t i = pos_ + 1;
        const bool primitive = is_primitive(at(i));
        if (!skip_type(i)) return false;
        while (at(i).is("&")) {
            ++i;
            if (!skip_type(i)) return false;
        }
        if (!at(i).is(")")) return false;
        const Token& next = at(i + 1);
        if (primitive) return !next.is(".") && !next.is(")") && !next.is(";");
        return next.is_identifier() || next.is_literal() || next.is("(") || next.is("!") || next.is("~") ||
               next.is("this") || next.is("super") || next.is("new") || next.is("switch") ||
               (next.kind == TokenKind::Keyword && is_primitive(next));
    }

    ExprPtr lambda() {
        auto e = node(Expr::Kind::Lambda, cur().begin);
        if (cur().is("(")) {
            std::size_t i = pos_;
            skip_balanced(i, "(", ")");
            pos_ = i;
        } else {
            advance();
        }
        expect("->");
        if (cur().is("{")) {
            e->statements = block();
        } else {
            e->operands.push_back(expression());
        }
        e->end = prev_end();
        return e;
    }

    void arguments(std::vector<ExprPtr>& out) {
        expect("(");
        while (!cur().is(")")) {
            out.push_back(expression());
            if (!accept(",")) break;
        }
        expect(")");
    }

    ExprPtr primary() {
        const Token& t = cur();
        const std::size_t begin = t.begin;
        if (t.is_literal() || (t.is_identifier() && (t.text == "null" || t.text == "true" || t.text == "false"))) {
            auto e = node(Expr::Kind::Literal, begin);
            e->literal_kind = t.kind;
            e->name = std::string(t.text);
            advance();
            e->end = prev_end();
            return e;
        }
        if (t.is("this") || t.is("super")) {
            const std::string word(advance().text);
            if (cur().is("(")) {  // explicit constructor invocation
                auto e = node(Expr::Kind::Call, begin);
                e->name = word;
                arguments(e->args);
                e->end = prev_end();
                return e;
            }
            auto e = node(Expr::Kind::This, begin);
            e->name = word;
            e->end = prev_end();
            return e;
        }
        if (t.is("new")) return creator(nullptr);
        if (t.is("(")) {
            advance();
            auto e = node(Expr::Kind::Paren, begin);
            e->operands.push_back(expression());
            expect(")");
            e->end = prev_end();
            return e;
        }
        if (t.is("switch")) {
            auto e = node(Expr::Kind::Switch, begin);
            advance();
            Statement holder;
            paren_condition(holder);
            switch_body(e->statements, holder);
            e->op = std::to_string(holder.decision_points);
            // condition facts ride along as a synthetic statement
            holder.decision_points = 0;
            e->statements.push_back(std::move(holder));
            e->end = prev_end();
            return e;
        }
        if (is_primitive(t)) {
            auto e = node(Expr::Kind::ClassLiteral, begin);
            e->name = type_text();
            e->end = prev_end();
            return e;
        }
        if (t.is("@")) {  // annotated type in an expression, e.g. a cast target
            annotation();
            return primary();
        }
        // `assert.Equals(...)` is not valid Java but appears in hand-written snippets.
        if (t.is_identifier() || (t.is("assert") && peek(1).is("."))) {
            auto name = std::string(advance().text);
            if (cur().is("(")) {
                auto e = node(Expr::Kind::Call, begin);
                e->name = std::move(name);
                arguments(e->args);
                e->end = prev_end();
                return e;
            }
            auto e = node(Expr::Kind::Name, begin);
            e->name = std::move(name);
            e->end = prev_end();
            return e;
        }
        fail(t, "expected expression");
    }

    ExprPtr creator(ExprPtr outer) {
        const std::size_t begin = outer ? outer->begin : cur().begin;
        expect("new");
        if (cur().is("<")) {
            std::size_t i = pos_;
            skip_type_args(i);
            pos_ = i;
        }
        annotations();
        const std::size_t tb = cur().begin;
        if (is_primitive(cur())) {
            advance();
        } else {
            expect_identifier();
            for (;;) {
                if (cur().is("<")) {
                    std::size_t i = pos_;
                    if (!skip_type_args(i)) fail(cur(), "malformed type arguments");
                    pos_ = i;
                }
                if (cur().is(".") && peek(1).is_identifier()) {
                    advance();
                    advance();
                    continue;
                }
                break;
            }
        }
        std::string type = simple_type_name(slice(tb, prev_end()));
        if (cur().is("[")) {
            auto e = node(Expr::Kind::NewArray, begin);
            e->name = type;
            while (cur().is("[")) {
                advance();
                if (!cur().is("]")) e->operands.push_back(expression());
                expect("]");
            }
            if (cur().is("{")) e->operands.push_back(array_initializer());
            e->end = prev_end();
            return e;
        }
        auto e = node(Expr::Kind::New, begin);
        e->name = type;
        e->receiver = std::move(outer);
        arguments(e->args);
        if (cur().is("{")) anonymous_body();
        e->end = prev_end();
        return e;
    }

    ExprPtr postfix(ExprPtr e) {
        for (;;) {
            if (cur().is(".")) {
                advance();
                if (cur().is("new")) {
                    e = creator(std::move(e));
                    continue;
                }
                if (cur().is("<")) {
                    std::size_t i = pos_;
                    if (!skip_type_args(i)) fail(cur(), "malformed type arguments");
                    pos_ = i;
                }
                if (cur().is("class")) {
                    advance();
                    auto c = node(Expr::Kind::ClassLiteral, e->begin);
                    c->name = slice(e->begin, e->end);
                    c->end = prev_end();
                    e = std::move(c);
                    continue;
                }
                if (cur().is("this") || cur().is("super")) {
                    auto f = node(Expr::Kind::Field, e->begin);
                    f->name = std::string(advance().text);
                    f->receiver = std::move(e);
                    f->end = prev_end();
                    e = std::move(f);
                    continue;
                }
                std::string name(expect_identifier());
                if (cur().is("(")) {
                    auto c = node(Expr::Kind::Call, e->begin);
                    c->name = std::move(name);
                    c->receiver = std::move(e);
                    arguments(c->args);
                    c->end = prev_end();
                    e = std::move(c);
                } else {
                    auto f = node(Expr::Kind::Field, e->begin);
                    f->name = std::move(name);
                    f->receiver = std::move(e);
                    f->end = prev_end();
                    e = std::move(f);
                }
                continue;
            }
            if (cur().is("[")) {
                if (peek(1).is("]")) {  // array type: Foo[].class or Foo[]::new
                    while (cur().is("[") && peek(1).is("]")) {
                        advance();
                        advance();
                    }
                    e->end = prev_end();
                    continue;
                }
                advance();
                auto idx = node(Expr::Kind::Index, e->begin);
                idx->operands.push_back(std::move(e));
                idx->operands.push_back(expression());
                expect("]");
                idx->end = prev_end();
                e = std::move(idx);
                continue;
            }
            if (cur().is("++") || cur().is("--")) {
                auto p = node(Expr::Kind::Postfix, e->begin);
                p->op = std::string(advance().text);
                p->operands.push_back(std::move(e));
                p->end = prev_end();
                e = std::move(p);
                continue;
            }
            if (cur().is("::")) {
                advance();
                auto r = node(Expr::Kind::MethodRef, e->begin);
                if (cur().is("<")) {
                    std::size_t i = pos_;
                    skip_type_args(i);
                    pos_ = i;
                }
                r->name = cur().is("new") ? std::string(advance().text) : std::string(expect_identifier());
                r->receiver = std::move(e);
                r->end = prev_end();
                e = std::move(r);
                continue;
            }
            if (cur().is("<") && e->kind == Expr::Kind::Name && generic_method_ref_ahead()) {
                std::size_t i = pos_;
                skip_type_args(i);
                pos_ = i;
                e->end = prev_end();
                continue;
            }
            return e;
        }
    }

    bool generic_method_ref_ahead() const {
        std::size_t i = pos_;
        if (!skip_type_args(i)) return false;
        return at(i).is("::");
    }

    std::string_view src_;
    std::vector<Token> toks_;
    std::vector<std::size_t> line_starts_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    std::vector<TypeDecl*> type_stack_;
};

}  // namespace

CompilationUnit parse_compilation_unit(std::string_view source) { return Parser(source).compilation_unit(); }

Statement parse_single_statement(std::string_view source) { return Parser(source).single_statement(); }

}  // namespace aaa::java
