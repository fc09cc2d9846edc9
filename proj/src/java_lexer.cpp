#include "java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "aaa/source_model.hpp"

namespace aaa::java {
namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",      "catch",
    "char",     "class",      "const",     "continue",  "default",   "do",        "double",
    "else",     "enum",       "extends",   "final",     "finally",   "float",     "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",      "interface",
    "long",     "native",     "new",       "package",   "private",   "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",      "volatile",
    "while",
};

// Longest-first so that the first prefix hit is the maximal munch.
constexpr std::array<std::string_view, 37> kPuncts = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=",
    "*=",  "/=",  "&=", "|=", "^=", "%=", "<<", "(",  ")",  "{",  "}",  "[",  "]",
    ";",   ",",   ".",  "@",  "=",  ">",  "<",  "!",  "~",  "?",  ":",
};

constexpr std::string_view kSingleOps = "+-*/&|^%";

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (pos_ >= src_.size()) {
                Token eof;
                eof.kind = TokenKind::EndOfFile;
                eof.begin = eof.end = src_.size();
                eof.line = line_;
                eof.column = col_;
                out.push_back(eof);
                return out;
            }
            out.push_back(next());
        }
    }

   private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                const int line = line_;
                const int col = col_;
                advance(2);
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos_ >= src_.size()) throw ParseError(line, col, "unterminated block comment");
                advance(2);
            } else if (static_cast<unsigned char>(c) == 0xEF && peek(1) == '\xBB' && peek(2) == '\xBF') {
                advance(3);  // BOM
            } else {
                return;
            }
        }
    }

    Token make(TokenKind kind, std::size_t begin, int line, int col) const {
        Token t;
        t.kind = kind;
        t.begin = begin;
        t.end = pos_;
        t.text = src_.substr(begin, pos_ - begin);
        t.line = line;
        t.column = col;
        return t;
    }

    Token next() {
        const std::size_t begin = pos_;
        const int line = line_;
        const int col = col_;
        const auto c = static_cast<unsigned char>(peek());

        if (ident_start(c)) {
            while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(peek()))) advance();
            Token t = make(TokenKind::Identifier, begin, line, col);
            if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
            return t;
        }
        if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            return number(begin, line, col);
        }
        if (c == '"') {
            if (peek(1) == '"' && peek(2) == '"') return text_block(begin, line, col);
            return quoted('"', TokenKind::StringLiteral, begin, line, col);
        }
        if (c == '\'') return quoted('\'', TokenKind::CharLiteral, begin, line, col);

        for (std::string_view p : kPuncts) {
            if (src_.substr(pos_, p.size()) == p) {
                advance(p.size());
                return make(TokenKind::Punct, begin, line, col);
            }
        }
        if (kSingleOps.find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            return make(TokenKind::Punct, begin, line, col);
        }
        throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }

    Token number(std::size_t begin, int line, int col) {
        bool is_float = false;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'b' || peek(1) == 'B')) {
            advance(2);
            while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
        } else {
            while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                is_float = true;
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            } else if (peek() == '.' && peek(1) != '.' && !ident_start(static_cast<unsigned char>(peek(1)))) {
                // `1.` is a valid double literal
                is_float = true;
                advance();
            }
            if (peek() == 'e' || peek() == 'E') {
                is_float = true;
                advance();
                if (peek() == '+' || peek() == '-') advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
        }
        const char s = peek();
        if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
            is_float = true;
            advance();
        } else if (s == 'l' || s == 'L') {
            advance();
        }
        return make(is_float ? TokenKind::FloatLiteral : TokenKind::IntegerLiteral, begin, line, col);
    }

    Token quoted(char quote, TokenKind kind, std::size_t begin, int line, int col) {
        advance();
        while (pos_ < src_.size() && peek() != quote) {
            if (peek() == '\n') break;
            if (peek() == '\\') advance();
            advance();
        }
        if (peek() != quote) {
            throw ParseError(line, col, kind == TokenKind::CharLiteral ? "unterminated char literal"
                                                                       : "unterminated string literal");
        }
        advance();
        return make(kind, begin, line, col);
    }

    Token text_block(std::size_t begin, int line, int col) {
        advance(3);
        while (pos_ < src_.size() && !(peek() == '"' && peek(1) == '"' && peek(2) == '"')) {
            if (peek() == '\\') advance();
            advance();
        }
        if (pos_ >= src_.size()) throw ParseError(line, col, "unterminated text block");
        advance(3);
        return make(TokenKind::TextBlock, begin, line, col);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace aaa::java
