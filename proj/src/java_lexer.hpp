#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace aaa::java {

enum class TokenKind {
    Identifier,
    Keyword,
    IntegerLiteral,
    FloatLiteral,
    CharLiteral,
    StringLiteral,
    TextBlock,
    Punct,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string_view text;
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;

    bool is(std::string_view s) const {
        return (kind == TokenKind::Punct || kind == TokenKind::Keyword) && text == s;
    }
    bool is_identifier() const { return kind == TokenKind::Identifier; }
    bool is_literal() const {
        return kind == TokenKind::IntegerLiteral || kind == TokenKind::FloatLiteral ||
               kind == TokenKind::CharLiteral || kind == TokenKind::StringLiteral ||
               kind == TokenKind::TextBlock;
    }
};

// Splits Java source into tokens. Comments and whitespace are dropped; every
// token keeps its byte offsets into the original text so callers can slice
// verbatim source back out.
//
// `>` is always emitted as a single-character token so that nested generic
// closers (`List<List<T>>`) need no re-lexing; the expression parser glues
// adjacent `>` tokens back into shift and comparison operators.
//
// Throws ParseError on unterminated comments, strings or char literals.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

}  // namespace aaa::java
