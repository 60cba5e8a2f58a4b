#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scg::java {

struct Pos {
    int line = 0;
    int col = 0;
    auto operator<=>(const Pos&) const = default;
};

/// Half-open source range; `end.col` is exclusive.
struct Span {
    Pos begin;
    Pos end;
};

enum class TokenKind { Identifier, Keyword, IntLiteral, FloatLiteral, CharLiteral, StringLiteral, Operator, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    Span span;

    bool is(std::string_view s) const {
        return (kind == TokenKind::Operator || kind == TokenKind::Keyword) && text == s;
    }
    bool isIdentifier() const { return kind == TokenKind::Identifier; }
    bool isLiteral() const {
        return kind == TokenKind::IntLiteral || kind == TokenKind::FloatLiteral || kind == TokenKind::CharLiteral ||
               kind == TokenKind::StringLiteral;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(Pos pos, const std::string& what)
        : std::runtime_error(std::to_string(pos.line + 1) + ":" + std::to_string(pos.col + 1) + ": " + what),
          pos_(pos) {}
    Pos pos() const noexcept { return pos_; }

private:
    Pos pos_;
};

bool isKeyword(std::string_view word);

/// Splits Java source into tokens, dropping whitespace and comments. `>` is
/// always emitted as a single-character token so that nested generic closers
/// need no re-lexing; the parser glues `>` `>` `=` back into shift operators.
std::vector<Token> tokenize(std::string_view source);

}  // namespace scg::java
