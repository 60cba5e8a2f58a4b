#include "scg/java/lexer.hpp"

#include <algorithm>
#include <array>

namespace scg::java {

namespace {

constexpr std::string_view kKeywords[] = {
    "abstract", "assert",     "boolean",   "break",      "byte",      "case",         "catch",    "char",
    "class",    "const",      "continue",  "default",    "do",        "double",       "else",     "enum",
    "extends",  "final",      "finally",   "float",      "for",       "goto",         "if",       "implements",
    "import",   "instanceof", "int",       "interface",  "long",      "native",       "new",      "package",
    "private",  "protected",  "public",    "return",     "short",     "static",       "strictfp", "super",
    "switch",   "synchronized", "this",    "throw",      "throws",    "transient",    "try",      "void",
    "volatile", "while",      "true",      "false",      "null",
};

// Longest first within each leading character.
constexpr std::string_view kOperators[] = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=", "*=", "/=", "&=", "|=", "^=",
    "%=",  "<<",  "(",  ")",  "{",  "}",  "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",  "!",  "~",  "?",  ":",
};

constexpr std::string_view kSingleOperators = "+-*/&|^%>";

bool identStart(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool identPart(unsigned char c) { return identStart(c) || (c >= '0' && c <= '9'); }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skipTrivia();
            Token t;
            t.span.begin = pos();
            if (i_ >= src_.size()) {
                t.kind = TokenKind::End;
                t.span.end = pos();
                out.push_back(std::move(t));
                return out;
            }
            lexOne(t);
            t.span.end = pos();
            out.push_back(std::move(t));
        }
    }

private:
    Pos pos() const { return {line_, static_cast<int>(i_ - lineStart_)}; }

    char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            lineStart_ = i_ + 1;
        }
        ++i_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos(), what); }

    void skipTrivia() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (i_ < src_.size() && src_[i_] != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                advance();
                advance();
                while (i_ < src_.size() && !(src_[i_] == '*' && peek(1) == '/')) advance();
                if (i_ >= src_.size()) fail("unterminated comment");
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    void lexOne(Token& t) {
        const auto start = i_;
        const auto c = static_cast<unsigned char>(src_[i_]);
        if (identStart(c)) {
            while (i_ < src_.size() && identPart(static_cast<unsigned char>(src_[i_]))) advance();
            t.text = std::string(src_.substr(start, i_ - start));
            t.kind = isKeyword(t.text) ? TokenKind::Keyword : TokenKind::Identifier;
            return;
        }
        if ((c >= '0' && c <= '9') || (c == '.' && peek(1) >= '0' && peek(1) <= '9')) {
            lexNumber(t);
            t.text = std::string(src_.substr(start, i_ - start));
            return;
        }
        if (c == '"') {
            if (peek(1) == '"' && peek(2) == '"') {
                lexTextBlock();
            } else {
                lexQuoted('"');
            }
            t.kind = TokenKind::StringLiteral;
            t.text = std::string(src_.substr(start, i_ - start));
            return;
        }
        if (c == '\'') {
            lexQuoted('\'');
            t.kind = TokenKind::CharLiteral;
            t.text = std::string(src_.substr(start, i_ - start));
            return;
        }
        t.kind = TokenKind::Operator;
        auto rest = src_.substr(i_);
        for (auto op : kOperators) {
            if (rest.starts_with(op)) {
                for (std::size_t k = 0; k < op.size(); ++k) advance();
                t.text = std::string(op);
                return;
            }
        }
        if (kSingleOperators.find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            t.text = std::string(1, static_cast<char>(c));
            return;
        }
        fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
    }

    void lexNumber(Token& t) {
        t.kind = TokenKind::IntLiteral;
        auto digitsOf = [&](auto pred) {
            while (i_ < src_.size() && (pred(src_[i_]) || src_[i_] == '_')) advance();
        };
        auto dec = [](char ch) { return ch >= '0' && ch <= '9'; };
        auto hex = [](char ch) {
            return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f') || (ch >= 'A' && ch <= 'F');
        };
        if (src_[i_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance();
            advance();
            digitsOf(hex);
            if (peek() == '.') {
                t.kind = TokenKind::FloatLiteral;
                advance();
                digitsOf(hex);
            }
            if (peek() == 'p' || peek() == 'P') {
                t.kind = TokenKind::FloatLiteral;
                advance();
                if (peek() == '+' || peek() == '-') advance();
                digitsOf(dec);
            }
        } else if (src_[i_] == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            advance();
            advance();
            digitsOf([](char ch) { return ch == '0' || ch == '1'; });
        } else {
            digitsOf(dec);
            if (peek() == '.' && peek(1) >= '0' && peek(1) <= '9') {
                t.kind = TokenKind::FloatLiteral;
                advance();
                digitsOf(dec);
            } else if (peek() == '.' && !identStart(static_cast<unsigned char>(peek(1))) && peek(1) != '.') {
                // `1.` is a double literal; `1.foo` is not valid Java anyway.
                t.kind = TokenKind::FloatLiteral;
                advance();
            }
            if (peek() == 'e' || peek() == 'E') {
                t.kind = TokenKind::FloatLiteral;
                advance();
                if (peek() == '+' || peek() == '-') advance();
                digitsOf(dec);
            }
        }
        char suffix = peek();
        if (suffix == 'l' || suffix == 'L') {
            advance();
        } else if (suffix == 'f' || suffix == 'F' || suffix == 'd' || suffix == 'D') {
            t.kind = TokenKind::FloatLiteral;
            advance();
        }
    }

    void lexQuoted(char quote) {
        advance();
        while (i_ < src_.size() && src_[i_] != quote) {
            if (src_[i_] == '\n') fail("unterminated literal");
            if (src_[i_] == '\\') advance();
            if (i_ < src_.size()) advance();
        }
        if (i_ >= src_.size()) fail("unterminated literal");
        advance();
    }

    void lexTextBlock() {
        for (int k = 0; k < 3; ++k) advance();
        while (i_ < src_.size() && !(src_[i_] == '"' && peek(1) == '"' && peek(2) == '"')) {
            if (src_[i_] == '\\') advance();
            if (i_ < src_.size()) advance();
        }
        if (i_ >= src_.size()) fail("unterminated text block");
        for (int k = 0; k < 3; ++k) advance();
    }

    std::string_view src_;
    std::size_t i_ = 0;
    std::size_t lineStart_ = 0;
    int line_ = 0;
};

}  // namespace

bool isKeyword(std::string_view word) {
    return std::find(std::begin(kKeywords), std::end(kKeywords), word) != std::end(kKeywords);
}

std::vector<Token> tokenize(std::string_view source) {
    // A UTF-8 byte order mark is not part of the program text.
    if (source.starts_with("\xEF\xBB\xBF")) {
        auto tokens = Lexer(source.substr(3)).run();
        for (auto& t : tokens) {
            if (t.span.begin.line == 0) t.span.begin.col += 3;
            if (t.span.end.line == 0) t.span.end.col += 3;
        }
        return tokens;
    }
    return Lexer(source).run();
}

}  // namespace scg::java
