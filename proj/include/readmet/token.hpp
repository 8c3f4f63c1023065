#pragma once

#include <string>
#include <vector>

namespace readmet {

// Lexical classes for Java-style source. Stop is a member-access period;
// periods inside numeric/string/char literals or comments never produce one.
enum class TokenKind {
    Keyword,
    Identifier,
    IntLiteral,
    FloatLiteral,
    StringLiteral,
    CharLiteral,
    Operator,
    Punctuation,
    Stop,
    OpenParen,
    CloseParen,
    OpenBrace,
    CloseBrace,
    OpenBracket,
    CloseBracket,
    Comment,
    Annotation,
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::Punctuation;
    std::string text;
    int line = 1;  // 1-based; a tab advances the column by one
    int col = 1;

    bool operator==(const Token&) const = default;
};

struct Diagnostic {
    int line = 0;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

// Tokens plus the verbatim whitespace between them. gaps.size() is always
// tokens.size() + 1: gaps[i] precedes tokens[i], gaps.back() trails the file.
struct TokenStream {
    std::vector<Token> tokens;
    std::vector<std::string> gaps;
    std::vector<Diagnostic> diagnostics;
};

// Concatenates gaps and token texts; equals the lexed source byte-for-byte.
std::string reconstruct(const TokenStream& stream);

inline bool is_bracket_kind(TokenKind kind) {
    switch (kind) {
        case TokenKind::OpenParen:
        case TokenKind::CloseParen:
        case TokenKind::OpenBrace:
        case TokenKind::CloseBrace:
        case TokenKind::OpenBracket:
        case TokenKind::CloseBracket:
            return true;
        default:
            return false;
    }
}

}  // namespace readmet
