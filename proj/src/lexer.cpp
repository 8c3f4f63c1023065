#include "readmet/lexer.hpp"

#include <array>
#include <cctype>
#include <string_view>
#include <unordered_set>

namespace readmet {

namespace {

// Java 8 reserved words plus the literal-like words treated as keywords here.
const std::unordered_set<std::string_view> kKeywords = {
    "abstract", "assert",   "boolean",    "break",      "byte",     "case",
    "catch",    "char",     "class",      "const",      "continue", "default",
    "do",       "double",   "else",       "enum",       "extends",  "final",
    "finally",  "float",    "for",        "goto",       "if",       "implements",
    "import",   "instanceof", "int",      "interface",  "long",     "native",
    "new",      "package",  "private",    "protected",  "public",   "return",
    "short",    "static",   "strictfp",   "super",      "switch",   "synchronized",
    "this",     "throw",    "throws",     "transient",  "try",      "void",
    "volatile", "while",    "null",       "true",       "false",
};

// Longest-match first; single chars handled after these.
const std::array<std::string_view, 24> kMultiCharOperators = {
    ">>>=", ">>=", "<<=", ">>>", "->", "::", "==", "!=", "<=", ">=",
    "&&",   "||",  "++",  "--",  "+=", "-=", "*=", "/=", "%=", "&=",
    "|=",   "^=",  "<<",  ">>",
};

constexpr std::string_view kSingleCharOperators = "+-*/%=<>!&|^~?:";

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) != 0 || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
    return is_ident_start(c) || std::isdigit(c) != 0;
}

bool is_digit(unsigned char c) { return std::isdigit(c) != 0; }

bool is_hex_digit(unsigned char c) { return std::isxdigit(c) != 0; }

// True when the previous token can end an expression, which makes a following
// `.` a member access even if a digit comes next (`foo(1).x` style input).
bool ends_expression(const Token* prev) {
    if (prev == nullptr) return false;
    switch (prev->kind) {
        case TokenKind::Identifier:
        case TokenKind::CloseParen:
        case TokenKind::CloseBracket:
        case TokenKind::IntLiteral:
        case TokenKind::FloatLiteral:
        case TokenKind::StringLiteral:
        case TokenKind::CharLiteral:
            return true;
        case TokenKind::Keyword:
            return prev->text == "this" || prev->text == "super" || prev->text == "class";
        default:
            return false;
    }
}

class Lexer {
  public:
    explicit Lexer(std::string_view source) : src_(source) {}

    TokenStream run() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                gap_ += c;
                advance(1);
                continue;
            }
            lex_token();
        }
        stream_.gaps.push_back(gap_);
        return std::move(stream_);
    }

  private:
    void lex_token() {
        char c = src_[pos_];
        if (c == '/' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == '/' || src_[pos_ + 1] == '*')) {
            lex_comment();
        } else if (c == '"') {
            lex_string();
        } else if (c == '\'') {
            lex_char();
        } else if (c == '@') {
            lex_annotation();
        } else if (is_digit(c)) {
            lex_number();
        } else if (c == '.') {
            lex_dot();
        } else if (is_ident_start(c)) {
            lex_word();
        } else if (c == '(') {
            emit(TokenKind::OpenParen, 1);
        } else if (c == ')') {
            emit(TokenKind::CloseParen, 1);
        } else if (c == '{') {
            emit(TokenKind::OpenBrace, 1);
        } else if (c == '}') {
            emit(TokenKind::CloseBrace, 1);
        } else if (c == '[') {
            emit(TokenKind::OpenBracket, 1);
        } else if (c == ']') {
            emit(TokenKind::CloseBracket, 1);
        } else if (c == ';' || c == ',') {
            emit(TokenKind::Punctuation, 1);
        } else {
            lex_operator_or_other();
        }
    }

    void lex_comment() {
        size_t start = pos_;
        if (src_[pos_ + 1] == '/') {
            size_t end = src_.find('\n', pos_);
            if (end == std::string_view::npos) end = src_.size();
            emit(TokenKind::Comment, end - start);
            return;
        }
        size_t end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) {
            diagnose("unterminated block comment");
            emit(TokenKind::Comment, src_.size() - start);
        } else {
            emit(TokenKind::Comment, end + 2 - start);
        }
    }

    void lex_string() {
        size_t i = pos_ + 1;
        while (i < src_.size()) {
            if (src_[i] == '\\' && i + 1 < src_.size()) {
                i += 2;
                continue;
            }
            if (src_[i] == '"') {
                emit(TokenKind::StringLiteral, i + 1 - pos_);
                return;
            }
            ++i;
        }
        diagnose("unterminated string literal");
        emit(TokenKind::StringLiteral, src_.size() - pos_);
    }

    void lex_char() {
        size_t i = pos_ + 1;
        while (i < src_.size()) {
            if (src_[i] == '\\' && i + 1 < src_.size()) {
                i += 2;
                continue;
            }
            if (src_[i] == '\'') {
                emit(TokenKind::CharLiteral, i + 1 - pos_);
                return;
            }
            if (src_[i] == '\n') break;  // a char literal never spans lines
            ++i;
        }
        diagnose("unterminated char literal");
        size_t end = src_.find('\n', pos_);
        if (end == std::string_view::npos) end = src_.size();
        emit(TokenKind::CharLiteral, end - pos_);
    }

    void lex_annotation() {
        size_t i = pos_ + 1;
        if (i < src_.size() && is_ident_start(static_cast<unsigned char>(src_[i]))) {
            while (i < src_.size() && is_ident_char(static_cast<unsigned char>(src_[i]))) ++i;
            emit(TokenKind::Annotation, i - pos_);
        } else {
            emit(TokenKind::Punctuation, 1);
        }
    }

    void lex_number() {
        size_t i = pos_;
        bool is_float = false;
        if (src_[i] == '0' && i + 1 < src_.size() && (src_[i + 1] == 'x' || src_[i + 1] == 'X')) {
            i += 2;
            while (i < src_.size() && (is_hex_digit(src_[i]) || src_[i] == '_')) ++i;
            if (i < src_.size() && src_[i] == '.') {
                is_float = true;
                ++i;
                while (i < src_.size() && (is_hex_digit(src_[i]) || src_[i] == '_')) ++i;
            }
            if (i < src_.size() && (src_[i] == 'p' || src_[i] == 'P')) {
                is_float = true;
                ++i;
                if (i < src_.size() && (src_[i] == '+' || src_[i] == '-')) ++i;
                while (i < src_.size() && is_digit(src_[i])) ++i;
            }
        } else if (src_[i] == '0' && i + 1 < src_.size() && (src_[i + 1] == 'b' || src_[i + 1] == 'B')) {
            i += 2;
            while (i < src_.size() && (src_[i] == '0' || src_[i] == '1' || src_[i] == '_')) ++i;
        } else {
            while (i < src_.size() && (is_digit(src_[i]) || src_[i] == '_')) ++i;
            if (i < src_.size() && src_[i] == '.' &&
                !(i + 1 < src_.size() && src_[i + 1] == '.')) {
                is_float = true;
                ++i;
                while (i < src_.size() && (is_digit(src_[i]) || src_[i] == '_')) ++i;
            }
            if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
                size_t exp = i + 1;
                if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
                if (exp < src_.size() && is_digit(src_[exp])) {
                    is_float = true;
                    i = exp;
                    while (i < src_.size() && is_digit(src_[i])) ++i;
                }
            }
        }
        if (i < src_.size()) {
            char s = src_[i];
            if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
                is_float = true;
                ++i;
            } else if (s == 'l' || s == 'L') {
                ++i;
            }
        }
        emit(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, i - pos_);
    }

    void lex_dot() {
        if (pos_ + 2 < src_.size() && src_[pos_ + 1] == '.' && src_[pos_ + 2] == '.') {
            emit(TokenKind::Punctuation, 3);  // varargs ellipsis, not a stop
            return;
        }
        const Token* prev = stream_.tokens.empty() ? nullptr : &stream_.tokens.back();
        if (pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]) && !ends_expression(prev)) {
            size_t i = pos_ + 1;
            while (i < src_.size() && (is_digit(src_[i]) || src_[i] == '_')) ++i;
            if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
                size_t exp = i + 1;
                if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
                if (exp < src_.size() && is_digit(src_[exp])) {
                    i = exp;
                    while (i < src_.size() && is_digit(src_[i])) ++i;
                }
            }
            if (i < src_.size() && (src_[i] == 'f' || src_[i] == 'F' || src_[i] == 'd' ||
                                    src_[i] == 'D')) {
                ++i;
            }
            emit(TokenKind::FloatLiteral, i - pos_);
            return;
        }
        emit(TokenKind::Stop, 1);
    }

    void lex_word() {
        size_t i = pos_;
        while (i < src_.size() && is_ident_char(static_cast<unsigned char>(src_[i]))) ++i;
        std::string_view word = src_.substr(pos_, i - pos_);
        emit(kKeywords.contains(word) ? TokenKind::Keyword : TokenKind::Identifier, i - pos_);
    }

    void lex_operator_or_other() {
        std::string_view rest = src_.substr(pos_);
        for (std::string_view op : kMultiCharOperators) {
            if (rest.starts_with(op)) {
                emit(TokenKind::Operator, op.size());
                return;
            }
        }
        if (kSingleCharOperators.find(src_[pos_]) != std::string_view::npos) {
            emit(TokenKind::Operator, 1);
        } else {
            emit(TokenKind::Punctuation, 1);  // lossless catch-all for stray bytes
        }
    }

    void emit(TokenKind kind, size_t length) {
        stream_.gaps.push_back(gap_);
        gap_.clear();
        stream_.tokens.push_back(
            Token{kind, std::string(src_.substr(pos_, length)), line_, col_});
        advance(length);
    }

    void advance(size_t count) {
        for (size_t i = 0; i < count && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void diagnose(std::string message) {
        stream_.diagnostics.push_back(Diagnostic{line_, std::move(message)});
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::string gap_;
    TokenStream stream_;
};

}  // namespace

TokenStream tokenize(std::string_view source) { return Lexer(source).run(); }

bool is_java_keyword(std::string_view word) { return kKeywords.contains(word); }

std::string reconstruct(const TokenStream& stream) {
    std::string out;
    for (size_t i = 0; i < stream.tokens.size(); ++i) {
        out += stream.gaps[i];
        out += stream.tokens[i].text;
    }
    if (!stream.gaps.empty()) out += stream.gaps.back();
    return out;
}

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Identifier: return "Identifier";
        case TokenKind::IntLiteral: return "IntLiteral";
        case TokenKind::FloatLiteral: return "FloatLiteral";
        case TokenKind::StringLiteral: return "StringLiteral";
        case TokenKind::CharLiteral: return "CharLiteral";
        case TokenKind::Operator: return "Operator";
        case TokenKind::Punctuation: return "Punctuation";
        case TokenKind::Stop: return "Stop";
        case TokenKind::OpenParen: return "OpenParen";
        case TokenKind::CloseParen: return "CloseParen";
        case TokenKind::OpenBrace: return "OpenBrace";
        case TokenKind::CloseBrace: return "CloseBrace";
        case TokenKind::OpenBracket: return "OpenBracket";
        case TokenKind::CloseBracket: return "CloseBracket";
        case TokenKind::Comment: return "Comment";
        case TokenKind::Annotation: return "Annotation";
    }
    return "Unknown";
}

}  // namespace readmet
