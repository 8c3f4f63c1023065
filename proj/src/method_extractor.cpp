#include "readmet/method_model.hpp"

#include <cstddef>
#include <optional>

#include "readmet/lexer.hpp"

namespace readmet {

namespace {

constexpr size_t kNone = static_cast<size_t>(-1);

std::vector<std::string> split_lines(std::string_view source) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= source.size()) {
        size_t end = source.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < source.size()) lines.emplace_back(source.substr(start));
            break;
        }
        lines.emplace_back(source.substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty()) lines.emplace_back("");
    return lines;
}

size_t next_non_comment(const std::vector<Token>& toks, size_t i) {
    while (i < toks.size() && toks[i].kind == TokenKind::Comment) ++i;
    return i;
}

size_t prev_non_comment(const std::vector<Token>& toks, size_t i) {
    while (i != kNone && i > 0) {
        --i;
        if (toks[i].kind != TokenKind::Comment) return i;
    }
    return kNone;
}

// Index of the token closing the pair opened at `open`, or kNone.
size_t find_match(const std::vector<Token>& toks, size_t open, TokenKind open_kind,
                  TokenKind close_kind) {
    int depth = 0;
    for (size_t i = open; i < toks.size(); ++i) {
        if (toks[i].kind == open_kind) ++depth;
        else if (toks[i].kind == close_kind && --depth == 0) return i;
    }
    return kNone;
}

// Parameter count inside one signature's parens. Commas inside nested parens,
// brackets, or generic angle groups do not separate parameters.
int count_args(const std::vector<Token>& toks, size_t open_paren, size_t close_paren) {
    int paren = 0, bracket = 0, angle = 0, commas = 0;
    bool any = false;
    for (size_t i = open_paren + 1; i < close_paren; ++i) {
        const Token& t = toks[i];
        if (t.kind == TokenKind::Comment) continue;
        any = true;
        switch (t.kind) {
            case TokenKind::OpenParen: ++paren; break;
            case TokenKind::CloseParen: --paren; break;
            case TokenKind::OpenBracket: ++bracket; break;
            case TokenKind::CloseBracket: --bracket; break;
            case TokenKind::Operator:
                if (t.text == "<") ++angle;
                else if (t.text == ">") angle -= 1;
                else if (t.text == ">>") angle -= 2;
                else if (t.text == ">>>") angle -= 3;
                if (angle < 0) angle = 0;
                break;
            case TokenKind::Punctuation:
                if (t.text == "," && paren == 0 && bracket == 0 && angle == 0) ++commas;
                break;
            default: break;
        }
    }
    return any ? commas + 1 : 0;
}

bool back_walk_accepts(const Token& t) {
    switch (t.kind) {
        case TokenKind::Keyword:
        case TokenKind::Identifier:
        case TokenKind::OpenBracket:
        case TokenKind::CloseBracket:
        case TokenKind::Stop:
            return true;
        case TokenKind::Operator:
            return t.text == "<" || t.text == ">" || t.text == ">>" || t.text == ">>>" ||
                   t.text == "?" || t.text == "&";
        case TokenKind::Punctuation:
            return t.text == ",";
        default:
            return false;
    }
}

class Extractor {
  public:
    Extractor(std::string_view source, std::string path)
        : lines_(split_lines(source)), path_(std::move(path)) {
        TokenStream stream = tokenize(source);
        toks_ = std::move(stream.tokens);
        unit_.diagnostics = std::move(stream.diagnostics);
        unit_.path = path_;
    }

    SourceUnit run() {
        size_t i = 0;
        while (i < toks_.size()) {
            const Token& t = toks_[i];
            if (t.kind == TokenKind::Keyword &&
                (t.text == "class" || t.text == "interface" || t.text == "enum")) {
                i = enter_class(i);
            } else if (t.kind == TokenKind::Identifier && is_candidate(i)) {
                i = try_method(i);
            } else if (t.kind == TokenKind::OpenBrace) {
                i = skip_block(i);
            } else if (t.kind == TokenKind::CloseBrace) {
                if (!class_stack_.empty()) class_stack_.pop_back();
                ++i;
            } else {
                ++i;
            }
        }
        return std::move(unit_);
    }

  private:
    bool is_candidate(size_t i) {
        size_t open = next_non_comment(toks_, i + 1);
        if (open >= toks_.size() || toks_[open].kind != TokenKind::OpenParen) return false;
        size_t prev = prev_non_comment(toks_, i);
        if (prev != kNone) {
            const Token& p = toks_[prev];
            if (p.kind == TokenKind::Stop) return false;  // part of a call chain
            if (p.kind == TokenKind::Keyword && p.text == "new") return false;
        }
        return true;
    }

    size_t enter_class(size_t i) {
        std::string name;
        size_t j = i + 1;
        while (j < toks_.size()) {
            const Token& t = toks_[j];
            if (name.empty() && t.kind == TokenKind::Identifier) name = t.text;
            if (t.kind == TokenKind::OpenBrace) {
                class_stack_.push_back(name.empty() ? "<anon>" : name);
                unit_.class_names.push_back(qualified(""));
                return j + 1;
            }
            if (t.kind == TokenKind::Punctuation && t.text == ";") return j + 1;
            ++j;
        }
        return j;
    }

    // i points at the candidate name. Returns the resume index.
    size_t try_method(size_t i) {
        size_t open_paren = next_non_comment(toks_, i + 1);
        size_t close_paren = find_match(toks_, open_paren, TokenKind::OpenParen,
                                        TokenKind::CloseParen);
        if (close_paren == kNone) return i + 1;

        size_t j = next_non_comment(toks_, close_paren + 1);
        if (j < toks_.size() && toks_[j].kind == TokenKind::Keyword && toks_[j].text == "throws") {
            ++j;
            while (j < toks_.size()) {
                const Token& t = toks_[j];
                if (t.kind == TokenKind::Comment || t.kind == TokenKind::Identifier ||
                    t.kind == TokenKind::Stop ||
                    (t.kind == TokenKind::Punctuation && t.text == ",")) {
                    ++j;
                } else {
                    break;
                }
            }
        }
        if (j >= toks_.size() || toks_[j].kind != TokenKind::OpenBrace) return i + 1;

        size_t close_brace = find_match(toks_, j, TokenKind::OpenBrace, TokenKind::CloseBrace);
        if (close_brace == kNone) {
            unit_.diagnostics.push_back(Diagnostic{
                toks_[j].line, "unbalanced braces: dropped method '" + toks_[i].text +
                                   "' (open brace at line " + std::to_string(toks_[j].line) +
                                   ")"});
            return toks_.size();
        }

        // Declaration start: walk back over modifiers and the return type,
        // skipping comments; annotations and earlier members stay outside.
        size_t start = i;
        size_t k = i;
        while (k > 0) {
            --k;
            if (toks_[k].kind == TokenKind::Comment) continue;
            if (!back_walk_accepts(toks_[k])) break;
            start = k;
        }

        MethodUnit m;
        m.name = toks_[i].text;
        m.arg_count = count_args(toks_, open_paren, close_paren);
        m.qualified_name = qualified(m.name) + "/" + std::to_string(m.arg_count);
        m.signature_line = toks_[start].line;
        m.first_line = m.signature_line;
        m.last_line = toks_[close_brace].line;
        m.tokens.assign(toks_.begin() + static_cast<std::ptrdiff_t>(start),
                        toks_.begin() + static_cast<std::ptrdiff_t>(close_brace) + 1);
        for (int ln = m.first_line; ln <= m.last_line; ++ln) {
            m.raw_lines.push_back(ln - 1 < static_cast<int>(lines_.size()) ? lines_[ln - 1]
                                                                           : std::string());
        }
        unit_.methods.push_back(std::move(m));
        return close_brace + 1;
    }

    size_t skip_block(size_t open) {
        size_t close = find_match(toks_, open, TokenKind::OpenBrace, TokenKind::CloseBrace);
        if (close == kNone) {
            unit_.diagnostics.push_back(Diagnostic{
                toks_[open].line, "unbalanced braces (open brace at line " +
                                      std::to_string(toks_[open].line) + ")"});
            return toks_.size();
        }
        return close + 1;
    }

    std::string qualified(const std::string& leaf) const {
        std::string out;
        for (const std::string& c : class_stack_) {
            out += c;
            out += '.';
        }
        if (leaf.empty() && !out.empty()) out.pop_back();
        return leaf.empty() ? out : out + leaf;
    }

    std::vector<Token> toks_;
    std::vector<std::string> lines_;
    std::string path_;
    std::vector<std::string> class_stack_;
    SourceUnit unit_;
};

}  // namespace

SourceUnit extract_methods(std::string_view source, std::string path) {
    return Extractor(source, std::move(path)).run();
}

int statement_count(std::span<const Token> tokens) {
    std::vector<bool> in_for_header(tokens.size(), false);
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].kind != TokenKind::Keyword || tokens[i].text != "for") continue;
        size_t p = i + 1;
        while (p < tokens.size() && tokens[p].kind == TokenKind::Comment) ++p;
        if (p >= tokens.size() || tokens[p].kind != TokenKind::OpenParen) continue;
        int depth = 0;
        for (size_t k = p; k < tokens.size(); ++k) {
            if (tokens[k].kind == TokenKind::OpenParen) ++depth;
            else if (tokens[k].kind == TokenKind::CloseParen && --depth == 0) break;
            in_for_header[k] = true;
        }
    }
    int count = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].kind == TokenKind::Punctuation && tokens[i].text == ";" &&
            !in_for_header[i]) {
            ++count;
        }
    }
    return count;
}

FilteredSource filter_methods(const SourceUnit& source, const FilterConfig& config) {
    FilteredSource out;
    out.unit.path = source.path;
    out.unit.class_names = source.class_names;
    out.unit.diagnostics = source.diagnostics;
    for (const MethodUnit& m : source.methods) {
        if (m.line_span() > config.max_lines) {
            out.excluded.push_back(Exclusion{m.qualified_name, "line-limit"});
        } else if (config.exclude_single_statement && statement_count(m.tokens) == 1) {
            out.excluded.push_back(Exclusion{m.qualified_name, "single-statement"});
        } else {
            out.unit.methods.push_back(m);
        }
    }
    return out;
}

}  // namespace readmet
