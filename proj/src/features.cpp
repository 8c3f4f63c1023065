#include "readmet/features.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include "readmet/errors.hpp"

namespace readmet {

namespace {

const std::unordered_set<std::string_view> kPrimitiveTypes = {
    "byte", "short", "int", "long", "char", "float", "double", "boolean",
};

const std::unordered_set<std::string_view> kBinaryOperators = {
    "+",  "-",  "*",  "/",  "%",  "==", "!=", "<",  ">",  "<=",
    ">=", "&&", "||", "&",  "|",  "^",  "<<", ">>", ">>>",
};

std::string strip_trailing_ws(std::string line) {
    while (!line.empty()) {
        char c = line.back();
        if (c == ' ' || c == '\t' || c == '\r') line.pop_back();
        else break;
    }
    return line;
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

// Per-line [start, end) column intervals (1-based cols) covered by comments.
std::map<int, std::vector<std::pair<int, int>>> comment_spans(
    const std::vector<const Token*>& comments) {
    std::map<int, std::vector<std::pair<int, int>>> spans;
    for (const Token* t : comments) {
        int line = t->line;
        int col = t->col;
        int start = col;
        for (char c : t->text) {
            if (c == '\n') {
                spans[line].emplace_back(start, col);
                ++line;
                col = 1;
                start = 1;
            } else {
                ++col;
            }
        }
        if (col > start) spans[line].emplace_back(start, col);
    }
    return spans;
}

std::string remove_spans(const std::string& line,
                         const std::vector<std::pair<int, int>>& spans) {
    std::string out;
    for (size_t i = 0; i < line.size(); ++i) {
        int col = static_cast<int>(i) + 1;
        bool covered = std::any_of(spans.begin(), spans.end(), [col](const auto& s) {
            return col >= s.first && col < s.second;
        });
        if (!covered) out += line[i];
    }
    return out;
}

bool is_typeish(const Token& t) {
    return t.kind == TokenKind::Identifier ||
           (t.kind == TokenKind::Keyword && kPrimitiveTypes.contains(t.text));
}

bool is_punct(const Token& t, const char* text) {
    return t.kind == TokenKind::Punctuation && t.text == text;
}

bool is_op(const Token& t, const char* text) {
    return t.kind == TokenKind::Operator && t.text == text;
}

// Consumes a balanced generic argument group starting at `<`. Returns the
// index past the group, or kFail if the tokens cannot be a type argument list.
constexpr size_t kFail = static_cast<size_t>(-1);

size_t consume_angle_group(const std::vector<const Token*>& toks, size_t i) {
    int depth = 0;
    size_t limit = std::min(toks.size(), i + 40);
    for (size_t j = i; j < limit; ++j) {
        const Token& t = *toks[j];
        if (is_op(t, "<")) ++depth;
        else if (is_op(t, ">")) depth -= 1;
        else if (is_op(t, ">>")) depth -= 2;
        else if (is_op(t, ">>>")) depth -= 3;
        else if (t.kind == TokenKind::Identifier || t.kind == TokenKind::Stop ||
                 t.kind == TokenKind::OpenBracket || t.kind == TokenKind::CloseBracket ||
                 is_punct(t, ",") || is_op(t, "?") || is_op(t, "&") ||
                 (t.kind == TokenKind::Keyword &&
                  (t.text == "extends" || t.text == "super" || kPrimitiveTypes.contains(t.text)))) {
            // allowed inside a type argument list
        } else {
            return kFail;
        }
        if (depth <= 0) return j + 1;
    }
    return kFail;
}

// Local variable declarations, counting each declarator. Lexical heuristic:
// a type-ish token (optionally with generic args or empty bracket pairs)
// followed by an identifier and one of `= ; , :`.
int count_variable_declarations(const std::vector<const Token*>& toks) {
    int count = 0;
    size_t i = 0;
    while (i < toks.size()) {
        if (!is_typeish(*toks[i])) {
            ++i;
            continue;
        }
        size_t j = i + 1;
        if (j < toks.size() && is_op(*toks[j], "<")) {
            j = consume_angle_group(toks, j);
            if (j == kFail) {
                ++i;
                continue;
            }
        }
        while (j + 1 < toks.size() && toks[j]->kind == TokenKind::OpenBracket &&
               toks[j + 1]->kind == TokenKind::CloseBracket) {
            j += 2;
        }
        if (j + 1 >= toks.size() || toks[j]->kind != TokenKind::Identifier) {
            ++i;
            continue;
        }
        const Token& after = *toks[j + 1];
        if (is_op(after, ":")) {  // enhanced-for variable
            ++count;
            i = j + 2;
            continue;
        }
        if (!is_op(after, "=") && !is_punct(after, ";") && !is_punct(after, ",")) {
            ++i;
            continue;
        }
        ++count;
        int paren = 0, bracket = 0, brace = 0, angle = 0;
        size_t k = j + 1;
        for (; k < toks.size(); ++k) {
            const Token& t = *toks[k];
            if (t.kind == TokenKind::OpenParen) ++paren;
            else if (t.kind == TokenKind::CloseParen) {
                if (--paren < 0) break;  // for-header closing
            } else if (t.kind == TokenKind::OpenBracket) ++bracket;
            else if (t.kind == TokenKind::CloseBracket) --bracket;
            else if (t.kind == TokenKind::OpenBrace) ++brace;
            else if (t.kind == TokenKind::CloseBrace) {
                if (--brace < 0) break;
            } else if (is_op(t, "<")) ++angle;
            else if (is_op(t, ">")) angle = std::max(0, angle - 1);
            else if (is_op(t, ">>")) angle = std::max(0, angle - 2);
            else if (is_op(t, ">>>")) angle = std::max(0, angle - 3);
            else if (paren == 0 && bracket == 0 && brace == 0 && angle == 0) {
                if (is_punct(t, ";") || is_op(t, ":")) break;
                if (is_punct(t, ",")) ++count;
            }
        }
        i = k + 1;
    }
    return count;
}

}  // namespace

Dictionary load_dictionary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open dictionary file: " + path);
    Dictionary words;
    std::string line;
    while (std::getline(in, line)) {
        std::string word;
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c)) != 0) continue;
            word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        if (!word.empty()) words.insert(word);
    }
    return words;
}

bool FeatureVector::has(const std::string& name) const {
    return std::any_of(values.begin(), values.end(),
                       [&](const auto& kv) { return kv.first == name; });
}

double FeatureVector::get(const std::string& name) const {
    for (const auto& [key, value] : values) {
        if (key == name) return value;
    }
    throw InputError("unknown feature: " + name);
}

std::vector<std::string> feature_catalogue(bool with_dictionary) {
    std::vector<std::string> names = {
        "stops_total",
        "avg_stops_per_line",
        "parens_brackets_total",
        "avg_brackets_parens_per_line",
        "identifiers_total",
        "avg_identifiers_per_line",
        "avg_line_length",
        "max_line_length",
        "loc",
        "num_args",
        "max_nesting_depth",
        "num_loops",
        "num_comments",
        "num_comment_lines",
        "num_spaces",
        "num_variable_declarations",
        "num_statements",
        "num_expressions",
    };
    if (with_dictionary) names.push_back("dictionary_word_ratio");
    return names;
}

int max_nesting_depth(const MethodUnit& method) {
    int depth = 0;
    int max_raw = 0;
    for (const Token& t : method.tokens) {
        if (t.kind == TokenKind::OpenBrace) {
            ++depth;
            max_raw = std::max(max_raw, depth);
        } else if (t.kind == TokenKind::CloseBrace) {
            --depth;
        }
    }
    return std::max(0, max_raw - 1);
}

std::vector<std::string> split_identifier(std::string_view identifier) {
    std::vector<std::string> parts;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            for (char& c : cur) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            parts.push_back(cur);
            cur.clear();
        }
    };
    for (size_t i = 0; i < identifier.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(identifier[i]);
        if (c == '_' || c == '$') {
            flush();
            continue;
        }
        if (!cur.empty()) {
            unsigned char prev = static_cast<unsigned char>(cur.back());
            bool lower_to_upper = std::islower(prev) && std::isupper(c);
            bool alpha_digit = (std::isalpha(prev) && std::isdigit(c)) ||
                               (std::isdigit(prev) && std::isalpha(c));
            bool acronym_end = std::isupper(prev) && std::isupper(c) &&
                               i + 1 < identifier.size() &&
                               std::islower(static_cast<unsigned char>(identifier[i + 1]));
            if (lower_to_upper || alpha_digit || acronym_end) flush();
        }
        cur += static_cast<char>(c);
    }
    flush();
    return parts;
}

double dictionary_word_ratio(const MethodUnit& method, const Dictionary& dictionary) {
    if (dictionary.empty()) return 0.0;
    int total = 0;
    int hits = 0;
    for (const Token& t : method.tokens) {
        if (t.kind != TokenKind::Identifier) continue;
        for (const std::string& part : split_identifier(t.text)) {
            ++total;
            if (dictionary.contains(part)) ++hits;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(hits) / total;
}

FeatureVector extract_features(const MethodUnit& method, const FeatureConfig& config,
                               const Dictionary* dictionary) {
    bool drop_signature = !config.include_signature_line && method.line_span() > 1;
    int first_line = drop_signature ? method.first_line + 1 : method.first_line;

    std::vector<const Token*> included;
    for (const Token& t : method.tokens) {
        if (t.line >= first_line) included.push_back(&t);
    }

    // The method's own brace pair never counts toward bracket totals.
    const Token* own_open = nullptr;
    const Token* own_close = nullptr;
    for (const Token& t : method.tokens) {
        if (t.kind == TokenKind::OpenBrace) {
            own_open = &t;
            break;
        }
    }
    for (auto it = method.tokens.rbegin(); it != method.tokens.rend(); ++it) {
        if (it->kind == TokenKind::CloseBrace) {
            own_close = &*it;
            break;
        }
    }

    double stops = 0, brackets = 0, identifiers = 0, loops = 0, comments = 0;
    std::vector<const Token*> comment_tokens;
    std::set<int> code_lines;
    for (const Token* t : included) {
        switch (t->kind) {
            case TokenKind::Stop: stops += 1; break;
            case TokenKind::Identifier: identifiers += 1; break;
            case TokenKind::Keyword:
                if (t->text == "for" || t->text == "while") loops += 1;
                break;
            case TokenKind::Comment:
                comments += 1;
                comment_tokens.push_back(t);
                break;
            default: break;
        }
        if (is_bracket_kind(t->kind) && t != own_open && t != own_close) brackets += 1;
        if (t->kind != TokenKind::Comment) code_lines.insert(t->line);
    }

    auto spans = comment_spans(comment_tokens);
    std::set<int> comment_lines;
    for (const auto& [line, _] : spans) {
        if (line >= first_line && line <= method.last_line) comment_lines.insert(line);
    }

    // Per-line character measurements over the viewed lines.
    int offset = first_line - method.first_line;
    std::vector<double> lengths;
    std::vector<bool> blank;
    double space_total = 0;
    for (size_t idx = static_cast<size_t>(offset); idx < method.raw_lines.size(); ++idx) {
        int abs_line = method.first_line + static_cast<int>(idx);
        std::string text = method.raw_lines[idx];
        if (!config.include_comments_in_char_counts) {
            auto it = spans.find(abs_line);
            if (it != spans.end()) text = remove_spans(text, it->second);
        }
        text = strip_trailing_ws(std::move(text));
        lengths.push_back(static_cast<double>(text.size()));
        blank.push_back(is_blank(text));
        if (code_lines.contains(abs_line)) {
            space_total += static_cast<double>(std::count(text.begin(), text.end(), ' '));
        }
    }

    int line_count = 0;
    double length_sum = 0;
    double max_length = 0;
    for (size_t i = 0; i < lengths.size(); ++i) {
        if (!config.count_blank_lines && blank[i]) continue;
        ++line_count;
        length_sum += lengths[i];
        max_length = std::max(max_length, lengths[i]);
    }
    if (line_count == 0) line_count = 1;

    // Structural counts over the body (between the method's own braces).
    std::vector<const Token*> body;
    bool in_body = false;
    for (const Token& t : method.tokens) {
        if (&t == own_close) break;
        if (in_body && t.kind != TokenKind::Comment) body.push_back(&t);
        if (&t == own_open) in_body = true;
    }
    std::vector<Token> body_tokens;
    body_tokens.reserve(body.size());
    for (const Token* t : body) body_tokens.push_back(*t);
    int statements = statement_count(body_tokens);
    int binary_ops = 0;
    for (const Token* t : body) {
        if (t->kind == TokenKind::Operator && kBinaryOperators.contains(t->text)) ++binary_ops;
    }

    FeatureVector fv;
    fv.method = method.qualified_name;
    fv.line_count = line_count;
    double n = static_cast<double>(line_count);
    fv.values = {
        {"stops_total", stops},
        {"avg_stops_per_line", stops / n},
        {"parens_brackets_total", brackets},
        {"avg_brackets_parens_per_line", brackets / n},
        {"identifiers_total", identifiers},
        {"avg_identifiers_per_line", identifiers / n},
        {"avg_line_length", length_sum / n},
        {"max_line_length", max_length},
        {"loc", n},
        {"num_args", static_cast<double>(method.arg_count)},
        {"max_nesting_depth", static_cast<double>(max_nesting_depth(method))},
        {"num_loops", loops},
        {"num_comments", comments},
        {"num_comment_lines", static_cast<double>(comment_lines.size())},
        {"num_spaces", space_total},
        {"num_variable_declarations", static_cast<double>(count_variable_declarations(body))},
        {"num_statements", static_cast<double>(statements)},
        {"num_expressions", static_cast<double>(statements + binary_ops)},
    };
    if (dictionary != nullptr) {
        fv.values.emplace_back("dictionary_word_ratio",
                               dictionary_word_ratio(method, *dictionary));
    }
    return fv;
}

}  // namespace readmet
