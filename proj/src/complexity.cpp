#include "readmet/complexity.hpp"

#include <cmath>
#include <unordered_map>

namespace readmet {

namespace {

// A `?` opens a ternary unless the next token marks a generics wildcard.
bool is_wildcard_context(const std::vector<Token>& toks, size_t i) {
    for (size_t j = i + 1; j < toks.size(); ++j) {
        const Token& t = toks[j];
        if (t.kind == TokenKind::Comment) continue;
        if (t.kind == TokenKind::Operator)
            return t.text == ">" || t.text == ">>" || t.text == ">>>";
        if (t.kind == TokenKind::Punctuation) return t.text == ",";
        if (t.kind == TokenKind::Keyword) return t.text == "extends" || t.text == "super";
        return false;
    }
    return false;
}

bool counts_as_operand(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier:
        case TokenKind::IntLiteral:
        case TokenKind::FloatLiteral:
        case TokenKind::StringLiteral:
        case TokenKind::CharLiteral:
            return true;
        default:
            return false;
    }
}

bool counts_as_operator(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword:
        case TokenKind::Operator:
        case TokenKind::Stop:
        case TokenKind::Punctuation:
            return true;
        default:
            return false;
    }
}

}  // namespace

DecisionPointCounts count_decision_points(const MethodUnit& method,
                                          const DecisionPointConfig& config) {
    DecisionPointCounts counts;
    const std::vector<Token>& toks = method.tokens;
    for (size_t i = 0; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if") ++counts.ifs;
            else if (t.text == "for" || t.text == "while") ++counts.loops;
            else if (t.text == "catch") ++counts.catches;
            else if (t.text == "throw" && config.count_throws) ++counts.throws;
            else if (t.text == "case" && config.count_cases) ++counts.cases;
        } else if (t.kind == TokenKind::Operator) {
            if (t.text == "&&" || t.text == "||") ++counts.logical_ops;
            else if (t.text == "?" && !is_wildcard_context(toks, i)) ++counts.ternaries;
        }
    }
    return counts;
}

int cyclomatic(const MethodUnit& method, const DecisionPointConfig& config) {
    return 1 + count_decision_points(method, config).total();
}

double halstead_volume(std::span<const Token> tokens) {
    std::unordered_map<std::string, int> operators;
    std::unordered_map<std::string, int> operands;
    long total = 0;
    for (const Token& t : tokens) {
        if (counts_as_operand(t.kind)) {
            ++operands[t.text];
            ++total;
        } else if (counts_as_operator(t.kind)) {
            ++operators[t.text];
            ++total;
        }
    }
    size_t vocabulary = operators.size() + operands.size();
    if (vocabulary <= 1) return 0.0;
    return static_cast<double>(total) * std::log2(static_cast<double>(vocabulary));
}

double halstead_volume(const MethodUnit& method) {
    return halstead_volume(std::span<const Token>(method.tokens));
}

double token_entropy(std::span<const Token> tokens) {
    std::unordered_map<std::string, int> freq;
    double total = 0;
    for (const Token& t : tokens) {
        if (t.kind == TokenKind::Comment) continue;
        ++freq[t.text];
        total += 1;
    }
    if (total == 0) return 0.0;
    double entropy = 0.0;
    for (const auto& [text, count] : freq) {
        double p = count / total;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

double token_entropy(const MethodUnit& method) {
    return token_entropy(std::span<const Token>(method.tokens));
}

ComplexityResult compute_complexity(const MethodUnit& method,
                                    const DecisionPointConfig& config) {
    ComplexityResult result;
    result.decision_points = count_decision_points(method, config);
    result.cyc = 1 + result.decision_points.total();
    result.halstead_volume = halstead_volume(method);
    result.token_entropy_bits = token_entropy(method);

    size_t vocabulary = 0;
    size_t counted = 0;
    {
        std::unordered_map<std::string, int> seen_ops, seen_operands;
        for (const Token& t : method.tokens) {
            if (counts_as_operand(t.kind)) ++seen_operands[t.text];
            else if (counts_as_operator(t.kind)) ++seen_ops[t.text];
            if (t.kind != TokenKind::Comment) ++counted;
        }
        vocabulary = seen_ops.size() + seen_operands.size();
    }
    result.halstead_degenerate = vocabulary <= 1;
    result.entropy_degenerate = counted == 0;
    return result;
}

}  // namespace readmet
