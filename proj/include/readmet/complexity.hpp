#pragma once

#include <span>

#include "readmet/method_model.hpp"

namespace readmet {

struct DecisionPointConfig {
    bool count_throws = true;  // off approximates PMD-style counting
    bool count_cases = true;
};

// Per-category decision points over a whole method body. Disabled categories
// stay zero, so total() is always the plain sum.
struct DecisionPointCounts {
    int ifs = 0;
    int loops = 0;
    int catches = 0;
    int logical_ops = 0;
    int ternaries = 0;
    int throws = 0;
    int cases = 0;

    int total() const { return ifs + loops + catches + logical_ops + ternaries + throws + cases; }

    bool operator==(const DecisionPointCounts&) const = default;
};

struct ComplexityResult {
    int cyc = 1;
    double halstead_volume = 0.0;
    double token_entropy_bits = 0.0;
    DecisionPointCounts decision_points;
    bool halstead_degenerate = false;  // vocabulary of zero or one
    bool entropy_degenerate = false;   // no counted tokens
};

DecisionPointCounts count_decision_points(const MethodUnit& method,
                                          const DecisionPointConfig& config = {});

// 1 + total decision points; >= 1 for any method.
int cyclomatic(const MethodUnit& method, const DecisionPointConfig& config = {});

// N * log2(n) over operator/operand occurrences. Operands are identifiers and
// literals; operators are keyword, operator, stop, and punctuation tokens.
// Braces, parens, brackets, comments, and annotations are not counted.
double halstead_volume(std::span<const Token> tokens);
double halstead_volume(const MethodUnit& method);

// Shannon entropy in bits over token-text frequencies, comments excluded.
double token_entropy(std::span<const Token> tokens);
double token_entropy(const MethodUnit& method);

ComplexityResult compute_complexity(const MethodUnit& method,
                                    const DecisionPointConfig& config = {});

}  // namespace readmet
