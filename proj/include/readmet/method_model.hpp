#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "readmet/token.hpp"

namespace readmet {

// One extracted method (or constructor). Lambdas and anonymous-class bodies
// stay inside the enclosing unit; they are never extracted on their own.
struct MethodUnit {
    std::string qualified_name;  // Class.name/arity; bare name/arity at top level
    std::string name;
    int signature_line = 1;
    int first_line = 1;  // == signature_line; span includes the signature
    int last_line = 1;   // line of the closing brace
    int arg_count = 0;
    std::vector<Token> tokens;           // declaration through closing brace
    std::vector<std::string> raw_lines;  // verbatim lines first_line..last_line

    int line_span() const { return last_line - first_line + 1; }
};

struct SourceUnit {
    std::string path;
    std::vector<MethodUnit> methods;      // in source order
    std::vector<std::string> class_names; // qualified, in declaration order
    std::vector<Diagnostic> diagnostics;
};

// Heuristic brace-matching extraction; tolerates non-compilable input. Bare
// method listings without an enclosing class are extracted at top level.
SourceUnit extract_methods(std::string_view source, std::string path = "");

struct FilterConfig {
    int max_lines = 50;  // strict: a method spanning exactly max_lines stays
    bool exclude_single_statement = false;
};

struct Exclusion {
    std::string qualified_name;
    std::string reason;  // "line-limit" or "single-statement"
};

struct FilteredSource {
    SourceUnit unit;
    std::vector<Exclusion> excluded;
};

FilteredSource filter_methods(const SourceUnit& source, const FilterConfig& config);

// Statement terminators: `;` tokens outside traditional for-loop headers.
int statement_count(std::span<const Token> tokens);

}  // namespace readmet
