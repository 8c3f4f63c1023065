#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "readmet/method_model.hpp"

namespace readmet {

struct FeatureConfig {
    bool include_comments_in_char_counts = true;
    bool include_signature_line = true;
    bool count_blank_lines = true;
    std::optional<std::string> dictionary_path;
};

using Dictionary = std::unordered_set<std::string>;

// One lowercase word per line; blank lines ignored. Throws InputError.
Dictionary load_dictionary(const std::string& path);

// Values in fixed catalogue order; the catalogue is identical for every
// method within one run (it varies only with the config).
struct FeatureVector {
    std::string method;
    std::vector<std::pair<std::string, double>> values;
    int line_count = 1;  // denominator used by the per-line averages

    bool has(const std::string& name) const;
    double get(const std::string& name) const;  // throws if absent
};

std::vector<std::string> feature_catalogue(bool with_dictionary);

FeatureVector extract_features(const MethodUnit& method, const FeatureConfig& config,
                               const Dictionary* dictionary = nullptr);

// Brace depth relative to the method's own block; a flat body is 0.
int max_nesting_depth(const MethodUnit& method);

// camelCase / underscore / digit-boundary split, lowercased.
std::vector<std::string> split_identifier(std::string_view identifier);

// Fraction of identifier word parts found in the dictionary, over every
// identifier occurrence. 0 when there are no identifiers or no words.
double dictionary_word_ratio(const MethodUnit& method, const Dictionary& dictionary);

}  // namespace readmet
