#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "readmet/complexity.hpp"
#include "readmet/features.hpp"

namespace readmet {

struct MethodMetrics {
    std::string qualified_name;
    std::string file;
    FeatureVector features;
    ComplexityResult complexity;
    std::map<std::string, double> scores;  // model name -> score
};

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;   // sample (n-1); zero for a single value
    bool single = false;
};

// Mean and sample standard deviation. Values are summed in sorted order so
// the result is bit-identical under permutation. Throws InputError on empty.
Aggregate aggregate(std::span<const double> values);

// Resolves a measure name: "CYC", "halstead_volume", "token_entropy",
// any feature name, or "score:<model>".
double measure_value(const MethodMetrics& metrics, const std::string& measure);

// Signed percent change from base to variant; empty when base is zero.
std::optional<double> delta_percent(double base_mean, double variant_mean);

// Display form: two significant figures, half away from zero, explicit sign
// ("-75", "+150", "0"); "n/a" when undefined. precise prints full precision.
std::string format_delta(std::optional<double> delta, bool precise = false);

struct MethodPair {
    std::string qualified_name;
    MethodMetrics base;
    MethodMetrics variant;
};

struct AggregateRow {
    std::string measure;
    double base_mean = 0.0;
    double base_std = 0.0;
    double variant_mean = 0.0;
    double variant_std = 0.0;
    std::optional<double> delta;
};

struct ComparisonReport {
    std::string base_label;
    std::string variant_label;
    std::vector<MethodPair> pairs;              // sorted by qualified name
    std::vector<std::string> unmatched_base;    // sorted
    std::vector<std::string> unmatched_variant; // sorted
    std::vector<AggregateRow> aggregate_rows;
};

// Pairs methods by qualified name. Throws InputError naming any duplicate
// key within one corpus. Unmatched methods are listed, not paired.
ComparisonReport pair_methods(const std::vector<MethodMetrics>& base,
                              const std::vector<MethodMetrics>& variant,
                              const std::string& base_label,
                              const std::string& variant_label);

// Fills aggregate_rows over the paired methods only, in fixed measure order:
// CYC, halstead_volume, token_entropy, the feature catalogue, then scores.
void compute_aggregates(ComparisonReport& report);

ComparisonReport build_report(const std::vector<MethodMetrics>& base,
                              const std::vector<MethodMetrics>& variant,
                              const std::string& base_label,
                              const std::string& variant_label);

enum class ReportFormat { markdown, json, csv };

std::string render_report(const ComparisonReport& report, ReportFormat format,
                          bool precise_deltas = false);

ComparisonReport report_from_json(const std::string& text);

nlohmann::json metrics_to_json(const MethodMetrics& metrics);
MethodMetrics metrics_from_json(const nlohmann::json& j);

}  // namespace readmet
