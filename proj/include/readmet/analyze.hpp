#pragma once

#include <string>
#include <vector>

#include "readmet/method_model.hpp"
#include "readmet/model.hpp"
#include "readmet/report.hpp"

namespace readmet {

struct AnalyzeOptions {
    std::vector<std::string> include = {"*.java"};  // applied when walking directories
    std::vector<std::string> exclude;
    FilterConfig filter;
    FeatureConfig features;
    DecisionPointConfig decisions;
    std::vector<std::string> model_paths;
};

struct FileExclusion {
    std::string file;
    std::string qualified_name;
    std::string reason;
};

struct FileIssue {
    std::string file;
    std::string message;
};

struct AnalysisResult {
    std::vector<MethodMetrics> methods;  // sorted by (file, qualified_name)
    std::vector<FileExclusion> exclusions;
    std::vector<FileIssue> issues;
    std::vector<std::string> files;      // analyzed files, sorted
    std::vector<ModelSpec> models;
};

// Glob with `*` (within a path segment), `?`, and `**` (across segments).
bool glob_match(const std::string& pattern, const std::string& path);

// Explicit file arguments are taken as-is; directories are walked recursively
// and filtered through the include/exclude globs. Deterministic: sorted by
// path. Throws InputError for paths that do not exist.
std::vector<std::string> discover_files(const std::vector<std::string>& paths,
                                        const std::vector<std::string>& include,
                                        const std::vector<std::string>& exclude);

// Analyzes every discovered file (in parallel, merged in path order) and
// scores methods against any configured models. Throws InputError when no
// analyzable files are found; unreadable files become issues, not errors.
AnalysisResult analyze_paths(const std::vector<std::string>& paths,
                             const AnalyzeOptions& options);

// The method's features plus cyc, halstead_volume, and token_entropy, so
// models may mix structural and complexity inputs.
FeatureVector scoring_features(const MethodMetrics& metrics);

}  // namespace readmet
