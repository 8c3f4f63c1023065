#include "readmet/analyze.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "readmet/errors.hpp"

namespace fs = std::filesystem;

namespace readmet {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::regex glob_to_regex(const std::string& pattern) {
    std::string re;
    for (size_t i = 0; i < pattern.size(); ++i) {
        char c = pattern[i];
        if (c == '*') {
            if (i + 1 < pattern.size() && pattern[i + 1] == '*') {
                re += ".*";
                ++i;
            } else {
                re += "[^/]*";
            }
        } else if (c == '?') {
            re += "[^/]";
        } else if (std::string("\\^$.|+(){}[]").find(c) != std::string::npos) {
            re += '\\';
            re += c;
        } else {
            re += c;
        }
    }
    return std::regex(re);
}

struct PerFile {
    std::vector<MethodMetrics> methods;
    std::vector<FileExclusion> exclusions;
    std::vector<FileIssue> issues;
    std::exception_ptr model_error;
};

PerFile analyze_one(const std::string& path, const AnalyzeOptions& options,
                    const Dictionary* dictionary, const std::vector<ModelSpec>& models) {
    PerFile out;
    std::string source;
    try {
        source = read_file(path);
    } catch (const InputError& e) {
        out.issues.push_back(FileIssue{path, e.what()});
        return out;
    }
    SourceUnit unit = extract_methods(source, path);
    for (const Diagnostic& d : unit.diagnostics) {
        out.issues.push_back(FileIssue{path, "line " + std::to_string(d.line) + ": " + d.message});
    }
    FilteredSource filtered = filter_methods(unit, options.filter);
    for (const Exclusion& e : filtered.excluded) {
        out.exclusions.push_back(FileExclusion{path, e.qualified_name, e.reason});
    }
    for (const MethodUnit& m : filtered.unit.methods) {
        MethodMetrics metrics;
        metrics.qualified_name = m.qualified_name;
        metrics.file = path;
        metrics.features = extract_features(m, options.features, dictionary);
        metrics.complexity = compute_complexity(m, options.decisions);
        if (!models.empty()) {
            FeatureVector augmented = scoring_features(metrics);
            try {
                for (const ModelSpec& model : models) {
                    metrics.scores[model.model_name] = score(augmented, model);
                }
            } catch (const ModelError&) {
                out.model_error = std::current_exception();
                return out;
            }
        }
        out.methods.push_back(std::move(metrics));
    }
    return out;
}

}  // namespace

bool glob_match(const std::string& pattern, const std::string& path) {
    return std::regex_match(path, glob_to_regex(pattern));
}

std::vector<std::string> discover_files(const std::vector<std::string>& paths,
                                        const std::vector<std::string>& include,
                                        const std::vector<std::string>& exclude) {
    auto matches_any = [](const std::vector<std::string>& patterns, const fs::path& rel) {
        std::string full = rel.generic_string();
        std::string name = rel.filename().generic_string();
        for (const std::string& p : patterns) {
            const std::string& subject = p.find('/') != std::string::npos ? full : name;
            if (glob_match(p, subject)) return true;
        }
        return false;
    };

    std::vector<std::string> files;
    for (const std::string& raw : paths) {
        fs::path path(raw);
        std::error_code ec;
        if (fs::is_regular_file(path, ec)) {
            files.push_back(raw);
            continue;
        }
        if (!fs::is_directory(path, ec)) {
            throw InputError("path does not exist: " + raw);
        }
        for (auto it = fs::recursive_directory_iterator(path, ec);
             it != fs::recursive_directory_iterator(); ++it) {
            if (!it->is_regular_file(ec)) continue;
            fs::path rel = fs::relative(it->path(), path, ec);
            if (!matches_any(include, rel)) continue;
            if (!exclude.empty() && matches_any(exclude, rel)) continue;
            files.push_back(it->path().generic_string());
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

FeatureVector scoring_features(const MethodMetrics& metrics) {
    FeatureVector fv = metrics.features;
    fv.values.emplace_back("cyc", static_cast<double>(metrics.complexity.cyc));
    fv.values.emplace_back("halstead_volume", metrics.complexity.halstead_volume);
    fv.values.emplace_back("token_entropy", metrics.complexity.token_entropy_bits);
    return fv;
}

AnalysisResult analyze_paths(const std::vector<std::string>& paths,
                             const AnalyzeOptions& options) {
    AnalysisResult result;
    result.files = discover_files(paths, options.include, options.exclude);
    if (result.files.empty()) throw InputError("no analyzable files found");

    for (const std::string& path : options.model_paths) {
        ModelSpec model = load_model(path);
        for (const ModelSpec& existing : result.models) {
            if (existing.model_name == model.model_name)
                throw ModelError("duplicate model name: " + model.model_name);
        }
        result.models.push_back(std::move(model));
    }

    Dictionary dictionary;
    const Dictionary* dict_ptr = nullptr;
    if (options.features.dictionary_path.has_value()) {
        dictionary = load_dictionary(*options.features.dictionary_path);
        dict_ptr = &dictionary;
    }

    std::vector<PerFile> per_file(result.files.size());
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          static_cast<unsigned>(result.files.size()));
    if (workers <= 1) {
        for (size_t i = 0; i < result.files.size(); ++i) {
            per_file[i] = analyze_one(result.files[i], options, dict_ptr, result.models);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < result.files.size();
                     i = next.fetch_add(1)) {
                    per_file[i] = analyze_one(result.files[i], options, dict_ptr, result.models);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (PerFile& pf : per_file) {
        if (pf.model_error) std::rethrow_exception(pf.model_error);
        for (MethodMetrics& m : pf.methods) result.methods.push_back(std::move(m));
        for (FileExclusion& e : pf.exclusions) result.exclusions.push_back(std::move(e));
        for (FileIssue& i : pf.issues) result.issues.push_back(std::move(i));
    }
    std::stable_sort(result.methods.begin(), result.methods.end(),
                     [](const MethodMetrics& a, const MethodMetrics& b) {
                         if (a.file != b.file) return a.file < b.file;
                         return a.qualified_name < b.qualified_name;
                     });
    return result;
}

}  // namespace readmet
