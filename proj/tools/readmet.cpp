// readmet: per-method complexity and readability metrics for Java-style
// source, with before/after comparison reports and trainable scoring.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "readmet/analyze.hpp"
#include "readmet/errors.hpp"

namespace {

using namespace readmet;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitModel = 3;

struct CommonOpts {
    std::string format = "markdown";
    std::string output;
    std::string config_path;
    std::vector<std::string> include = {"*.java"};
    std::vector<std::string> exclude;
    std::vector<std::string> models;
    std::string dictionary;
    int max_lines = 50;
    bool exclude_single_statement = false;
    bool no_comments_in_chars = false;
    bool no_blank_lines = false;
    bool no_signature_line = false;
    bool no_throws = false;
    bool no_cases = false;
    bool precise = false;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Loads a config file as a JSON object. Files starting with '{' are parsed
// as JSON; anything else is treated as key=value lines ('#' comments).
json load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            json j = json::parse(text);
            if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");
            return j;
        } catch (const json::parse_error& e) {
            throw ConfigError(path + ": invalid JSON: " + e.what());
        }
    }
    json j = json::object();
    std::istringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == ';') continue;
        size_t eq = line.find('=', start);
        if (eq == std::string::npos) {
            throw ConfigError(path + ": line " + std::to_string(line_no) +
                              ": expected key=value");
        }
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(start, eq - start));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path + ": line " + std::to_string(line_no) + ": empty key");
        }
        j[key] = value;
    }
    return j;
}

bool config_bool(const json& v, const std::string& key) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) return v.get<long long>() != 0;
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
        if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    }
    throw ConfigError("config key '" + key + "': expected a boolean, got " + v.dump());
}

int config_int(const json& v, const std::string& key) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        int out = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec == std::errc() && end == s.data() + s.size()) return out;
    }
    throw ConfigError("config key '" + key + "': expected an integer, got " + v.dump());
}

double config_double(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        double out = 0.0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec == std::errc() && end == s.data() + s.size()) return out;
    }
    throw ConfigError("config key '" + key + "': expected a number, got " + v.dump());
}

std::string config_string(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    throw ConfigError("config key '" + key + "': expected a string, got " + v.dump());
}

// Comma-separated in key=value files, arrays in JSON files.
std::vector<std::string> config_list(const json& v, const std::string& key) {
    std::vector<std::string> out;
    if (v.is_array()) {
        for (const json& item : v) out.push_back(config_string(item, key));
        return out;
    }
    std::string s = config_string(v, key);
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string part = s.substr(pos, comma - pos);
        if (!part.empty()) out.push_back(part);
        pos = comma + 1;
    }
    return out;
}

// Applies config-file values to every option the command line left untouched.
void apply_common_config(const CLI::App* cmd, CommonOpts& opts) {
    if (opts.config_path.empty()) return;
    json doc = load_config_file(opts.config_path);
    auto given = [&](const char* flag) { return cmd->count(flag) > 0; };
    for (const auto& [key, value] : doc.items()) {
        if (key == "format") {
            if (!given("--format")) {
                std::string f = config_string(value, key);
                if (f != "markdown" && f != "md" && f != "json" && f != "csv") {
                    throw ConfigError("config key 'format': unknown format '" + f + "'");
                }
                opts.format = f;
            }
        } else if (key == "output") {
            if (!given("--output")) opts.output = config_string(value, key);
        } else if (key == "include") {
            if (!given("--include")) opts.include = config_list(value, key);
        } else if (key == "exclude") {
            if (!given("--exclude")) opts.exclude = config_list(value, key);
        } else if (key == "model") {
            if (!given("--model")) opts.models = config_list(value, key);
        } else if (key == "dictionary") {
            if (!given("--dictionary")) opts.dictionary = config_string(value, key);
        } else if (key == "max-lines") {
            if (!given("--max-lines")) opts.max_lines = config_int(value, key);
        } else if (key == "exclude-single-statement") {
            if (!given("--exclude-single-statement"))
                opts.exclude_single_statement = config_bool(value, key);
        } else if (key == "no-comments-in-chars") {
            if (!given("--no-comments-in-chars"))
                opts.no_comments_in_chars = config_bool(value, key);
        } else if (key == "no-blank-lines") {
            if (!given("--no-blank-lines")) opts.no_blank_lines = config_bool(value, key);
        } else if (key == "no-signature-line") {
            if (!given("--no-signature-line")) opts.no_signature_line = config_bool(value, key);
        } else if (key == "no-throws") {
            if (!given("--no-throws")) opts.no_throws = config_bool(value, key);
        } else if (key == "no-cases") {
            if (!given("--no-cases")) opts.no_cases = config_bool(value, key);
        } else if (key == "precise") {
            if (!given("--precise")) opts.precise = config_bool(value, key);
        } else {
            throw ConfigError("unknown config key '" + key + "' in " + opts.config_path);
        }
    }
}

void apply_train_config(const CLI::App* cmd, const std::string& config_path,
                        std::string& dataset, std::string& features_path,
                        std::string& ratings_path, std::string& output, std::string& name,
                        double& cutoff, TrainConfig& train_config) {
    if (config_path.empty()) return;
    json doc = load_config_file(config_path);
    auto given = [&](const char* flag) { return cmd->count(flag) > 0; };
    for (const auto& [key, value] : doc.items()) {
        if (key == "dataset") {
            if (!given("--dataset")) dataset = config_string(value, key);
        } else if (key == "features") {
            if (!given("--features")) features_path = config_string(value, key);
        } else if (key == "ratings") {
            if (!given("--ratings")) ratings_path = config_string(value, key);
        } else if (key == "output") {
            if (!given("--output")) output = config_string(value, key);
        } else if (key == "name") {
            if (!given("--name")) name = config_string(value, key);
        } else if (key == "cutoff") {
            if (!given("--cutoff")) cutoff = config_double(value, key);
        } else if (key == "learning-rate") {
            if (!given("--learning-rate")) train_config.learning_rate = config_double(value, key);
        } else if (key == "iterations") {
            if (!given("--iterations")) train_config.iterations = config_int(value, key);
        } else if (key == "lambda") {
            if (!given("--lambda")) train_config.l2_lambda = config_double(value, key);
        } else if (key == "seed") {
            if (!given("--seed"))
                train_config.seed = static_cast<unsigned>(config_int(value, key));
        } else {
            throw ConfigError("unknown config key '" + key + "' in " + config_path);
        }
    }
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_models) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"markdown", "md", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output", opts.output, "write the document to a file instead of stdout");
    cmd->add_option("--include", opts.include,
                    "glob for files when walking directories (repeatable)");
    cmd->add_option("--exclude", opts.exclude, "glob for files to skip (repeatable)");
    if (with_models) {
        cmd->add_option("--model", opts.models, "model JSON file (repeatable)");
    }
    cmd->add_option("--dictionary", opts.dictionary,
                    "word list for the dictionary_word_ratio feature");
    cmd->add_option("--max-lines", opts.max_lines,
                    "drop methods spanning more lines than this")
        ->capture_default_str();
    cmd->add_flag("--exclude-single-statement", opts.exclude_single_statement,
                  "drop methods containing exactly one statement");
    cmd->add_flag("--no-comments-in-chars", opts.no_comments_in_chars,
                  "exclude comment text from character-count features");
    cmd->add_flag("--no-blank-lines", opts.no_blank_lines,
                  "exclude blank lines from per-line denominators");
    cmd->add_flag("--no-signature-line", opts.no_signature_line,
                  "exclude the signature line from line-based features");
    cmd->add_flag("--no-throws", opts.no_throws, "do not count throw statements toward CYC");
    cmd->add_flag("--no-cases", opts.no_cases, "do not count switch case labels toward CYC");
    cmd->add_flag("--precise", opts.precise, "print percent deltas at full precision");
    cmd->add_option("--config", opts.config_path,
                    "read defaults from a key=value or JSON file");
}

AnalyzeOptions to_options(const CommonOpts& opts) {
    AnalyzeOptions o;
    o.include = opts.include;
    o.exclude = opts.exclude;
    o.model_paths = opts.models;
    o.filter.max_lines = opts.max_lines;
    o.filter.exclude_single_statement = opts.exclude_single_statement;
    o.features.include_comments_in_char_counts = !opts.no_comments_in_chars;
    o.features.count_blank_lines = !opts.no_blank_lines;
    o.features.include_signature_line = !opts.no_signature_line;
    if (!opts.dictionary.empty()) o.features.dictionary_path = opts.dictionary;
    o.decisions.count_throws = !opts.no_throws;
    o.decisions.count_cases = !opts.no_cases;
    return o;
}

json config_echo(const CommonOpts& opts, const std::vector<std::string>& paths) {
    json j;
    j["format"] = opts.format == "md" ? "markdown" : opts.format;
    j["paths"] = paths;
    j["include"] = opts.include;
    j["exclude"] = opts.exclude;
    j["model"] = opts.models;
    j["dictionary"] = opts.dictionary;
    j["max_lines"] = opts.max_lines;
    j["exclude_single_statement"] = opts.exclude_single_statement;
    j["no_comments_in_chars"] = opts.no_comments_in_chars;
    j["no_blank_lines"] = opts.no_blank_lines;
    j["no_signature_line"] = opts.no_signature_line;
    j["no_throws"] = opts.no_throws;
    j["no_cases"] = opts.no_cases;
    j["precise"] = opts.precise;
    return j;
}

void write_document(const std::string& output_path, const std::string& text) {
    if (output_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + output_path);
    out << text;
}

std::string shortest(double v) { return json(v).dump(); }

std::string two_decimals(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void print_issues(const AnalysisResult& result) {
    for (const FileIssue& issue : result.issues) {
        std::cerr << "warning: " << issue.file << ": " << issue.message << "\n";
    }
}

// ---- analyze ----------------------------------------------------------

std::string render_analysis(const AnalysisResult& result, const CommonOpts& opts,
                            const std::vector<std::string>& paths) {
    bool with_dict = !opts.dictionary.empty();
    std::vector<std::string> score_names;
    for (const ModelSpec& m : result.models) score_names.push_back(m.model_name);

    if (opts.format == "json") {
        json j;
        j["config"] = config_echo(opts, paths);
        j["files"] = result.files;
        json methods = json::array();
        for (const MethodMetrics& m : result.methods) methods.push_back(metrics_to_json(m));
        j["methods"] = methods;
        json exclusions = json::array();
        for (const FileExclusion& e : result.exclusions) {
            exclusions.push_back(
                {{"file", e.file}, {"method", e.qualified_name}, {"reason", e.reason}});
        }
        j["exclusions"] = exclusions;
        json issues = json::array();
        for (const FileIssue& i : result.issues) {
            issues.push_back({{"file", i.file}, {"message", i.message}});
        }
        j["issues"] = issues;
        return j.dump(2) + "\n";
    }

    if (opts.format == "csv") {
        std::string out = "method,file";
        for (const std::string& name : feature_catalogue(with_dict)) out += "," + name;
        out += ",cyc,halstead_volume,token_entropy";
        for (const std::string& s : score_names) out += ",score:" + s;
        out += "\n";
        for (const MethodMetrics& m : result.methods) {
            out += m.qualified_name + "," + m.file;
            for (const auto& [_, value] : m.features.values) out += "," + shortest(value);
            out += "," + std::to_string(m.complexity.cyc);
            out += "," + shortest(m.complexity.halstead_volume);
            out += "," + shortest(m.complexity.token_entropy_bits);
            for (const std::string& s : score_names) out += "," + shortest(m.scores.at(s));
            out += "\n";
        }
        out += "# config: " + config_echo(opts, paths).dump() + "\n";
        return out;
    }

    std::string out = "# Analysis\n\n";
    out += "Files: " + std::to_string(result.files.size()) +
           ", methods: " + std::to_string(result.methods.size()) + "\n\n";
    out += "Method | loc | CYC | halstead_volume | token_entropy";
    for (const std::string& s : score_names) out += " | score:" + s;
    out += "\n--- | --- | --- | --- | ---";
    for (size_t i = 0; i < score_names.size(); ++i) out += " | ---";
    out += "\n";
    for (const MethodMetrics& m : result.methods) {
        out += m.qualified_name + " | " + shortest(m.features.get("loc")) + " | " +
               std::to_string(m.complexity.cyc) + " | " +
               two_decimals(m.complexity.halstead_volume) + " | " +
               two_decimals(m.complexity.token_entropy_bits);
        for (const std::string& s : score_names) out += " | " + two_decimals(m.scores.at(s));
        out += "\n";
    }
    if (!result.exclusions.empty()) {
        out += "\nExcluded methods:\n";
        for (const FileExclusion& e : result.exclusions) {
            out += "- " + e.qualified_name + " (" + e.reason + ", " + e.file + ")\n";
        }
    }
    out += "\nConfig: " + config_echo(opts, paths).dump() + "\n";
    return out;
}

int cmd_analyze(const CommonOpts& opts, const std::vector<std::string>& paths) {
    AnalysisResult result = analyze_paths(paths, to_options(opts));
    print_issues(result);
    write_document(opts.output, render_analysis(result, opts, paths));
    return kExitOk;
}

// ---- compare ----------------------------------------------------------

int cmd_compare(const CommonOpts& opts, const std::string& base_path,
                const std::string& variant_path, std::string base_label,
                std::string variant_label) {
    if (base_label.empty()) base_label = base_path;
    if (variant_label.empty()) variant_label = variant_path;
    AnalyzeOptions options = to_options(opts);
    AnalysisResult base = analyze_paths({base_path}, options);
    AnalysisResult variant = analyze_paths({variant_path}, options);
    print_issues(base);
    print_issues(variant);
    ComparisonReport report =
        build_report(base.methods, variant.methods, base_label, variant_label);

    std::vector<std::string> paths = {base_path, variant_path};
    std::string text;
    if (opts.format == "json") {
        json j = json::parse(render_report(report, ReportFormat::json, opts.precise));
        j["config"] = config_echo(opts, paths);
        text = j.dump(2) + "\n";
    } else if (opts.format == "csv") {
        text = render_report(report, ReportFormat::csv, opts.precise);
        text += "# config: " + config_echo(opts, paths).dump() + "\n";
    } else {
        text = render_report(report, ReportFormat::markdown, opts.precise);
        text += "\nConfig: " + config_echo(opts, paths).dump() + "\n";
    }
    write_document(opts.output, text);
    return kExitOk;
}

// ---- train ------------------------------------------------------------

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers;
};

Csv parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read CSV file: " + path);
    Csv csv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (csv.header.empty()) {
            csv.header = fields;
        } else {
            if (fields.size() != csv.header.size()) {
                throw InputError(path + ": line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(csv.header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
            }
            csv.rows.push_back(fields);
            csv.line_numbers.push_back(line_no);
        }
    }
    if (csv.header.empty()) throw InputError(path + ": empty CSV file");
    return csv;
}

double parse_double(const std::string& text, const std::string& path, int line_no) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw InputError(path + ": line " + std::to_string(line_no) +
                         ": cannot parse number '" + text + "'");
    }
    return value;
}

bool is_id_column(const std::string& name) {
    return name == "method" || name == "snippet_id" || name == "id" || name == "name";
}

int cmd_train(const std::string& dataset, const std::string& features_path,
              const std::string& ratings_path, const std::string& output,
              const std::string& name, double cutoff, TrainConfig train_config) {
    std::vector<TrainSample> samples;

    if (!dataset.empty()) {
        Csv csv = parse_csv(dataset);
        int label_col = -1;
        int id_col = -1;
        for (size_t c = 0; c < csv.header.size(); ++c) {
            if (csv.header[c] == "label") label_col = static_cast<int>(c);
            else if (id_col < 0 && is_id_column(csv.header[c])) id_col = static_cast<int>(c);
        }
        if (label_col < 0) throw InputError(dataset + ": no 'label' column");
        for (size_t r = 0; r < csv.rows.size(); ++r) {
            TrainSample s;
            const auto& row = csv.rows[r];
            int line_no = csv.line_numbers[r];
            s.features.method =
                id_col >= 0 ? row[id_col] : "row" + std::to_string(line_no);
            for (size_t c = 0; c < csv.header.size(); ++c) {
                if (static_cast<int>(c) == label_col || static_cast<int>(c) == id_col) continue;
                s.features.values.emplace_back(csv.header[c],
                                               parse_double(row[c], dataset, line_no));
            }
            const std::string& lab = row[label_col];
            if (lab == "0" || lab == "false") s.readable = false;
            else if (lab == "1" || lab == "true") s.readable = true;
            else
                throw InputError(dataset + ": line " + std::to_string(line_no) +
                                 ": label must be 0 or 1, got '" + lab + "'");
            samples.push_back(std::move(s));
        }
    } else {
        Csv feats = parse_csv(features_path);
        if (feats.header.empty() || !is_id_column(feats.header[0])) {
            throw InputError(features_path +
                             ": first column must identify the snippet (method/snippet_id/id)");
        }
        Csv ratings = parse_csv(ratings_path);
        int rid = -1, rval = -1;
        for (size_t c = 0; c < ratings.header.size(); ++c) {
            if (ratings.header[c] == "snippet_id") rid = static_cast<int>(c);
            if (ratings.header[c] == "rating") rval = static_cast<int>(c);
        }
        if (rid < 0 || rval < 0)
            throw InputError(ratings_path + ": needs 'snippet_id' and 'rating' columns");
        std::map<std::string, std::vector<double>> by_id;
        for (size_t r = 0; r < ratings.rows.size(); ++r) {
            by_id[ratings.rows[r][rid]].push_back(
                parse_double(ratings.rows[r][rval], ratings_path, ratings.line_numbers[r]));
        }
        for (size_t r = 0; r < feats.rows.size(); ++r) {
            const auto& row = feats.rows[r];
            int line_no = feats.line_numbers[r];
            auto it = by_id.find(row[0]);
            if (it == by_id.end()) {
                std::cerr << "warning: no ratings for snippet '" << row[0] << "', skipping\n";
                continue;
            }
            RatedSnippet snippet;
            snippet.snippet_id = row[0];
            snippet.ratings = it->second;
            TrainSample s;
            s.features.method = row[0];
            for (size_t c = 1; c < feats.header.size(); ++c) {
                s.features.values.emplace_back(feats.header[c],
                                               parse_double(row[c], features_path, line_no));
            }
            s.readable = label(snippet, cutoff);
            samples.push_back(std::move(s));
            by_id.erase(it);
        }
        for (const auto& [id, _] : by_id) {
            std::cerr << "warning: ratings for unknown snippet '" << id << "' ignored\n";
        }
    }

    TrainResult result = train(samples, train_config, name, cutoff);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    save_model(result.model, output);
    std::cout << "model: " << name << "\n"
              << "samples: " << samples.size() << "\n"
              << "features: " << result.model.feature_names.size() << "\n"
              << "initial loss: " << shortest(result.initial_loss) << "\n"
              << "final loss: " << shortest(result.final_loss) << "\n"
              << "training accuracy: " << shortest(result.training_accuracy) << "\n"
              << "written: " << output << "\n";
    return kExitOk;
}

// ---- score ------------------------------------------------------------

int cmd_score(const CommonOpts& opts, const std::vector<std::string>& paths) {
    AnalysisResult result = analyze_paths(paths, to_options(opts));
    print_issues(result);
    const ModelSpec& model = result.models.front();

    std::vector<double> scores;
    for (const MethodMetrics& m : result.methods) scores.push_back(m.scores.at(model.model_name));

    std::string text;
    if (opts.format == "json") {
        json j;
        j["config"] = config_echo(opts, paths);
        j["model_name"] = model.model_name;
        json methods = json::array();
        for (const MethodMetrics& m : result.methods) {
            double s = m.scores.at(model.model_name);
            methods.push_back({{"method", m.qualified_name},
                               {"file", m.file},
                               {"score", s},
                               {"readable", classify(s, model)}});
        }
        j["methods"] = methods;
        if (!scores.empty()) {
            Aggregate a = aggregate(scores);
            j["summary"] = {{"mean", a.mean}, {"std", a.stddev}, {"n", scores.size()}};
        }
        text = j.dump(2) + "\n";
    } else if (opts.format == "csv") {
        text = "method,file,score,readable\n";
        for (const MethodMetrics& m : result.methods) {
            double s = m.scores.at(model.model_name);
            text += m.qualified_name + "," + m.file + "," + shortest(s) + "," +
                    (classify(s, model) ? "1" : "0") + "\n";
        }
        text += "# config: " + config_echo(opts, paths).dump() + "\n";
    } else {
        text = "# Scores: " + model.model_name + "\n\n";
        text += "Method | score | readable\n--- | --- | ---\n";
        for (const MethodMetrics& m : result.methods) {
            double s = m.scores.at(model.model_name);
            text += m.qualified_name + " | " + two_decimals(s) + " | " +
                    (classify(s, model) ? "yes" : "no") + "\n";
        }
        if (!scores.empty()) {
            Aggregate a = aggregate(scores);
            text += "\nMean score: " + two_decimals(a.mean) + " ± " + two_decimals(a.stddev) +
                    " over " + std::to_string(scores.size()) + " methods\n";
        }
        text += "\nConfig: " + config_echo(opts, paths).dump() + "\n";
    }
    write_document(opts.output, text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"per-method complexity and readability metrics for Java-style source"};
    app.require_subcommand(1);

    CommonOpts analyze_opts;
    std::vector<std::string> analyze_paths_arg;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "compute metrics for files or trees");
    add_common(analyze_cmd, analyze_opts, true);
    analyze_cmd->add_option("paths", analyze_paths_arg, "files or directories")->required();

    CommonOpts compare_opts;
    std::string base_path, variant_path, base_label, variant_label;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "paired before/after report over two corpora");
    add_common(compare_cmd, compare_opts, true);
    compare_cmd->add_option("base", base_path, "base corpus file or directory")->required();
    compare_cmd->add_option("variant", variant_path, "variant corpus file or directory")
        ->required();
    compare_cmd->add_option("--base-label", base_label, "label for the base corpus");
    compare_cmd->add_option("--variant-label", variant_label, "label for the variant corpus");

    std::string dataset, features_path, ratings_path, model_out, model_name = "model";
    double cutoff = 3.14;
    TrainConfig train_config;
    CLI::App* train_cmd = app.add_subcommand("train", "fit a readability model from CSV data");
    train_cmd->add_option("--dataset", dataset, "CSV with feature columns and a label column");
    train_cmd->add_option("--features", features_path, "feature CSV keyed by snippet id");
    train_cmd->add_option("--ratings", ratings_path, "CSV of snippet_id,rating rows");
    train_cmd->add_option("--output", model_out, "where to write the model JSON");
    train_cmd->add_option("--name", model_name, "model_name stored in the model")
        ->capture_default_str();
    train_cmd->add_option("--cutoff", cutoff, "mean rating at/above which a snippet is readable")
        ->capture_default_str();
    train_cmd->add_option("--learning-rate", train_config.learning_rate, "gradient step size")
        ->capture_default_str();
    train_cmd->add_option("--iterations", train_config.iterations, "gradient descent steps")
        ->capture_default_str();
    train_cmd->add_option("--lambda", train_config.l2_lambda, "L2 regularization strength")
        ->capture_default_str();
    train_cmd->add_option("--seed", train_config.seed, "recorded RNG seed")
        ->capture_default_str();
    std::string train_config_path;
    train_cmd->add_option("--config", train_config_path,
                          "read defaults from a key=value or JSON file");

    CommonOpts score_opts;
    std::vector<std::string> score_paths;
    CLI::App* score_cmd = app.add_subcommand("score", "score methods with a trained model");
    add_common(score_cmd, score_opts, true);
    score_cmd->add_option("paths", score_paths, "files or directories")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (analyze_cmd->parsed()) apply_common_config(analyze_cmd, analyze_opts);
        if (compare_cmd->parsed()) apply_common_config(compare_cmd, compare_opts);
        if (score_cmd->parsed()) apply_common_config(score_cmd, score_opts);
        if (train_cmd->parsed()) {
            apply_train_config(train_cmd, train_config_path, dataset, features_path,
                               ratings_path, model_out, model_name, cutoff, train_config);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_opts, analyze_paths_arg);
        if (compare_cmd->parsed()) {
            return cmd_compare(compare_opts, base_path, variant_path, base_label, variant_label);
        }
        if (train_cmd->parsed()) {
            bool direct = !dataset.empty();
            bool joined = !features_path.empty() && !ratings_path.empty();
            if (direct == joined) {
                std::cerr << "error: provide either --dataset or both --features and --ratings\n";
                return kExitUsage;
            }
            if (model_out.empty()) {
                std::cerr << "error: train needs --output\n";
                return kExitUsage;
            }
            return cmd_train(dataset, features_path, ratings_path, model_out, model_name,
                             cutoff, train_config);
        }
        if (score_cmd->parsed()) {
            if (score_opts.models.size() != 1) {
                std::cerr << "error: score needs exactly one --model\n";
                return kExitUsage;
            }
            return cmd_score(score_opts, score_paths);
        }
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
