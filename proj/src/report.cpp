#include "readmet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "json.hpp"
#include "readmet/errors.hpp"

namespace readmet {

namespace {

std::string two_decimals(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string shortest(double v) {
    nlohmann::json j = v;
    return j.dump();
}

}  // namespace

nlohmann::json metrics_to_json(const MethodMetrics& m) {
    nlohmann::json features = nlohmann::json::object();
    for (const auto& [name, value] : m.features.values) features[name] = value;
    const DecisionPointCounts& d = m.complexity.decision_points;
    nlohmann::json j = {
        {"qualified_name", m.qualified_name},
        {"file", m.file},
        {"line_count", m.features.line_count},
        {"features", features},
        {"complexity",
         {{"cyc", m.complexity.cyc},
          {"halstead_volume", m.complexity.halstead_volume},
          {"token_entropy", m.complexity.token_entropy_bits},
          {"halstead_degenerate", m.complexity.halstead_degenerate},
          {"entropy_degenerate", m.complexity.entropy_degenerate},
          {"decision_points",
           {{"ifs", d.ifs},
            {"loops", d.loops},
            {"catches", d.catches},
            {"logical_ops", d.logical_ops},
            {"ternaries", d.ternaries},
            {"throws", d.throws},
            {"cases", d.cases}}}}},
        {"scores", m.scores},
    };
    return j;
}

MethodMetrics metrics_from_json(const nlohmann::json& j) {
    MethodMetrics m;
    m.qualified_name = j.at("qualified_name").get<std::string>();
    m.file = j.at("file").get<std::string>();
    m.features.method = m.qualified_name;
    m.features.line_count = j.at("line_count").get<int>();
    for (const auto& [name, value] : j.at("features").items()) {
        m.features.values.emplace_back(name, value.get<double>());
    }
    const nlohmann::json& c = j.at("complexity");
    m.complexity.cyc = c.at("cyc").get<int>();
    m.complexity.halstead_volume = c.at("halstead_volume").get<double>();
    m.complexity.token_entropy_bits = c.at("token_entropy").get<double>();
    m.complexity.halstead_degenerate = c.at("halstead_degenerate").get<bool>();
    m.complexity.entropy_degenerate = c.at("entropy_degenerate").get<bool>();
    const nlohmann::json& d = c.at("decision_points");
    m.complexity.decision_points.ifs = d.at("ifs").get<int>();
    m.complexity.decision_points.loops = d.at("loops").get<int>();
    m.complexity.decision_points.catches = d.at("catches").get<int>();
    m.complexity.decision_points.logical_ops = d.at("logical_ops").get<int>();
    m.complexity.decision_points.ternaries = d.at("ternaries").get<int>();
    m.complexity.decision_points.throws = d.at("throws").get<int>();
    m.complexity.decision_points.cases = d.at("cases").get<int>();
    m.scores = j.at("scores").get<std::map<std::string, double>>();
    return m;
}

Aggregate aggregate(std::span<const double> values) {
    if (values.empty()) throw InputError("cannot aggregate an empty value list");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double v : sorted) sum += v;
    Aggregate a;
    a.mean = sum / static_cast<double>(sorted.size());
    if (sorted.size() == 1) {
        a.single = true;
        a.stddev = 0.0;
        return a;
    }
    double squares = 0.0;
    for (double v : sorted) squares += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(squares / static_cast<double>(sorted.size() - 1));
    return a;
}

double measure_value(const MethodMetrics& metrics, const std::string& measure) {
    if (measure == "CYC") return static_cast<double>(metrics.complexity.cyc);
    if (measure == "halstead_volume") return metrics.complexity.halstead_volume;
    if (measure == "token_entropy") return metrics.complexity.token_entropy_bits;
    if (measure.starts_with("score:")) {
        auto it = metrics.scores.find(measure.substr(6));
        if (it == metrics.scores.end())
            throw InputError("method '" + metrics.qualified_name + "' has no score for '" +
                             measure + "'");
        return it->second;
    }
    return metrics.features.get(measure);
}

std::optional<double> delta_percent(double base_mean, double variant_mean) {
    if (base_mean == 0.0) return std::nullopt;
    return (variant_mean - base_mean) / base_mean * 100.0;
}

std::string format_delta(std::optional<double> delta, bool precise) {
    if (!delta.has_value() || !std::isfinite(*delta)) return "n/a";
    double x = *delta;
    if (precise) return shortest(x);
    if (x == 0.0) return "0";
    int exp10 = static_cast<int>(std::floor(std::log10(std::fabs(x))));
    double scale = std::pow(10.0, exp10 - 1);
    long long m = std::llround(x / scale);
    if (m >= 100 || m <= -100) {  // rounding crossed into the next decade
        m /= 10;
        ++exp10;
        scale *= 10.0;
    }
    char buf[64];
    if (exp10 >= 1) {
        std::snprintf(buf, sizeof(buf), "%.0f", static_cast<double>(m) * scale);
    } else {
        int decimals = 1 - exp10;
        std::snprintf(buf, sizeof(buf), "%.*f", decimals, static_cast<double>(m) * scale);
    }
    std::string out = buf;
    if (x > 0.0) out.insert(out.begin(), '+');
    return out;
}

ComparisonReport pair_methods(const std::vector<MethodMetrics>& base,
                              const std::vector<MethodMetrics>& variant,
                              const std::string& base_label,
                              const std::string& variant_label) {
    auto index = [](const std::vector<MethodMetrics>& list, const std::string& label) {
        std::unordered_map<std::string, size_t> by_name;
        for (size_t i = 0; i < list.size(); ++i) {
            auto [it, inserted] = by_name.emplace(list[i].qualified_name, i);
            if (!inserted)
                throw InputError("duplicate method key '" + list[i].qualified_name +
                                 "' in corpus '" + label + "'");
        }
        return by_name;
    };
    auto base_idx = index(base, base_label);
    auto variant_idx = index(variant, variant_label);

    ComparisonReport report;
    report.base_label = base_label;
    report.variant_label = variant_label;
    for (const auto& [name, i] : base_idx) {
        auto it = variant_idx.find(name);
        if (it == variant_idx.end()) report.unmatched_base.push_back(name);
        else report.pairs.push_back(MethodPair{name, base[i], variant[it->second]});
    }
    for (const auto& [name, _] : variant_idx) {
        if (!base_idx.contains(name)) report.unmatched_variant.push_back(name);
    }
    std::sort(report.pairs.begin(), report.pairs.end(),
              [](const MethodPair& a, const MethodPair& b) {
                  return a.qualified_name < b.qualified_name;
              });
    std::sort(report.unmatched_base.begin(), report.unmatched_base.end());
    std::sort(report.unmatched_variant.begin(), report.unmatched_variant.end());
    return report;
}

void compute_aggregates(ComparisonReport& report) {
    report.aggregate_rows.clear();
    if (report.pairs.empty()) return;

    std::vector<std::string> measures = {"CYC", "halstead_volume", "token_entropy"};
    for (const auto& [name, _] : report.pairs.front().base.features.values) {
        measures.push_back(name);
    }
    for (const auto& [model, _] : report.pairs.front().base.scores) {
        bool everywhere = true;
        for (const MethodPair& p : report.pairs) {
            if (!p.base.scores.contains(model) || !p.variant.scores.contains(model)) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) measures.push_back("score:" + model);
    }

    for (const std::string& measure : measures) {
        std::vector<double> base_values, variant_values;
        for (const MethodPair& p : report.pairs) {
            base_values.push_back(measure_value(p.base, measure));
            variant_values.push_back(measure_value(p.variant, measure));
        }
        Aggregate b = aggregate(base_values);
        Aggregate v = aggregate(variant_values);
        report.aggregate_rows.push_back(
            AggregateRow{measure, b.mean, b.stddev, v.mean, v.stddev,
                         delta_percent(b.mean, v.mean)});
    }
}

ComparisonReport build_report(const std::vector<MethodMetrics>& base,
                              const std::vector<MethodMetrics>& variant,
                              const std::string& base_label,
                              const std::string& variant_label) {
    ComparisonReport report = pair_methods(base, variant, base_label, variant_label);
    compute_aggregates(report);
    return report;
}

std::string render_report(const ComparisonReport& report, ReportFormat format,
                          bool precise_deltas) {
    if (format == ReportFormat::csv) {
        std::string out = "measure,base_mean,base_std,variant_mean,variant_std,delta_percent\n";
        for (const AggregateRow& row : report.aggregate_rows) {
            out += row.measure + "," + two_decimals(row.base_mean) + "," +
                   two_decimals(row.base_std) + "," + two_decimals(row.variant_mean) + "," +
                   two_decimals(row.variant_std) + "," +
                   format_delta(row.delta, precise_deltas) + "\n";
        }
        return out;
    }
    if (format == ReportFormat::markdown) {
        std::string out = "# Comparison: " + report.base_label + " vs " + report.variant_label +
                          "\n\n";
        out += "Paired methods: " + std::to_string(report.pairs.size()) + "\n";
        auto list_unmatched = [&out](const std::string& label,
                                     const std::vector<std::string>& names) {
            out += "Unmatched in " + label + ": ";
            if (names.empty()) {
                out += "(none)\n";
                return;
            }
            for (size_t i = 0; i < names.size(); ++i) {
                if (i > 0) out += ", ";
                out += names[i];
            }
            out += "\n";
        };
        list_unmatched(report.base_label, report.unmatched_base);
        list_unmatched(report.variant_label, report.unmatched_variant);
        out += "\n";
        out += "Measure | " + report.base_label + " μ±σ | " + report.variant_label +
               " μ±σ | diff %\n";
        out += "--- | --- | --- | ---\n";
        for (const AggregateRow& row : report.aggregate_rows) {
            out += row.measure + " | " + two_decimals(row.base_mean) + " ± " +
                   two_decimals(row.base_std) + " | " + two_decimals(row.variant_mean) + " ± " +
                   two_decimals(row.variant_std) + " | " +
                   format_delta(row.delta, precise_deltas) + "\n";
        }
        return out;
    }

    nlohmann::json j;
    j["base_label"] = report.base_label;
    j["variant_label"] = report.variant_label;
    j["unmatched_base"] = report.unmatched_base;
    j["unmatched_variant"] = report.unmatched_variant;
    nlohmann::json pairs = nlohmann::json::array();
    for (const MethodPair& p : report.pairs) {
        pairs.push_back({{"qualified_name", p.qualified_name},
                         {"base", metrics_to_json(p.base)},
                         {"variant", metrics_to_json(p.variant)}});
    }
    j["pairs"] = pairs;
    nlohmann::json rows = nlohmann::json::array();
    for (const AggregateRow& row : report.aggregate_rows) {
        nlohmann::json r = {{"measure", row.measure},
                            {"base_mean", row.base_mean},
                            {"base_std", row.base_std},
                            {"variant_mean", row.variant_mean},
                            {"variant_std", row.variant_std},
                            {"delta_display", format_delta(row.delta, precise_deltas)}};
        if (row.delta.has_value()) r["delta_percent"] = *row.delta;
        else r["delta_percent"] = nullptr;
        rows.push_back(r);
    }
    j["aggregates"] = rows;
    return j.dump(2) + "\n";
}

ComparisonReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid report JSON: ") + e.what());
    }
    ComparisonReport report;
    try {
        report.base_label = j.at("base_label").get<std::string>();
        report.variant_label = j.at("variant_label").get<std::string>();
        report.unmatched_base = j.at("unmatched_base").get<std::vector<std::string>>();
        report.unmatched_variant = j.at("unmatched_variant").get<std::vector<std::string>>();
        for (const nlohmann::json& p : j.at("pairs")) {
            report.pairs.push_back(MethodPair{p.at("qualified_name").get<std::string>(),
                                              metrics_from_json(p.at("base")),
                                              metrics_from_json(p.at("variant"))});
        }
        for (const nlohmann::json& r : j.at("aggregates")) {
            AggregateRow row;
            row.measure = r.at("measure").get<std::string>();
            row.base_mean = r.at("base_mean").get<double>();
            row.base_std = r.at("base_std").get<double>();
            row.variant_mean = r.at("variant_mean").get<double>();
            row.variant_std = r.at("variant_std").get<double>();
            if (!r.at("delta_percent").is_null()) row.delta = r.at("delta_percent").get<double>();
            report.aggregate_rows.push_back(row);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid report JSON: ") + e.what());
    }
    return report;
}

}  // namespace readmet
