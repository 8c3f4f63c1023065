#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "readmet/errors.hpp"
#include "readmet/report.hpp"

using namespace readmet;

namespace {

MethodMetrics make_metrics(const std::string& name, double loc, int cyc, double score_value) {
    MethodMetrics m;
    m.qualified_name = name;
    m.file = "f.java";
    m.features.values = {{"loc", loc}, {"stops_total", loc / 2.0}};
    m.complexity.cyc = cyc;
    m.complexity.halstead_volume = loc * 10.0;
    m.complexity.token_entropy_bits = 3.0;
    m.scores["m"] = score_value;
    return m;
}

}  // namespace

TEST_CASE("aggregate mean and sample deviation") {
    std::vector<double> v = {1.0, 2.0, 3.0};
    Aggregate a = aggregate(v);
    CHECK(a.mean == 2.0);
    CHECK(a.stddev == 1.0);
    CHECK_FALSE(a.single);

    std::vector<double> one = {5.0};
    a = aggregate(one);
    CHECK(a.mean == 5.0);
    CHECK(a.stddev == 0.0);
    CHECK(a.single);

    std::vector<double> none;
    CHECK_THROWS_AS(aggregate(none), InputError);
}

TEST_CASE("aggregation is exactly permutation invariant") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1000.0, 1000.0);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t n = 2 + rng() % 20;
        std::vector<double> values(n);
        for (double& v : values) v = dist(rng);
        Aggregate base = aggregate(values);
        std::shuffle(values.begin(), values.end(), rng);
        Aggregate shuffled = aggregate(values);
        REQUIRE(base.mean == shuffled.mean);
        REQUIRE(base.stddev == shuffled.stddev);
    }
}

TEST_CASE("percent deltas") {
    CHECK(delta_percent(4.0, 1.0) == doctest::Approx(-75.0));
    CHECK(delta_percent(2.0, 5.0) == doctest::Approx(150.0));
    CHECK(delta_percent(3.0, 3.0) == doctest::Approx(0.0));
    CHECK_FALSE(delta_percent(0.0, 5.0).has_value());
    CHECK_FALSE(delta_percent(0.0, 0.0).has_value());
}

TEST_CASE("delta display uses two significant figures, half away from zero") {
    CHECK(format_delta(-75.0) == "-75");
    CHECK(format_delta(150.0) == "+150");
    CHECK(format_delta(-66.666) == "-67");
    CHECK(format_delta(0.0) == "0");
    CHECK(format_delta(6.46) == "+6.5");
    CHECK(format_delta(-0.034) == "-0.034");
    CHECK(format_delta(151.1) == "+150");
    CHECK(format_delta(155.0) == "+160");
    CHECK(format_delta(-155.0) == "-160");
    CHECK(format_delta(99.9) == "+100");
    CHECK(format_delta(0.95) == "+0.95");
    CHECK(format_delta(9.99) == "+10");
    CHECK(format_delta(std::nullopt) == "n/a");

    CHECK(format_delta(-66.666, true) == "-66.666");
    CHECK(format_delta(std::nullopt, true) == "n/a");
}

TEST_CASE("delta antisymmetry: swapping corpora inverts the direction") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(0.1, 100.0);
    for (int trial = 0; trial < 1000; ++trial) {
        double base = dist(rng);
        double variant = dist(rng);
        auto forward = delta_percent(base, variant);
        auto backward = delta_percent(variant, base);
        REQUIRE(forward.has_value());
        REQUIRE(backward.has_value());
        // d' = -100 d / (100 + d)
        double expected = -100.0 * *forward / (100.0 + *forward);
        REQUIRE(*backward == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("measure resolution") {
    MethodMetrics m = make_metrics("a/0", 10.0, 4, 0.25);
    CHECK(measure_value(m, "CYC") == 4.0);
    CHECK(measure_value(m, "halstead_volume") == 100.0);
    CHECK(measure_value(m, "token_entropy") == 3.0);
    CHECK(measure_value(m, "loc") == 10.0);
    CHECK(measure_value(m, "score:m") == 0.25);
    CHECK_THROWS_AS(measure_value(m, "score:missing"), InputError);
    CHECK_THROWS_AS(measure_value(m, "unheard_of"), InputError);
}

TEST_CASE("pairing by qualified name") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 2, 0.5),
                                       make_metrics("b/1", 20, 3, 0.5),
                                       make_metrics("only_base/0", 5, 1, 0.5)};
    std::vector<MethodMetrics> variant = {make_metrics("b/1", 12, 2, 0.6),
                                          make_metrics("a/0", 8, 2, 0.7),
                                          make_metrics("only_variant/0", 4, 1, 0.8)};
    ComparisonReport report = pair_methods(base, variant, "before", "after");
    REQUIRE(report.pairs.size() == 2);
    CHECK(report.pairs[0].qualified_name == "a/0");
    CHECK(report.pairs[1].qualified_name == "b/1");
    CHECK(report.pairs[0].base.features.get("loc") == 10.0);
    CHECK(report.pairs[0].variant.features.get("loc") == 8.0);
    CHECK(report.unmatched_base == std::vector<std::string>{"only_base/0"});
    CHECK(report.unmatched_variant == std::vector<std::string>{"only_variant/0"});
}

TEST_CASE("duplicate keys within one corpus are an error") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 2, 0.5),
                                       make_metrics("a/0", 11, 2, 0.5)};
    try {
        pair_methods(base, {}, "x", "y");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        std::string what = e.what();
        CHECK(what.find("a/0") != std::string::npos);
        CHECK(what.find("x") != std::string::npos);
    }
}

TEST_CASE("aggregate rows cover every measure in fixed order") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 2, 0.5),
                                       make_metrics("b/1", 20, 4, 0.3)};
    std::vector<MethodMetrics> variant = {make_metrics("a/0", 5, 1, 0.9),
                                          make_metrics("b/1", 10, 2, 0.7)};
    ComparisonReport report = build_report(base, variant, "before", "after");
    REQUIRE(report.aggregate_rows.size() == 6);
    CHECK(report.aggregate_rows[0].measure == "CYC");
    CHECK(report.aggregate_rows[1].measure == "halstead_volume");
    CHECK(report.aggregate_rows[2].measure == "token_entropy");
    CHECK(report.aggregate_rows[3].measure == "loc");
    CHECK(report.aggregate_rows[4].measure == "stops_total");
    CHECK(report.aggregate_rows[5].measure == "score:m");

    const AggregateRow& cyc = report.aggregate_rows[0];
    CHECK(cyc.base_mean == 3.0);
    CHECK(cyc.variant_mean == 1.5);
    CHECK(cyc.base_std == doctest::Approx(std::sqrt(2.0)));
    CHECK(*cyc.delta == doctest::Approx(-50.0));

    const AggregateRow& loc = report.aggregate_rows[3];
    CHECK(loc.base_mean == 15.0);
    CHECK(loc.variant_mean == 7.5);
}

TEST_CASE("zero-base means render as n/a") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 1, 0.5)};
    std::vector<MethodMetrics> variant = {make_metrics("a/0", 12, 1, 0.5)};
    base[0].features.values.push_back({"num_loops", 0.0});
    variant[0].features.values.push_back({"num_loops", 2.0});
    ComparisonReport report = build_report(base, variant, "x", "y");
    const AggregateRow* loops = nullptr;
    for (const AggregateRow& row : report.aggregate_rows) {
        if (row.measure == "num_loops") loops = &row;
    }
    REQUIRE(loops != nullptr);
    CHECK_FALSE(loops->delta.has_value());
    std::string md = render_report(report, ReportFormat::markdown);
    CHECK(md.find("num_loops | 0.00 ± 0.00 | 2.00 ± 0.00 | n/a") != std::string::npos);
}

TEST_CASE("markdown rendering") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 2, 0.5),
                                       make_metrics("b/1", 20, 4, 0.3)};
    std::vector<MethodMetrics> variant = {make_metrics("a/0", 5, 1, 0.9),
                                          make_metrics("b/1", 10, 2, 0.7)};
    ComparisonReport report = build_report(base, variant, "before", "after");
    std::string md = render_report(report, ReportFormat::markdown);
    CHECK(md.find("# Comparison: before vs after") != std::string::npos);
    CHECK(md.find("Paired methods: 2") != std::string::npos);
    CHECK(md.find("Unmatched in before: (none)") != std::string::npos);
    CHECK(md.find("Measure | before μ±σ | after μ±σ | diff %") != std::string::npos);
    CHECK(md.find("CYC | 3.00 ± 1.41 | 1.50 ± 0.71 | -50") != std::string::npos);
}

TEST_CASE("markdown lists unmatched methods") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 2, 0.5),
                                       make_metrics("gone/0", 9, 1, 0.5)};
    std::vector<MethodMetrics> variant = {make_metrics("a/0", 5, 1, 0.9)};
    std::string md = render_report(build_report(base, variant, "x", "y"),
                                   ReportFormat::markdown);
    CHECK(md.find("Unmatched in x: gone/0") != std::string::npos);
    CHECK(md.find("Unmatched in y: (none)") != std::string::npos);
}

TEST_CASE("csv rendering") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 2, 0.5)};
    std::vector<MethodMetrics> variant = {make_metrics("a/0", 5, 1, 0.9)};
    std::string csv = render_report(build_report(base, variant, "x", "y"), ReportFormat::csv);
    CHECK(csv.find("measure,base_mean,base_std,variant_mean,variant_std,delta_percent\n") == 0);
    CHECK(csv.find("CYC,2.00,0.00,1.00,0.00,-50\n") != std::string::npos);
}

TEST_CASE("json rendering parses back to the same report") {
    std::vector<MethodMetrics> base = {make_metrics("a/0", 10, 2, 0.5),
                                       make_metrics("b/1", 20, 4, 0.3)};
    std::vector<MethodMetrics> variant = {make_metrics("a/0", 5, 1, 0.9),
                                          make_metrics("b/1", 10, 2, 0.7)};
    ComparisonReport report = build_report(base, variant, "before", "after");
    std::string text = render_report(report, ReportFormat::json);
    ComparisonReport back = report_from_json(text);
    CHECK(back.base_label == report.base_label);
    CHECK(back.pairs.size() == report.pairs.size());
    REQUIRE(back.aggregate_rows.size() == report.aggregate_rows.size());
    for (size_t i = 0; i < back.aggregate_rows.size(); ++i) {
        CHECK(back.aggregate_rows[i].measure == report.aggregate_rows[i].measure);
        CHECK(back.aggregate_rows[i].base_mean == report.aggregate_rows[i].base_mean);
        CHECK(back.aggregate_rows[i].variant_std == report.aggregate_rows[i].variant_std);
    }
    // rendering the parsed report reproduces the document byte for byte
    CHECK(render_report(back, ReportFormat::json) == text);
}

TEST_CASE("method metrics JSON round trip") {
    MethodMetrics m = make_metrics("rt/2", 14.0, 6, 0.125);
    m.complexity.decision_points.ifs = 3;
    m.complexity.decision_points.loops = 2;
    MethodMetrics back = metrics_from_json(metrics_to_json(m));
    CHECK(back.qualified_name == m.qualified_name);
    CHECK(back.file == m.file);
    CHECK(back.features.values == m.features.values);
    CHECK(back.complexity.cyc == m.complexity.cyc);
    CHECK(back.complexity.decision_points == m.complexity.decision_points);
    CHECK(back.complexity.halstead_volume == m.complexity.halstead_volume);
    CHECK(back.scores == m.scores);
}

TEST_CASE("report order does not depend on input order") {
    std::vector<MethodMetrics> base = {make_metrics("z/0", 10, 2, 0.5),
                                       make_metrics("a/0", 20, 4, 0.3),
                                       make_metrics("m/1", 15, 3, 0.4)};
    std::vector<MethodMetrics> variant = {make_metrics("m/1", 9, 2, 0.6),
                                          make_metrics("z/0", 5, 1, 0.9),
                                          make_metrics("a/0", 10, 2, 0.7)};
    std::string forward = render_report(build_report(base, variant, "x", "y"),
                                        ReportFormat::json);
    std::reverse(base.begin(), base.end());
    std::reverse(variant.begin(), variant.end());
    std::string reversed = render_report(build_report(base, variant, "x", "y"),
                                         ReportFormat::json);
    CHECK(forward == reversed);
}
