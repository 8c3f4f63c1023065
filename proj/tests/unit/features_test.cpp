#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "java_gen.hpp"
#include "readmet/errors.hpp"
#include "readmet/features.hpp"
#include "readmet/method_model.hpp"

using namespace readmet;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

MethodUnit first_method(const std::string& source) {
    SourceUnit unit = extract_methods(source);
    REQUIRE_FALSE(unit.methods.empty());
    return unit.methods[0];
}

FeatureVector features_of(const std::string& source, FeatureConfig config = {}) {
    return extract_features(first_method(source), config);
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int n = 0;
        path = "features_test_tmp_" + std::to_string(n++) + ".txt";
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("catalogue order is fixed") {
    std::vector<std::string> expected = {
        "stops_total",     "avg_stops_per_line",
        "parens_brackets_total", "avg_brackets_parens_per_line",
        "identifiers_total", "avg_identifiers_per_line",
        "avg_line_length", "max_line_length",
        "loc",             "num_args",
        "max_nesting_depth", "num_loops",
        "num_comments",    "num_comment_lines",
        "num_spaces",      "num_variable_declarations",
        "num_statements",  "num_expressions"};
    CHECK(feature_catalogue(false) == expected);
    expected.push_back("dictionary_word_ratio");
    CHECK(feature_catalogue(true) == expected);

    FeatureVector fv = features_of("void f() {}");
    REQUIRE(fv.values.size() == 18);
    for (size_t i = 0; i < fv.values.size(); ++i) {
        CHECK(fv.values[i].first == feature_catalogue(false)[i]);
    }
}

TEST_CASE("golden before-method features") {
    std::string src = read_file(std::string(TESTDATA_DIR) + "/golden/oo/SendToTcp.java");
    FeatureVector fv = extract_features(first_method(src), FeatureConfig{});

    CHECK(fv.get("stops_total") == 4.0);
    CHECK(fv.get("identifiers_total") == 24.0);
    CHECK(fv.get("parens_brackets_total") == 16.0);
    CHECK(fv.get("loc") == 11.0);
    CHECK(fv.get("num_args") == 2.0);
    CHECK(fv.get("max_nesting_depth") == 2.0);
    CHECK(fv.get("num_loops") == 1.0);
    CHECK(fv.get("num_comments") == 0.0);
    CHECK(fv.get("num_variable_declarations") == 4.0);
    CHECK(fv.get("num_statements") == 4.0);
    CHECK(fv.get("num_expressions") == 6.0);
    CHECK(fv.get("max_line_length") == 55.0);
    CHECK(fv.get("avg_stops_per_line") == doctest::Approx(4.0 / 11.0));
    CHECK(fv.get("avg_identifiers_per_line") == doctest::Approx(24.0 / 11.0));
    CHECK(fv.get("avg_brackets_parens_per_line") == doctest::Approx(16.0 / 11.0));
    CHECK(fv.line_count == 11);
}

TEST_CASE("golden after-method features") {
    std::string src = read_file(std::string(TESTDATA_DIR) + "/golden/rp/SendToTcp.java");
    FeatureVector fv = extract_features(first_method(src), FeatureConfig{});

    CHECK(fv.get("stops_total") == 7.0);
    CHECK(fv.get("identifiers_total") == 18.0);
    CHECK(fv.get("parens_brackets_total") == 12.0);
    CHECK(fv.get("loc") == 7.0);
    CHECK(fv.get("max_nesting_depth") == 0.0);
    CHECK(fv.get("num_loops") == 0.0);
    CHECK(fv.get("num_variable_declarations") == 0.0);
    CHECK(fv.get("num_statements") == 1.0);
    CHECK(fv.get("avg_stops_per_line") == doctest::Approx(1.0));
}

TEST_CASE("the method's own braces do not count as brackets") {
    FeatureVector fv = features_of("void f() {}");
    // signature parens count, the body braces do not
    CHECK(fv.get("parens_brackets_total") == 2.0);
    fv = features_of("void f() {\n\tg();\n}");
    CHECK(fv.get("parens_brackets_total") == 4.0);
}

TEST_CASE("line lengths ignore trailing whitespace, tabs count one") {
    FeatureVector fv = features_of("void f() {   \n\tg();\n}");
    // "void f() {" = 10, "\tg();" = 5, "}" = 1
    CHECK(fv.get("max_line_length") == 10.0);
    CHECK(fv.get("avg_line_length") == doctest::Approx(16.0 / 3.0));
}

TEST_CASE("space counting covers code lines; tabs are not spaces") {
    FeatureVector fv = features_of("void f() {\n\tint a = 1;\n}");
    // "void f() {" has 2 spaces, "\tint a = 1;" has 3, "}" has 0
    CHECK(fv.get("num_spaces") == 5.0);
}

TEST_CASE("comment features") {
    std::string src =
        "void f() {\n"
        "\t// line one\n"
        "\tg(); /* tail\n"
        "\tstill comment */\n"
        "\th();\n"
        "}";
    FeatureVector fv = features_of(src);
    CHECK(fv.get("num_comments") == 2.0);
    CHECK(fv.get("num_comment_lines") == 3.0);
}

TEST_CASE("comment characters can be excluded from character counts") {
    std::string src = "void f() {\n\tg(); // trailing   comment\n}";
    FeatureConfig with;
    FeatureConfig without;
    without.include_comments_in_char_counts = false;
    FeatureVector a = features_of(src, with);
    FeatureVector b = features_of(src, without);
    CHECK(a.get("max_line_length") == 27.0);
    CHECK(b.get("max_line_length") == 10.0);
    CHECK(a.get("num_spaces") > b.get("num_spaces"));
    // comment counters themselves are unaffected
    CHECK(a.get("num_comments") == 1.0);
    CHECK(b.get("num_comments") == 1.0);
}

TEST_CASE("blank lines and the signature line are configurable denominators") {
    std::string src = "void f() {\n\n\tg();\n\n\th();\n}";
    FeatureConfig keep;
    FeatureVector a = features_of(src, keep);
    CHECK(a.line_count == 6);
    CHECK(a.get("loc") == 6.0);

    FeatureConfig no_blanks;
    no_blanks.count_blank_lines = false;
    FeatureVector b = features_of(src, no_blanks);
    CHECK(b.line_count == 4);
    CHECK(b.get("loc") == 4.0);

    FeatureConfig no_sig = no_blanks;
    no_sig.include_signature_line = false;
    FeatureVector c = features_of(src, no_sig);
    CHECK(c.line_count == 3);
    CHECK(c.get("avg_stops_per_line") == 0.0);
}

TEST_CASE("nesting depth") {
    CHECK(max_nesting_depth(first_method("void f() {}")) == 0);
    CHECK(max_nesting_depth(first_method("void f() {\n\tif (a) {\n\t\tg();\n\t}\n}")) == 1);
    CHECK(max_nesting_depth(first_method(
              "void f() {\n\tif (a) {\n\t\twhile (b) {\n\t\t\tg();\n\t\t}\n\t}\n}")) == 2);
    // braces in strings do not nest
    CHECK(max_nesting_depth(first_method("void f() {\n\tString s = \"{{{\";\n}")) == 0);
}

TEST_CASE("loop counting covers all three loop forms") {
    std::string src =
        "void f() {\n"
        "\tfor (int i = 0; i < 3; i++) {}\n"
        "\tfor (String s : xs) {}\n"
        "\twhile (a) {}\n"
        "\tdo {\n\t\tg();\n\t} while (b);\n"
        "}";
    FeatureVector fv = features_of(src);
    CHECK(fv.get("num_loops") == 4.0);
}

TEST_CASE("variable declarations") {
    auto decls = [&](const std::string& body) {
        return features_of("void f() {\n" + body + "\n}").get("num_variable_declarations");
    };
    CHECK(decls("\tint a = 1;") == 1.0);
    CHECK(decls("\tint a = 1, b = 2;") == 2.0);
    CHECK(decls("\tfinal String s = \"x\";") == 1.0);
    CHECK(decls("\tMap<String, List<Integer>> m = new HashMap<>();") == 1.0);
    CHECK(decls("\tint[] xs = {1, 2};") == 1.0);
    CHECK(decls("\tfor (int i = 0; i < 3; i++) {}") == 1.0);
    CHECK(decls("\tfor (String s : xs) {}") == 1.0);
    CHECK(decls("\ta = b;") == 0.0);
    CHECK(decls("\tg(a, b);") == 0.0);
    CHECK(decls("\treturn a < b ? a : b;") == 0.0);
}

TEST_CASE("statements and expressions") {
    FeatureVector fv = features_of("void f() {\n\tint a = b + c * d;\n\tg(a == 1);\n}");
    CHECK(fv.get("num_statements") == 2.0);
    // ops: + * == plus the two statements
    CHECK(fv.get("num_expressions") == 5.0);

    // assignment, increment and negation operators do not count; a unary
    // minus is lexically indistinguishable from subtraction and does
    fv = features_of("void f() {\n\ta = -b;\n\ta += 1;\n\ta++;\n\t!flag;\n}");
    CHECK(fv.get("num_expressions") == 5.0);
}

TEST_CASE("identifier splitting") {
    using Words = std::vector<std::string>;
    CHECK(split_identifier("sendToTCP") == Words{"send", "to", "tcp"});
    CHECK(split_identifier("connectionID") == Words{"connection", "id"});
    CHECK(split_identifier("snake_case_name") == Words{"snake", "case", "name"});
    CHECK(split_identifier("HTMLParser") == Words{"html", "parser"});
    CHECK(split_identifier("parse2Json") == Words{"parse", "2", "json"});
    CHECK(split_identifier("x") == Words{"x"});
    CHECK(split_identifier("$val_ue") == Words{"val", "ue"});
}

TEST_CASE("dictionary ratio over identifier occurrences") {
    Dictionary dict = {"send", "to"};
    std::string src = "void sendToTCP(int id) {\n\tsendToTCP(id);\n}";
    MethodUnit m = first_method(src);
    // occurrences: sendToTCP (send to tcp) twice, id twice -> words: 2*(1+1+0) + 0 + 0
    CHECK(dictionary_word_ratio(m, dict) == doctest::Approx(4.0 / 8.0));

    Dictionary empty;
    CHECK(dictionary_word_ratio(m, empty) == 0.0);
}

TEST_CASE("dictionary feature appears only when configured") {
    TempFile dict("send\nto\n\nSEND\n");
    FeatureConfig config;
    config.dictionary_path = dict.path;
    Dictionary loaded = load_dictionary(dict.path);
    CHECK(loaded.size() == 2);  // lowercased and deduplicated, blank skipped

    std::string src = read_file(std::string(TESTDATA_DIR) + "/golden/oo/SendToTcp.java");
    FeatureVector fv = extract_features(first_method(src), config, &loaded);
    REQUIRE(fv.values.size() == 19);
    CHECK(fv.values.back().first == "dictionary_word_ratio");
    CHECK(fv.has("dictionary_word_ratio"));

    FeatureVector plain = extract_features(first_method(src), FeatureConfig{});
    CHECK_FALSE(plain.has("dictionary_word_ratio"));
}

TEST_CASE("missing dictionary file raises InputError") {
    CHECK_THROWS_AS(load_dictionary("does_not_exist_anywhere.txt"), InputError);
}

TEST_CASE("reindentation leaves token counters alone") {
    for (uint32_t seed = 0; seed < 300; ++seed) {
        testgen::JavaGen gen(seed);
        std::string method = gen.random_method("m", 1 + gen.pick(6));
        FeatureVector a = features_of(method);
        FeatureVector b = features_of(testgen::reindent_with_spaces(method));
        for (const char* name :
             {"stops_total", "identifiers_total", "parens_brackets_total", "num_loops",
              "num_statements", "num_expressions", "num_variable_declarations", "loc",
              "max_nesting_depth", "num_comments"}) {
            REQUIRE(a.get(name) == b.get(name));
        }
        // whitespace-derived features move: four spaces replace each tab
        REQUIRE(b.get("num_spaces") >= a.get("num_spaces"));
    }
}

TEST_CASE("added comments only move comment and character features") {
    for (uint32_t seed = 1000; seed < 1200; ++seed) {
        testgen::JavaGen gen(seed);
        std::string method = gen.random_method("m", 1 + gen.pick(6));
        FeatureVector a = features_of(method);
        FeatureVector b = features_of(testgen::append_line_comments(method));
        for (const char* name :
             {"stops_total", "identifiers_total", "parens_brackets_total", "num_loops",
              "num_statements", "num_expressions", "num_variable_declarations", "loc"}) {
            REQUIRE(a.get(name) == b.get(name));
        }
        REQUIRE(b.get("num_comments") > 0.0);
        REQUIRE(b.get("num_comment_lines") == b.get("num_comments"));
    }
}

TEST_CASE("pure count features are additive over concatenated bodies") {
    for (uint32_t seed = 0; seed < 300; ++seed) {
        testgen::JavaGen gen(seed);
        auto a_body = gen.body(1 + gen.pick(4));
        auto b_body = gen.body(1 + gen.pick(4));
        auto joined = a_body;
        joined.insert(joined.end(), b_body.begin(), b_body.end());

        FeatureVector e = features_of(testgen::JavaGen::render("e", {}));
        FeatureVector a = features_of(testgen::JavaGen::render("a", a_body));
        FeatureVector b = features_of(testgen::JavaGen::render("b", b_body));
        FeatureVector c = features_of(testgen::JavaGen::render("c", joined));

        for (const char* name :
             {"stops_total", "identifiers_total", "parens_brackets_total", "num_loops",
              "num_statements", "num_expressions", "num_variable_declarations", "num_comments",
              "num_spaces", "loc"}) {
            double lhs = c.get(name) - e.get(name);
            double rhs = (a.get(name) - e.get(name)) + (b.get(name) - e.get(name));
            REQUIRE(lhs == rhs);
        }
    }
}
