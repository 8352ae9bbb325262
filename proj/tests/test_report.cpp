#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "influx/families.hpp"
#include "influx/report.hpp"
#include "support.hpp"

using namespace influx;
using nlohmann::json;

TEST_CASE("quantize") {
    CHECK(quantize(0.0) == 0.0);
    CHECK(quantize(1.0) == 1.0);
    CHECK(quantize(0.1 + 0.2) == 0.3);
    CHECK(quantize(1.0 / 3.0) == 0.333333333333);
    CHECK(quantize(-2.0 / 3.0) == -0.666666666667);
    CHECK(quantize(123456789012345.0) == 123456789012000.0);
    CHECK(quantize(quantize(std::numbers::pi)) == quantize(std::numbers::pi));
}

TEST_CASE("display_values") {
    const std::vector<double> v{1.0, 3e-17, -2e-14, 0.5 + 1e-15};
    CHECK(display_values(v) == std::vector<double>{1.0, 0.0, 0.0, 0.5});
    const std::vector<double> tiny{1e-20, 2e-20};
    CHECK(display_values(tiny) == std::vector<double>{1e-20, 2e-20});
    CHECK(display_values(std::vector<double>{}).empty());
}

TEST_CASE("kendall_tau") {
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> reversed{4, 3, 2, 1};
    const std::vector<double> flat{2, 2, 2, 2};
    CHECK(kendall_tau(a, a) == 1.0);
    CHECK(kendall_tau(a, reversed) == -1.0);
    CHECK(kendall_tau(flat, flat) == 1.0);
    CHECK(std::isnan(kendall_tau(a, flat)));
    // One discordant pair out of six; tau-b with ties in one vector.
    CHECK(kendall_tau(a, std::vector<double>{1, 3, 2, 4}) == doctest::Approx(4.0 / 6.0));
    const std::vector<double> tied{1, 1, 2, 3};
    CHECK(kendall_tau(a, tied) == doctest::Approx(5.0 / std::sqrt(6.0 * 5.0)));
}

TEST_CASE("compute report layout") {
    const auto g = build(Line{3});
    const auto result = compute(to_matrix(g), PwpConfig{1.0, 1e-12});
    const GraphSummary summary{3, 2, "", {}};
    const json report = compute_report(result, summary, {});
    CHECK(report.at("command") == "compute");
    CHECK(report.at("method").at("name") == "pwp");
    CHECK(report.at("graph").at("n") == 3);
    CHECK(report.at("graph").at("edges") == 2);
    CHECK_FALSE(report.contains("T"));
    CHECK(report.at("diagnostics").contains("terms_used"));

    const auto d = report.at("dependence").get<std::vector<double>>();
    CHECK(d[0] == 0.0);
    CHECK(std::abs(d[1] - 1.0 / std::expm1(1.0)) < 1e-12);
    CHECK(std::abs(d[2] - 1.5 / std::expm1(1.0)) < 1e-12);
    CHECK(report.at("ranking_by_dependence")[0].at("vertex") == 3);
    CHECK(report.at("ranking_by_influence")[0].at("vertex") == 1);

    const json scaled = compute_report(result, summary, {true, true});
    CHECK(scaled.at("dependence").get<std::vector<double>>() == std::vector<double>{0.0, 1.0, 1.5});
    CHECK(scaled.at("influence").get<std::vector<double>>() == std::vector<double>{1.5, 1.0, 0.0});
    CHECK(scaled.at("T").size() == 3);
    CHECK(scaled.at("paper_scale") == true);
}

TEST_CASE("rankings follow the printed scores") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = test::random_graph(rng, 2 + trial % 6, 12, {0.5, 1.0, -1.0});
        const auto result = compute(to_matrix(g), PwpConfig{});
        const json report = compute_report(result, {g.size(), g.edges().size(), "", {}}, {});
        for (const char* key : {"dependence", "influence"}) {
            const auto scores = report.at(key).get<std::vector<double>>();
            const auto ranking = report.at(std::string("ranking_by_") + key);
            const auto expected = rank_vertices(scores);
            REQUIRE(ranking.size() == expected.size());
            for (std::size_t r = 0; r < expected.size(); ++r) {
                CHECK(ranking[r].at("vertex").get<std::size_t>() == expected[r].vertex);
                CHECK(ranking[r].at("score").get<double>() == scores[expected[r].vertex - 1]);
            }
        }
    }
}

TEST_CASE("pagerank report carries the stationary vector") {
    const Matrix c4 = to_matrix(build(Cycle{4}));
    const auto result = compute(c4, PageRankConfig{});
    const json report = compute_report(result, {4, 4, "cycle", {}}, {});
    for (double x : report.at("dependence").get<std::vector<double>>()) CHECK(x == 0.25);
    for (double x : report.at("eqdf_row_sums").get<std::vector<double>>()) CHECK(x == 1.0);
    CHECK(report.at("diagnostics").contains("iterations"));
    CHECK(report.at("graph").at("family") == "cycle");
}

TEST_CASE("star labels") {
    const FamilySpec spec = Star{3};
    const auto g = build(spec);
    const auto result = compute(to_matrix(g), PwpConfig{});
    const json report = compute_report(result, {4, 6, "star", vertex_labels(spec)}, {});
    CHECK(report.at("graph").at("vertices") == json{1, 2, 3, 0});
    CHECK(report.at("ranking_by_influence")[0].at("vertex") == 0);
}

TEST_CASE("JSON round trip is byte identical") {
    std::mt19937_64 rng(23);
    std::vector<IndirectInfluenceResult> results;
    const auto g = test::random_graph(rng, 5, 10, {0.5, 1.0, 2.0});
    const Matrix d = to_matrix(g);
    results.push_back(compute(d, PwpConfig{0.7, 1e-12}));
    results.push_back(compute(d, MicmacConfig{3}));
    results.push_back(compute(web_normalize(g), PageRankConfig{}));
    const GraphSummary summary{5, g.edges().size(), "", {}};

    std::vector<json> reports{compare_report(results, summary, {false, true}),
                              compute_report(results[0], summary, {true, true})};
    const auto mc = monte_carlo_pwp(d, 1.0, 500, 3);
    reports.push_back(montecarlo_report(mc, pwp_matrix(d, 1.0), 1.0, 3, summary));
    for (const json& report : reports) {
        const std::string text = canonical_json(report);
        CHECK(text.back() == '\n');
        CHECK(canonical_json(json::parse(text)) == text);
    }
}

TEST_CASE("compare report") {
    const Matrix c5 = to_matrix(build(Cycle{5}));
    std::vector<IndirectInfluenceResult> results{compute(c5, PwpConfig{}), compute(c5, MicmacConfig{}),
                                                 compute(c5, PageRankConfig{})};
    const json report = compare_report(results, {5, 5, "cycle", {}}, {});
    CHECK(report.at("results").size() == 3);
    const auto& agreement = report.at("rank_agreement").at("dependence");
    REQUIRE(agreement.size() == 3);
    for (const auto& pair : agreement) CHECK(pair.at("kendall_tau") == 1.0);
    CHECK(agreement[0].at("methods") == json{"pwp", "micmac"});

    std::ostringstream csv;
    write_vectors_csv(csv, report);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "method,vertex,d,f");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 15);
}

TEST_CASE("montecarlo report") {
    const auto mc = monte_carlo_pwp(Matrix::identity(3), 1.0, 100, 5);
    const json report = montecarlo_report(mc, pwp_matrix(Matrix::identity(3), 1.0), 1.0, 5, {3, 3, "", {}});
    CHECK(report.at("max_abs_error") == 0.0);
    CHECK(report.at("error_table").size() == 9);
    CHECK(report.at("samples") == 100);
    std::ostringstream csv;
    write_error_table_csv(csv, report);
    CHECK(csv.str().rfind("row,col,estimate,exact,abs_error\n1,1,1,1,0\n", 0) == 0);
}
