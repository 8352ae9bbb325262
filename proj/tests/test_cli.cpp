#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;

    json report() const { return json::parse(out); }
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = influx::cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("influx_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

std::vector<double> vec(const json& j) { return j.get<std::vector<double>>(); }

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("compute") {
    TempDir dir;
    const auto line3 = dir.write("line3.csv", "1,2,1\n2,3,1\n");

    const auto pwp = run({"compute", "--method", "pwp", "--lambda", "1", line3});
    REQUIRE(pwp.code == 0);
    const auto d = vec(pwp.report().at("dependence"));
    CHECK(d[0] == 0.0);
    CHECK(std::abs(d[1] - 0.582) < 5e-4);
    CHECK(std::abs(d[2] - 0.873) < 5e-4);

    const auto scaled = run({"compute", "--method", "pwp", "--lambda", "1", "--paper-scale", line3});
    REQUIRE(scaled.code == 0);
    CHECK(vec(scaled.report().at("dependence")) == std::vector<double>{0.0, 1.0, 1.5});
    CHECK(vec(scaled.report().at("influence")) == std::vector<double>{1.5, 1.0, 0.0});

    const auto micmac = run({"compute", "--method", "micmac", "-k", "4", line3});
    REQUIRE(micmac.code == 0);
    CHECK(vec(micmac.report().at("dependence")) == std::vector<double>{0, 0, 0});
    CHECK(vec(micmac.report().at("influence")) == std::vector<double>{0, 0, 0});

    const auto pagerank = run({"compute", "--method", "pagerank", "-p", "0.86", line3});
    REQUIRE(pagerank.code == 0);
    const auto pd = vec(pagerank.report().at("dependence"));
    CHECK(std::abs(pd[0] - 0.18) < 0.005);
    CHECK(std::abs(pd[1] - 0.34) < 0.005);
    CHECK(std::abs(pd[2] - 0.48) < 0.005);

    const auto with_matrix = run({"compute", "--method", "pwp", "--emit-matrix", line3});
    CHECK(with_matrix.report().at("T").size() == 3);
    CHECK_FALSE(pwp.report().contains("T"));

    const auto csv = run({"compute", "--method", "pwp", "--paper-scale", "--csv", line3});
    CHECK(csv.out == "vertex,d,f\n1,0,1.5\n2,1,1\n3,1.5,0\n");

    const auto to_file = run({"compute", "--method", "pwp", "-o", dir.path("r.json"),
                              "--matrix-out", dir.path("t.txt"), line3});
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    std::ifstream written(dir.path("r.json"));
    const std::string file_text{std::istreambuf_iterator<char>(written), {}};
    CHECK(file_text == pwp.out);
    CHECK(std::filesystem::exists(dir.path("t.txt")));

    const auto matrix_input = run({"compute", "--method", "pwp", "--format", "matrix", dir.path("t.txt")});
    CHECK(matrix_input.code == 0);
}

TEST_CASE("compute is deterministic") {
    TempDir dir;
    const auto g = dir.write("g.csv", "1,2,0.5\n2,3,1.25\n3,1,-0.75\n2,2,0.3\n");
    for (const char* method : {"pwp", "micmac", "pagerank"}) {
        const auto first = run({"compute", "--method", method, g});
        const auto second = run({"compute", "--method", method, g});
        if (std::string(method) == "pagerank") {
            CHECK(first.code == 3);
        } else {
            CHECK(first.code == 0);
        }
        CHECK(first.out == second.out);
    }
}

TEST_CASE("compare") {
    TempDir dir;
    const auto line3 = dir.write("line3.csv", "1,2,1\n2,3,1\n");
    const auto l3 = run({"compare", line3});
    REQUIRE(l3.code == 0);
    const auto report = l3.report();
    REQUIRE(report.at("results").size() == 3);
    for (const auto& r : report.at("results")) {
        const std::string name = r.at("method").at("name");
        if (name == "micmac") continue;
        CHECK(r.at("ranking_by_dependence")[0].at("vertex") == 3);
    }

    const auto c5 = run({"compare", "--family", "cycle", "-n", "5"});
    REQUIRE(c5.code == 0);
    const auto c5_report = c5.report();
    std::vector<std::vector<double>> rankings;
    for (const auto& r : c5_report.at("results")) {
        std::vector<double> order;
        for (const auto& e : r.at("ranking_by_dependence")) order.push_back(e.at("vertex"));
        rankings.push_back(order);
        const auto d = vec(r.at("dependence"));
        CHECK(std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end());
    }
    CHECK(rankings[0] == rankings[1]);
    CHECK(rankings[1] == rankings[2]);
    for (const auto& pair : c5_report.at("rank_agreement").at("dependence")) CHECK(pair.at("kendall_tau") == 1.0);

    const auto star = run({"compare", "--family", "star", "-n", "4", "--web-normalize"});
    REQUIRE(star.code == 0);
    for (const auto& r : star.report().at("results")) {
        const std::string name = r.at("method").at("name");
        if (name == "pwp") CHECK(r.at("ranking_by_influence")[0].at("vertex") == 0);
        if (name == "pagerank") CHECK(r.at("ranking_by_dependence")[0].at("vertex") == 0);
    }

    const auto two = run({"compare", "--method", "pwp", "--method", "micmac", line3});
    CHECK(two.report().at("results").size() == 2);
    CHECK(two.report().at("rank_agreement").at("dependence").size() == 1);

    const auto csv = run({"compare", "--csv", line3});
    CHECK(csv.out.rfind("method,vertex,d,f\n", 0) == 0);
    CHECK(line_count(csv.out) == 10);
}

TEST_CASE("generate") {
    CHECK(line_count(run({"generate", "line", "-n", "3"}).out) == 2);
    CHECK(line_count(run({"generate", "star", "-n", "4"}).out) == 8);
    CHECK(line_count(run({"generate", "jordan", "-n", "3", "-a", "0.5"}).out) == 5);
    CHECK(run({"generate", "cycle", "-n", "3"}).out == "1,2,1\n2,3,1\n3,1,1\n");
    CHECK(run({"generate", "line", "-n", "0"}).code == 2);
    CHECK(run({"generate", "wheel", "-n", "3"}).code == 2);
    CHECK(run({"generate", "line"}).code == 2);

    // Generated files read back as the same graph.
    TempDir dir;
    CHECK(run({"generate", "star", "-n", "3", "-o", dir.path("s.csv")}).code == 0);
    const auto from_file = run({"compute", "--method", "pwp", dir.path("s.csv")});
    const auto from_family = run({"compute", "--method", "pwp", "--family", "star", "-n", "3"});
    CHECK(from_file.report().at("dependence") == from_family.report().at("dependence"));
}

TEST_CASE("montecarlo") {
    TempDir dir;
    const auto line3 = dir.write("line3.csv", "1,2,1\n2,3,1\n");
    const auto mc = run({"montecarlo", "--lambda", "1", "-N", "100000", "--seed", "7", line3});
    REQUIRE(mc.code == 0);
    CHECK(mc.report().at("max_abs_error").get<double>() < 0.01);
    CHECK(mc.report().at("error_table").size() == 9);

    CHECK(run({"montecarlo", "-N", "0", line3}).code == 2);
    CHECK(run({"montecarlo", line3}).code == 2);

    const auto identity = dir.write("id.csv", "1,1,1\n2,2,1\n3,3,1\n");
    for (const char* n : {"1", "17", "5000"}) {
        const auto r = run({"montecarlo", "-N", n, identity});
        REQUIRE(r.code == 0);
        CHECK(r.report().at("max_abs_error") == 0.0);
    }

    const auto serial = run({"montecarlo", "-N", "20000", "--seed", "3", line3});
    const auto threaded = run({"montecarlo", "-N", "20000", "--seed", "3", "--workers", "4", line3});
    CHECK(serial.out == threaded.out);

    const auto csv = run({"montecarlo", "-N", "10", "--csv", identity});
    CHECK(csv.out.rfind("row,col,estimate,exact,abs_error\n", 0) == 0);
}

TEST_CASE("errors and exit codes") {
    TempDir dir;
    const auto bad = dir.write("bad.csv", "1,2,1\n2,3\n");
    const auto r = run({"compute", "--method", "pwp", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);

    const auto dup = dir.write("dup.csv", "1,2,1\n1,2,3\n");
    CHECK(run({"compute", "--method", "pwp", dup}).code == 2);
    CHECK(run({"compute", "--method", "pwp", dir.path("missing.csv")}).code == 2);

    const auto star = run({"compute", "--method", "pagerank", "--family", "star", "-n", "3"});
    CHECK(star.code == 3);
    CHECK(star.err.find("column") != std::string::npos);
    CHECK(star.err.find("--web-normalize") != std::string::npos);

    const auto line3 = dir.write("line3.csv", "1,2,1\n2,3,1\n");
    CHECK(run({"compute", line3}).code == 2);
    CHECK(run({"compute", "--method", "bogus", line3}).code == 2);
    CHECK(run({"compute", "--method", "pwp", "--method", "micmac", line3}).code == 2);
    CHECK(run({"compute", "--method", "pwp", "--lambda", "0", line3}).code == 2);
    CHECK(run({"compute", "--method", "pagerank", "-p", "1.5", line3}).code == 2);
    CHECK(run({"compute", "--method", "pwp", "--lambda", "1e6", line3}).code == 3);
    const auto heavy = dir.write("heavy.csv", "1,1,1\n");
    CHECK(run({"compute", "--method", "pwp", "--lambda", "1e6", heavy}).code == 3);
    CHECK(run({"compute", "--method", "pagerank", "--max-iter", "1", "--tol", "1e-15",
               dir.write("c.csv", "1,2,0.5\n2,1,1\n1,1,0.5\n")}).code == 3);
    CHECK(run({}).code == 2);
    CHECK(run({"compute", "--method", "pwp"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
