#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "patmix/cli.hpp"
#include "patmix/io.hpp"

using namespace patmix;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/patmix_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("lagrangian subcommand emits the fixed point") {
    CliRun r = run({"lagrangian", "--pattern", "K53"});
    REQUIRE(r.code == 0);
    OptimalVectorReport rep = report_from_json(r.out);
    CHECK(std::abs(rep.lambda - 0.484313483298) < 1e-6);
    CHECK(rep.kkt_residual <= 1e-6);
    CHECK(rep.pattern_id == "K53");

    CliRun opt = run({"optvec", "--pattern", "B53"});
    REQUIRE(opt.code == 0);
    CHECK(report_from_json(opt.out).vector.size() == 7);
}

TEST_CASE("hausdorff subcommand") {
    CliRun r = run({"hausdorff", "--ratios", "0.333333,0.333333"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(std::stod(r.out) - 0.630930) < 1e-4);
    CHECK(run({"hausdorff", "--ratios", "1.5"}).code == 2);
}

TEST_CASE("lambda-n subcommand") {
    CliRun r = run({"lambda-n", "--pattern", "bipartite", "--n", "7"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"lambda\":12") != std::string::npos);

    CliRun csv = run({"lambda-n", "--pattern", "bipartite", "--n", "6", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("n,Lambda,density\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 8);  // header + 0..6

    CHECK(run({"lambda-n", "--pattern", "bipartite", "--n", "10000"}).code == 3);
    CHECK(run({"lambda-n", "--n", "5"}).code == 2);
}

TEST_CASE("build, density and shadow subcommands") {
    std::string recipe = R"({"base":"K53","mode":"sizes","parts":[2,1,1,1,1]})";
    CliRun b = run({"build", "--family", "K53", "--recipe", recipe, "--n", "6"});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("\"edge_count\":16") != std::string::npos);

    std::string ratio_recipe =
        R"({"base":"K53","mode":"ratios","parts":[0.2,0.2,0.2,0.2,0.2]})";
    CliRun d = run({"limit-density", "--family", "K53", "--recipe", ratio_recipe});
    REQUIRE(d.code == 0);
    CHECK(d.out.find("0.48") != std::string::npos);

    CliRun s = run({"shadow", "--graph", R"({"r":3,"n":3,"edges":[[0,1,2]]})"});
    REQUIRE(s.code == 0);
    RGraph sh = rgraph_from_json(s.out);
    CHECK(sh.r == 2);
    CHECK(sh.edges.size() == 3);

    CliRun sl = run({"shadow-limit", "--family", "K53", "--recipe", ratio_recipe});
    REQUIRE(sl.code == 0);
    CHECK(sl.out.find("0.8") != std::string::npos);
}

TEST_CASE("subconstruction and forbidden family subcommands") {
    std::string k6 = rgraph_to_json(complete_rgraph(3, 6));
    CliRun r = run({"is-subconstruction", "--graph", k6, "--family", "K53"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("false") != std::string::npos);

    CliRun f = run({"forbidden-family", "--family", "bipartite", "--m", "3"});
    REQUIRE(f.code == 0);
    CHECK(f.out.find("\"count\":1") != std::string::npos);
}

TEST_CASE("ifs and iterate-m subcommands") {
    CliRun maps = run({"ifs", "--family", "K53,B53"});
    REQUIRE(maps.code == 0);
    auto parsed = maps_from_json(maps.out);
    REQUIRE(parsed.size() == 2);
    CHECK(std::abs(parsed[0].rho - 0.0463327506) < 1e-8);

    CliRun pts = run({"iterate-m", "--maps", maps.out, "--k", "3", "--format", "csv"});
    REQUIRE(pts.code == 0);
    CHECK(std::count(pts.out.begin(), pts.out.end(), '\n') == 16);

    CliRun pts2 = run({"iterate-m", "--family", "K53,B53", "--k", "1", "--m0",
                       "0.838562172234,0.878921629175"});
    REQUIRE(pts2.code == 0);
    CHECK(points_from_json(pts2.out).size() == 4);

    CHECK(run({"iterate-m", "--k", "1"}).code == 2);
}

TEST_CASE("sts subcommands") {
    CliRun gen = run({"sts-gen", "--t", "9"});
    REQUIRE(gen.code == 0);
    std::string path = temp_file("sts9.txt", gen.out);
    CliRun check = run({"sts-check", "--input", path});
    REQUIRE(check.code == 0);
    CHECK(check.out.find("\"valid\":true") != std::string::npos);
    std::remove(path.c_str());

    CHECK(run({"sts-gen", "--t", "8"}).code == 2);

    CliRun fp = run({"fingerprint", "--t", "7"});
    REQUIRE(fp.code == 0);
    Fingerprint f = fingerprint_from_json(fp.out);
    CHECK(f.t == 7);
    CHECK(f.entries.size() == 7);
    CHECK(f.entries[1].t1 == 12);
}

TEST_CASE("minimal subcommand") {
    CliRun r = run({"minimal", "--pattern", "K53"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"minimal\":true") != std::string::npos);
}

TEST_CASE("graph and fingerprint emissions are reparse fixed points") {
    std::string k5 = rgraph_to_json(complete_rgraph(3, 5));
    CHECK(rgraph_to_json(rgraph_from_json(k5)) == k5);

    CliRun fp = run({"fingerprint", "--t", "7"});
    std::string text = fp.out;
    while (!text.empty() && text.back() == '\n') text.pop_back();
    CHECK(fingerprint_to_json(fingerprint_from_json(text)) == text);
}

TEST_CASE("threads flag is accepted and rejected appropriately") {
    CHECK(run({"--threads", "2", "hausdorff", "--ratios", "0.5,0.25"}).code == 0);
    CHECK(run({"--threads", "0", "hausdorff", "--ratios", "0.5,0.25"}).code == 2);
}

TEST_CASE("deterministic output") {
    CliRun a = run({"lagrangian", "--pattern", "B53", "--seed", "5"});
    CliRun b = run({"lagrangian", "--pattern", "B53", "--seed", "5"});
    CHECK(a.out == b.out);

    CliRun c = run({"lambda-n", "--pattern", "K53", "--n", "12"});
    CliRun d = run({"lambda-n", "--pattern", "K53", "--n", "12"});
    CHECK(c.out == d.out);
}

TEST_CASE("emitted JSON reparses to the same emission") {
    CliRun rep = run({"lagrangian", "--pattern", "K53"});
    REQUIRE(rep.code == 0);
    std::string trimmed = rep.out;
    while (!trimmed.empty() && trimmed.back() == '\n') trimmed.pop_back();
    CHECK(report_to_json(report_from_json(trimmed)) == trimmed);

    CliRun maps = run({"ifs", "--family", "K53,B53"});
    std::string mt = maps.out;
    while (!mt.empty() && mt.back() == '\n') mt.pop_back();
    CHECK(maps_to_json(maps_from_json(mt)) == mt);
}

TEST_CASE("quantization is a formatting fixed point") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int trial = 0; trial < 300; ++trial) {
        double x = u(rng);
        std::string once = format12(x);
        CHECK(format12(quantize12(x)) == once);
    }
}

TEST_CASE("environment variables override caps") {
    setenv("PATMIX_LAMBDA_CAP", "10", 1);
    CHECK(run({"lambda-n", "--pattern", "bipartite", "--n", "12"}).code == 3);
    CHECK(run({"lambda-n", "--pattern", "bipartite", "--n", "12", "--cap", "20"}).code == 0);
    unsetenv("PATMIX_LAMBDA_CAP");
    CHECK(run({"lambda-n", "--pattern", "bipartite", "--n", "12"}).code == 0);
}

TEST_CASE("errors and exit codes") {
    CHECK(run({"lagrangian", "--pattern", "K53", "--bogus"}).code == 2);
    CHECK(run({"nope"}).code == 2);
    CHECK(run({"lagrangian", "--pattern", "/does/not/exist.json"}).code == 2);
    // malformed documents: not JSON, missing fields, wrong types
    CHECK(run({"shadow", "--graph", "{broken"}).code == 2);
    CHECK(run({"build", "--family", "K53", "--recipe", R"({"mode":"sizes"})", "--n", "5"})
              .code == 2);
    CHECK(run({"shadow", "--graph", R"({"r":"x","n":3,"edges":[]})"}).code == 2);
    CliRun bad = run({"build", "--family", "K53", "--recipe",
                      R"({"base":"K53","mode":"sizes","parts":[1,1,1,1,1],"children":{"2":{"base":"empty"}}})",
                      "--n", "5"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("output redirects to a file") {
    std::string path = "/tmp/patmix_test_out.json";
    CliRun r = run({"lagrangian", "--pattern", "bipartite", "--output", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(std::abs(report_from_json(buf.str()).lambda - 0.5) < 1e-9);
    std::remove(path.c_str());
}
