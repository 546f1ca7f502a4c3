#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "levysim_cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = levysim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "levysim_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("cost table") {
    const Result r = cli({"cost", "--m", "2", "--h", "1", "--eps", "0.01", "--p", "2"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "algorithm,n,draws,ratio_to_ia\n"
          "IA,13,57,1\n"
          "WIK,21,87,1.5263157894736843\n"
          "FS,507,2032,35.649122807017541\n");

    const Result p4 = cli({"cost", "--m", "2", "--h", "1", "--eps", "0.01", "--p", "4"});
    CHECK(p4.code == 0);
    CHECK(p4.out.find("WIK,n/a (L² schedule only),,\n") != std::string::npos);
}

TEST_CASE("simulate output and manifest") {
    const fs::path out = scratch("sim.csv");
    const std::vector<std::string> args{"simulate", "--m", "2", "--h", "1", "--eps", "0.01", "--p", "2",
                                        "--batch", "5", "--seed", "7", "--out", out.string()};
    REQUIRE(cli(args).code == 0);
    const std::string first = slurp(out);
    const json manifest = json::parse(slurp(out.string() + ".manifest.json"));
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["parameters"]["n"] == 13);
    CHECK(manifest["seed"] == 7);
    CHECK(manifest.contains("wall_time_seconds"));
    CHECK(manifest.contains("tool_version"));

    CHECK(first.rfind("realization,dW1,dW2,I_1_1,I_1_2,I_2_1,I_2_2\n", 0) == 0);
    CHECK(count_lines(first) == 6);

    REQUIRE(cli(args).code == 0);
    CHECK(slurp(out) == first);

    const Result empty = cli({"simulate", "--m", "3", "--h", "1", "--n", "2", "--batch", "0"});
    CHECK(empty.code == 0);
    CHECK(count_lines(empty.out) == 1);

    const Result strat = cli({"simulate", "--m", "1", "--h", "1", "--n", "2", "--calculus", "strat"});
    CHECK(strat.code == 0);
}

TEST_CASE("JSON wraps the same payload") {
    const std::vector<std::string> base{"simulate", "--m", "3", "--h", "0.5", "--n", "4", "--batch", "3"};
    const Result csv = cli(base);
    std::vector<std::string> with_json = base;
    with_json.insert(with_json.end(), {"--format", "json"});
    const Result js = cli(with_json);
    REQUIRE(js.code == 0);
    const json doc = json::parse(js.out);
    CHECK(doc["columns"].size() == 13);
    REQUIRE(doc["rows"].size() == 3);

    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    std::istringstream cells(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(cells, cell, ',')) {
        CHECK(doc["rows"][0][c].get<double>() == std::stod(cell));
        ++c;
    }
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"simulate", "--m", "2", "--h", "1"}).code == 2);
    CHECK(cli({"simulate", "--m", "2", "--h", "1", "--n", "3", "--eps", "0.1"}).code == 2);
    CHECK(cli({"simulate", "--m", "2", "--h", "-1", "--n", "3"}).code == 2);
    CHECK(cli({"validate", "--suite", "nope"}).code == 2);
    CHECK(cli({"convergence", "--n-list", "2,4"}).code == 2);
    CHECK(cli({"demo", "--h-list", "0.5,0.25"}).code == 2);
    CHECK(cli({"cost", "--m", "2", "--h", "1", "--eps", "0"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("validate exit status follows the reports") {
    const Result ok = cli({"validate", "--suite", "lemma43", "--trials", "50"});
    CHECK(ok.code == 0);
    CHECK(ok.out.rfind("statistic,estimate,std_error,target,rule,pass\n", 0) == 0);

    // A 100-mode reference biases the FS error by about 5 standard errors here.
    const Result biased = cli({"validate", "--suite", "fs-error", "--n-list", "1", "--K", "100", "--N", "200000"});
    CHECK(biased.code == 1);
    CHECK(biased.out.find(",false\n") != std::string::npos);
}

TEST_CASE("manifest replay reproduces the run") {
    const fs::path out = scratch("demo.csv");
    const Result first = cli({"demo", "--h-list", "0.25,0.125,0.0625", "--paths", "40", "--K", "200", "--seed", "3",
                              "--out", out.string()});
    REQUIRE(first.code == 0);
    const json summary = json::parse(first.out);
    CHECK(summary.contains("slope_milstein_ia"));

    const fs::path again = scratch("demo_replay.csv");
    const Result replay = cli({"replay", out.string() + ".manifest.json", "--out", again.string()});
    REQUIRE(replay.code == 0);
    CHECK(json::parse(replay.out) == summary);
    CHECK(slurp(again) == slurp(out));
}

TEST_CASE("output does not depend on the worker count") {
    const std::vector<std::string> args{"simulate", "--m", "3", "--h", "0.5", "--n", "3", "--batch", "700"};
    ::setenv("LEVYSIM_THREADS", "1", 1);
    const Result one = cli(args);
    ::setenv("LEVYSIM_THREADS", "4", 1);
    const Result four = cli(args);
    ::unsetenv("LEVYSIM_THREADS");
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
}
