#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "imdd/cli.hpp"
#include "imdd/formats.hpp"
#include "imdd/io.hpp"

using namespace imdd;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "imdd");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path tmp(const std::string& name) { return std::filesystem::path(IMDD_TEST_TMPDIR) / name; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("analyze t-4") {
    const auto r = run({"analyze", "t-4", "--k", "0.9"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["M"] == 4);
    CHECK(j["avg_gain_db"].get<double>() == doctest::Approx(-0.625).epsilon(1e-3));
    CHECK(j["peak_gain_db"].get<double>() == doctest::Approx(-0.625).epsilon(1e-3));
    CHECK(j["eta_at_K"].size() == 1);
    CHECK(r.err.rfind("# imdd ", 0) == 0);
}

TEST_CASE("optimize writes a design that matches the reference") {
    const auto path = tmp("opt3.json");
    const auto r = run({"optimize", "--m", "3", "--objective", "avg", "--restarts", "16", "--seed", "1", "--threads",
                        "1", "--out", path.string()});
    REQUIRE(r.code == 0);
    const auto c = io::read_constellation(path);
    CHECK(max_coordinate_deviation(canonicalize(c), canonicalize(formats::t_avg_3())) <= 1e-6);
    CHECK(r.err.find("seed=1") != std::string::npos);
}

TEST_CASE("optimize prints a report without --out") {
    const auto r = run({"optimize", "--m", "2", "--restarts", "4", "--threads", "1"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.contains("objective_value"));
    CHECK(j["constellation"]["points"].size() == 2);
}

TEST_CASE("sweep for OOK alone") {
    const auto r = run({"sweep", "--formats", "ook"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    CHECK_FALSE(std::getline(in, extra));
    CHECK(header == "name,eta,avg_gain_db,peak_gain_db,K");
    CHECK(row.rfind("ook,", 0) == 0);
    CHECK(row.find(",0,0,0.9") != std::string::npos);
}

TEST_CASE("bandwidth and spectrum outputs") {
    auto r = run({"bandwidth", "ook", "--k", "0.9", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("K,W_T,eta\n0.9,0.5348485", 0) == 0);

    const auto psd = tmp("ook_psd.csv");
    r = run({"spectrum", "ook", "--fmax", "2", "--points", "5", "--out", psd.string()});
    REQUIRE(r.code == 0);
    std::istringstream rows(slurp(psd));
    std::string line;
    std::getline(rows, line);
    CHECK(line == "fT,psd_T");
    int count = 0;
    while (std::getline(rows, line)) {
        const auto comma = line.find(',');
        const double x = std::stod(line.substr(0, comma));
        const double v = std::stod(line.substr(comma + 1));
        const double s = x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
        CHECK(x == doctest::Approx(0.5 * count));
        CHECK(v == doctest::Approx(0.25 * s * s).epsilon(1e-12).scale(1e-15));
        ++count;
    }
    CHECK(count == 5);
    CHECK(slurp(tmp("ook_psd_lines.csv")) == "k,fT,weight_T\n0,0,0.25\n");
}

TEST_CASE("simulate writes one row per sigma") {
    const auto r = run({"simulate", "ook", "--sigma", "0.25,0.5", "--symbols", "10000", "--seed", "3", "--gray-ber"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
    CHECK(r.out.rfind("sigma,ser,std_error,ber\n", 0) == 0);
}

TEST_CASE("JSON round trip is exact for every built-in") {
    for (const auto& n : formats::builtin_names()) {
        const auto c = formats::builtin(n, 0.37);
        const auto path = tmp(n + ".json");
        io::write_constellation(path, c);
        const auto back = io::read_constellation(path);
        CHECK(back.name() == c.name());
        CHECK(back.basis() == c.basis());
        REQUIRE(back.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(back[i] == c[i]);
    }
}

TEST_CASE("analyze accepts a JSON file") {
    const auto path = tmp("t4.json");
    io::write_constellation(path, formats::t_4());
    const auto a = run({"analyze", path.string(), "--k", "0.9"});
    const auto b = run({"analyze", "t-4", "--k", "0.9"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("malformed input names the offending field") {
    json j = io::to_json(formats::t_4());
    j["points"][1] = json::array({"x", 0.0});
    try {
        io::constellation_from_json(j);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
        CHECK(std::string(e.what()).find("points") != std::string::npos);
    }
    j = io::to_json(formats::t_4());
    j["basis"].erase("T");
    CHECK_THROWS_WITH_AS(io::constellation_from_json(j), doctest::Contains("T"), Error);

    const auto path = tmp("broken.json");
    std::ofstream(path) << "{\"name\": \"b\", \"basis\": {\"T\": 1, \"kinds\": [\"DC\"]}, \"points\": [[0], [-1]]}";
    const auto r = run({"analyze", path.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"analyze", "t-4", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"optimize"}).code == 2);
    CHECK(run({"analyze", "no-such-format"}).code == 2);
    CHECK(run({"optimize", "--m", "3", "--objective", "median"}).code == 2);
}

TEST_CASE("module errors exit with 1") {
    CHECK(run({"bandwidth", "t-4", "--k", "1.5"}).code == 1);
    CHECK(run({"optimize", "--m", "1"}).code == 1);
}
