#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_tool(const std::string& args) {
    const char* exe = std::getenv("BUBBLETOOL");
    REQUIRE_MESSAGE(exe != nullptr, "BUBBLETOOL must point at the CLI binary");
    std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

double num(const json& j, const char* key) { return std::stod(j.at(key).get<std::string>()); }

} // namespace

TEST_CASE("field info reports invariants") {
    RunResult r = run_tool("field info --d -1");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["d"] == -1);
    CHECK(j["discriminant"] == -4);
    CHECK(j["w"] == "sqrt(-1)");
    CHECK(j["omega"] == 4);
    CHECK(j["class_number"] == 1);
    CHECK(j["units"] == json({"1", "0+1*w", "-1", "0-1*w"}));
    CHECK(j["forms"] == json({{"1", "0", "1"}}));

    json j7 = json::parse(run_tool("field info --d -7").out);
    CHECK(j7["w"] == "(1+sqrt(-7))/2");
    CHECK(j7["omega"] == 2);
    CHECK(j7["class_number"] == 1);

    json j23 = json::parse(run_tool("field info --d -23").out);
    CHECK(j23["class_number"] == 3);
    CHECK(j23["forms"] == json({{"1", "1", "6"}, {"2", "-1", "3"}, {"2", "1", "3"}}));
}

TEST_CASE("bubbles verify classifies the disk around 2+17i") {
    RunResult r = run_tool("bubbles verify --d -1 --q 5+1*w --center 2,17 --r2 15/2");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 3);
    CHECK(j["all_congruent"] == true);
    CHECK(j["center"] == json({"2", "17"}));
    CHECK(j["r2"] == "15/2");
    REQUIRE(j["primes"].size() == 3);
    CHECK(j["primes"][0]["element"] == "2+15*w");
    CHECK(j["primes"][0]["unit"] == "0-1*w");
    CHECK(j["primes"][1]["element"] == "1+16*w");
    CHECK(j["primes"][1]["unit"] == "-1");
    CHECK(j["primes"][2]["element"] == "2+17*w");
    CHECK(j["primes"][2]["unit"] == "0+1*w");

    // Deterministic: identical bytes on a rerun.
    RunResult again = run_tool("bubbles verify --d -1 --q 5+1*w --center 2,17 --r2 15/2");
    CHECK(again.out == r.out);

    // Same disk, higher threshold: verification holds but the count is short.
    CHECK(run_tool("bubbles verify --d -1 --q 5+1*w --center 2,17 --r2 15/2 --k 10").exit_code == 2);
}

TEST_CASE("bubbles verify reports incongruent disks with exit 2") {
    RunResult r = run_tool("bubbles verify --d -1 --q 5+1*w --center 0,0 --r2 3");
    CHECK(r.exit_code == 2);
    json j = json::parse(r.out);
    CHECK(j["all_congruent"] == false);
    CHECK(j["count"] == 4); // the four associates of 1+i, none coprime to q
    CHECK(j["primes"][0]["unit"].is_null());
}

TEST_CASE("bubbles search finds disks or exits 4") {
    RunResult hit = run_tool("bubbles search --d -1 --q 5+1*w --region 2,17,2 --k 3");
    CHECK(hit.exit_code == 0);
    json jh = json::parse(hit.out);
    CHECK(jh["count"].get<long long>() >= 1);
    for (const auto& b : jh["bubbles"]) {
        CHECK(b["all_congruent"] == true);
        CHECK(b["count"].get<long long>() >= 3);
    }

    RunResult miss = run_tool("bubbles search --d -1 --q 5+1*w --region 0,0,1 --k 50");
    CHECK(miss.exit_code == 4);
    CHECK(json::parse(miss.out)["count"] == 0);
}

TEST_CASE("stats equidist is thread-count invariant") {
    std::string base = "stats equidist --d -1 --q 3 --xlo 1000 --xhi 2000";
    RunResult one = run_tool(base + " --threads 1");
    CHECK(one.exit_code == 0);
    RunResult three = run_tool(base + " --threads 3");
    CHECK(three.out == one.out);

    json j = json::parse(one.out);
    CHECK(j["q"] == "3");
    CHECK(j["xlo"] == 1000);
    CHECK(j["xhi"] == 2000);
    CHECK(j["nonprincipal"] == 0);
    REQUIRE(j["orbits"].size() == 2);
    CHECK(j["orbits"][0]["label"] == "0+1*w");
    CHECK(j["orbits"][1]["label"] == "1+1*w");
    CHECK(j["orbits"][0]["count"].get<long long>() > 0);
    double expected = num(j, "expected");
    CHECK(expected == doctest::Approx(4.0 * 1000 / (8 * std::log(1000.0))).epsilon(1e-9));

    RunResult csv = run_tool(base + " --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("label,count,expected,deviation\n", 0) == 0);
}

TEST_CASE("stats charsum lists one row per character") {
    RunResult r = run_tool("stats charsum --d -1 --q 3 --xlo 100");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["characters"].size() == 2);
    CHECK(j["characters"][0]["principal"] == true);
    CHECK(j["characters"][0]["ratio"] == "1"); // principal: sum equals the log reference
    CHECK(num(j["characters"][1], "ratio") < 1.0);

    RunResult csv = run_tool("stats charsum --d -1 --q 3 --xlo 100 --format csv");
    CHECK(csv.out.rfind("character,abs_sum,log_sum,ratio\n", 0) == 0);
}

TEST_CASE("stats sideals counts unit-class-smooth ideals") {
    RunResult r = run_tool("stats sideals --d -1 --q 3 --xlo 100");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 12);
    CHECK(num(j, "c_q_estimate") > 0);
    CHECK(num(j, "empirical_c") > 0);
}

TEST_CASE("stats smooth compares against the Dickman density") {
    RunResult r = run_tool("stats smooth --d -1 --xlo 100 --y 10");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 35);
    CHECK(num(j, "u") == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(num(j, "rho") == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-9));
    CHECK(num(j, "density") == doctest::Approx(0.35).epsilon(1e-9));
}

TEST_CASE("maier demo reproduces the worked instance") {
    RunResult r = run_tool("maier demo --d -1 --q 5+1*w --y 10 --z 2 --t 3");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["unit_case"] == true);
    CHECK(j["p0"]["generator"] == "2+1*w");
    CHECK(j["p1"]["generator"] == "1+2*w");
    CHECK(j["P"].size() == 2);
    CHECK(j["Q"] == "15+3*w");
    CHECK(j["Q_norm"] == "234");
    CHECK(j["S"] == 8);
    CHECK(j["T"] == 152);
    CHECK(j["T_multiples"] == 52);
    CHECK(j["T_heavy"] == 100);
    CHECK(j["T_smooth"] == 0);
    CHECK(num(j, "ratio") == doctest::Approx(8.0 / 152).epsilon(1e-9));
    CHECK(num(j, "mertens_ratio") == doctest::Approx(2.4375).epsilon(1e-9));

    // Without --t the canonical choice applies, which needs y >= 100.
    CHECK(run_tool("maier demo --d -1 --q 5+1*w --y 10 --z 2").exit_code == 1);
}

TEST_CASE("geom goodcircle reads labeled points from CSV") {
    std::string path = "cli_goodcircle_points.csv";
    {
        std::ofstream f(path);
        f << "x_num,x_den,y_num,y_den,label\n";
        f << "1,2,1,2,good\n";
        f << "-1,2,1,3,good\n";
        f << "0,1,5,1,bad\n";
    }
    RunResult r = run_tool("geom goodcircle " + path + " --center 0,0 --r2 4");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["good_in_frame"] == 2);
    CHECK(j["bad_in_3frame"] == 1);
    CHECK(j["count"].get<long long>() >= 1);
    CHECK(j["contained_good"].size() == j["count"].get<size_t>());

    {
        std::ofstream f(path);
        f << "1,2,1,2,ugly\n";
    }
    CHECK(run_tool("geom goodcircle " + path + " --center 0,0 --r2 4").exit_code == 1);
    std::remove(path.c_str());
    CHECK(run_tool("geom goodcircle " + path + " --center 0,0 --r2 4").exit_code == 1);
}

TEST_CASE("--out writes the same bytes to a file") {
    std::string path = "cli_field_info.json";
    RunResult direct = run_tool("field info --d -1");
    RunResult filed = run_tool("field info --d -1 --out " + path);
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream f(path);
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("exit codes distinguish failure classes") {
    // Missing required options: parse error.
    CHECK(run_tool("bubbles verify --d -1").exit_code == 1);
    // Unknown option: parse error.
    CHECK(run_tool("field info --d -1 --nonsense").exit_code == 1);
    // Hidden determinism flag is accepted.
    CHECK(run_tool("field info --d -1 --seed 42").exit_code == 0);
    // Modulus norm beyond the residue-system cap: capacity.
    CHECK(run_tool("stats equidist --d -1 --q 401 --xlo 1000 --xhi 2000").exit_code == 3);
    // Units collapse mod 1+w: invalid argument.
    CHECK(run_tool("stats charsum --d -1 --q 1+1*w --xlo 100").exit_code == 1);
    // Empty norm range: invalid argument.
    CHECK(run_tool("stats equidist --d -1 --q 3 --xlo 5 --xhi 4").exit_code == 1);
    // CSV is not available for sideals.
    CHECK(run_tool("stats sideals --d -1 --q 3 --xlo 100 --format csv").exit_code == 1);
    // Non-squarefree d: invalid argument.
    CHECK(run_tool("field info --d -4").exit_code == 1);
}
