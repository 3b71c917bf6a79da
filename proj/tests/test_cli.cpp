#include "doctest.h"

#include "ncqm/cli.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using ncqm::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "ncqm");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "cli_test_" + name + ".json";
    std::ofstream(path) << text;
    return path;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) out.push_back(l);
    return out;
}

const char* kOsc = R"({"eta0": 0.1, "theta0": 0.1, "e_ref": 10, "spring_k": 1})";

}  // namespace

TEST_CASE("verify passes on default and oscillator parameters") {
    auto r = call({"verify"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("checks"));
    bool saw_divergence = false;
    for (const auto& c : j["checks"]) {
        CHECK(c["status"] != "fail");
        if (c["name"] == "bogoliubov_vs_matrix") saw_divergence = c["status"] == "expected_divergence";
    }
    CHECK(saw_divergence);

    const auto cfg = write_temp("osc", kOsc);
    r = call({"verify", "--config", cfg});
    CHECK(r.code == 0);
    std::remove(cfg.c_str());
}

TEST_CASE("spectrum table") {
    const auto cfg = write_temp("spec", kOsc);
    const auto r = call({"spectrum", "--config", cfg, "--n", "0..4", "--mphi", "0..3"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 21);
    CHECK(ls[0] == "mechanism,n,m_phi,n_alpha,n_beta,energy,method,residual");
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i].rfind("ec,", 0) == 0);

    // Same input, same bytes.
    const auto again = call({"spectrum", "--config", cfg, "--n", "0..4", "--mphi", "0..3"});
    CHECK(again.out == r.out);
    std::remove(cfg.c_str());
}

TEST_CASE("flags override the config file and the environment variable") {
    const auto cfg = write_temp("env", kOsc);
    const auto a = call({"spectrum", "--config", cfg, "--n", "0..0", "--mphi", "0..0"});
    const auto b = call({"spectrum", "--config", cfg, "--eta0", "0.2", "--n", "0..0", "--mphi", "0..0"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out != b.out);

    setenv("NCQM_CONFIG", cfg.c_str(), 1);
    const auto c = call({"spectrum", "--n", "0..0", "--mphi", "0..0"});
    unsetenv("NCQM_CONFIG");
    CHECK(c.code == 0);
    CHECK(c.out == a.out);
    std::remove(cfg.c_str());
}

TEST_CASE("commutators report small residuals") {
    const auto r = call({"commutators", "--theta", "0.1", "--eta", "0.05"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["max_residual"].get<double>() < 1e-10);
    CHECK(j["round_trip_residual"].get<double>() < 1e-10);
    CHECK(j["hbar_eff"].get<double>() == doctest::Approx(1.00125));
}

TEST_CASE("usage and config errors exit with 2") {
    CHECK(call({"spectrum", "--config", "does_not_exist.json"}).code == 2);
    const auto bad = write_temp("bad", R"({"eta0": "x"})");
    CHECK(call({"verify", "--config", bad}).code == 2);
    std::remove(bad.c_str());
    CHECK(call({"spectrum", "--n", "3..1"}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"fractional", "--order", "1.5"}).code == 2);
    // EC without confinement has no discrete spectrum in closed form for alpha = 1.
    CHECK(call({"spectrum", "--eta0", "1"}).code == 2);
}

TEST_CASE("other subcommands produce their tables") {
    const auto w = call({"wavefunction", "--eta0", "0.1", "--theta0", "0.1", "--e-ref", "10", "--spring-k", "1",
                         "--points", "11"});
    REQUIRE(w.code == 0);
    CHECK(lines(w.out).size() == 12);
    CHECK(lines(w.out)[0] == "r,xi,R_value,density");

    const auto f = call({"fractional", "--order", "0.5", "--points", "5"});
    REQUIRE(f.code == 0);
    CHECK(lines(f.out).size() == 6);

    const auto pw = call({"fractional", "--order", "1", "--plane-wave-energy", "2"});
    REQUIRE(pw.code == 0);
    const auto j = nlohmann::json::parse(pw.out);
    CHECK(j["re"].get<double>() == 0.0);
    CHECK(j["im"].get<double>() == -2.0);

    const auto ring = call({"ring", "--eta", "0.05", "--steps", "5", "--l-min", "0", "--l-max", "1"});
    REQUIRE(ring.code == 0);
    CHECK(lines(ring.out).size() == 11);
}
