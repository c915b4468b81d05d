#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oscsum/cli_driver.hpp"
#include "oscsum/config.hpp"

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::vector<const char*> argv{"oscsum"};
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = oscsum::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

nlohmann::json report_of(const std::string& text) {
    auto doc = nlohmann::json::parse(text);
    return doc.at("report");
}

}  // namespace

TEST_CASE("coeffnorm subcommand") {
    std::string out;
    CHECK(run({"coeffnorm", "--poly", "{(2):0.5}", "--R", "4"}, &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["s0"] == 1);
    CHECK(rep["witness_Q"] == 2);

    // exact mode with a rational coefficient
    CHECK(run({"coeffnorm", "--poly", "{(2):1/3}", "--R", "9", "--exact"}, &out) == 0);
    rep = report_of(out);
    CHECK(rep["s0"] == 2);
    CHECK(rep["witness_Q"] == 3);

    // zero polynomial reports the degenerate flag
    CHECK(run({"coeffnorm", "--poly", "{(2):0}", "--R", "4"}, &out) == 0);
    CHECK(report_of(out)["zero"] == true);
}

TEST_CASE("usage errors exit 2") {
    std::string out, err;
    CHECK(run({"coeffnorm", "--poly", "((bad", "--R", "4"}, &out, &err) == 2);
    CHECK(err.find("usage error") != std::string::npos);
    CHECK(run({"nonsense-subcommand"}, &out, &err) == 2);
    CHECK(run({"coeffnorm"}, &out, &err) == 2);  // missing required options
}

TEST_CASE("budget errors exit 3") {
    std::string out, err;
    CHECK(run({"gauss", "--Q", "3000", "--A", "1", "--A", "1", "--A", "1", "--B", "0", "--B", "0",
               "--d", "2", "--D", "2"},
              &out, &err) == 3);
    CHECK(err.find("budget") != std::string::npos);
}

TEST_CASE("precondition errors exit 4") {
    std::string out, err;
    CHECK(run({"invtest", "--poly", "{(2):0.6180339887}", "--delta", "0.1", "--box", "4096"}, &out,
              &err) == 4);
    CHECK(err.find("precondition") != std::string::npos);
}

TEST_CASE("help exits 0") {
    std::string out;
    CHECK(run({"--help"}, &out) == 0);
    CHECK(out.find("oscsum") != std::string::npos);
    CHECK(run({"gauss", "--help"}, &out) == 0);
}

TEST_CASE("gauss subcommand value") {
    std::string out;
    CHECK(run({"gauss", "--Q", "3", "--A", "1", "--B", "0", "--d", "2", "--D", "1"}, &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["abs"].get<double>() == doctest::Approx(0.5773502691896258).epsilon(1e-9));
    CHECK(rep["exact_zero"] == false);
}

TEST_CASE("recovery and orthogonality") {
    std::string out;
    CHECK(run({"recovery", "--Q", "2", "--A", "1", "--n", "3"}, &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["exact_equal"] == true);
    CHECK(rep["lhs_re"].get<double>() == doctest::Approx(-1.0));

    CHECK(run({"recovery", "--Q", "3", "--orthogonality-x", "4"}, &out) == 0);
    rep = report_of(out);
    CHECK(rep["mode"] == "orthogonality");
    CHECK(rep["divisible"] == false);
    CHECK(rep["exact_indicator"] == true);
}

TEST_CASE("expsum subcommand") {
    std::string out;
    CHECK(run({"expsum", "--poly", "{(2):1/2}", "--box", "64"}, &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["abs"].get<double>() == 0.0);
    CHECK(rep["n_terms"] == 64);
}

TEST_CASE("vdc subcommand with the alternating phase") {
    std::string out;
    CHECK(run({"vdc", "--poly", "{(1):1/2}", "--I", "512", "--H", "32"}, &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["lhs_sq"].get<double>() == 0.0);
    CHECK(rep["pass"] == true);
}

TEST_CASE("condense subcommand") {
    std::string out;
    CHECK(run({"condense", "--alpha0", "1/6", "--N", "600", "--H-multiples", "6", "--eps", "0",
               "--delta", "0.16"},
              &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["found"] == true);
    CHECK(rep["q"] == 6);
}

TEST_CASE("rescale subcommand") {
    std::string out;
    CHECK(run({"rescale", "--box", "100", "--K", "3", "--frac", "0.1"}, &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["subs"] == 9);
    CHECK(rep["remainder"] == 10);
}

TEST_CASE("sublevel subcommand") {
    std::string out;
    CHECK(run({"sublevel", "--mode", "small", "--poly", "{(2):1/3}", "--R", "8", "--A", "1", "--B",
               "100"},
              &out) == 0);
    auto rep = report_of(out);
    CHECK(rep["count"] == 5);
}

TEST_CASE("provenance block embeds the config") {
    std::string out;
    CHECK(run({"--seed", "777", "coeffnorm", "--poly", "{(2):0.5}", "--R", "4"}, &out) == 0);
    auto doc = nlohmann::json::parse(out);
    CHECK(doc["provenance"]["seed"] == 777);
    CHECK(doc["provenance"]["version"].get<std::string>().find("oscsum") == 0);
    CHECK(doc["provenance"]["eps0"].get<double>() == doctest::Approx(0.0009765625));
}

TEST_CASE("config file round trip") {
    std::string path = "/tmp/oscsum_test_config.txt";
    {
        std::ofstream f(path);
        f << "# comment line\n";
        f << "seed = 4242\n";
        f << "rho = 0.2\n";
        f << "C_max = 5\n";
    }
    std::string out;
    CHECK(run({"--config", path, "coeffnorm", "--poly", "{(2):0.5}", "--R", "4"}, &out) == 0);
    auto doc = nlohmann::json::parse(out);
    CHECK(doc["provenance"]["seed"] == 4242);
    CHECK(doc["provenance"]["rho"].get<double>() == doctest::Approx(0.2));
    CHECK(doc["provenance"]["C_max"] == 5);

    {
        std::ofstream f(path);
        f << "unknown_key = 1\n";
    }
    std::string err;
    CHECK(run({"--config", path, "coeffnorm", "--poly", "{(2):0.5}", "--R", "4"}, &out, &err) == 2);
}

TEST_CASE("csv format for table outputs") {
    std::string out;
    CHECK(run({"--format", "csv", "expsum", "--decay", "--d", "2", "--D", "1", "--R", "256",
               "--smax", "9", "--trials", "5", "--draw-budget", "3000"},
              &out) == 0);
    CHECK(out.rfind("# oscsum-csv v1", 0) == 0);
    CHECK(out.find("d,D,s,R,k,trials,median_abs,max_abs,bound,ratio") != std::string::npos);
}

TEST_CASE("double runs are byte identical") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"--seed", "11", "coeffnorm", "--poly", "{(2):0.7071067811}", "--R", "64"},
             {"--seed", "11", "expsum", "--poly", "{(2):0.33441}", "--box", "512"},
             {"--seed", "11", "gauss", "--Q", "7", "--A", "3", "--B", "2"},
             {"--seed", "11", "schur", "--k", "4", "--s-lo", "2", "--s-hi", "4", "--trials", "1",
              "--rows", "4", "--pool-draws", "2000"}}) {
        std::string a, b;
        CHECK(run(args, &a) == 0);
        CHECK(run(args, &b) == 0);
        CHECK(a == b);
    }
}

TEST_CASE("out flag writes the report to a file") {
    std::string out;
    CHECK(run({"--out", "/tmp/oscsum_out.json", "coeffnorm", "--poly", "{(2):0.5}", "--R", "4"},
              &out) == 0);
    CHECK(out.empty());
    std::ifstream f("/tmp/oscsum_out.json");
    REQUIRE(f.good());
    nlohmann::json doc;
    f >> doc;
    CHECK(doc["report"]["s0"] == 1);
}
