#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "petrisiegel/cli.hpp"

using namespace petrisiegel;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "petrisiegel");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string kData = PETRISIEGEL_DATA_DIR;

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(cli({"verify-siegel"}).code == 0);
    CHECK(cli({"verify-siegel", "--genus", "5", "--threads", "2"}).code == 0);
    CHECK(cli({"verify-siegel", "--force-fail"}).code == 1);
    CHECK(cli({"verify-siegel", "--tol", "metric_trace=1e-30"}).code == 1);
    CHECK(cli({"verify-siegel", "--tol", "nope=1"}).code == 2);
    CHECK(cli({"verify-siegel", "--threads", "0"}).code == 2);
    CHECK(cli({"verify-fay", "--m", "1"}).code == 2);
    CHECK(cli({"verify-fay", "--genus", "3"}).code == 2);
    CHECK(cli({"periods", "--spec", kData + "/fermat_quintic.json"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"verify-petri", "--bogus"}).code == 2);
}

TEST_CASE("cli corrupted spec reports line and field") {
    const std::string path = "petrisiegel_corrupt_spec.json";
    std::ofstream(path) << "{\n  \"type\": \"plane\",\n  \"degree\": 5,\n  \"coeffs\": [[5, 0]]\n}\n";
    const Run r = cli({"verify-petri", "--spec", path});
    std::remove(path.c_str());
    CHECK(r.code == 2);
    CHECK(r.err.find("line 4") != std::string::npos);
    CHECK(r.err.find("coeffs") != std::string::npos);
}

TEST_CASE("cli report file and overrides") {
    const std::string path = "petrisiegel_report_test.txt";
    const Run r = cli({"periods", "--spec", kData + "/lemniscatic.json", "--tol", "symmetry=1e-9", "--report", path});
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    std::remove(path.c_str());
    CHECK(r.code == 0);
    CHECK(file.str() == r.out);
    CHECK(r.out.find("tol_override symmetry=") != std::string::npos);
    CHECK(r.out.find("digest=") != std::string::npos);
    CHECK(r.out.find("0.000000000000+1.000000000000i") != std::string::npos);
}
