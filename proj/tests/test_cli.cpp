#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "incr/cli.hpp"

using incr::cli::kExitCheckFailed;
using incr::cli::kExitOk;
using incr::cli::kExitUsage;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = incr::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

} // namespace

TEST_CASE("witness emits the documented CSV schema") {
    const auto r = run_cli({"witness", "--fn", "x^3", "--interval", "0", "1", "--levels", "4",
                            "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
    CHECK(r.out.substr(0, 20) == "n,a,b,f_a,f_b,slope\n");
    CHECK(r.out.find("0,0,1,0,1,1\n") != std::string::npos);
    // 4 levels -> header + 5 rows
    int lines = 0;
    for (char ch : r.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 6);
}

TEST_CASE("exact mode prints rationals end to end") {
    const auto r = run_cli({"witness", "--fn", "x^2", "--interval", "1/3", "5/3", "--levels", "3",
                            "--mode", "exact", "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("1/3") != std::string::npos);
    CHECK(r.out.find("5/3") != std::string::npos);
}

TEST_CASE("failed checks exit 1 and carry the counter-witness in JSON") {
    const auto r = run_cli({"check-iaf", "--fn", "2*x", "--interval", "0", "1", "--k", "1",
                            "--format", "json"});
    CHECK(r.code == kExitCheckFailed);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["holds"] == false);
    CHECK(j["lhs"] == 2.0);
    CHECK(j["rhs"] == 1.0);
    REQUIRE(j.contains("counter_witness"));
    CHECK(j["counter_witness"]["rows"].size() == 21); // default 20 levels
    CHECK(j["counter_witness"]["deriv_floor_ok"] == true);

    const auto ok = run_cli({"check-iaf", "--fn", "sin", "--interval", "0", "1", "--k", "1"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("holds = true") == 0);
}

TEST_CASE("usage problems exit 2 with a diagnostic") {
    CHECK(run_cli({"witness", "--fn", "x^2"}).code == kExitUsage);        // missing --interval
    CHECK(run_cli({"witness", "--bogus"}).code == kExitUsage);            // unknown flag
    CHECK(run_cli({"nonsense"}).code == kExitUsage);                      // unknown subcommand
    CHECK(run_cli({}).code == kExitUsage);                                // no subcommand
    CHECK(run_cli({"witness", "--fn", "x +", "--interval", "0", "1"}).code == kExitUsage);
    CHECK(run_cli({"witness", "--fn", "x", "--interval", "1", "0"}).code == kExitUsage);
    CHECK(run_cli({"slope", "--fn", "x^2", "--x", "1", "--y", "2", "--limit-at", "0"}).code ==
          kExitUsage); // two modes at once
    CHECK(run_cli({"chain", "--fn", "x", "--interval", "0", "1", "--bound-m", "1", "--epsilon",
                   "0.1", "--mode", "exact"})
              .code == kExitUsage); // chain has no exact mode
    const auto diag = run_cli({"witness", "--fn", "x^2 - x", "--interval", "0", "1"});
    CHECK(diag.code == kExitUsage); // equal endpoint values
    CHECK(diag.err.find("EqualEndpointValues") != std::string::npos);
    CHECK(run_cli({"--help"}).code == kExitOk);
    CHECK(run_cli({"witness", "--help"}).code == kExitOk);
}

TEST_CASE("operation failures that are answers, not errors, exit 1") {
    const auto stuck = run_cli({"chain", "--fn", "identity", "--interval", "0", "1", "--bound-m",
                                "0", "--epsilon", "0.5"});
    CHECK(stuck.code == kExitCheckFailed);
    CHECK(stuck.err.find("StepFloorReached") != std::string::npos);
    CHECK(stuck.err.find("stuck near t = 0") != std::string::npos);

    const auto out_of_reach =
        run_cli({"darboux", "--fn", "x^2", "--interval", "0", "1", "--v", "5"});
    CHECK(out_of_reach.code == kExitCheckFailed);
    CHECK(out_of_reach.err.find("TargetNotBracketed") != std::string::npos);

    const auto refuted = run_cli({"refute-iaf", "--fn", "2*x", "--interval", "0", "1", "--k", "1",
                                  "--format", "json"});
    CHECK(refuted.code == kExitCheckFailed);
    CHECK(nlohmann::json::parse(refuted.out)["refuted"] == true);

    const auto unrefuted = run_cli({"refute-iaf", "--fn", "sin", "--interval", "0", "1", "--k",
                                    "1", "--format", "json"});
    CHECK(unrefuted.code == kExitOk);
    CHECK(nlohmann::json::parse(unrefuted.out)["refuted"] == false);
}

TEST_CASE("catalog call syntax and expression syntax both resolve") {
    const auto catalog = run_cli({"slope", "--fn", "poly(0,0,1)", "--x", "1", "--y", "3"});
    CHECK(catalog.code == kExitOk);
    CHECK(catalog.out.find("slope = 4") != std::string::npos);

    const auto expr = run_cli({"slope", "--fn", "x^2", "--x", "1", "--y", "3"});
    CHECK(expr.out == catalog.out);

    const auto param = run_cli({"slope", "--fn", "fpq(2,1)", "--x", "-0.1", "--y", "0.1"});
    CHECK(param.code == kExitOk);

    const auto unknown = run_cli({"witness", "--fn", "sinh(x)", "--interval", "0", "1"});
    CHECK(unknown.code == kExitUsage);
    CHECK(unknown.err.find("UnknownIdentifier") != std::string::npos);
}

TEST_CASE("staircase artifact pins the endpoint rows") {
    const auto r = run_cli({"staircase", "--tol", "1e-6", "--grid", "11", "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.substr(0, 4) == "x,f\n");
    CHECK(r.out.find("\n0,0\n") != std::string::npos);
    CHECK(r.out.rfind("\n1,1\n") == r.out.size() - 5);
    CHECK(r.out.find("\n0.5,0.5\n") != std::string::npos);
}

TEST_CASE("graph subcommand: dot default, classes, implies") {
    const auto dot = run_cli({"graph"});
    CHECK(dot.code == kExitOk);
    CHECK(dot.out.find("digraph") == 0);

    const auto classes = run_cli({"graph", "--classes", "--format", "csv"});
    CHECK(classes.code == kExitOk);
    CHECK(classes.out ==
          "class,member\n"
          "0,IAF\n0,IAFPrime\n"
          "1,IAFG\n1,MAJA\n1,SVD\n"
          "2,FCD\n"
          "3,Rolle\n3,TAF\n3,DarbouxAndSVD\n");

    const auto yes = run_cli({"graph", "--implies", "IAFG", "FCD"});
    CHECK(yes.code == kExitOk);
    CHECK(yes.out.find("implies = true") != std::string::npos);
    const auto no = run_cli({"graph", "--implies", "FCD", "IAF"});
    CHECK(no.out.find("implies = false") != std::string::npos);
    CHECK(run_cli({"graph", "--implies", "FCD", "ZFC"}).code == kExitUsage);
    CHECK(run_cli({"graph", "--dot", "--classes"}).code == kExitUsage);
}

TEST_CASE("--output routes the artifact to a file, stream stays quiet") {
    const std::string path = "cli_artifact_test.csv";
    const auto r = run_cli({"cantor-intervals", "--n", "2", "--format", "csv", "--output", path});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str().substr(0, 17) == "kind,k,lo,hi,valu");
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("reruns are byte-identical") {
    const std::vector<std::vector<std::string>> cmds = {
        {"witness", "--fn", "sin", "--interval", "0", "1", "--format", "json"},
        {"strict-probe", "--fn", "fpq(2,1)", "--at", "0", "--seed", "7", "--format", "json"},
        {"mvt", "--fn", "x^3 - x", "--interval", "-1", "2", "--format", "csv"},
        {"polyop", "--n", "6", "--format", "json"},
    };
    for (const auto& cmd : cmds) {
        const auto a = run_cli(cmd);
        const auto b = run_cli(cmd);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
}
