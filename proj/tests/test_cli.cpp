#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "qform/cli.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = qform::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("formula command", "[cli]") {
    auto json = run({"formula", "-k", "2", "-m", "4", "--format", "json"});
    CHECK(json.code == 0);
    CHECK(json.out.find("\"corrections\":[{\"j\":1,\"c\":\"2\"}]") != std::string::npos);

    auto text12 = run({"formula", "-k", "1", "-m", "2"});
    CHECK(text12.code == 0);
    CHECK(text12.out == "2*sigma_inf_0[chi=-2](n)\n");

    auto text22 = run({"formula", "-k", "2", "-m", "2"});
    CHECK(text22.code == 0);
    CHECK(text22.out.find("a(") == std::string::npos);  // ell = 0: no correction terms
    auto json22 = run({"formula", "-k", "2", "-m", "2", "--format", "json"});
    CHECK(json22.out.find("\"corrections\":[]") != std::string::npos);
}

TEST_CASE("count command: all methods agree", "[cli]") {
    auto c1 = run({"count", "-k", "1", "-m", "2", "-n", "1"});
    CHECK(c1.code == 0);
    CHECK(c1.out == "2\n");

    auto c0 = run({"count", "-k", "4", "-m", "4", "-n", "0"});
    CHECK(c0.code == 0);
    CHECK(c0.out == "1\n");

    auto c8 = run({"count", "-k", "2", "-m", "2", "-n", "8", "--check-all"});
    CHECK(c8.code == 0);
    CHECK(c8.out == "24\n");

    for (std::string method : {"formula", "series", "enumerate"}) {
        auto r = run({"count", "-k", "3", "-m", "4", "-n", "17", "--method", method});
        CHECK(r.code == 0);
        CHECK(r.out == run({"count", "-k", "3", "-m", "4", "-n", "17"}).out);
    }
}

TEST_CASE("verify command", "[cli]") {
    auto ok = run({"verify", "-k", "1", "-m", "4", "--order", "40"});
    CHECK(ok.code == 0);
    CHECK(ok.out == "k=1 m=4 ok ell=0 c=[]\n");

    auto echoed = run({"verify", "-k", "4", "-m", "2", "--order", "40"});
    CHECK(echoed.code == 0);
    CHECK(echoed.out == "k=4 m=2 ok ell=1 c=[4]\n");

    auto sweep = run({"verify", "-k", "1..3", "-m", "1,2", "--order", "40"});
    CHECK(sweep.code == 0);
    CHECK(sweep.out ==
          "k=1 m=1 ok ell=0 c=[]\n"
          "k=2 m=1 ok ell=0 c=[]\n"
          "k=3 m=1 ok ell=0 c=[]\n"
          "k=1 m=2 ok ell=0 c=[]\n"
          "k=2 m=2 ok ell=0 c=[]\n"
          "k=3 m=2 ok ell=1 c=[4/3]\n");

    CHECK(run({"verify", "-k", "oops", "-m", "2"}).code == 2);
    CHECK(run({"verify", "-k", "2", "-m", "3"}).code == 2);
}

TEST_CASE("eta command", "[cli]") {
    auto theta2 = run({"eta", "--spec", "1:-2,2:3,4:3,8:-2", "--level", "8", "--cusp", "1/2"});
    CHECK(theta2.code == 0);
    CHECK(theta2.out.find("conditions: pass\n") != std::string::npos);
    CHECK(theta2.out.find("width: 2\n") != std::string::npos);
    CHECK(theta2.out.find("order: 1/2\n") != std::string::npos);

    auto x2 = run({"eta", "--spec", "1:8,2:-8,4:-8,8:8", "--level", "8", "--cusp", "1/2"});
    CHECK(x2.code == 0);
    CHECK(x2.out.find("order: -1\n") != std::string::npos);
    CHECK(x2.out.find("character_s: 1\n") != std::string::npos);

    auto fail = run({"eta", "--spec", "1:1", "--level", "1", "--cusp", "1/1"});
    CHECK(fail.code == 3);
    CHECK(fail.out.find("conditions: fail\n") != std::string::npos);
    CHECK(fail.out.find("order:") == std::string::npos);

    CHECK(run({"eta", "--spec", "bogus", "--level", "8", "--cusp", "1/2"}).code == 2);
    CHECK(run({"eta", "--spec", "1:1", "--level", "8", "--cusp", "1/3"}).code == 2);
}

TEST_CASE("bernoulli command", "[cli]") {
    CHECK(run({"bernoulli", "-k", "4"}).out == "-1/30\n");
    CHECK(run({"bernoulli", "-k", "1", "--character", "-2"}).out == "-1\n");
    CHECK(run({"bernoulli", "-k", "1", "--character", "-4"}).out == "-1/2\n");
    CHECK(run({"bernoulli", "-k", "3", "--character", "-2"}).out == "9\n");

    auto parity = run({"bernoulli", "-k", "2", "--character", "-4"});
    CHECK(parity.code == 2);
    CHECK(run({"bernoulli", "-k", "1", "--character", "-3"}).code == 2);
}

TEST_CASE("series command", "[cli]") {
    auto x2 = run({"series", "--kind", "x", "-m", "2", "--order", "8", "--format", "json"});
    CHECK(x2.code == 0);
    CHECK(x2.out.substr(0, 40) == "[[24,\"1\"],[48,\"-8\"],[72,\"28\"],[96,\"-64\"]");

    auto theta = run({"series", "--kind", "theta", "--order", "8"});
    CHECK(theta.code == 0);
    CHECK(theta.out == "0 1\n24 2\n96 2\n");

    auto eta = run({"series", "--kind", "eta", "--spec", "2:5,1:-2,4:-2", "--level", "4",
                    "--order", "10"});
    CHECK(eta.code == 0);
    CHECK(eta.out.substr(0, 13) == "0 1\n24 2\n96 2");
}

TEST_CASE("commands are deterministic", "[cli]") {
    for (int i = 0; i < 2; ++i) {
        CHECK(run({"formula", "-k", "4", "-m", "4"}).out ==
              run({"formula", "-k", "4", "-m", "4"}).out);
        CHECK(run({"formula", "-k", "3", "-m", "2", "--format", "json"}).out ==
              run({"formula", "-k", "3", "-m", "2", "--format", "json"}).out);
    }
}

TEST_CASE("emitted JSON round-trips byte-for-byte", "[cli]") {
    auto first = run({"formula", "-k", "4", "-m", "2", "--format", "json"});
    REQUIRE(first.code == 0);
    std::string body = first.out.substr(0, first.out.size() - 1);  // strip newline
    auto parsed = nlohmann::ordered_json::parse(body);
    CHECK(parsed.dump() == body);
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run({"formula", "-k", "2", "-m", "3"}).code == 2);
    CHECK(run({"formula", "-k", "0", "-m", "2"}).code == 2);
    CHECK(run({"formula", "-k", "2", "-m", "2", "--order", "4"}).code == 2);
    CHECK(run({"count", "-k", "1", "-m", "2", "-n", "-3"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"formula"}).code == 2);  // missing required options
}

TEST_CASE("QFORM_ORDER environment override", "[cli]") {
    unsetenv("QFORM_ORDER");
    // order below the minimum is rejected when it comes from the environment
    setenv("QFORM_ORDER", "4", 1);
    CHECK(run({"formula", "-k", "2", "-m", "2"}).code == 2);
    // an explicit flag wins over the environment
    CHECK(run({"formula", "-k", "2", "-m", "2", "--order", "40"}).code == 0);
    setenv("QFORM_ORDER", "40", 1);
    CHECK(run({"formula", "-k", "2", "-m", "2"}).code == 0);
    setenv("QFORM_ORDER", "garbage", 1);
    CHECK(run({"formula", "-k", "2", "-m", "2"}).code == 2);
    CHECK(run({"formula", "-k", "2", "-m", "2", "--order", "40"}).code == 0);
    unsetenv("QFORM_ORDER");
    CHECK(run({"formula", "-k", "2", "-m", "2"}).code == 0);
}

TEST_CASE("help exits cleanly", "[cli]") {
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("formula") != std::string::npos);
}
