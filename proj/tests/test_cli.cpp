#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "millsbounds/cli.hpp"
#include "millsbounds/grid_kernels.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = mills::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("bound reports value, side and signed error") {
    const auto r = call({"bound", "--family", "sqrt-star", "--k", "2", "--x", "2.5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("h               2.8215121024797823e+00") != std::string::npos);
    CHECK(r.out.find("side            upper") != std::string::npos);
    CHECK(r.out.find("error           2.7129511638048893e-06") != std::string::npos);
    const auto side = call({"bound", "--family", "lb1", "--x", "1", "--side"});
    CHECK(side.out == "lower\n");
}

TEST_CASE("bound in csv and json") {
    const auto csv = call({"--format", "csv", "bound", "--family", "pollak", "--x", "1"});
    REQUIRE(csv.code == 0);
    const auto l = lines(csv.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "bound,x,h,tail_bound,side,oracle,error,relative_error,degraded");
    CHECK(l[1].rfind("pollak,1.0000000000000000e+00,", 0) == 0);
    const auto json = call({"bound", "--family", "pollak", "--x", "1", "--format", "json"});
    CHECK(json.out.find("\"side\": \"upper\"") != std::string::npos);
}

TEST_CASE("bound far in the tail uses scaled decimals") {
    const auto r = call({"--format", "csv", "--precision", "12", "bound", "--family", "sqrt-star", "--k", "2", "--x", "40"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("3.65589354092e-350") != std::string::npos);
}

TEST_CASE("domain errors exit 1") {
    const auto neg = call({"bound", "--family", "pollak", "--x", "-1"});
    CHECK(neg.code == 1);
    CHECK(neg.err.find("x >= 0") != std::string::npos);
    CHECK(call({"bound", "--family", "classic-cf", "--k", "1", "--x", "0"}).code == 1);
    CHECK(call({"bound", "--family", "sqrt-star", "--k", "5000", "--x", "1"}).code == 1);
    CHECK(call({"poly", "--k", "201"}).code == 1);
    CHECK(call({"crossover", "--k", "21"}).code == 1);
    CHECK(call({"curve", "--bounds", "classic-cf:1", "--low", "0", "--high", "1", "--points", "3"}).code == 1);
}

TEST_CASE("usage errors exit 64 with usage text") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"--precision", "26", "poly", "--k", "3"},
             {"--precision", "5", "poly", "--k", "3"},
             {"--format", "xml", "poly", "--k", "3"},
             {"bound", "--family", "gauss", "--x", "1"},
             {"bound", "--x", "1"},
             {"poly", "--k", "3", "--unknown"},
             {"curve", "--low", "0", "--high", "1", "--points", "3"},
             {"constants", "--k-max", "3", "--json", "--csv"},
         }) {
        const auto r = call(args);
        CAPTURE(r.err);
        CHECK(r.code == 64);
        CHECK(r.err.find("Usage:") != std::string::npos);
    }
}

TEST_CASE("poly prints coefficient rows") {
    const auto r = call({"--format", "csv", "poly", "--k", "8"});
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "k,a0,a1,a2,a3,a4,a5,a6,a7,a8,b0,b1,b2,b3,b4,b5,b6,b7");
    CHECK(l[1] == "8,105,0,420,0,210,0,28,0,1,0,279,0,185,0,27,0,1");
    const auto t = call({"--format", "csv", "poly", "--k", "4", "--table"});
    const auto tl = lines(t.out);
    REQUIRE(tl.size() == 6);
    CHECK(tl[1] == "0,1,,,,,0,,,");
    CHECK(tl[5] == "4,3,0,6,0,1,0,5,0,1");
}

TEST_CASE("constants default to 20 digits") {
    const auto r = call({"constants", "--k-max", "2", "--csv"});
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "k,c_star,delta,x_star,x_tilde,lower_slack,middle_slack,upper_slack");
    CHECK(l[3].rfind("2,2.5464790894703253723e+00,", 0) == 0);
    const auto p = call({"--precision", "6", "constants", "--k-max", "0", "--csv"});
    CHECK(lines(p.out)[1].rfind("0,6.36620e-01,", 0) == 0);
}

TEST_CASE("curve output is csv with a header") {
    const auto r = call({"curve", "--bounds", "pollak", "--low", "0", "--high", "1", "--points", "2"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == "x,pollak");
    CHECK(l[1].rfind("0.0000000000000000000e+00,", 0) == 0);
    const auto fig = call({"curve", "--figure", "4", "--low", "0.1", "--high", "5", "--points", "4", "--log"});
    CHECK(lines(fig.out)[0].rfind("x,sqrt-star:4,sqrt-star:5,", 0) == 0);
    CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("output does not depend on the thread count") {
    const std::vector<std::string> args{"curve", "--figure", "5", "--low", "0.001", "--high", "8", "--points", "64", "--log"};
    mills::kernels::set_thread_limit(1);
    const auto a = call(args);
    mills::kernels::set_thread_limit(4);
    const auto b = call(args);
    mills::kernels::set_thread_limit(0);
    CHECK(a.out == b.out);
    CHECK(a.out == call(args).out);
}

TEST_CASE("crossover reports the root") {
    const auto r = call({"crossover", "--k", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("k=0 crossover=3.13444911965", 0) == 0);
    const auto c = call({"--format", "csv", "crossover", "--k", "1"});
    CHECK(lines(c.out)[0] == "k,crossover,stated_threshold,within");
}
