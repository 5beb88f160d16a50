#include <doctest.h>

#include "ncfa/suites.hpp"

using namespace ncfa;

TEST_CASE("unknown suite names are rejected before any computation") {
    CHECK_THROWS_AS(run_suite("nonexistent", SuiteOptions{}), BadConfig);
}

TEST_CASE("the registry exposes every suite exactly once") {
    auto names = suite_names();
    CHECK(names.size() == 10);
    for (const auto& n : names) CHECK(suite_registry().count(n) == 1);
}

TEST_CASE("reports follow the documented schema") {
    SuiteOptions opts;
    opts.seed = 3;
    auto rep = run_suite("jordan-counterexample", opts);
    auto j = rep.to_json();
    CHECK(j.at("suite") == "jordan-counterexample");
    CHECK(j.at("seed") == 3);
    CHECK(j.at("version").is_string());
    REQUIRE(j.at("results").is_array());
    for (const auto& r : j.at("results")) {
        CHECK(r.contains("name"));
        CHECK(r.contains("status"));
        CHECK(r.contains("residual"));
        CHECK((r.at("status") == "PASS" || r.at("status") == "FAIL"));
    }
}

TEST_CASE("same seed gives byte-identical reports") {
    for (const std::string name : {"fk-determinant", "rho-divergence", "hankel-profile"}) {
        SuiteOptions opts;
        opts.seed = 42;
        auto a = run_suite(name, opts);
        auto b = run_suite(name, opts);
        CHECK(a.to_json().dump(2) == b.to_json().dump(2));
        CHECK(a.csv == b.csv);
    }
}

TEST_CASE("profile suites carry CSV plot data with stable headers") {
    SuiteOptions opts;
    CHECK(run_suite("rho-divergence", opts).csv.rfind("r,rho_sup\n", 0) == 0);
    CHECK(run_suite("unit-log-integral", opts).csv.rfind("R,integral,reference\n", 0) == 0);
    CHECK(run_suite("hankel-profile", opts).csv.find("N,k,sigma_k,verdict\n") !=
          std::string::npos);
}

TEST_CASE("every suite passes at default settings") {
    SuiteOptions opts;
    opts.seed = 1;
    for (const auto& name : suite_names()) {
        auto rep = run_suite(name, opts);
        for (const auto& r : rep.results) {
            INFO(name << " / " << r.name << " residual " << r.residual);
            CHECK(r.pass);
        }
    }
}
