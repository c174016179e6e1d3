#include <doctest.h>

#include <algorithm>

#include "curlkit/errors.hpp"
#include "curlkit/verify.hpp"

using namespace curlkit;

TEST_CASE("suite reports are reproducible byte for byte") {
    SuiteOptions opts;
    opts.seed = 5;
    const std::string a = suite_report("projective", opts).dump();
    const std::string b = suite_report("projective", opts).dump();
    CHECK(a == b);

    opts.seed = 6;
    const std::string c = suite_report("projective", opts).dump();
    CHECK(a != c);
}

TEST_CASE("reports keep the pass/residual invariant") {
    SuiteOptions opts;
    opts.seed = 7;
    for (const char* name : {"killing", "cocycle", "stm"}) {
        for (const CheckResult& r : run_suite_checks(name, opts)) {
            CHECK(r.pass == (r.max_residual <= r.tolerance));
            nlohmann::ordered_json j = r.to_json();
            CHECK(j["suite"] == r.name);
            CHECK(j["pass"] == r.pass);
            CHECK(j["version"] == kReportVersion);
            CHECK(j.contains("theorem"));
            CHECK(j.contains("n_samples"));
        }
    }
}

TEST_CASE("unknown suites are rejected and names are published") {
    SuiteOptions opts;
    CHECK_THROWS_AS(run_suite_checks("no-such-suite", opts), DomainError);
    auto names = suite_names();
    for (const char* required : {"poisson", "subsymbol-welldef", "projective", "killing",
                                 "curl-examples", "laplace-441", "equivariance", "cocycle",
                                 "stm", "all"}) {
        CHECK(std::find(names.begin(), names.end(), required) != names.end());
    }
}

TEST_CASE("tolerance overrides reach the checks") {
    SuiteOptions opts;
    opts.seed = 7;
    opts.tolerances["curl-vanishes-stm-sphere"] = 0.5;
    for (const CheckResult& r : run_suite_checks("stm", opts))
        if (r.name == "curl-vanishes-stm-sphere") CHECK(r.tolerance == 0.5);
}
