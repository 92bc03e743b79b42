#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "rcat/verification.hpp"

using namespace rcat;

TEST_CASE("report schema: stable keys, stable order, deterministic body") {
    std::vector<CheckResult> checks(2);
    checks[0] = {"alpha", "claim A", true, 1.5e-9, 1e-6, 0.25, "fine"};
    checks[1] = {"beta", "claim B", false, 2.0, 1.0, 0.5, "too big"};
    VerificationOptions opts;
    opts.work_dir = "/tmp/rcat-x";

    const std::string body = verification_report_json(checks, opts);
    const auto j = nlohmann::json::parse(body);

    REQUIRE(j.contains("config"));
    REQUIRE(j.contains("checks"));
    REQUIRE(j.contains("summary"));
    REQUIRE(j["checks"].is_array());
    REQUIRE(j["checks"].size() == 2);
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("paper_ref"));
        CHECK(c.contains("pass"));
        CHECK(c.contains("measured"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("seconds"));
    }
    CHECK(j["checks"][0]["name"] == "alpha");
    CHECK(j["checks"][0]["pass"] == true);
    CHECK(j["checks"][1]["pass"] == false);
    CHECK(j["summary"]["total"] == 2);
    CHECK(j["summary"]["passed"] == 1);
    CHECK(j["summary"]["failed"] == 1);
    CHECK(j["summary"]["all_pass"] == false);

    // identical inputs render identical bytes
    CHECK(body == verification_report_json(checks, opts));
}
