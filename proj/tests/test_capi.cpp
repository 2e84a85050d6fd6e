#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sosdw.h>

#include <cmath>
#include <string>

namespace {
std::string take(char* s) {
    std::string out = s ? s : "";
    sosdw_string_free(s);
    return out;
}
} // namespace

TEST_CASE("version and error reporting") {
    CHECK(std::string(sosdw_version()) == "1.0.0");
    sosdw_ctx* ctx = nullptr;
    CHECK(sosdw_ctx_new(0.95, 0, 0.3, 0.11, &ctx) == SOSDW_E_DOMAIN);
    CHECK(std::string(sosdw_last_error()).find("0.9") != std::string::npos);
    CHECK(sosdw_ctx_new(0.2, 0, 1.0, 0.0, &ctx) == SOSDW_E_DOMAIN);  // eta integer
    REQUIRE(sosdw_ctx_new(0.2, 0, 0.3, 0.11, &ctx) == SOSDW_OK);
    sosdw_ctx_free(ctx);
}

TEST_CASE("scalar kernel entry points") {
    sosdw_ctx* ctx = nullptr;
    REQUIRE(sosdw_ctx_new(0.15, 0, 0.30, 0.11, &ctx) == SOSDW_OK);
    double re = 0, im = 0;
    // frozen reference (mpmath): theta(0.3+0.2i; 0.15)
    REQUIRE(sosdw_theta(ctx, 0.3, 0.2, &re, &im) == SOSDW_OK);
    CHECK(std::abs(re - 0.44878933559036887) < 1e-13);
    CHECK(std::abs(im - 0.03007315518198108) < 1e-13);
    REQUIRE(sosdw_bracket(ctx, 0.7, -0.2, &re, &im) == SOSDW_OK);
    CHECK(std::abs(re - 0.12807744200255380) < 1e-13);
    CHECK(std::abs(im + 1.30806582828059997) < 1e-13);
    CHECK(sosdw_theta(ctx, 0, 0, &re, &im) == SOSDW_E_DOMAIN);
    sosdw_ctx_free(ctx);
}

TEST_CASE("counting exports") {
    char* s = nullptr;
    REQUIRE(sosdw_asm_count(6, &s) == SOSDW_OK);
    CHECK(take(s) == "7436");
    REQUIRE(sosdw_cspp_count(4, &s) == SOSDW_OK);
    CHECK(take(s) == "132");
    REQUIRE(sosdw_state_count(3, 7, &s) == SOSDW_OK);
    CHECK(take(s) == "7");
    CHECK(sosdw_state_count(20, 7, &s) == SOSDW_E_RESOURCE);
    REQUIRE(sosdw_states_jsonl(1, 7, &s) == SOSDW_OK);
    const std::string lines = take(s);
    CHECK(lines.find("\"heights\"") != std::string::npos);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 1);
}

TEST_CASE("evaluate dispatches every method consistently") {
    sosdw_ctx* ctx = nullptr;
    REQUIRE(sosdw_ctx_new(0.13, 0.0, 0.27, 0.09, &ctx) == SOSDW_OK);
    const double xr[] = {0.11, -0.07}, xi[] = {-0.04, 0.05};
    const double yr[] = {0.95, 1.18}, yi[] = {0.03, -0.06};
    double br = 0, bi = 0;
    REQUIRE(sosdw_evaluate(ctx, "brute", 2, xr, xi, yr, yi, 0.52, 0.17, 0, 7, 1, &br,
                           &bi) == SOSDW_OK);
    for (const char* m : {"weightfn", "ik", "factored"}) {
        double re = 0, im = 0;
        REQUIRE(sosdw_evaluate(ctx, m, 2, xr, xi, yr, yi, 0.52, 0.17, 0, 7, 1, &re,
                               &im) == SOSDW_OK);
        CAPTURE(m);
        CHECK(std::abs(re - br) < 1e-9 * std::abs(br));
        CHECK(std::abs(im - bi) < 1e-9 * std::abs(br));
    }
    double re = 0, im = 0;
    CHECK(sosdw_evaluate(ctx, "nonsense", 2, xr, xi, yr, yi, 0.52, 0.17, 0, 7, 1, &re,
                         &im) == SOSDW_E_USAGE);
    CHECK(sosdw_evaluate(ctx, "rootN", 2, xr, xi, yr, yi, 0.52, 0.17, 0, 7, 1, &re,
                         &im) == SOSDW_E_USAGE);  // missing N
    sosdw_ctx_free(ctx);

    // free fermion wants q = -1
    REQUIRE(sosdw_ctx_new(0.15, 0.0, 0.5, 0.0, &ctx) == SOSDW_OK);
    double fr = 0, fi = 0;
    REQUIRE(sosdw_evaluate(ctx, "freefermion", 2, xr, xi, yr, yi, 0.52, 0.17, 0, 7, 1,
                           &fr, &fi) == SOSDW_OK);
    REQUIRE(sosdw_evaluate(ctx, "rootN", 2, xr, xi, yr, yi, 0.52, 0.17, 2, 7, 1, &re,
                           &im) == SOSDW_OK);
    CHECK(std::abs(re - fr) < 1e-8 * std::abs(fr));
    CHECK(std::abs(im - fi) < 1e-8 * std::abs(fr));
    sosdw_ctx_free(ctx);
}

TEST_CASE("verify driver round-trips JSON") {
    char* rep = nullptr;
    REQUIRE(sosdw_verify(R"({"suites":["state-counts"],"n_max":4,"timings":false})",
                         &rep) == SOSDW_OK);
    const auto r = nlohmann::json::parse(take(rep));
    CHECK(r["schema"] == "sosdw/1");
    CHECK(r["command"] == "verify");
    CHECK(r["all_passed"] == true);
    CHECK(r["failed"] == 0);
    CHECK(r["total"].get<int>() >= 1);
    for (const auto& c : r["checks"]) {
        CHECK(c["suite"] == "state-counts");
        CHECK(!c.contains("ms"));
    }
    CHECK(sosdw_verify(R"({"suites":["bogus"]})", &rep) == SOSDW_E_USAGE);
    CHECK(sosdw_verify("{not json", &rep) == SOSDW_E_USAGE);
}

TEST_CASE("tables driver") {
    char* out = nullptr;
    REQUIRE(sosdw_tables(R"({"kind":"colours","n_min":1,"n_max":3,"format":"csv"})",
                         &out) == SOSDW_OK);
    const std::string csv = take(out);
    CHECK(csv.rfind("n,A_n,C_n,K0,K1,K2,p0,p1,p2\n", 0) == 0);
    CHECK(csv.find("1,1,2,") != std::string::npos);

    REQUIRE(sosdw_tables(R"({"kind":"colours","n_min":1,"n_max":2,"format":"json"})",
                         &out) == SOSDW_OK);
    const auto j = nlohmann::json::parse(take(out));
    CHECK(j["schema"] == "sosdw/1");

    REQUIRE(sosdw_tables(R"({"kind":"identities","n_max":2})", &out) == SOSDW_OK);
    const auto ids = nlohmann::json::parse(take(out));
    CHECK(ids["schema"] == "sosdw/1");

    CHECK(sosdw_tables(R"({"kind":"nope"})", &out) == SOSDW_E_USAGE);
}

TEST_CASE("bench driver emits timings for each method") {
    char* rep = nullptr;
    REQUIRE(sosdw_bench(R"({"n":3,"seed":7,"methods":["brute","factored"]})", &rep) ==
            SOSDW_OK);
    const auto r = nlohmann::json::parse(take(rep));
    CHECK(r["schema"] == "sosdw/1");
    CHECK(r["command"] == "bench");
    CHECK(r["results"].size() == 2);
    CHECK(r["results"][1].contains("speedup_vs_brute"));
    CHECK(sosdw_bench(R"({"methods":["nope"]})", &rep) == SOSDW_E_USAGE);
}
