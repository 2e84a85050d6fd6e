#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <set>
#include <sstream>

#include "states.hpp"

using namespace sosdw;

TEST_CASE("closed-form counts") {
    const long a[] = {1, 1, 2, 7, 42, 429, 7436, 218348};
    const long c[] = {1, 2, 5, 20, 132, 1452, 26741};
    for (int n = 0; n <= 7; ++n) CHECK(asm_count(n) == mpz_class(a[n]));
    for (int n = 0; n <= 6; ++n) CHECK(cspp_count(n) == mpz_class(c[n]));
}

TEST_CASE("enumeration count matches the closed form") {
    for (int n = 0; n <= 5; ++n)
        CHECK(count_states(n) == asm_count(n).get_ui());
    CHECK_THROWS_AS(count_states(8), ResourceError);
    CHECK_THROWS_AS(count_states(-1), UsageError);
}

TEST_CASE("every enumerated state is valid and distinct, and maps to an ASM") {
    for (int n = 1; n <= 4; ++n) {
        std::set<std::vector<int>> seen;
        enumerate_states(n, [&](const HeightMatrix& hm) {
            CHECK(valid_height_matrix(hm));
            CHECK(seen.insert(hm.h).second);
            const auto am = height_to_asm(hm);
            CHECK(valid_asm(am));
            const auto back = asm_to_height(am);
            CHECK(back.h == hm.h);
        });
        CHECK(seen.size() == asm_count(n).get_ui());
    }
}

TEST_CASE("height parity is fixed by position") {
    enumerate_states(4, [&](const HeightMatrix& hm) {
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 4; ++j)
                CHECK(((hm.at(i, j) - i - j) % 2) == 0);
    });
}

TEST_CASE("first-row classes partition the state space") {
    for (int n = 1; n <= 4; ++n) {
        uint64_t total = 0;
        std::set<std::vector<int>> seen;
        for (int k = 1; k <= n; ++k) {
            enumerate_states_first_row(n, k, [&](const HeightMatrix& hm) {
                const auto am = height_to_asm(hm);
                // the 1 of the first ASM row sits in column k
                int col = 0;
                for (int j = 0; j < n; ++j)
                    if (am.at(0, j) == 1) col = j + 1;
                CHECK(col == k);
                CHECK(seen.insert(hm.h).second);
                ++total;
            });
        }
        CHECK(total == asm_count(n).get_ui());
    }
}

TEST_CASE("single n=1 state and its statistics") {
    int visits = 0;
    enumerate_states(1, [&](const HeightMatrix& hm) {
        ++visits;
        CHECK(hm.at(0, 0) == 0);
        CHECK(hm.at(0, 1) == 1);
        CHECK(hm.at(1, 0) == 1);
        CHECK(hm.at(1, 1) == 0);
        const auto st = statistics(hm);
        CHECK(st.minus_ones == 0);
        CHECK(st.height_mod3[0] == 2);
        CHECK(st.height_mod3[1] == 2);
        CHECK(st.height_mod3[2] == 0);
        CHECK(st.corner_mod8[1] == 1);
        CHECK(st.blocks.size() == 1);
        CHECK(st.blocks[0].a == 0);
    });
    CHECK(visits == 1);
}

TEST_CASE("colour counts over all states sum to (n+1)^2 A_n") {
    for (int n = 1; n <= 4; ++n) {
        long long k[3] = {0, 0, 0};
        enumerate_states(n, [&](const HeightMatrix& hm) {
            const auto st = statistics(hm);
            for (int i = 0; i < 3; ++i) k[i] += st.height_mod3[i];
        });
        CHECK(mpz_class(static_cast<long>(k[0] + k[1] + k[2])) == mpz_class((n + 1) * (n + 1)) * asm_count(n));
    }
}

TEST_CASE("JSONL export round-trips") {
    const std::string text = states_jsonl(2);
    std::istringstream in(text);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["n"] == 2);
        CHECK(j.contains("heights"));
        CHECK(j.contains("asm"));
        CHECK(j["stats"].contains("minus_ones"));
        ++rows;
    }
    CHECK(rows == 2);
}
