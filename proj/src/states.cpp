#include "states.hpp"

#include <cstdlib>

#include <json.hpp>

namespace sosdw {

bool valid_height_matrix(const HeightMatrix& hm) {
    const int n = hm.n;
    if (n < 0 || static_cast<int>(hm.h.size()) != (n + 1) * (n + 1)) return false;
    for (int j = 0; j <= n; ++j)
        if (hm.at(0, j) != j || hm.at(n, j) != n - j) return false;
    for (int i = 0; i <= n; ++i)
        if (hm.at(i, 0) != i || hm.at(i, n) != n - i) return false;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i < n && std::abs(hm.at(i, j) - hm.at(i + 1, j)) != 1) return false;
            if (j < n && std::abs(hm.at(i, j) - hm.at(i, j + 1)) != 1) return false;
        }
    return true;
}

bool valid_asm(const AlternatingSignMatrix& am) {
    const int n = am.n;
    if (n < 0 || static_cast<int>(am.a.size()) != n * n) return false;
    // row and column partial sums alternate 0/1 and end at 1
    for (int i = 0; i < n; ++i) {
        int s = 0;
        for (int j = 0; j < n; ++j) {
            int v = am.at(i, j);
            if (v < -1 || v > 1) return false;
            s += v;
            if (s != 0 && s != 1) return false;
        }
        if (s != 1) return false;
    }
    for (int j = 0; j < n; ++j) {
        int s = 0;
        for (int i = 0; i < n; ++i) {
            s += am.at(i, j);
            if (s != 0 && s != 1) return false;
        }
        if (s != 1) return false;
    }
    return true;
}

AlternatingSignMatrix height_to_asm(const HeightMatrix& hm) {
    if (!valid_height_matrix(hm)) throw UsageError("height_to_asm: invalid height matrix");
    AlternatingSignMatrix am(hm.n);
    for (int i = 1; i <= hm.n; ++i)
        for (int j = 1; j <= hm.n; ++j) {
            int a = hm.at(i - 1, j - 1), b = hm.at(i - 1, j);
            int c = hm.at(i, j - 1), d = hm.at(i, j);
            am.at(i - 1, j - 1) = (b + c - a - d) / 2;
        }
    return am;
}

HeightMatrix asm_to_height(const AlternatingSignMatrix& am) {
    if (!valid_asm(am)) throw UsageError("asm_to_height: invalid alternating sign matrix");
    const int n = am.n;
    HeightMatrix hm(n);
    // h(i,j) = i + j - 2 * sum_{r<=i, c<=j} A(r,c), via a 2D prefix sum
    std::vector<int> S(static_cast<size_t>(n + 1) * (n + 1), 0);
    auto sref = [&](int i, int j) -> int& { return S[static_cast<size_t>(i) * (n + 1) + j]; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i > 0 && j > 0)
                sref(i, j) = am.at(i - 1, j - 1) + sref(i - 1, j) + sref(i, j - 1) -
                             sref(i - 1, j - 1);
            hm.at(i, j) = i + j - 2 * sref(i, j);
        }
    return hm;
}

StateStatistics statistics(const HeightMatrix& hm) {
    if (!valid_height_matrix(hm)) throw UsageError("statistics: invalid height matrix");
    const int n = hm.n;
    StateStatistics st;
    st.n = n;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            st.height_mod3[((hm.at(i, j) % 3) + 3) % 3]++;
    st.blocks.reserve(static_cast<size_t>(n) * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            BlockRecord b{i, j, hm.at(i - 1, j - 1), hm.at(i - 1, j),
                          hm.at(i, j - 1), hm.at(i, j)};
            int entry = (b.b + b.c - b.a - b.d) / 2;
            if (entry == -1) st.minus_ones++;
            int s = b.a + b.b + b.c + b.d;  // always even
            st.corner_mod8[((s / 2) % 4 + 4) % 4]++;
            st.blocks.push_back(b);
        }
    return st;
}

namespace {

// DFS over the free interior entries, row by row, smaller height first.
void fill_rows(HeightMatrix& hm, int i, int j,
               const std::function<void(const HeightMatrix&)>& visit) {
    const int n = hm.n;
    if (i == n) {
        visit(hm);
        return;
    }
    if (j == n) {  // row done (first/last columns are fixed); check the join
        fill_rows(hm, i + 1, 1, visit);
        return;
    }
    for (int step = -1; step <= 1; step += 2) {
        int v = hm.at(i, j - 1) + step;
        if (std::abs(v - hm.at(i - 1, j)) != 1) continue;
        if (j == n - 1 && std::abs(v - hm.at(i, n)) != 1) continue;
        if (i == n - 1 && std::abs(v - hm.at(n, j)) != 1) continue;
        hm.at(i, j) = v;
        fill_rows(hm, i, j + 1, visit);
    }
}

HeightMatrix boundary_only(int n) {
    HeightMatrix hm(n);
    for (int j = 0; j <= n; ++j) {
        hm.at(0, j) = j;
        hm.at(n, j) = n - j;
    }
    for (int i = 0; i <= n; ++i) {
        hm.at(i, 0) = i;
        hm.at(i, n) = n - i;
    }
    return hm;
}

} // namespace

void enumerate_states(int n, const std::function<void(const HeightMatrix&)>& visit, int cap) {
    if (n < 0) throw UsageError("enumerate_states: n < 0");
    if (n > cap) throw ResourceError("enumerate_states: n exceeds the state cap");
    HeightMatrix hm = boundary_only(n);
    if (n <= 1) {
        visit(hm);
        return;
    }
    fill_rows(hm, 1, 1, visit);
}

void enumerate_states_first_row(int n, int k,
                                const std::function<void(const HeightMatrix&)>& visit) {
    if (n < 1 || k < 1 || k > n) throw UsageError("enumerate_states_first_row: bad k");
    HeightMatrix hm = boundary_only(n);
    // first ASM row has its 1 in column k <=> height row 1 is
    // 1, 2, ..., k, k-1, k, ..., n-1
    for (int j = 0; j <= n; ++j)
        hm.at(1, j) = (j < k) ? j + 1 : j - 1;
    if (n == 1) {
        visit(hm);
        return;
    }
    fill_rows(hm, 2, 1, visit);
}

uint64_t count_states(int n, int cap) {
    uint64_t c = 0;
    enumerate_states(n, [&](const HeightMatrix&) { ++c; }, cap);
    return c;
}

mpz_class asm_count(int n) {
    if (n < 0) throw UsageError("asm_count: n < 0");
    mpq_class acc(1);
    for (int j = 1; j <= n; ++j) {
        mpz_class num, den;
        mpz_fac_ui(num.get_mpz_t(), 3 * j - 2);
        mpz_fac_ui(den.get_mpz_t(), n + j - 1);
        acc *= mpq_class(num, den);
    }
    acc.canonicalize();
    if (acc.get_den() != 1) throw NumericError("asm_count: non-integral product");
    return acc.get_num();
}

mpz_class cspp_count(int n) {
    if (n < 0) throw UsageError("cspp_count: n < 0");
    mpq_class acc(1);
    for (int j = 1; j <= n; ++j) {
        mpz_class num, den;
        mpz_fac_ui(num.get_mpz_t(), 3 * j - 3);
        mpz_fac_ui(den.get_mpz_t(), n + j - 1);
        acc *= mpq_class(num * (3 * j - 1), den);
    }
    acc.canonicalize();
    if (acc.get_den() != 1) throw NumericError("cspp_count: non-integral product");
    return acc.get_num();
}

std::string states_jsonl(int n, int cap) {
    std::string out;
    uint64_t index = 0;
    enumerate_states(n, [&](const HeightMatrix& hm) {
        nlohmann::json rec;
        rec["n"] = n;
        rec["index"] = index++;
        auto grid = nlohmann::json::array();
        for (int i = 0; i <= n; ++i) {
            auto row = nlohmann::json::array();
            for (int j = 0; j <= n; ++j) row.push_back(hm.at(i, j));
            grid.push_back(row);
        }
        rec["heights"] = grid;
        auto am = height_to_asm(hm);
        auto amj = nlohmann::json::array();
        for (int i = 0; i < n; ++i) {
            auto row = nlohmann::json::array();
            for (int j = 0; j < n; ++j) row.push_back(am.at(i, j));
            amj.push_back(row);
        }
        rec["asm"] = amj;
        auto st = statistics(hm);
        rec["stats"] = {{"minus_ones", st.minus_ones},
                        {"height_mod3", st.height_mod3},
                        {"corner_mod8", st.corner_mod8}};
        out += rec.dump();
        out += '\n';
    }, cap);
    return out;
}

} // namespace sosdw
