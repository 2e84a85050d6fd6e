#pragma once

// Domain-wall states of the height model: (n+1)x(n+1) integer height
// matrices, steps of +-1 between all horizontal and vertical neighbours,
// boundary row r running from r down to n-r. Bijective with n x n
// alternating sign matrices.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace sosdw {

inline constexpr int kDefaultStateCap = 7;

struct HeightMatrix {
    int n = 0;
    std::vector<int> h;  // (n+1)*(n+1), row-major

    HeightMatrix() = default;
    explicit HeightMatrix(int n_) : n(n_), h(static_cast<size_t>(n_ + 1) * (n_ + 1), 0) {}
    int at(int i, int j) const { return h[static_cast<size_t>(i) * (n + 1) + j]; }
    int& at(int i, int j) { return h[static_cast<size_t>(i) * (n + 1) + j]; }
};

struct AlternatingSignMatrix {
    int n = 0;
    std::vector<int> a;  // n*n, row-major, entries in {-1, 0, 1}

    AlternatingSignMatrix() = default;
    explicit AlternatingSignMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
    int at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
};

// Corners of block (i, j), 1-based: a upper-left, b upper-right,
// c lower-left, d lower-right.
struct BlockRecord {
    int i, j;
    int a, b, c, d;
};

struct StateStatistics {
    int n = 0;
    int minus_ones = 0;                       // number of -1 entries of the ASM
    std::array<long long, 3> height_mod3{};   // heights congruent to 0/1/2 mod 3
    std::array<long long, 4> corner_mod8{};   // blocks with a+b+c+d = 2i mod 8
    std::vector<BlockRecord> blocks;          // n^2 blocks, row-major
};

bool valid_height_matrix(const HeightMatrix& hm);
bool valid_asm(const AlternatingSignMatrix& am);

// Throw UsageError on invalid input.
AlternatingSignMatrix height_to_asm(const HeightMatrix& hm);
HeightMatrix asm_to_height(const AlternatingSignMatrix& am);

StateStatistics statistics(const HeightMatrix& hm);

// Visits every domain-wall state at size n in lexicographic order of the
// concatenated height rows. Throws ResourceError when n > cap (and for n < 0);
// n = 0 visits the single empty state [[0]].
void enumerate_states(int n, const std::function<void(const HeightMatrix&)>& visit,
                      int cap = kDefaultStateCap);

// Same, restricted to states whose first ASM row has its 1 in column k
// (1 <= k <= n). The classes over k partition the state space; used to shard
// brute-force sums across threads.
void enumerate_states_first_row(int n, int k,
                                const std::function<void(const HeightMatrix&)>& visit);

uint64_t count_states(int n, int cap = kDefaultStateCap);

// Closed-form counts: A_n = prod (3j-2)!/(n+j-1)! alternating sign matrices,
// C_n = prod (3j-1)(3j-3)!/(n+j-1)! cyclically symmetric plane partitions.
mpz_class asm_count(int n);
mpz_class cspp_count(int n);

// One JSON object per line: heights, ASM, statistics.
std::string states_jsonl(int n, int cap = kDefaultStateCap);

} // namespace sosdw
