#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"

namespace sosdw {

// Determinant by LU with partial pivoting (pivot = largest |entry| in the
// column, ties to the lowest row index, so results are reproducible).
// `a` is row-major n x n, taken by value and destroyed.
template <class C>
C det_lu(std::vector<C> a, int n) {
    if (static_cast<int>(a.size()) != n * n)
        throw UsageError("det_lu: matrix size mismatch");
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        auto best = std::abs(a[static_cast<size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            auto v = std::abs(a[static_cast<size_t>(r) * n + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == decltype(best)(0)) return C(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(col) * n + j]);
            sign = -sign;
        }
        C d = a[static_cast<size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            C f = a[static_cast<size_t>(r) * n + col] / d;
            if (f == C(0)) continue;
            for (int j = col; j < n; ++j)
                a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
        }
    }
    C det = (sign > 0) ? C(1) : C(-1);
    for (int i = 0; i < n; ++i) det *= a[static_cast<size_t>(i) * n + i];
    return det;
}

} // namespace sosdw
