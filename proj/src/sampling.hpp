#pragma once

// Deterministic random sampling of spectral parameters. Every draw is
// rejection-screened against the factors the evaluators divide by, so a
// sampled point is usable by all representations at once.

#include <cstdint>
#include <random>

#include "partition.hpp"
#include "theta.hpp"

namespace sosdw {

// splitmix64: stable mixing of a base seed with a task index, so parallel
// and serial runs draw identical parameters per task.
inline uint64_t task_seed(uint64_t base, uint64_t index) {
    uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Complex draw_box(std::mt19937_64& rng, double re_lo, double re_hi, double im_lo,
                        double im_hi) {
    std::uniform_real_distribution<double> re(re_lo, re_hi);
    std::uniform_real_distribution<double> im(im_lo, im_hi);
    return {re(rng), im(rng)};
}

// Nodes for a Cauchy-type determinant. Coincident nodes make the matrix
// singular, so near-coincident draws leave the LU determinant with few
// correct digits against the closed form; enforce pairwise separation.
inline std::vector<Complex> draw_separated(std::mt19937_64& rng, int n, double re_lo,
                                           double re_hi, double im_lo, double im_hi,
                                           double min_sep = 0.12) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Complex> v;
        v.reserve(n);
        for (int i = 0; i < n; ++i) v.push_back(draw_box(rng, re_lo, re_hi, im_lo, im_hi));
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j) ok = std::abs(v[i] - v[j]) >= min_sep;
        if (ok) return v;
    }
    throw ResourceError("draw_separated: no admissible point after 1000 attempts");
}

// Node sets for the Cauchy-type determinant comparison. The two families
// must interleave: with every x pushed away from every y the determinant is
// exponentially small against its entries, and elimination has no correct
// digits left at double precision. Screens keep nodes apart within and
// across families and keep the total-sum factor off its zeros.
struct DetNodes {
    std::vector<Complex> x, y;
    Complex t;
};

inline DetNodes draw_det_nodes(std::mt19937_64& rng, int n, const ThetaContext& ctx) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        DetNodes d;
        d.x = draw_separated(rng, n, -1.4, 1.4, -0.2, 0.2, 0.3);
        d.y = draw_separated(rng, n, -1.4, 1.4, -0.2, 0.2, 0.3);
        d.t = draw_box(rng, 0.3, 0.9, 0.05, 0.3);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) ok = std::abs(d.x[i] - d.y[j]) >= 0.12;
        Complex s(0);
        for (int i = 0; i < n; ++i) s += d.x[i] - d.y[i];
        if (ok && std::abs(bracket(d.t + s, ctx)) >= 0.05) return d;
    }
    throw ResourceError("draw_det_nodes: no admissible point after 1000 attempts");
}

// Generic spectral point: x_i, y_i in a small complex box, lambda offset
// away from the [lambda + a] zeros. Screens all denominators that appear in
// the state sum, the permutation sum and the 2^n sums; redraws on failure.
inline SpectralParams draw_params(int n, const ThetaContext& ctx, std::mt19937_64& rng,
                                  bool with_gamma = false) {
    constexpr double kScreen = 1e-6;
    auto fine = [&](Complex v) { return std::abs(v) > kScreen; };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        SpectralParams p;
        p.convention = Convention::additive;
        p.x.reserve(n);
        p.y.reserve(n);
        for (int i = 0; i < n; ++i) p.x.push_back(draw_box(rng, -0.25, 0.25, -0.15, 0.15));
        for (int i = 0; i < n; ++i) p.y.push_back(draw_box(rng, 0.85, 1.35, -0.15, 0.15));
        p.lambda = draw_box(rng, 0.3, 0.8, 0.05, 0.3);
        if (with_gamma) p.gamma = draw_box(rng, 0.25, 0.75, -0.3, -0.05);

        bool ok = true;
        for (int a = 0; a <= n && ok; ++a) ok = fine(bracket(p.lambda + Complex(a), ctx));
        Complex sx(0), sy(0);
        for (int i = 0; i < n; ++i) sx += p.x[i], sy += p.y[i];
        const Complex g = p.gamma.value_or(Complex(0.3217, -0.2471));
        ok = ok && fine(bracket(g, ctx)) &&
             fine(bracket(sx - sy + p.lambda + g + Complex(n), ctx));
        for (int m = 0; m <= n && ok; ++m)
            ok = fine(bracket(sx - sy + g + Complex(m), ctx));
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                const Complex d = p.x[i] - p.y[j];
                ok = fine(bracket(d, ctx)) && fine(bracket(d + Complex(1), ctx)) &&
                     fine(bracket(d - Complex(1), ctx));
            }
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                ok = fine(bracket(p.x[i] - p.x[j], ctx)) &&
                     fine(bracket(p.x[i] - p.x[j] + Complex(1), ctx)) &&
                     fine(bracket(p.x[j] - p.x[i] + Complex(1), ctx)) &&
                     fine(bracket(p.y[i] - p.y[j], ctx)) &&
                     fine(bracket(p.y[i] - p.y[j] + Complex(1), ctx)) &&
                     fine(bracket(p.y[j] - p.y[i] + Complex(1), ctx));
        if (ok) return p;
    }
    throw ResourceError("draw_params: no admissible point after 1000 attempts");
}

} // namespace sosdw
