// Acceptance gate: one line per criterion, PASS/FAIL, exit 0 iff all pass.
// Tolerances and runtime budgets are pinned here and nowhere else.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "enumeration.hpp"
#include "partition.hpp"
#include "sampling.hpp"
#include "states.hpp"
#include "theta.hpp"

using namespace sosdw;

namespace {

constexpr double kTolNumeric = 1e-8;    // generic numeric identity tolerance
constexpr double kTolFreeFermion = 1e-9;
constexpr double kTolSixVertex = 1e-6;  // lambda -> infinity limit
constexpr double kEnvelopeBound = 10.0; // |p_i - 1/3| n^{5/3} stays under this
constexpr double kBudgetCounts = 30.0;  // seconds, criterion 1
constexpr double kBudgetFiveWay = 60.0; // seconds, criterion 2
constexpr double kBudgetExactDet = 10.0;// seconds, criterion 5
constexpr double kSpeedupFloor = 10.0;  // criterion 11

int g_failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const std::string& label, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, label.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

double rel(Complex a, Complex b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0.0 : std::abs(a - b) / s;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// -------------------------------------------------------------------------

void criterion1_state_counts() {
    const auto t0 = Clock::now();
    const long want[] = {1, 2, 7, 42, 429, 7436};
    bool ok = true;
    for (int n = 1; n <= 6; ++n) {
        if (count_states(n) != static_cast<uint64_t>(want[n - 1])) ok = false;
        if (asm_count(n) != mpz_class(want[n - 1])) ok = false;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < kBudgetCounts;
    report(1, "state counts n=1..6 equal the product formula", ok,
           "elapsed " + fmt(dt) + " s, budget 30 s");
}

void criterion2_five_way() {
    const auto t0 = Clock::now();
    double worst = 0;
    bool ok = true;
    std::mt19937_64 rng(task_seed(42, 2));
    std::uniform_real_distribution<double> pmod(0.05, 0.5);
    std::uniform_real_distribution<double> parg(0, 2 * std::numbers::pi);
    for (int n = 1; n <= 3 && ok; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const Complex p = std::polar(pmod(rng), parg(rng));
            const Complex eta = draw_box(rng, 0.2, 0.45, 0.02, 0.1);
            const auto ctx = ThetaContext::from_nome(p, eta);
            const SpectralParams P = draw_params(n, ctx, rng);
            const Complex v[5] = {z_bruteforce(P, ctx), z_weightfunction(P, ctx),
                                  z_ik_sum(P, ctx, DetPath::lu),
                                  z_ik_sum(P, ctx, DetPath::frobenius),
                                  z_factored_sum(P, ctx)};
            for (int a = 0; a < 5; ++a)
                for (int b = a + 1; b < 5; ++b) worst = std::max(worst, rel(v[a], v[b]));
        }
    }
    const double dt = seconds_since(t0);
    ok = worst <= kTolNumeric && dt < kBudgetFiveWay;
    report(2, "five evaluators agree pairwise at 25 seeded points, n=1..3", ok,
           "max rel err " + fmt(worst) + ", elapsed " + fmt(dt) +
               " s");
}

void criterion3_root_of_unity() {
    double worst = 0, worst_ff = 0;
    std::mt19937_64 rng(task_seed(42, 3));
    for (int N = 2; N <= 4; ++N) {
        const auto ctx = ThetaContext::from_nome(Complex(0.15), Complex(1.0 / N, 0));
        for (int n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 10; ++trial) {
                const SpectralParams P = draw_params(n, ctx, rng);
                const Complex ref = z_tilde(P, ctx);
                worst = std::max(worst, rel(z_root_of_unity(P, N, ctx), ref));
                if (N == 2)
                    worst_ff = std::max(worst_ff, rel(z_free_fermion(P, ctx), ref));
            }
    }
    const bool ok = worst <= kTolNumeric && worst_ff <= kTolFreeFermion;
    report(3, "N-term sum matches brute force for N=2,3,4; N=2 matches the product form",
           ok,
           "max rel err " + fmt(worst) + ", free-fermion " +
               fmt(worst_ff));
}

void criterion4_laurent() {
    std::mt19937_64 rng(task_seed(42, 4));
    const auto ctx = ThetaContext::from_nome(Complex(0.05), Complex(0.3, 0));
    double worst = 0;
    for (int trial = 0; trial < 5; ++trial) {
        SpectralParams P = draw_params(2, ctx, rng);
        P.lambda = draw_box(rng, 0.05, 0.25, 0.35, 0.45);
        worst = std::max(worst, rel(z_laurent(P, 40, ctx), z_tilde(P, ctx)));
    }
    report(4, "bilateral series truncated at K=40 matches brute force at n=2, p=0.05",
           worst <= kTolNumeric, "max rel err " + fmt(worst));
}

void criterion5_exact_det() {
    const auto t0 = Clock::now();
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
        const auto pair = dynamical_pair_exact(n);
        if (!(pair.lhs == pair.rhs)) ok = false;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < kBudgetExactDet;
    report(5, "closed dynamical enumeration equals the state sum over Z[w], n=1..4", ok,
           "elapsed " + fmt(dt) + " s, budget 10 s");
}

void criterion6_three_colour() {
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
        const auto pair = three_colour_identity(n);
        if (!(pair.lhs == pair.rhs)) ok = false;
        if (!(pair.lhs.coeff(0) == Eisenstein(mpz_class(asm_count(n)), mpz_class(0))))
            ok = false;
    }
    report(6, "three-colour identity exact over Z[w] for n=1..4, lambda=0 gives A_n", ok,
           "coefficientwise equality");
}

void criterion7_colour_probabilities() {
    bool ok = true;
    for (int n = 1; n <= 5; ++n) {
        const auto rep = colour_probabilities(n);
        const auto counted = colour_counts_enumerated(n);
        for (int i = 0; i < 3; ++i)
            if (rep.K[i] != counted[i]) ok = false;
    }
    const auto r1 = colour_probabilities(1);
    if (!(r1.p[0] == mpq_class(1, 2) && r1.p[1] == mpq_class(1, 2) && r1.p[2] == 0))
        ok = false;
    double envelope = 0;
    for (int n = 1; n <= 200; ++n) {
        const auto rep = colour_probabilities(n);
        for (int i = 0; i < 3; ++i)
            envelope = std::max(envelope, std::abs(rep.p[i].get_d() - 1.0 / 3.0) *
                                              std::pow(n, 5.0 / 3.0));
    }
    ok = ok && envelope < kEnvelopeBound;
    report(7, "colour probabilities exact for n=1..5 and 1/3-envelope bounded to n=200",
           ok, "envelope sup " + fmt(envelope));
}

void criterion8_two_enumeration() {
    bool ok = true;
    for (int n = 1; n <= 5; ++n) {
        const auto pair = two_enumeration(n);
        if (!(pair.lhs == pair.rhs)) ok = false;
        mpz_class twos;
        mpz_ui_pow_ui(twos.get_mpz_t(), 2, static_cast<unsigned>(n * (n - 1) / 2));
        if (!(pair.lhs.coeff(0) == Gaussian(twos, mpz_class(0)))) ok = false;
    }
    for (int n = 1; n <= 6; ++n) {
        const auto closed = two_enumeration_moments_closed(n);
        const auto counted = two_enumeration_moments(n);
        if (closed.s20 != counted.s20 || closed.s31 != counted.s31) ok = false;
    }
    report(8, "2-enumeration exact over Z[i] for n=1..5 and moments for n=1..6", ok,
           "coefficientwise equality");
}

void criterion9_structural() {
    std::mt19937_64 rng(task_seed(42, 9));
    const auto ctx = ThetaContext::from_nome(Complex(0.2), Complex(0.30, 0.11));
    double worst = 0;
    bool ok = true;

    // recursions, both branches, 20 trials spread over n = 1..4
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 4;
        const SpectralParams P = draw_params(n, ctx, rng);
        for (auto br : {RecursionBranch::y1_eq_x1_plus_1, RecursionBranch::y1_eq_x1}) {
            const auto pr = recursion_check(P, ctx, br);
            worst = std::max(worst, rel(pr.lhs, pr.rhs));
        }
    }
    // symmetry
    for (int trial = 0; trial < 10; ++trial) {
        const SpectralParams P = draw_params(2 + trial % 2, ctx, rng);
        if (!symmetry_check(P, ctx, 2, rng, kTolNumeric)) ok = false;
    }
    // order-norm structure in lambda and x_1
    for (int trial = 0; trial < 10; ++trial) {
        const SpectralParams P = draw_params(1 + trial % 2, ctx, rng);
        if (!lambda_structure_check(P.x, P.y, ctx, 2, rng, kTolNumeric)) ok = false;
        if (!x_structure_check(P, ctx, 2, rng, kTolNumeric)) ok = false;
    }
    // Frobenius determinant n <= 6
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 6;
        const auto nd = draw_det_nodes(rng, n, ctx);
        const auto pr = frobenius_det<double>(nd.x, nd.y, nd.t, Convention::additive, ctx);
        worst = std::max(worst, rel(pr.det, pr.closed));
    }
    // N-section, N <= 5
    {
        std::uniform_real_distribution<double> arg(0, 2 * std::numbers::pi);
        std::uniform_real_distribution<double> amod(0.55, 1.6);
        std::uniform_real_distribution<double> xmod(0.55, 0.95);
        for (int trial = 0; trial < 20; ++trial) {
            const int N = 1 + trial % 5;
            const Complex a = std::polar(amod(rng), arg(rng));
            const Complex x = std::polar(xmod(rng), arg(rng));
            if (std::abs(theta_decompose_residual(a, x, N, ctx)) > kTolNumeric)
                ok = false;
        }
    }
    // addition formula
    for (int trial = 0; trial < 20; ++trial) {
        const Complex x = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
        const Complex y = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
        const Complex u = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
        const Complex v = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
        const double scale = addition_scale(x, y, u, v, ctx);
        if (scale > 1e-8 &&
            std::abs(addition_residual(x, y, u, v, ctx)) / scale > kTolNumeric)
            ok = false;
    }
    // six-vertex limit at its looser tolerance
    {
        const auto ctx0 = ThetaContext::from_nome(Complex(0), Complex(0.3, 0));
        double worst6 = 0;
        for (int trial = 0; trial < 20; ++trial) {
            SpectralParams P = draw_params(1 + trial % 3, ctx0, rng);
            P.lambda = Complex(0, 10);
            worst6 = std::max(worst6, rel(z_sixvertex_ik(P, ctx0), z_bruteforce(P, ctx0)));
        }
        if (worst6 > kTolSixVertex) ok = false;
    }
    ok = ok && worst <= kTolNumeric;
    report(9, "recursions, symmetry, order-norm, Frobenius, N-section, addition", ok,
           "max rel err " + fmt(worst));
}

void criterion10_limit_det() {
    bool ok = true;
    for (int n = 1; n <= 20; ++n) {
        mpz_class three;
        mpz_ui_pow_ui(three.get_mpz_t(), 3, static_cast<unsigned>(n * (n + 1) / 2));
        if (kuperberg_limit_det(n, 1, 3) * three != asm_count(n)) ok = false;
        if (kuperberg_limit_det(n, 2, 3) * three != cspp_count(n)) ok = false;
    }
    report(10, "limit determinant reproduces A_n and C_n exactly for n=1..20", ok,
           "exact rational arithmetic");
}

void criterion11_bench() {
    std::mt19937_64 rng(task_seed(42, 11));
    const auto ctx = ThetaContext::from_nome(Complex(0.2), Complex(0.30, 0.11));
    const SpectralParams P = draw_params(6, ctx, rng);

    const auto t0 = Clock::now();
    const Complex brute = z_bruteforce(P, ctx);
    const double brute_s = seconds_since(t0);

    const auto t1 = Clock::now();
    const Complex fast = z_factored_sum(P, ctx);
    const double fast_s = seconds_since(t1);

    const double speedup = brute_s / fast_s;
    const bool ok = rel(brute, fast) <= kTolNumeric && speedup >= kSpeedupFloor;
    report(11, "factored sum at n=6 is at least 10x faster than brute force", ok,
           "speedup " + fmt(speedup) + "x, rel err " +
               fmt(rel(brute, fast)));
}

} // namespace

int main() {
    criterion1_state_counts();
    criterion2_five_way();
    criterion3_root_of_unity();
    criterion4_laurent();
    criterion5_exact_det();
    criterion6_three_colour();
    criterion7_colour_probabilities();
    criterion8_two_enumeration();
    criterion9_structural();
    criterion10_limit_det();
    criterion11_bench();
    if (g_failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
