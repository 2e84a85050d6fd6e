#pragma once

// Partition function of the height model with domain-wall boundary: the
// brute-force state sum and the equivalent closed representations
// (permutation sum, 2^n determinant sum, fully factored sum, N-term
// root-of-unity sum, Laurent sum, free-fermion product), plus the structural
// checks relating them (recursion, symmetry, theta structure in each
// variable).

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "states.hpp"
#include "theta.hpp"

namespace sosdw {

struct SpectralParams {
    std::vector<Complex> x, y;       // inhomogeneities, one per row / column
    Complex lambda{};                // dynamical parameter
    std::optional<Complex> gamma;    // free parameter of the determinant sums
    Convention convention = Convention::additive;

    int n() const { return static_cast<int>(x.size()); }
};

// Coordinate change x -> q^x (and back, principal branch). lambda and gamma
// transform the same way.
SpectralParams to_multiplicative(const SpectralParams& p, const ThetaContext& ctx);
SpectralParams to_additive(const SpectralParams& p, const ThetaContext& ctx);

struct EvalOptions {
    int state_cap = kDefaultStateCap;
    int threads = 1;
};

// Boltzmann weight of the block with corners (a b / c d) at spectral
// parameter u = x_i - y_j and dynamical parameter lambda (unshifted; the
// height shift lambda + a is applied internally).
Complex block_weight(int a, int b, int c, int d, Complex lambda, Complex u,
                     const ThetaContext& ctx);

// Direct state sum, O(A_n * n^2) block-weight evaluations.
Complex z_bruteforce(const SpectralParams& params, const ThetaContext& ctx,
                     const EvalOptions& opts = {});

// q^{n(|x|+|y|)/2} Z_n in multiplicative coordinates; independent of the
// additive preimage chosen for the inputs.
Complex z_tilde(const SpectralParams& params, const ThetaContext& ctx,
                const EvalOptions& opts = {});

// n!-term permutation sum (elliptic weight function form).
Complex z_weightfunction(const SpectralParams& params, const ThetaContext& ctx);

// Multiplicative rendering of the permutation sum for tilde-Z.
Complex z_tilde_weightfunction(const SpectralParams& params, const ThetaContext& ctx);

enum class DetPath { lu, frobenius };

// 2^n determinant sum. Each determinant evaluated either by pivoted LU or by
// the Frobenius closed form; both paths must agree.
Complex z_ik_sum(const SpectralParams& params, const ThetaContext& ctx,
                 DetPath path = DetPath::lu);

// The individual subset terms (mask bit i-1 <=> i in S), without the global
// prefactor. Sum of terms times ik_prefactor equals z_ik_sum.
std::vector<std::pair<uint32_t, Complex>> z_ik_terms(const SpectralParams& params,
                                                     const ThetaContext& ctx,
                                                     DetPath path = DetPath::lu);

// Fully factored 2^n-term sum; the fastest exact evaluator.
Complex z_factored_sum(const SpectralParams& params, const ThetaContext& ctx);
std::vector<std::pair<uint32_t, Complex>> z_factored_terms(const SpectralParams& params,
                                                           const ThetaContext& ctx);

// N-term determinant sum valid when q^N = 1 (p != 0). gamma from params or
// the generic default.
Complex z_root_of_unity(const SpectralParams& params, int N, const ThetaContext& ctx);

// gamma = p^{-k0} lambda^{-N} makes term k0 of the N-term sum vanish.
Complex gamma_dropping_term(int k0, Complex lambda_mult, int N, const ThetaContext& ctx);

// Bilateral determinant series truncated at |k| <= K; needs the annulus
// |p| < |lambda q^k| < 1 for 0 <= k <= n.
Complex z_laurent(const SpectralParams& params, int K, const ThetaContext& ctx);

// Closed product formula at the free-fermion point q = -1.
Complex z_free_fermion(const SpectralParams& params, const ThetaContext& ctx);

// Single-determinant trigonometric formula (p = 0): the lambda -> infinity
// limit of the model, Izergin-Korepin form.
Complex z_sixvertex_ik(const SpectralParams& params, const ThetaContext& ctx);

enum class RecursionBranch {
    y1_eq_x1_plus_1,  // specialize y_1 = x_1 + 1; Z_{n-1} keeps lambda
    y1_eq_x1,         // specialize y_1 = x_1;     Z_{n-1} gets lambda + 1
};

struct RecursionPair {
    Complex lhs;  // Z_n at the specialization
    Complex rhs;  // prefactor times Z_{n-1}
};

// Z_0 := 1 grounds the n = 1 case.
RecursionPair recursion_check(const SpectralParams& params, const ThetaContext& ctx,
                              RecursionBranch branch, const EvalOptions& opts = {});

// Z_n invariant under permutations of x and of y.
bool symmetry_check(const SpectralParams& params, const ThetaContext& ctx, int trials,
                    std::mt19937_64& rng, double rtol, const EvalOptions& opts = {});

// lambda |-> Z_n(lambda) prod_{j=1}^n [lambda+j-1] is a theta function of
// order n and norm |x|-|y|-C(n,2); when eta = 1/N (2 <= N <= n), additionally
// Z_n(lambda) prod_{j=1}^{N-1} [lambda+n-j] has order N-1 and norm
// |x|-|y|+n-C(N,2). Both checks run where applicable.
bool lambda_structure_check(const std::vector<Complex>& x, const std::vector<Complex>& y,
                            const ThetaContext& ctx, int samples, std::mt19937_64& rng,
                            double rtol, const EvalOptions& opts = {});

// x_1 |-> Z_n is a theta function of order n and norm |y| + lambda.
bool x_structure_check(const SpectralParams& params, const ThetaContext& ctx, int samples,
                       std::mt19937_64& rng, double rtol, const EvalOptions& opts = {});

} // namespace sosdw
