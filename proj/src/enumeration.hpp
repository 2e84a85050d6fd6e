#pragma once

// Root-of-unity enumeration results: the Kuperberg-type specialization of
// the state sum, dynamical enumeration of alternating sign matrices (A_n,
// C_n), three-colouring statistics, and exact 2-enumeration. Exact results
// are polynomials over Z[w] or Z[i]; numeric fallbacks cover larger n.

#include <gmpxx.h>

#include <array>
#include <utility>

#include "cyclotomic.hpp"
#include "partition.hpp"
#include "states.hpp"
#include "theta.hpp"

namespace sosdw {

// t = q^{-1/2} theta(q)^2 / theta(q^{1/2})^2, with the square root fixed by
// the explicit input s (s^2 = q). At p = 0 this collapses to s + 1/s + 2.
Complex kuperberg_t(const ThetaContext& ctx, Complex s);

struct KuperbergPair {
    Complex lhs;  // z_tilde at x_i = 1/s, y_i = 1
    Complex rhs;  // t-weighted state sum
    Complex t;
};

// Specialized partition function as a t-enumeration of states, where t^N
// counts the -1 entries of the matching alternating sign matrix.
KuperbergPair kuperberg_specialize(int n, const ThetaContext& ctx, Complex lambda,
                                   Complex s, int state_cap = kDefaultStateCap);

// --- p = 0, q = w = e^{2 pi i/3} -------------------------------------------

// Closed form w^{C(n+1,2)} (A_n (1 + w^n lambda^2) + (-1)^n C_n w^{2n} lambda)
//             / ((1 - lambda w^{n+1})(1 - lambda w^{n+2})).
Complex dynamical_enumerate(int n, Complex lambda);

// The same quantity summed directly over states.
Complex dynamical_state_sum(int n, Complex lambda, int state_cap = kDefaultStateCap);

struct EisensteinPair {
    Poly<Eisenstein> lhs, rhs;
};

// Both sides of the dynamical enumeration as exact polynomials over Z[w],
// cleared by (1 - lambda^3)^{n^2}.
EisensteinPair dynamical_pair_exact(int n, int state_cap = kDefaultStateCap);

// Three-colouring identity: sum over states of prod_i (1 - lambda w^i)^{-3 k_i}
// against its closed form, both cleared to polynomials by (1-lambda^3)^{n^2+2n+3}.
EisensteinPair three_colour_identity(int n, int state_cap = kDefaultStateCap);

struct ColourReport {
    int n = 0;
    mpz_class A, C;             // alternating-sign-matrix / cyclically
                                // symmetric plane partition counts
    std::array<mpz_class, 3> K;  // sum over states of the mod-3 colour counts
    std::array<mpq_class, 3> p;  // K_i / ((n+1)^2 A_n)
};

// Closed-form colour probabilities (case split on n mod 3, exact rationals).
ColourReport colour_probabilities(int n);

// K_i recomputed by enumerating states, for cross-checking the closed forms.
std::array<mpz_class, 3> colour_counts_enumerated(int n, int state_cap = kDefaultStateCap);

// With x_i = t/(1 - lambda w^i)^3: (1/x_0 + 1/x_1 + 1/x_2)^3 - 27/(x_0 x_1 x_2),
// identically zero in both lambda and t.
Complex constraint_check(Complex lambda, Complex t = Complex(1));

// --- q = +-i ----------------------------------------------------------------

struct GaussianPair {
    Poly<Gaussian> lhs, rhs;
};

// 2-enumeration: sum over states of 2^N (1+l)^{m0} (1+il)^{m1} (1-l)^{m2} (1-il)^{m3}
// against the closed case-split product (n mod 4); exact over Z[i], no clearing needed.
GaussianPair two_enumeration(int n, int state_cap = kDefaultStateCap);

struct MomentPair {
    mpz_class s20;  // sum 2^N (m2 - m0)
    mpz_class s31;  // sum 2^N (m3 - m1)
};

MomentPair two_enumeration_moments(int n, int state_cap = kDefaultStateCap);
MomentPair two_enumeration_moments_closed(int n);

// --- limits -----------------------------------------------------------------

// (-1)^{C(n,2)} prod_{i,j=1}^n (k + l(j-i)) / (l^n prod_{i,j} (n+j-i)), exact.
// At (k,l) = (1,3) this is 3^{-C(n+1,2)} A_n; at (2,3), 3^{-C(n+1,2)} C_n.
mpq_class kuperberg_limit_det(int n, long k, long l);

struct XYPair {
    Complex X, Y;
};

// Numeric probe of the elliptic deformation at q = w: solves
//   z_tilde(w,..;1,..;lambda) * theta(lambda w^{n+1}) theta(lambda w^{n+2})
//     = X theta(-w^n lambda^2; p^2) + Y lambda theta(-p w^n lambda^2; p^2)
// for (X, Y) from two lambda values. X, Y must come out lambda-independent;
// at p -> 0 they recover the dynamical enumeration coefficients.
XYPair elliptic_XY_probe(int n, Complex p, Complex lambda1 = Complex(0.31, 0.17),
                         Complex lambda2 = Complex(-0.23, 0.41),
                         int state_cap = kDefaultStateCap);

} // namespace sosdw
