#pragma once

// Theta kernel: truncated theta products, the additive bracket [x], Frobenius
// determinants, quasi-periodicity (order/norm) checks, and the classical
// series identities everything downstream leans on.
//
// Conventions, fixed once here:
//   theta(x; p) = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x), truncated at the
//                 smallest K with |p|^K < tol,
//   q^x         = exp(2 pi i eta x)   (principal branch in eta*x),
//   [x]         = q^{-x/2} theta(q^x; p)  with  q^{-x/2} = exp(-pi i eta x).
// At p = 0 this degenerates to [x] = -2i sin(pi eta x).

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace sosdw {

using Complex = std::complex<double>;

inline constexpr double kNomeCap = 0.9;

namespace detail {
template <class Real>
bool finite(const std::complex<Real>& z) {
    return std::isfinite(static_cast<double>(z.real())) &&
           std::isfinite(static_cast<double>(z.imag()));
}
} // namespace detail

// b^k for integer k of either sign.
template <class Real>
std::complex<Real> cpow_int(std::complex<Real> b, long k) {
    std::complex<Real> r(1);
    for (long i = 0; i < std::abs(k); ++i) r *= b;
    return k < 0 ? std::complex<Real>(1) / r : r;
}

template <class Real>
struct ThetaContextT {
    using C = std::complex<Real>;

    C p{};                 // elliptic nome
    C eta{};               // crossing parameter, q = e^{2 pi i eta}
    std::optional<C> tau;  // p = e^{2 pi i tau}; empty iff p == 0
    int truncation = 1;    // keep factors p^m with m < truncation
    Real tol = Real(1e-17);

    static ThetaContextT from_nome(C nome, C eta, Real tol = Real(1e-17)) {
        if (std::abs(nome) >= Real(kNomeCap))
            throw DomainError("theta context: |p| >= 0.9");
        ThetaContextT ctx;
        ctx.p = nome;
        ctx.eta = eta;
        ctx.tol = tol;
        if (nome != C(0)) {
            const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
            ctx.tau = std::log(nome) / (C(0, two_pi));
        }
        ctx.finish_init();
        return ctx;
    }

    static ThetaContextT from_tau(C tau, C eta, Real tol = Real(1e-17)) {
        const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
        C nome = std::exp(C(0, two_pi) * tau);
        if (!detail::finite(nome) || std::abs(nome) >= Real(kNomeCap))
            throw DomainError("theta context: tau gives |p| >= 0.9");
        ThetaContextT ctx;
        ctx.p = nome;
        ctx.eta = eta;
        ctx.tau = tau;
        ctx.tol = tol;
        ctx.finish_init();
        return ctx;
    }

    C q() const { return qpow(C(1)); }

    // q^x with the branch fixed as exp(2 pi i eta x); never reduced mod 1.
    C qpow(C x) const {
        const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
        C v = std::exp(C(0, two_pi) * eta * x);
        if (!detail::finite(v) || v == C(0))
            throw NumericError("q^x overflow/underflow");
        return v;
    }

    // q^{-x/2} = exp(-pi i eta x), the square-root branch used by [x].
    C qpow_half_neg(C x) const {
        C v = std::exp(C(0, -std::numbers::pi_v<Real>) * eta * x);
        if (!detail::finite(v) || v == C(0))
            throw NumericError("q^{-x/2} overflow/underflow");
        return v;
    }

    // Context with the same eta but nome p^N (used by the N-section identities).
    ThetaContextT nome_power(int N) const {
        C pn = C(1);
        for (int i = 0; i < N; ++i) pn *= p;
        return from_nome(pn, eta, tol);
    }

private:
    void finish_init() {
        // truncation: smallest K >= 1 with |p|^K < tol
        truncation = 1;
        if (p != C(0)) {
            Real ap = std::abs(p);
            truncation = static_cast<int>(std::ceil(std::log(tol) / std::log(ap)));
            if (truncation < 1) truncation = 1;
        }
        // The bracket degenerates identically when eta lies on the period
        // lattice Z + Z tau (then q^x is a power of p and [1] = 0).
        auto near_int = [](C z) {
            Real d = std::abs(z - C(std::round(static_cast<double>(z.real()))));
            return d < Real(1e-9) && std::abs(z.imag()) < Real(1e-9);
        };
        if (near_int(eta))
            throw DomainError("theta context: eta is an integer");
        if (tau) {
            Real it = tau->imag();
            int kmax = 2 + static_cast<int>(std::min(Real(64), std::abs(eta.imag()) / it));
            for (int k = -kmax; k <= kmax; ++k) {
                if (k != 0 && near_int(eta - Real(k) * *tau))
                    throw DomainError("theta context: eta lies on Z + Z*tau");
            }
        }
    }
};

using ThetaContext = ThetaContextT<double>;

// theta(x; p), truncated product.
template <class Real>
std::complex<Real> theta(std::complex<Real> x, const ThetaContextT<Real>& ctx) {
    using C = std::complex<Real>;
    if (x == C(0)) throw DomainError("theta: x = 0");
    C prod = C(1) - x;
    C pm = ctx.p;
    for (int m = 1; m < ctx.truncation; ++m) {
        prod *= (C(1) - pm * x) * (C(1) - pm / x);
        pm *= ctx.p;
    }
    if (!detail::finite(prod)) throw NumericError("theta: overflow");
    return prod;
}

template <class Real>
std::complex<Real> theta_product(std::initializer_list<std::complex<Real>> xs,
                                 const ThetaContextT<Real>& ctx) {
    std::complex<Real> prod(1);
    for (auto& x : xs) prod *= theta(x, ctx);
    return prod;
}

// Euler product (p; p)_infinity, truncated like theta.
template <class Real>
std::complex<Real> euler_product(const ThetaContextT<Real>& ctx) {
    using C = std::complex<Real>;
    C prod(1);
    C pm = ctx.p;
    for (int m = 1; m < ctx.truncation; ++m) {
        prod *= C(1) - pm;
        pm *= ctx.p;
    }
    return prod;
}

// Additive bracket [x] = q^{-x/2} theta(q^x; p).
template <class Real>
std::complex<Real> bracket(std::complex<Real> x, const ThetaContextT<Real>& ctx) {
    return ctx.qpow_half_neg(x) * theta(ctx.qpow(x), ctx);
}

template <class Real>
std::complex<Real> bracket_product(std::initializer_list<std::complex<Real>> xs,
                                   const ThetaContextT<Real>& ctx) {
    std::complex<Real> prod(1);
    for (auto& x : xs) prod *= bracket(x, ctx);
    return prod;
}

template <class Real>
std::complex<Real> bracket_product(std::span<const std::complex<Real>> xs,
                                   const ThetaContextT<Real>& ctx) {
    std::complex<Real> prod(1);
    for (auto& x : xs) prod *= bracket(x, ctx);
    return prod;
}

// LHS - RHS of the four-term bracket addition rule; ~0 for a correct kernel.
// Callers normalize by addition_scale (the largest of the three products).
template <class Real>
std::complex<Real> addition_residual(std::complex<Real> x, std::complex<Real> y,
                                     std::complex<Real> u, std::complex<Real> v,
                                     const ThetaContextT<Real>& ctx) {
    auto t1 = bracket_product({x + u, x - u, y + v, y - v}, ctx);
    auto t2 = bracket_product({x + v, x - v, y + u, y - u}, ctx);
    auto t3 = bracket_product({x + y, x - y, u + v, u - v}, ctx);
    return t1 - t2 - t3;
}

template <class Real>
Real addition_scale(std::complex<Real> x, std::complex<Real> y,
                    std::complex<Real> u, std::complex<Real> v,
                    const ThetaContextT<Real>& ctx) {
    auto t1 = bracket_product({x + u, x - u, y + v, y - v}, ctx);
    auto t2 = bracket_product({x + v, x - v, y + u, y - u}, ctx);
    auto t3 = bracket_product({x + y, x - y, u + v, u - v}, ctx);
    return std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
}

enum class Convention { additive, multiplicative };

template <class Real>
struct DetPairT {
    std::complex<Real> det;     // LU evaluation of the matrix
    std::complex<Real> closed;  // product form
};
using DetPair = DetPairT<double>;

// Frobenius determinant in both conventions.
//   additive:        M_ij = [x_i - y_j + t] / [x_i - y_j]
//   multiplicative:  M_ij = theta(t x_i / y_j) / theta(x_i / y_j)
template <class Real>
DetPairT<Real> frobenius_det(std::span<const std::complex<Real>> xs,
                             std::span<const std::complex<Real>> ys,
                             std::complex<Real> t, Convention conv,
                             const ThetaContextT<Real>& ctx) {
    using C = std::complex<Real>;
    const int n = static_cast<int>(xs.size());
    if (static_cast<int>(ys.size()) != n || n == 0)
        throw UsageError("frobenius_det: need equal nonempty x, y");

    std::vector<C> m(static_cast<size_t>(n) * n);
    C cross(1);  // prod_{i,j} of the denominators' theta parts
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            C den = (conv == Convention::additive) ? bracket(xs[i] - ys[j], ctx)
                                                   : theta(xs[i] / ys[j], ctx);
            if (std::abs(den) < Real(1e-12))
                throw PoleError("frobenius_det: x_i - y_j on the bracket zero set");
            C num = (conv == Convention::additive) ? bracket(xs[i] - ys[j] + t, ctx)
                                                   : theta(t * xs[i] / ys[j], ctx);
            m[static_cast<size_t>(i) * n + j] = num / den;
            cross *= den;
        }
    }
    C det = det_lu(m, n);

    C sign = (((static_cast<int64_t>(n) * (n - 1) / 2) % 2) == 0) ? C(1) : C(-1);
    C closed;
    if (conv == Convention::additive) {
        C sx(0), sy(0);
        for (auto& x : xs) sx += x;
        for (auto& y : ys) sy += y;
        C tb = bracket(t, ctx);
        C head = sign * bracket(sx - sy + t, ctx);
        for (int k = 0; k < n - 1; ++k) head *= tb;
        C pairs(1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                pairs *= bracket(xs[j] - xs[i], ctx) * bracket(ys[j] - ys[i], ctx);
        closed = head * pairs / cross;
    } else {
        C px(1), py(1);
        for (auto& x : xs) px *= x;
        for (auto& y : ys) py *= y;
        C tt = theta(t, ctx);
        C head = sign * py * theta(t * px / py, ctx);
        for (int k = 0; k < n - 1; ++k) head *= tt;
        C pairs(1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                pairs *= xs[j] * ys[j] * theta(xs[i] / xs[j], ctx) * theta(ys[i] / ys[j], ctx);
        // full denominator is prod_{i,j} y_j theta(x_i/y_j) = Y^n * cross
        C ypow(1);
        for (int k = 0; k < n; ++k) ypow *= py;
        closed = head * pairs / (ypow * cross);
    }
    return {det, closed};
}

// Checks f against the two quasi-periods of an order-n, norm-t theta function
// of the additive variable:
//   f(x + 1/eta)   = (-1)^n f(x)
//   f(x + tau/eta) = (-1)^n exp(2 pi i eta (t - n x) - pi i tau n) f(x)
// Sampled at random points; returns true iff every sample matches to rtol.
template <class Real>
bool order_norm_check(const std::function<std::complex<Real>(std::complex<Real>)>& f,
                      int n, std::complex<Real> t, const ThetaContextT<Real>& ctx,
                      int samples, std::mt19937_64& rng, Real rtol,
                      Real* max_rel_err = nullptr) {
    using C = std::complex<Real>;
    const Real pi = std::numbers::pi_v<Real>;
    std::uniform_real_distribution<double> box(-0.35, 0.35);
    C sgn = (n % 2 == 0) ? C(1) : C(-1);
    Real worst = 0;
    bool ok = true;
    for (int s = 0; s < samples; ++s) {
        C x(Real(box(rng)), Real(box(rng)));
        C fx = f(x);
        auto check = [&](C lhs, C rhs) {
            Real scale = std::max(std::abs(lhs), std::abs(rhs));
            if (scale == Real(0)) return;
            Real rel = std::abs(lhs - rhs) / scale;
            worst = std::max(worst, rel);
            if (rel > rtol) ok = false;
        };
        check(f(x + C(1) / ctx.eta), sgn * fx);
        if (ctx.tau) {
            C fac = sgn * std::exp(C(0, 2) * pi * ctx.eta * (t - Real(n) * x) -
                                   C(0, 1) * pi * *ctx.tau * Real(n));
            check(f(x + *ctx.tau / ctx.eta), fac * fx);
        }
    }
    if (max_rel_err) *max_rel_err = worst;
    return ok;
}

// N-section of theta(a x; p)/theta(x; p) into nome-p^N pieces:
//   theta(ax;p)/theta(x;p) = (p^N;p^N)^2 theta(a;p) / ((p;p)^2 theta(x^N;p^N))
//                            * sum_{k=0}^{N-1} x^k theta(a x^N p^k; p^N)/theta(a p^k; p^N)
template <class Real>
std::complex<Real> theta_decompose_residual(std::complex<Real> a, std::complex<Real> x,
                                            int N, const ThetaContextT<Real>& ctx) {
    using C = std::complex<Real>;
    if (N < 1) throw UsageError("theta_decompose_residual: N >= 1 required");
    if (ctx.p == C(0)) throw DomainError("theta_decompose_residual: p = 0");
    auto ctxN = ctx.nome_power(N);

    C tx = theta(x, ctx);
    if (std::abs(tx) < Real(1e-12)) throw PoleError("theta_decompose: theta(x) = 0");
    C lhs = theta(a * x, ctx) / tx;

    C xN(1);
    for (int i = 0; i < N; ++i) xN *= x;
    C txN = theta(xN, ctxN);
    if (std::abs(txN) < Real(1e-12)) throw PoleError("theta_decompose: theta(x^N; p^N) = 0");

    C e1 = euler_product(ctx), eN = euler_product(ctxN);
    C pref = eN * eN * theta(a, ctx) / (e1 * e1 * txN);
    C sum(0);
    C pk(1), xk(1);
    for (int k = 0; k < N; ++k) {
        C den = theta(a * pk, ctxN);
        if (std::abs(den) < Real(1e-12))
            throw PoleError("theta_decompose: theta(a p^k; p^N) = 0");
        sum += xk * theta(a * xN * pk, ctxN) / den;
        pk *= ctx.p;
        xk *= x;
    }
    C rhs = pref * sum;
    return lhs - rhs;
}

// Partial sum of the bilateral series
//   sum_{k in Z} x^k / (1 - a p^k)  ->  (p;p)^2 theta(ax) / (theta(a) theta(x)),
// valid on the annulus |p| < |x| < 1. Returns the symmetric partial sum |k| <= K.
template <class Real>
std::complex<Real> ramanujan_partial(std::complex<Real> a, std::complex<Real> x,
                                     int K, const ThetaContextT<Real>& ctx) {
    using C = std::complex<Real>;
    if (ctx.p == C(0)) throw DomainError("ramanujan_partial: p = 0");
    Real ax = std::abs(x);
    if (!(std::abs(ctx.p) < ax && ax < Real(1)))
        throw DomainError("ramanujan_partial: need |p| < |x| < 1");
    C sum(0);
    C pk(1), xk(1);
    for (int k = 0; k <= K; ++k) {
        C den = C(1) - a * pk;
        if (std::abs(den) < Real(1e-12))
            throw PoleError("ramanujan_partial: 1 - a p^k = 0");
        sum += xk / den;
        pk *= ctx.p;
        xk *= x;
    }
    pk = C(1);
    xk = C(1);
    for (int k = 1; k <= K; ++k) {
        pk /= ctx.p;
        xk /= x;
        C den = C(1) - a * pk;
        if (std::abs(den) < Real(1e-12))
            throw PoleError("ramanujan_partial: 1 - a p^-k = 0");
        sum += xk / den;
    }
    return sum;
}

} // namespace sosdw
