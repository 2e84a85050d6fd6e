#include "enumeration.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace sosdw {

namespace {

constexpr double kPoleTol = 1e-12;

Complex need(Complex v, const std::string& what) {
    if (std::abs(v) < kPoleTol) throw PoleError("vanishing factor: " + what);
    return v;
}

// w^k as a complex number, k of either sign.
Complex wpow(long k) {
    static const Complex w(-0.5, std::sqrt(3.0) / 2.0);
    switch (((k % 3) + 3) % 3) {
        case 0: return Complex(1);
        case 1: return w;
        default: return std::conj(w);
    }
}

long tri(long n) { return n * (n + 1) / 2; }

// 1 - lambda w^k over Z[w]
Poly<Eisenstein> omega_linear(long k) {
    Poly<Eisenstein> p;
    p.c = {Eisenstein(1), -Eisenstein::omega_power(k)};
    return p;
}

mpz_class pow2(unsigned long e) {
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

} // namespace

Complex kuperberg_t(const ThetaContext& ctx, Complex s) {
    if (std::abs(s * s - ctx.q()) > 1e-9)
        throw UsageError("kuperberg_t: s^2 != q for this context");
    const Complex ths = need(theta(s, ctx), "theta(q^{1/2})");
    const Complex thq = theta(ctx.q(), ctx);
    return thq * thq / (s * ths * ths);
}

KuperbergPair kuperberg_specialize(int n, const ThetaContext& ctx, Complex lambda,
                                   Complex s, int state_cap) {
    const Complex t = kuperberg_t(ctx, s);

    SpectralParams P;
    P.convention = Convention::multiplicative;
    P.x.assign(n, Complex(1) / s);
    P.y.assign(n, Complex(1));
    P.lambda = lambda;
    EvalOptions opts;
    opts.state_cap = state_cap;
    const Complex lhs = z_tilde(P, ctx, opts);

    Complex sum(0);
    enumerate_states(
        n,
        [&](const HeightMatrix& hm) {
            const StateStatistics st = statistics(hm);
            Complex w = cpow_int(t, st.minus_ones);
            for (const auto& b : st.blocks) {
                const long e = 3L * b.a + 3L * b.b - b.c - b.d;  // always even
                w *= theta(lambda * cpow_int(s, e / 2), ctx) /
                     need(theta(lambda * cpow_int(s, 2L * b.a), ctx), "theta(lambda q^a)");
            }
            sum += w;
        },
        state_cap);
    const Complex rhs = cpow_int(s, -tri(n)) * cpow_int(t, -tri(n - 1)) * sum;
    return {lhs, rhs, t};
}

Complex dynamical_enumerate(int n, Complex lambda) {
    if (n < 1) throw UsageError("dynamical_enumerate: n >= 1 required");
    const Complex d1 = need(Complex(1) - lambda * wpow(n + 1), "1 - lambda w^{n+1}");
    const Complex d2 = need(Complex(1) - lambda * wpow(n + 2), "1 - lambda w^{n+2}");
    const Complex A(asm_count(n).get_d());
    const Complex C(cspp_count(n).get_d());
    const Complex sgn = (n % 2 == 0) ? Complex(1) : Complex(-1);
    return wpow(tri(n)) *
           (A * (Complex(1) + wpow(n) * lambda * lambda) + sgn * C * wpow(2L * n) * lambda) /
           (d1 * d2);
}

Complex dynamical_state_sum(int n, Complex lambda, int state_cap) {
    Complex sum(0);
    enumerate_states(
        n,
        [&](const HeightMatrix& hm) {
            Complex w(1);
            const StateStatistics st = statistics(hm);
            for (const auto& b : st.blocks)
                w *= (Complex(1) - lambda * wpow(-static_cast<long>(b.c) - b.d)) /
                     need(Complex(1) - lambda * wpow(b.a), "1 - lambda w^a");
            sum += w;
        },
        state_cap);
    return wpow(tri(n)) * sum;
}

EisensteinPair dynamical_pair_exact(int n, int state_cap) {
    if (n < 1) throw UsageError("dynamical_pair_exact: n >= 1 required");
    const Eisenstein unit = Eisenstein::omega_power(tri(n));

    Poly<Eisenstein> lhs;
    enumerate_states(
        n,
        [&](const HeightMatrix& hm) {
            Poly<Eisenstein> term(Eisenstein(1));
            const StateStatistics st = statistics(hm);
            for (const auto& b : st.blocks) {
                // (1 - l w^{-c-d}) * (1 - l^3)/(1 - l w^a)
                term = term * omega_linear(-static_cast<long>(b.c) - b.d) *
                       omega_linear(b.a + 1) * omega_linear(b.a + 2);
            }
            lhs = lhs + term;
        },
        state_cap);
    lhs = unit * lhs;

    const Eisenstein A(asm_count(n), mpz_class(0));
    const Eisenstein C(cspp_count(n), mpz_class(0));
    const Eisenstein sgn = (n % 2 == 0) ? Eisenstein(1) : Eisenstein(-1);
    Poly<Eisenstein> core;
    core.c = {A, sgn * C * Eisenstein::omega_power(2L * n), A * Eisenstein::omega_power(n)};
    core.normalize();
    Poly<Eisenstein> cube;  // 1 - lambda^3
    cube.c = {Eisenstein(1), Eisenstein(0), Eisenstein(0), Eisenstein(-1)};
    Poly<Eisenstein> rhs = unit * (core * omega_linear(n) * cube.pow(n * n - 1));
    return {lhs, rhs};
}

EisensteinPair three_colour_identity(int n, int state_cap) {
    if (n < 1) throw UsageError("three_colour_identity: n >= 1 required");
    // collect the colour counts of every state
    std::vector<std::array<long long, 3>> ks;
    enumerate_states(
        n, [&](const HeightMatrix& hm) { ks.push_back(statistics(hm).height_mod3); },
        state_cap);
    long long maxk = 0;
    for (const auto& k : ks)
        for (int i = 0; i < 3; ++i) maxk = std::max(maxk, k[i]);

    // Individual states have poles up to (1 - l w^i)^{3 max k}; they cancel in
    // the sum down to the closed form's (1 - l^3)^{n^2+2n+3}. Clear with the
    // larger power, then divide the exact surplus back out.
    const long long spec_power = static_cast<long long>(n) * n + 2 * n + 3;
    const long long D = std::max(spec_power, 3 * maxk);

    std::array<std::vector<Poly<Eisenstein>>, 3> pows;
    for (int i = 0; i < 3; ++i) {
        pows[i].resize(static_cast<size_t>(D) + 1);
        pows[i][0] = Poly<Eisenstein>(Eisenstein(1));
        for (long long e = 1; e <= D; ++e) pows[i][e] = pows[i][e - 1] * omega_linear(i);
    }

    Poly<Eisenstein> lhs;
    for (const auto& k : ks)
        lhs = lhs + pows[0][static_cast<size_t>(D - 3 * k[0])] *
                        pows[1][static_cast<size_t>(D - 3 * k[1])] *
                        pows[2][static_cast<size_t>(D - 3 * k[2])];
    if (D > spec_power) {
        Poly<Eisenstein> cube;
        cube.c = {Eisenstein(1), Eisenstein(0), Eisenstein(0), Eisenstein(-1)};
        lhs = lhs.divide_exact(cube.pow(static_cast<int>(D - spec_power)));
    }

    const Eisenstein A(asm_count(n), mpz_class(0));
    const Eisenstein C(cspp_count(n), mpz_class(0));
    const Eisenstein sgn = (n % 2 == 0) ? Eisenstein(1) : Eisenstein(-1);
    Poly<Eisenstein> core;
    core.c = {A, sgn * C * Eisenstein::omega_power(2L * n), A * Eisenstein::omega_power(n)};
    core.normalize();
    Poly<Eisenstein> rhs =
        pows[2][2] * omega_linear(n + 1) * omega_linear(n + 1) * core;
    return {lhs, rhs};
}

ColourReport colour_probabilities(int n) {
    if (n < 1) throw UsageError("colour_probabilities: n >= 1 required");
    ColourReport rep;
    rep.n = n;
    rep.A = asm_count(n);
    rep.C = cspp_count(n);

    mpq_class r(rep.C, rep.A);  // (2/3)_n / (1/3)_n
    r.canonicalize();
    const mpq_class third(1, 3);
    mpq_class d(1, 9);
    d /= mpq_class(static_cast<long>(n) + 1) * (static_cast<long>(n) + 1);
    const int sgn = (n % 2 == 0) ? 1 : -1;

    mpq_class p0, p1, p2;
    switch (n % 3) {
        case 0:
            p0 = third + 4 * d + 2 * sgn * r * d;
            p1 = p2 = third - 2 * d - sgn * r * d;
            break;
        case 1:
            p0 = p1 = third + 4 * d - sgn * r * d;
            p2 = third - 8 * d + 2 * sgn * r * d;
            break;
        default:
            p0 = p2 = third - 2 * d - sgn * r * d;
            p1 = third + 4 * d + 2 * sgn * r * d;
            break;
    }
    rep.p = {p0, p1, p2};
    const mpz_class cells = mpz_class(static_cast<long>(n) + 1) * (static_cast<long>(n) + 1);
    for (int i = 0; i < 3; ++i) {
        mpq_class k = rep.p[i] * cells * rep.A;
        k.canonicalize();
        if (k.get_den() != 1)
            throw NumericError("colour_probabilities: K_i not integral");
        rep.K[i] = k.get_num();
    }
    return rep;
}

std::array<mpz_class, 3> colour_counts_enumerated(int n, int state_cap) {
    std::array<mpz_class, 3> K{0, 0, 0};
    enumerate_states(
        n,
        [&](const HeightMatrix& hm) {
            const auto k = statistics(hm).height_mod3;
            for (int i = 0; i < 3; ++i) K[i] += static_cast<long>(k[i]);
        },
        state_cap);
    return K;
}

Complex constraint_check(Complex lambda, Complex t) {
    if (t == Complex(0)) throw DomainError("constraint_check: t = 0");
    Complex inv_sum(0), prod(1);
    for (long i = 0; i < 3; ++i) {
        const Complex lin = need(Complex(1) - lambda * wpow(i), "1 - lambda w^i");
        const Complex x = t / (lin * lin * lin);
        inv_sum += Complex(1) / x;
        prod *= x;
    }
    return inv_sum * inv_sum * inv_sum - Complex(27) / prod;
}

GaussianPair two_enumeration(int n, int state_cap) {
    if (n < 1) throw UsageError("two_enumeration: n >= 1 required");
    const long cells = static_cast<long>(n) * n;
    // factor bases: base[k] = 1 + i^k l, i.e. (1+l), (1+il), (1-l), (1-il)
    std::array<Poly<Gaussian>, 4> base;
    for (long i = 0; i < 4; ++i) base[i].c = {Gaussian(1), Gaussian::i_power(i)};
    std::array<std::vector<Poly<Gaussian>>, 4> pows;
    for (int i = 0; i < 4; ++i) {
        pows[i].resize(static_cast<size_t>(cells) + 1);
        pows[i][0] = Poly<Gaussian>(Gaussian(1));
        for (long e = 1; e <= cells; ++e) pows[i][e] = pows[i][e - 1] * base[i];
    }

    Poly<Gaussian> lhs;
    enumerate_states(
        n,
        [&](const HeightMatrix& hm) {
            const StateStatistics st = statistics(hm);
            Poly<Gaussian> term = pows[0][static_cast<size_t>(st.corner_mod8[0])] *
                                  pows[1][static_cast<size_t>(st.corner_mod8[1])] *
                                  pows[2][static_cast<size_t>(st.corner_mod8[2])] *
                                  pows[3][static_cast<size_t>(st.corner_mod8[3])];
            lhs = lhs + Gaussian(pow2(static_cast<unsigned long>(st.minus_ones)),
                                 mpz_class(0)) *
                            term;
        },
        state_cap);

    const long h = cells / 2;  // n^2/2 rounded down
    Poly<Gaussian> rhs;
    switch (n % 4) {
        case 0: rhs = (pows[0][1] * pows[2][1]).pow(static_cast<int>(h)); break;
        case 1: rhs = pows[1][1] * (pows[0][1] * pows[2][1]).pow(static_cast<int>(h)); break;
        case 2:
            rhs = pows[2][static_cast<size_t>(h + 1)] * pows[0][static_cast<size_t>(h - 1)];
            break;
        default: rhs = pows[3][1] * (pows[0][1] * pows[2][1]).pow(static_cast<int>(h)); break;
    }
    rhs = Gaussian(pow2(static_cast<unsigned long>(tri(n - 1))), mpz_class(0)) * rhs;
    return {lhs, rhs};
}

MomentPair two_enumeration_moments(int n, int state_cap) {
    MomentPair m{0, 0};
    enumerate_states(
        n,
        [&](const HeightMatrix& hm) {
            const StateStatistics st = statistics(hm);
            const mpz_class w = pow2(static_cast<unsigned long>(st.minus_ones));
            m.s20 += w * static_cast<long>(st.corner_mod8[2] - st.corner_mod8[0]);
            m.s31 += w * static_cast<long>(st.corner_mod8[3] - st.corner_mod8[1]);
        },
        state_cap);
    return m;
}

MomentPair two_enumeration_moments_closed(int n) {
    MomentPair m{0, 0};
    const mpz_class scale = pow2(static_cast<unsigned long>(tri(n - 1)));
    if (n % 4 == 2) m.s20 = 2 * scale;
    if (n % 2 == 1) m.s31 = ((n + 1) / 2 % 2 == 1) ? -scale : scale;
    return m;
}

mpq_class kuperberg_limit_det(int n, long k, long l) {
    if (n < 1) throw UsageError("kuperberg_limit_det: n >= 1 required");
    if (l == 0) throw UsageError("kuperberg_limit_det: l = 0");
    mpz_class num = 1, den = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            num *= k + l * (j - i);
            den *= n + j - i;
        }
    if (tri(n - 1) % 2 == 1) num = -num;
    mpz_class lp = 1;
    for (int i = 0; i < n; ++i) lp *= l;
    mpq_class r(num, den * lp);
    r.canonicalize();
    return r;
}

XYPair elliptic_XY_probe(int n, Complex p, Complex lambda1, Complex lambda2,
                         int state_cap) {
    const double ap = std::abs(p);
    if (!(ap > 0 && ap <= 0.5))
        throw DomainError("elliptic_XY_probe: need 0 < |p| <= 0.5");
    const ThetaContext ctx = ThetaContext::from_nome(p, Complex(1.0 / 3.0));
    const ThetaContext ctx2 = ctx.nome_power(2);

    EvalOptions opts;
    opts.state_cap = state_cap;
    auto lhs_at = [&](Complex lam) {
        SpectralParams P;
        P.convention = Convention::multiplicative;
        P.x.assign(n, wpow(1));
        P.y.assign(n, Complex(1));
        P.lambda = lam;
        return z_tilde(P, ctx, opts) * theta(lam * wpow(n + 1), ctx) *
               theta(lam * wpow(n + 2), ctx);
    };
    auto row = [&](Complex lam) {
        return std::array<Complex, 2>{theta(-wpow(n) * lam * lam, ctx2),
                                      lam * theta(-p * wpow(n) * lam * lam, ctx2)};
    };

    const auto r1 = row(lambda1), r2 = row(lambda2);
    const Complex b1 = lhs_at(lambda1), b2 = lhs_at(lambda2);
    const Complex det = r1[0] * r2[1] - r1[1] * r2[0];
    const double scale = std::abs(r1[0] * r2[1]) + std::abs(r1[1] * r2[0]);
    if (std::abs(det) < 1e-10 * scale)
        throw NumericError("elliptic_XY_probe: ill-conditioned lambda pair");
    return {(b1 * r2[1] - b2 * r1[1]) / det, (r1[0] * b2 - r2[0] * b1) / det};
}

} // namespace sosdw
