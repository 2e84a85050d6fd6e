#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "sampling.hpp"
#include "theta.hpp"

using namespace sosdw;
using doctest::Approx;

namespace {
double rel(Complex got, Complex want) {
    const double s = std::max(std::abs(got), std::abs(want));
    return s == 0 ? 0.0 : std::abs(got - want) / s;
}
} // namespace

TEST_CASE("theta product against high-precision reference values") {
    // mpmath, 40 digits, 400 product terms
    auto ctx = ThetaContext::from_nome(Complex(0.15), Complex(0.30, 0.11));
    CHECK(rel(theta(Complex(0.3, 0.2), ctx),
              Complex(0.44878933559036887334, 0.030073155181981077381)) < 1e-14);
    CHECK(rel(bracket(Complex(0.7, -0.2), ctx),
              Complex(0.12807744200255380056, -1.3080658282805999719)) < 1e-14);

    auto ctx2 = ThetaContext::from_nome(Complex(0.2), Complex(0.30, 0.11));
    CHECK(rel(euler_product(ctx2), Complex(0.7603327958712324201)) < 1e-14);

    auto ctx4 = ThetaContext::from_nome(Complex(0.4), Complex(0.30, 0.11));
    CHECK(rel(theta(Complex(2, 1), ctx4),
              Complex(-0.23281190914938859767, 0.13315754959950818412)) < 1e-14);
}

TEST_CASE("bracket at p = 0 is -2i sin(pi eta x)") {
    auto ctx = ThetaContext::from_nome(Complex(0), Complex(1.0 / 6, 0));
    CHECK(rel(bracket(Complex(3), ctx), Complex(0, -2)) < 1e-14);

    auto gen = ThetaContext::from_nome(Complex(0), Complex(0.3, 0.05));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 25; ++t) {
        const Complex x = draw_box(rng, -2, 2, -1, 1);
        const Complex want =
            Complex(0, -2) * std::sin(std::numbers::pi * gen.eta * x);
        CHECK(rel(bracket(x, gen), want) < 1e-12);
    }
}

TEST_CASE("bracket is odd and vanishes on the lattice") {
    auto ctx = ThetaContext::from_nome(Complex(0.25), Complex(0.30, 0.11));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        const Complex x = draw_box(rng, -1.5, 1.5, -0.6, 0.6);
        CHECK(rel(bracket(-x, ctx), -bracket(x, ctx)) < 1e-12);
    }
    CHECK(std::abs(bracket(Complex(0), ctx)) < 1e-14);
    // x = 1/eta maps to q^x = 1
    CHECK(std::abs(bracket(Complex(1) / ctx.eta, ctx)) < 1e-10);
}

TEST_CASE("bracket quasi-periodicity: order 1, norm 0") {
    std::mt19937_64 rng(13);
    for (double pval : {0.05, 0.2, 0.5}) {
        auto ctx = ThetaContext::from_nome(Complex(pval), Complex(0.30, 0.11));
        double worst = 0;
        const bool ok = order_norm_check<double>(
            [&](Complex x) { return bracket(x, ctx); }, 1, Complex(0), ctx, 20, rng,
            1e-9, &worst);
        CAPTURE(pval);
        CAPTURE(worst);
        CHECK(ok);
    }
}

TEST_CASE("four-term addition rule") {
    std::mt19937_64 rng(17);
    for (double pval : {0.0, 0.1, 0.45}) {
        auto ctx = ThetaContext::from_nome(Complex(pval), Complex(0.30, 0.11));
        for (int t = 0; t < 100; ++t) {
            const Complex x = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
            const Complex y = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
            const Complex u = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
            const Complex v = draw_box(rng, -0.8, 0.8, -0.3, 0.3);
            const double scale = addition_scale(x, y, u, v, ctx);
            if (scale < 1e-8) continue;
            CHECK(std::abs(addition_residual(x, y, u, v, ctx)) / scale < 1e-9);
        }
    }
}

TEST_CASE("Frobenius determinant equals its closed form") {
    std::mt19937_64 rng(19);
    auto ctx = ThetaContext::from_nome(Complex(0.2), Complex(0.30, 0.11));
    for (int n = 1; n <= 6; ++n) {
        for (int t = 0; t < 50; ++t) {
            const auto nd = draw_det_nodes(rng, n, ctx);

            auto add = frobenius_det<double>(nd.x, nd.y, nd.t, Convention::additive, ctx);
            CHECK(rel(add.det, add.closed) < 1e-9);

            // multiplicative convention on the q^x images of the same point
            std::vector<Complex> xm, ym;
            for (auto& v : nd.x) xm.push_back(ctx.qpow(v));
            for (auto& v : nd.y) ym.push_back(ctx.qpow(v));
            auto mul = frobenius_det<double>(xm, ym, ctx.qpow(nd.t),
                                             Convention::multiplicative, ctx);
            CHECK(rel(mul.det, mul.closed) < 1e-9);
        }
    }
}

TEST_CASE("N-section of theta(ax)/theta(x)") {
    std::mt19937_64 rng(23);
    auto ctx = ThetaContext::from_nome(Complex(0.3), Complex(0.30, 0.11));
    std::uniform_real_distribution<double> arg(0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> amod(0.55, 1.6);
    std::uniform_real_distribution<double> xmod(0.55, 0.95);
    for (int N = 1; N <= 5; ++N) {
        for (int t = 0; t < 10; ++t) {
            const Complex a = std::polar(amod(rng), arg(rng));
            const Complex x = std::polar(xmod(rng), arg(rng));
            CHECK(std::abs(theta_decompose_residual(a, x, N, ctx)) < 1e-10);
        }
    }
}

TEST_CASE("bilateral series converges to the theta quotient") {
    // mpmath: (p;p)^2 theta(ax)/(theta(a) theta(x)) at a=0.35+0.15i, x=0.6-0.1i, p=0.2
    auto ctx = ThetaContext::from_nome(Complex(0.2), Complex(0.30, 0.11));
    const Complex a(0.35, 0.15), x(0.6, -0.1);
    const Complex want(1.1573821961439092062, 0.67848813249365219968);
    const Complex e = euler_product(ctx);
    CHECK(rel(e * e * theta(a * x, ctx) / (theta(a, ctx) * theta(x, ctx)), want) <
          1e-13);
    CHECK(rel(ramanujan_partial(a, x, 80, ctx), want) < 1e-13);
    // truncation error shrinks with K
    const double e20 = std::abs(ramanujan_partial(a, x, 20, ctx) - want);
    const double e40 = std::abs(ramanujan_partial(a, x, 40, ctx) - want);
    CHECK(e40 < e20);
    CHECK(e40 < 1e-8);
}

TEST_CASE("domain and pole errors") {
    CHECK_THROWS_AS(ThetaContext::from_nome(Complex(0.95), Complex(0.3, 0.11)),
                    DomainError);
    CHECK_THROWS_AS(ThetaContext::from_nome(Complex(0.2), Complex(1.0, 0.0)),
                    DomainError);  // eta integer
    {
        // eta = 2*tau lies on the period lattice
        auto base = ThetaContext::from_nome(Complex(0.2), Complex(0.3, 0.11));
        CHECK_THROWS_AS(ThetaContext::from_nome(Complex(0.2), *base.tau * 2.0),
                        DomainError);
    }
    auto ctx = ThetaContext::from_nome(Complex(0.2), Complex(0.30, 0.11));
    CHECK_THROWS_AS(theta(Complex(0), ctx), DomainError);
    CHECK_THROWS_AS(theta_decompose_residual(Complex(0.5), Complex(0.7), 2,
                                             ThetaContext::from_nome(
                                                 Complex(0), Complex(0.3, 0.11))),
                    DomainError);
    CHECK_THROWS_AS(ramanujan_partial(Complex(0.5), Complex(1.4), 10, ctx),
                    DomainError);  // |x| >= 1
}

TEST_CASE("pole guards trip on exact zeros") {
    auto ctx = ThetaContext::from_nome(Complex(0.2), Complex(0.30, 0.11));
    // 1 - a p^0 = 0 at a = 1
    CHECK_THROWS_AS(ramanujan_partial(Complex(1.0), Complex(0.5), 10, ctx), PoleError);
    std::vector<Complex> xs{Complex(0.4)}, ys{Complex(0.4)};
    CHECK_THROWS_AS(frobenius_det<double>(xs, ys, Complex(0.3), Convention::additive,
                                          ctx),
                    PoleError);
}

TEST_CASE("kernel instantiates at long double precision") {
    using LC = std::complex<long double>;
    auto ctx = ThetaContextT<long double>::from_nome(LC(0.15L), LC(0.30L, 0.11L),
                                                     1e-19L);
    const LC v = bracket(LC(0.7L, -0.2L), ctx);
    CHECK(std::abs(v - LC(0.12807744200255380056L, -1.3080658282805999719L)) <
          1e-15L);
}
