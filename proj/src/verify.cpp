#include "verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>
#include <utility>

#include "enumeration.hpp"
#include "partition.hpp"
#include "sampling.hpp"

namespace sosdw {

namespace {

using Clock = std::chrono::steady_clock;

double rel_err(Complex a, Complex b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0.0 : std::abs(a - b) / s;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string fmt(Complex z) { return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i"; }

struct Recorder {
    std::string suite;
    std::vector<CheckResult>* out;
    Clock::time_point mark = Clock::now();

    void add(std::string check, int n, std::string params, double err, bool exact,
             bool passed) {
        const auto now = Clock::now();
        out->push_back({suite, std::move(check), n, std::move(params), err, exact, passed,
                        std::chrono::duration<double, std::milli>(now - mark).count()});
        mark = now;
    }
    void numeric(std::string check, int n, std::string params, double err, double tol) {
        add(std::move(check), n, std::move(params), err, false,
            std::isfinite(err) && err <= tol);
    }
    void exact(std::string check, int n, std::string params, bool equal) {
        add(std::move(check), n, std::move(params), 0.0, true, equal);
    }
};

// Retry a draw-dependent computation past unlucky pole draws.
template <class F>
auto retried(F&& f) {
    for (int attempt = 0;; ++attempt) {
        try {
            return f();
        } catch (const PoleError&) {
            if (attempt >= 50) throw;
        }
    }
}

using SuiteFn = std::function<void(const SuiteConfig&, std::mt19937_64&, Recorder&)>;

// ---------------------------------------------------------------- theta ----

void suite_theta_addition(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(cfg.nome), cfg.eta);
    double worst = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        const Complex x = draw_box(rng, -0.6, 0.6, -0.3, 0.3);
        const Complex y = draw_box(rng, -0.6, 0.6, -0.3, 0.3);
        const Complex u = draw_box(rng, -0.6, 0.6, -0.3, 0.3);
        const Complex v = draw_box(rng, -0.6, 0.6, -0.3, 0.3);
        const double scale = addition_scale(x, y, u, v, ctx);
        if (scale < 1e-12) continue;
        worst = std::max(worst, std::abs(addition_residual(x, y, u, v, ctx)) / scale);
    }
    rec.numeric("four-term-addition", 0,
                "p=" + fmt(cfg.nome) + " eta=" + fmt(cfg.eta) + " trials=" +
                    std::to_string(cfg.trials),
                worst, cfg.tol);
}

void suite_theta_quasiperiod(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    for (double nome : {cfg.nome, 0.5}) {
        const auto ctx = ThetaContext::from_nome(Complex(nome), cfg.eta);
        double worst = 0;
        std::function<Complex(Complex)> f = [&](Complex x) { return bracket(x, ctx); };
        const bool ok =
            order_norm_check<double>(f, 1, Complex(0), ctx, cfg.trials, rng, cfg.tol, &worst);
        rec.add("bracket-order-1-norm-0", 0, "p=" + fmt(nome), worst, false, ok);
    }
}

void suite_frobenius(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(cfg.nome), cfg.eta);
    const int n_hi = std::min(6, std::max(cfg.n_max, 2));
    for (int n = 1; n <= n_hi; ++n) {
        double worst_add = 0, worst_mul = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            const auto val = retried([&] {
                const auto nd = draw_det_nodes(rng, n, ctx);
                const auto da =
                    frobenius_det<double>(nd.x, nd.y, nd.t, Convention::additive, ctx);
                std::vector<Complex> xm, ym;
                for (auto& v : nd.x) xm.push_back(ctx.qpow(v));
                for (auto& v : nd.y) ym.push_back(ctx.qpow(v));
                const auto dm = frobenius_det<double>(xm, ym, ctx.qpow(nd.t),
                                                      Convention::multiplicative, ctx);
                return std::pair{rel_err(da.det, da.closed), rel_err(dm.det, dm.closed)};
            });
            worst_add = std::max(worst_add, val.first);
            worst_mul = std::max(worst_mul, val.second);
        }
        rec.numeric("det-vs-closed-additive", n, "trials=" + std::to_string(cfg.trials),
                    worst_add, cfg.tol);
        rec.numeric("det-vs-closed-multiplicative", n, "trials=" + std::to_string(cfg.trials),
                    worst_mul, cfg.tol);
    }
}

void suite_theta_decompose(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(cfg.nome), cfg.eta);
    for (int N = 2; N <= 5; ++N) {
        double worst = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            const double err = retried([&] {
                std::uniform_real_distribution<double> mod(0.55, 1.6), arg(0.2, 6.0);
                const Complex a = std::polar(mod(rng), arg(rng));
                const Complex x = std::polar(mod(rng), arg(rng));
                const Complex lhs = theta(a * x, ctx) / theta(x, ctx);
                const Complex res = theta_decompose_residual(a, x, N, ctx);
                return std::abs(res) / std::max(std::abs(lhs), 1e-300);
            });
            worst = std::max(worst, err);
        }
        rec.numeric("n-section", N, "p=" + fmt(cfg.nome), worst, cfg.tol);
    }
}

void suite_ramanujan(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(cfg.nome), cfg.eta);
    const Complex e2 = euler_product(ctx) * euler_product(ctx);
    double worst = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        const double err = retried([&] {
            std::uniform_real_distribution<double> amod(1.3, 2.4), xmod(cfg.nome + 0.25, 0.9),
                arg(0.2, 6.0);
            const Complex a = std::polar(amod(rng), arg(rng));
            const Complex x = std::polar(xmod(rng), arg(rng));
            const Complex closed =
                e2 * theta(a * x, ctx) / (theta(a, ctx) * theta(x, ctx));
            const int K = 40 + static_cast<int>(std::ceil(
                                   std::log(1e-13) / std::log(std::abs(x))));
            const Complex partial = ramanujan_partial(a, x, std::min(K, 400), ctx);
            return rel_err(closed, partial);
        });
        worst = std::max(worst, err);
    }
    rec.numeric("bilateral-sum", 0, "p=" + fmt(cfg.nome), worst, cfg.tol);
}

// --------------------------------------------------------------- states ----

void suite_state_counts(const SuiteConfig& cfg, std::mt19937_64&, Recorder& rec) {
    for (int n = 1; n <= std::min(cfg.n_max, cfg.state_cap); ++n) {
        const mpz_class want = asm_count(n);
        const unsigned long got = count_states(n, cfg.state_cap);
        rec.exact("count-equals-product-formula", n, "A_n=" + want.get_str(),
                  mpz_class(got) == want);
    }
}

// ------------------------------------------------------------- evaluators --

EvalOptions eval_opts(const SuiteConfig& cfg) {
    EvalOptions o;
    o.state_cap = cfg.state_cap;
    o.threads = cfg.threads;
    return o;
}

void suite_five_way(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    for (int n = 1; n <= std::min(3, cfg.n_max); ++n) {
        double worst = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            std::uniform_real_distribution<double> pmod(0.05, 0.5), parg(0.0, 6.28),
                etare(0.2, 0.45), etaim(0.02, 0.1);
            const Complex p = std::polar(pmod(rng), parg(rng));
            const auto ctx = ThetaContext::from_nome(p, Complex(etare(rng), etaim(rng)));
            const SpectralParams P = draw_params(n, ctx, rng, true);
            const auto opts = eval_opts(cfg);
            const Complex v[5] = {z_bruteforce(P, ctx, opts), z_weightfunction(P, ctx),
                                  z_ik_sum(P, ctx, DetPath::lu),
                                  z_ik_sum(P, ctx, DetPath::frobenius), z_factored_sum(P, ctx)};
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j) worst = std::max(worst, rel_err(v[i], v[j]));
        }
        rec.numeric("brute-weightfn-ik-lu-ik-frob-factored", n,
                    "trials=" + std::to_string(cfg.trials) + " |p|<=0.5", worst, cfg.tol);
    }
}

void suite_recursion(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(cfg.nome), cfg.eta);
    const auto opts = eval_opts(cfg);
    for (int n = 1; n <= std::min(4, cfg.n_max); ++n) {
        double w1 = 0, w2 = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            const SpectralParams P = draw_params(n, ctx, rng);
            const auto r1 = recursion_check(P, ctx, RecursionBranch::y1_eq_x1_plus_1, opts);
            const auto r2 = recursion_check(P, ctx, RecursionBranch::y1_eq_x1, opts);
            w1 = std::max(w1, rel_err(r1.lhs, r1.rhs));
            w2 = std::max(w2, rel_err(r2.lhs, r2.rhs));
        }
        rec.numeric("specialize-y1=x1+1", n, "trials=" + std::to_string(cfg.trials), w1,
                    cfg.tol);
        rec.numeric("specialize-y1=x1", n, "trials=" + std::to_string(cfg.trials), w2,
                    cfg.tol);
    }
}

void suite_symmetry(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(cfg.nome), cfg.eta);
    const auto opts = eval_opts(cfg);
    for (int n = 2; n <= std::min(4, cfg.n_max); ++n) {
        double worst = 0;
        const SpectralParams P = draw_params(n, ctx, rng);
        const Complex base = z_bruteforce(P, ctx, opts);
        for (int t = 0; t < cfg.trials; ++t) {
            SpectralParams Q = P;
            std::shuffle(Q.x.begin(), Q.x.end(), rng);
            std::shuffle(Q.y.begin(), Q.y.end(), rng);
            worst = std::max(worst, rel_err(base, z_bruteforce(Q, ctx, opts)));
        }
        rec.numeric("x-y-permutation-invariance", n, "shuffles=" + std::to_string(cfg.trials),
                    worst, cfg.tol);
    }
}

void suite_structure(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto opts = eval_opts(cfg);
    {
        const auto ctx = ThetaContext::from_nome(Complex(cfg.nome), cfg.eta);
        for (int n = 1; n <= std::min(3, cfg.n_max); ++n) {
            const SpectralParams P = draw_params(n, ctx, rng);
            const bool lam_ok =
                lambda_structure_check(P.x, P.y, ctx, cfg.trials, rng, cfg.tol, opts);
            rec.add("lambda-theta-structure", n, "generic eta", 0, false, lam_ok);
            const bool x_ok = x_structure_check(P, ctx, cfg.trials, rng, cfg.tol, opts);
            rec.add("x1-order-n-norm", n, "generic eta", 0, false, x_ok);
        }
    }
    if (cfg.n_max >= 3) {
        // eta = 1/3 exercises the shorter root-of-unity lambda product
        const auto ctx = ThetaContext::from_nome(Complex(0.15), Complex(1.0 / 3.0));
        const SpectralParams P = draw_params(3, ctx, rng);
        const bool ok = lambda_structure_check(P.x, P.y, ctx, cfg.trials, rng, cfg.tol, opts);
        rec.add("lambda-theta-structure", 3, "eta=1/3", 0, false, ok);
    }
}

void suite_root_of_unity(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto opts = eval_opts(cfg);
    for (int N = 2; N <= 4; ++N) {
        const auto ctx = ThetaContext::from_nome(Complex(0.15), Complex(1.0 / N));
        for (int n = 1; n <= std::min(3, cfg.n_max); ++n) {
            double worst = 0, worst_ff = 0, worst_drop = 0;
            const int trials = std::min(cfg.trials, 10);
            for (int t = 0; t < trials; ++t) {
                SpectralParams P = draw_params(n, ctx, rng);
                const Complex ref = z_tilde(P, ctx, opts);
                worst = std::max(worst, rel_err(z_root_of_unity(P, N, ctx), ref));
                if (N == 2) worst_ff = std::max(worst_ff, rel_err(z_free_fermion(P, ctx), ref));
                // free parameter set to the value that deletes term k0 = 1
                const Complex gm = gamma_dropping_term(1, ctx.qpow(P.lambda), N, ctx);
                P.gamma = std::log(gm) / (Complex(0, 2 * std::numbers::pi) * ctx.eta);
                worst_drop = std::max(worst_drop, rel_err(z_root_of_unity(P, N, ctx), ref));
            }
            rec.numeric("n-term-sum-vs-brute", n, "N=" + std::to_string(N), worst, cfg.tol);
            rec.numeric("gamma-dropping-term", n, "N=" + std::to_string(N) + " k0=1",
                        worst_drop, cfg.tol);
            if (N == 2)
                rec.numeric("free-fermion-product", n, "N=2", worst_ff,
                            std::min(cfg.tol, 1e-9));
        }
    }
}

void suite_laurent(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(0.05), Complex(0.3));
    const auto opts = eval_opts(cfg);
    for (int n = 1; n <= std::min(2, cfg.n_max); ++n) {
        double worst = 0;
        for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
            SpectralParams P = draw_params(n, ctx, rng);
            P.lambda = draw_box(rng, 0.3, 0.8, 0.35, 0.45);  // inside the annulus
            worst = std::max(worst, rel_err(z_laurent(P, 40, ctx), z_tilde(P, ctx, opts)));
        }
        rec.numeric("bilateral-series-K40", n, "p=0.05", worst, cfg.tol);
    }
}

void suite_sixvertex(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    const auto ctx = ThetaContext::from_nome(Complex(0), Complex(0.3));
    const auto opts = eval_opts(cfg);
    const double tol = std::max(cfg.tol, 1e-6);
    for (int n = 1; n <= std::min(3, cfg.n_max); ++n) {
        double worst = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            SpectralParams P = draw_params(n, ctx, rng);
            P.lambda = Complex(0, 10);  // |q^lambda| ~ 7e-9: the weights forget lambda
            worst = std::max(worst, rel_err(z_bruteforce(P, ctx, opts), z_sixvertex_ik(P, ctx)));
        }
        rec.numeric("dynamical-to-sixvertex-limit", n, "p=0 lambda=10i", worst, tol);
    }
}

// ------------------------------------------------------------ enumeration --

void suite_kuperberg(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    for (int n = 1; n <= std::min(4, cfg.n_max); ++n) {
        double worst = 0;
        const int trials = std::min(cfg.trials, 10);
        for (int t = 0; t < trials; ++t) {
            const double err = retried([&] {
                std::uniform_real_distribution<double> etad(0.17, 0.44), pmod(0.05, 0.3),
                    parg(0.2, 6.0);
                const auto ctx =
                    ThetaContext::from_nome(std::polar(pmod(rng), parg(rng)), Complex(etad(rng)));
                const Complex s = ctx.qpow(Complex(0.5));
                const Complex lambda = draw_box(rng, 0.25, 0.75, 0.1, 0.4);
                const auto kp = kuperberg_specialize(n, ctx, lambda, s, cfg.state_cap);
                return rel_err(kp.lhs, kp.rhs);
            });
            worst = std::max(worst, err);
        }
        rec.numeric("t-enumeration-specialization", n, "trials=" + std::to_string(trials),
                    worst, std::min(cfg.tol, 1e-9));
    }
}

void suite_dynamical(const SuiteConfig& cfg, std::mt19937_64& rng, Recorder& rec) {
    for (int n = 1; n <= std::min(4, cfg.n_max); ++n) {
        const auto pair = dynamical_pair_exact(n, cfg.state_cap);
        rec.exact("closed-form-exact-Z[w]", n, "cleared by (1-l^3)^{n^2}",
                  pair.lhs == pair.rhs);
    }
    const auto ctx = ThetaContext::from_nome(Complex(0), Complex(1.0 / 3.0));
    const auto opts = eval_opts(cfg);
    for (int n = 1; n <= std::min(4, cfg.n_max); ++n) {
        double worst = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            const double err = retried([&] {
                const Complex lam = draw_box(rng, -0.6, 0.6, 0.1, 0.5);
                SpectralParams P;
                P.convention = Convention::multiplicative;
                P.x.assign(n, ctx.qpow(Complex(1)));
                P.y.assign(n, Complex(1));
                P.lambda = lam;
                const Complex zt = z_tilde(P, ctx, opts);
                const double e1 = rel_err(zt, dynamical_enumerate(n, lam));
                const double e2 = rel_err(zt, dynamical_state_sum(n, lam, cfg.state_cap));
                return std::max(e1, e2);
            });
            worst = std::max(worst, err);
        }
        rec.numeric("closed-vs-state-sum-vs-z-tilde", n, "p=0 q=w", worst, cfg.tol);
    }
}

void suite_three_colour(const SuiteConfig& cfg, std::mt19937_64&, Recorder& rec) {
    for (int n = 1; n <= std::min(4, cfg.n_max); ++n) {
        const auto pair = three_colour_identity(n, cfg.state_cap);
        rec.exact("colour-identity-exact-Z[w]", n, "deg=" + std::to_string(pair.lhs.degree()),
                  pair.lhs == pair.rhs);
        rec.exact("lambda0-coefficient-is-A_n", n, "A_n=" + asm_count(n).get_str(),
                  pair.lhs.coeff(0) == Eisenstein(asm_count(n), mpz_class(0)));
    }
    // first lambda coefficient: 3(K0 + K1 w + K2 w^2) = -2A_n(w^2 + w^{n+1})
    //                                                    + (-1)^n C_n w^{2n}
    for (int n = 1; n <= std::min(5, cfg.n_max); ++n) {
        const auto K = colour_counts_enumerated(n, cfg.state_cap);
        Eisenstein lhs = Eisenstein(3 * K[0], mpz_class(0)) +
                         Eisenstein(3 * K[1], mpz_class(0)) * Eisenstein::omega_power(1) +
                         Eisenstein(3 * K[2], mpz_class(0)) * Eisenstein::omega_power(2);
        Eisenstein A(asm_count(n), mpz_class(0)), C(cspp_count(n), mpz_class(0));
        Eisenstein rhs =
            -(Eisenstein(2) * A * (Eisenstein::omega_power(2) + Eisenstein::omega_power(n + 1)));
        Eisenstein corr = C * Eisenstein::omega_power(2L * n);
        rhs = (n % 2 == 0) ? rhs + corr : rhs - corr;
        rec.exact("lambda1-coefficient-moment", n, "", lhs == rhs);
    }
}

void suite_colour_probs(const SuiteConfig& cfg, std::mt19937_64&, Recorder& rec) {
    for (int n = 1; n <= std::min(5, cfg.n_max); ++n) {
        const auto rep = colour_probabilities(n);
        const auto K = colour_counts_enumerated(n, cfg.state_cap);
        bool ok = rep.K[0] == K[0] && rep.K[1] == K[1] && rep.K[2] == K[2];
        rec.exact("closed-K-equals-enumerated-K", n,
                  "K=" + K[0].get_str() + "," + K[1].get_str() + "," + K[2].get_str(), ok);
    }
    {
        const auto rep = colour_probabilities(1);
        rec.exact("n1-probabilities", 1, "1/2,1/2,0",
                  rep.p[0] == mpq_class(1, 2) && rep.p[1] == mpq_class(1, 2) &&
                      rep.p[2] == 0);
    }
    double envelope = 0;
    bool sums_ok = true;
    for (int n = 1; n <= 200; ++n) {
        const auto rep = colour_probabilities(n);
        sums_ok = sums_ok && (rep.p[0] + rep.p[1] + rep.p[2] == 1);
        for (int i = 0; i < 3; ++i) {
            const double dev = std::abs(mpq_class(rep.p[i] - mpq_class(1, 3)).get_d());
            envelope = std::max(envelope, dev * std::pow(n, 5.0 / 3.0));
        }
    }
    rec.exact("probabilities-sum-to-1", 200, "n<=200", sums_ok);
    rec.add("deviation-envelope-n^{5/3}", 200, "max=" + fmt(envelope), envelope, false,
            envelope < 10.0);
}

void suite_two_enumeration(const SuiteConfig& cfg, std::mt19937_64&, Recorder& rec) {
    for (int n = 1; n <= std::min(5, cfg.n_max); ++n) {
        const auto pair = two_enumeration(n, cfg.state_cap);
        rec.exact("two-enumeration-exact-Z[i]", n,
                  "deg=" + std::to_string(pair.lhs.degree()), pair.lhs == pair.rhs);
        mpz_class scale = 1;
        mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(),
                     static_cast<unsigned long>(n) * (n - 1) / 2);
        rec.exact("lambda0-coefficient-2^C(n,2)", n, "2^C(n,2)=" + scale.get_str(),
                  pair.lhs.coeff(0) == Gaussian(scale, mpz_class(0)));
    }
    for (int n = 1; n <= std::min(6, cfg.n_max); ++n) {
        const auto got = two_enumeration_moments(n, cfg.state_cap);
        const auto want = two_enumeration_moments_closed(n);
        rec.exact("moment-identities", n,
                  "s20=" + got.s20.get_str() + " s31=" + got.s31.get_str(),
                  got.s20 == want.s20 && got.s31 == want.s31);
    }
}

void suite_limit_det(const SuiteConfig&, std::mt19937_64&, Recorder& rec) {
    bool ok_a = true, ok_c = true;
    for (int n = 1; n <= 20; ++n) {
        mpz_class p3 = 1;
        for (long k = 0; k < static_cast<long>(n) * (n + 1) / 2; ++k) p3 *= 3;
        ok_a = ok_a && (kuperberg_limit_det(n, 1, 3) * p3 == asm_count(n));
        ok_c = ok_c && (kuperberg_limit_det(n, 2, 3) * p3 == cspp_count(n));
    }
    rec.exact("limit-det-(1,3)-gives-A_n", 20, "n<=20", ok_a);
    rec.exact("limit-det-(2,3)-gives-C_n", 20, "n<=20", ok_c);
}

void suite_xy_probe(const SuiteConfig& cfg, std::mt19937_64&, Recorder& rec) {
    for (int n = 1; n <= std::min(3, cfg.n_max); ++n) {
        const Complex p(0.2, 0.1);
        const auto a = elliptic_XY_probe(n, p, Complex(0.31, 0.17), Complex(-0.23, 0.41),
                                         cfg.state_cap);
        const auto b = elliptic_XY_probe(n, p, Complex(0.31, 0.17), Complex(0.12, -0.37),
                                         cfg.state_cap);
        const double err = std::max(rel_err(a.X, b.X), rel_err(a.Y, b.Y));
        rec.numeric("lambda-independence", n, "|p|=" + fmt(std::abs(p)), err, 1e-7);

        // p -> 0 recovers the dynamical enumeration coefficients
        const auto c = elliptic_XY_probe(n, Complex(1e-5), Complex(0.31, 0.17),
                                         Complex(-0.23, 0.41), cfg.state_cap);
        const Complex w(-0.5, std::sqrt(3.0) / 2.0);
        const Complex unit = cpow_int(w, static_cast<long>(n) * (n + 1) / 2);
        const Complex X0 = unit * Complex(asm_count(n).get_d());
        const Complex Y0 = unit * Complex(cspp_count(n).get_d()) *
                           cpow_int(w, 2L * n) * ((n % 2 == 0) ? 1.0 : -1.0);
        const double lim = std::max(rel_err(c.X, X0), rel_err(c.Y, Y0));
        rec.numeric("p-to-0-limit", n, "p=1e-5", lim, 1e-3);
    }
}

// ----------------------------------------------------------------------------

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"theta-addition", suite_theta_addition},
        {"theta-quasiperiod", suite_theta_quasiperiod},
        {"frobenius", suite_frobenius},
        {"theta-decompose", suite_theta_decompose},
        {"ramanujan", suite_ramanujan},
        {"state-counts", suite_state_counts},
        {"five-way", suite_five_way},
        {"recursion", suite_recursion},
        {"symmetry", suite_symmetry},
        {"structure", suite_structure},
        {"root-of-unity", suite_root_of_unity},
        {"laurent", suite_laurent},
        {"sixvertex", suite_sixvertex},
        {"kuperberg", suite_kuperberg},
        {"dynamical", suite_dynamical},
        {"three-colour", suite_three_colour},
        {"colour-probs", suite_colour_probs},
        {"two-enumeration", suite_two_enumeration},
        {"limit-det", suite_limit_det},
        {"xy-probe", suite_xy_probe},
    };
    return reg;
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

std::vector<CheckResult> run_suites(const std::vector<std::string>& names,
                                    const SuiteConfig& cfg) {
    const auto& reg = registry();
    std::vector<size_t> picked;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
        for (size_t i = 0; i < reg.size(); ++i) picked.push_back(i);
    } else {
        for (const auto& want : names) {
            bool found = false;
            for (size_t i = 0; i < reg.size(); ++i)
                if (reg[i].first == want) {
                    picked.push_back(i);
                    found = true;
                    break;
                }
            if (!found) throw UsageError("unknown suite: " + want);
        }
        // canonical registry order, so the report ignores request order
        std::sort(picked.begin(), picked.end());
        picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    }

    std::vector<std::vector<CheckResult>> partial(picked.size());
    const int nthreads =
        std::clamp(cfg.threads, 1, static_cast<int>(std::max<size_t>(picked.size(), 1)));
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mx;
    auto work = [&] {
        for (size_t k = next.fetch_add(1); k < picked.size(); k = next.fetch_add(1)) {
            try {
                const auto& [name, fn] = reg[picked[k]];
                Recorder rec{name, &partial[k]};
                std::mt19937_64 rng(task_seed(cfg.seed, picked[k]));
                fn(cfg, rng, rec);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!err) err = std::current_exception();
            }
        }
    };
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);

    std::vector<CheckResult> all;
    for (auto& part : partial)
        for (auto& r : part) all.push_back(std::move(r));
    return all;
}

} // namespace sosdw
