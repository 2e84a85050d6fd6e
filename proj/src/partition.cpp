#include "partition.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "linalg.hpp"

namespace sosdw {

namespace {

// Fixed generic fallback for the free parameter gamma (additive convention).
constexpr Complex kDefaultGammaAdd{0.3217, -0.2471};
constexpr double kPoleTol = 1e-12;

Complex need(Complex v, const std::string& what) {
    if (std::abs(v) < kPoleTol) throw PoleError("vanishing factor: " + what);
    return v;
}

Complex vsum(const std::vector<Complex>& v) {
    Complex s(0);
    for (auto& z : v) s += z;
    return s;
}

Complex vprod(const std::vector<Complex>& v) {
    Complex s(1);
    for (auto& z : v) s *= z;
    return s;
}

Complex parity_sign(long long m) { return (m % 2 == 0) ? Complex(1) : Complex(-1); }

Complex binom2_sign(int n) { return parity_sign(static_cast<long long>(n) * (n - 1) / 2); }

void check_finite(Complex v, const char* where) {
    if (!detail::finite(v)) throw NumericError(std::string(where) + ": non-finite result");
}

Complex default_gamma_add() { return kDefaultGammaAdd; }

} // namespace

SpectralParams to_multiplicative(const SpectralParams& p, const ThetaContext& ctx) {
    if (p.convention == Convention::multiplicative) return p;
    SpectralParams m = p;
    for (auto& v : m.x) v = ctx.qpow(v);
    for (auto& v : m.y) v = ctx.qpow(v);
    m.lambda = ctx.qpow(m.lambda);
    if (m.gamma) m.gamma = ctx.qpow(*m.gamma);
    m.convention = Convention::multiplicative;
    return m;
}

SpectralParams to_additive(const SpectralParams& p, const ThetaContext& ctx) {
    if (p.convention == Convention::additive) return p;
    const Complex den = Complex(0, 2 * std::numbers::pi) * ctx.eta;
    auto inv = [&](Complex v) {
        if (v == Complex(0)) throw DomainError("to_additive: zero multiplicative parameter");
        return std::log(v) / den;
    };
    SpectralParams a = p;
    for (auto& v : a.x) v = inv(v);
    for (auto& v : a.y) v = inv(v);
    a.lambda = inv(a.lambda);
    if (a.gamma) a.gamma = inv(*a.gamma);
    a.convention = Convention::additive;
    return a;
}

Complex block_weight(int a, int b, int c, int d, Complex lambda, Complex u,
                     const ThetaContext& ctx) {
    const int da = b - a, db = d - b, dc = d - c;
    const Complex one = need(bracket(Complex(1), ctx), "[1]");
    if (da == db)  // both corners move the same way: the lambda-free weight
        return bracket(u + Complex(1), ctx) / one;
    const Complex la = lambda + Complex(a);
    const Complex bla = need(bracket(la, ctx), "[lambda+a]");
    if (da == 1) {
        if (dc == -1) return bracket(la - u, ctx) / bla;
        return bracket(u, ctx) * bracket(la + Complex(1), ctx) / (one * bla);
    }
    if (dc == -1) return bracket(u, ctx) * bracket(la - Complex(1), ctx) / (one * bla);
    return bracket(la + u, ctx) / bla;
}

Complex z_bruteforce(const SpectralParams& params0, const ThetaContext& ctx,
                     const EvalOptions& opts) {
    SpectralParams params = to_additive(params0, ctx);
    const int n = params.n();
    if (static_cast<int>(params.y.size()) != n)
        throw UsageError("z_bruteforce: x and y must have equal length");
    need(bracket(Complex(1), ctx), "[1]");
    for (int a = 0; a <= n; ++a)
        need(bracket(params.lambda + Complex(a), ctx), "[lambda+" + std::to_string(a) + "]");
    if (n == 0) return Complex(1);

    auto weight_of = [&](const HeightMatrix& hm) {
        Complex w(1);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                w *= block_weight(hm.at(i - 1, j - 1), hm.at(i - 1, j), hm.at(i, j - 1),
                                  hm.at(i, j), params.lambda,
                                  params.x[i - 1] - params.y[j - 1], ctx);
        return w;
    };

    const int nthreads = std::clamp(opts.threads, 1, n);
    if (n > opts.state_cap) throw ResourceError("z_bruteforce: n exceeds the state cap");
    // Always shard on the first ASM row and merge partials in fixed k order:
    // workers only decide who computes a shard, never the association of the
    // sum, so any thread count yields bit-identical results.
    std::vector<Complex> partial(static_cast<size_t>(n) + 1, Complex(0));
    auto run_shard = [&](int k) {
        Complex acc(0);
        enumerate_states_first_row(n, k,
                                   [&](const HeightMatrix& hm) { acc += weight_of(hm); });
        partial[k] = acc;
    };
    if (nthreads <= 1) {
        for (int k = 1; k <= n; ++k) run_shard(k);
    } else {
        std::atomic<int> next{1};
        std::exception_ptr err;
        std::mutex err_mx;
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                try {
                    for (int k = next.fetch_add(1); k <= n; k = next.fetch_add(1)) run_shard(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mx);
                    if (!err) err = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    Complex total(0);
    for (int k = 1; k <= n; ++k) total += partial[k];
    check_finite(total, "z_bruteforce");
    return total;
}

Complex z_tilde(const SpectralParams& params0, const ThetaContext& ctx,
                const EvalOptions& opts) {
    SpectralParams add = to_additive(params0, ctx);
    const Complex s = vsum(add.x) + vsum(add.y);
    return ctx.qpow(Complex(add.n()) * s / Complex(2)) * z_bruteforce(add, ctx, opts);
}

Complex z_weightfunction(const SpectralParams& params0, const ThetaContext& ctx) {
    const SpectralParams params = to_additive(params0, ctx);
    const int n = params.n();
    const auto& x = params.x;
    const auto& y = params.y;
    const Complex one = need(bracket(Complex(1), ctx), "[1]");

    Complex pref(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pref *= bracket(y[j] - x[i], ctx);
    Complex den(1);
    for (int j = 1; j <= n; ++j)
        den *= need(bracket(params.lambda + Complex(j - 1), ctx),
                    "[lambda+" + std::to_string(j - 1) + "]");
    for (long long k = 0; k < static_cast<long long>(n) * (n - 1); ++k) den *= one;

    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    Complex sum(0);
    do {
        Complex term(1);
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                const Complex yy = y[sigma[j]] - y[sigma[i]];
                const Complex yx = y[sigma[j]] - x[i];
                term *= bracket(yy + Complex(1), ctx) * bracket(yx - Complex(1), ctx) /
                        (need(bracket(yy, ctx), "[y_s(j)-y_s(i)]") *
                         need(bracket(yx, ctx), "[y_s(j)-x_i]"));
            }
        for (int j = 0; j < n; ++j) {
            const Complex yx = y[sigma[j]] - x[j];
            term *= bracket(params.lambda + Complex(n - 1 - j) + yx, ctx) /
                    need(bracket(yx, ctx), "[y_s(j)-x_j]");
        }
        sum += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    Complex v = pref * sum / den;
    check_finite(v, "z_weightfunction");
    return v;
}

Complex z_tilde_weightfunction(const SpectralParams& params0, const ThetaContext& ctx) {
    const SpectralParams m = to_multiplicative(params0, ctx);
    const int n = m.n();
    const Complex q = ctx.q();

    Complex num(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) num *= m.x[i] * theta(m.y[j] / m.x[i], ctx);
    Complex den(1);
    const Complex tq = need(theta(q, ctx), "theta(q)");
    for (long long k = 0; k < static_cast<long long>(n) * (n - 1); ++k) den *= tq;
    for (int j = 1; j <= n; ++j)
        den *= need(theta(m.lambda * cpow_int(q, j - 1), ctx), "theta(lambda q^{j-1})");

    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    Complex sum(0);
    do {
        Complex term(1);
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                const Complex ry = m.y[sigma[j]] / m.y[sigma[i]];
                const Complex rx = m.y[sigma[j]] / m.x[i];
                term *= theta(q * ry, ctx) * theta(rx / q, ctx) /
                        (need(theta(ry, ctx), "theta(y_s(j)/y_s(i))") *
                         need(theta(rx, ctx), "theta(y_s(j)/x_i)"));
            }
        for (int j = 0; j < n; ++j) {
            const Complex rx = m.y[sigma[j]] / m.x[j];
            term *= theta(m.lambda * cpow_int(q, n - 1 - j) * rx, ctx) /
                    need(theta(rx, ctx), "theta(y_s(j)/x_j)");
        }
        sum += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    Complex v = cpow_int(q, n * (n - 1) / 2) * num * sum / den;
    check_finite(v, "z_tilde_weightfunction");
    return v;
}

namespace {

// shared guts of the 2^n-subset representations
struct SubsetSetup {
    SpectralParams p;  // additive, gamma filled in
    Complex gamma;
    Complex sx, sy;
    int n;
};

SubsetSetup subset_setup(const SpectralParams& params0, const ThetaContext& ctx) {
    SubsetSetup s;
    s.p = to_additive(params0, ctx);
    s.n = s.p.n();
    if (s.n < 1 || s.n > 20) throw UsageError("subset sum: need 1 <= n <= 20");
    s.gamma = s.p.gamma.value_or(default_gamma_add());
    s.sx = vsum(s.p.x);
    s.sy = vsum(s.p.y);
    need(bracket(s.gamma, ctx), "[gamma]");
    need(bracket(s.sx - s.sy + s.p.lambda + s.gamma + Complex(s.n), ctx),
         "[|x|-|y|+lambda+gamma+n]");
    for (int mth = 0; mth <= s.n; ++mth)
        need(bracket(s.p.lambda + Complex(s.n - mth), ctx), "[lambda+n-|S|]");
    return s;
}

} // namespace

std::vector<std::pair<uint32_t, Complex>> z_ik_terms(const SpectralParams& params0,
                                                     const ThetaContext& ctx, DetPath path) {
    const SubsetSetup s = subset_setup(params0, ctx);
    const int n = s.n;
    std::vector<std::pair<uint32_t, Complex>> out;
    out.reserve(1u << n);
    std::vector<Complex> xs(n);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int bits = std::popcount(mask);
        for (int i = 0; i < n; ++i)
            xs[i] = s.p.x[i] + Complex((mask >> i) & 1u);
        Complex det;
        if (path == DetPath::lu) {
            std::vector<Complex> m(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Complex d = need(bracket(xs[i] - s.p.y[j], ctx), "[x_i^S-y_j]");
                    m[static_cast<size_t>(i) * n + j] =
                        bracket(xs[i] - s.p.y[j] + s.gamma, ctx) / d;
                }
            det = det_lu(m, n);
        } else {
            det = frobenius_det<double>(xs, s.p.y, s.gamma, Convention::additive, ctx).closed;
        }
        const Complex term = parity_sign(bits) *
                             bracket(s.p.lambda + s.gamma + Complex(n - bits), ctx) /
                             bracket(s.p.lambda + Complex(n - bits), ctx) * det;
        out.emplace_back(mask, term);
    }
    return out;
}

namespace {

Complex ik_prefactor(const SubsetSetup& s, const ThetaContext& ctx) {
    const int n = s.n;
    const Complex one = need(bracket(Complex(1), ctx), "[1]");
    Complex pref = binom2_sign(n) * bracket(s.p.lambda + Complex(n), ctx);
    Complex den = bracket(s.sx - s.sy + s.p.lambda + s.gamma + Complex(n), ctx);
    for (long long k = 0; k < static_cast<long long>(n) * n; ++k) den *= one;
    const Complex bg = bracket(s.gamma, ctx);
    for (int k = 0; k < n; ++k) den *= bg;
    Complex grid(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid *= bracket(s.p.x[i] - s.p.y[j], ctx) *
                    bracket(s.p.x[i] + Complex(1) - s.p.y[j], ctx);
    Complex pairs(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs *= need(bracket(s.p.x[i] - s.p.x[j], ctx), "[x_i-x_j]") *
                     need(bracket(s.p.y[i] - s.p.y[j], ctx), "[y_i-y_j]");
    return pref * grid / (den * pairs);
}

} // namespace

Complex z_ik_sum(const SpectralParams& params0, const ThetaContext& ctx, DetPath path) {
    const SubsetSetup s = subset_setup(params0, ctx);
    Complex sum(0);
    for (auto& [mask, term] : z_ik_terms(params0, ctx, path)) sum += term;
    Complex v = ik_prefactor(s, ctx) * sum;
    check_finite(v, "z_ik_sum");
    return v;
}

std::vector<std::pair<uint32_t, Complex>> z_factored_terms(const SpectralParams& params0,
                                                           const ThetaContext& ctx) {
    const SubsetSetup s = subset_setup(params0, ctx);
    const int n = s.n;
    std::vector<std::pair<uint32_t, Complex>> out;
    out.reserve(1u << n);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int bits = std::popcount(mask);
        Complex term = parity_sign(bits) *
                       bracket(s.p.lambda + s.gamma + Complex(n - bits), ctx) *
                       bracket(s.sx - s.sy + s.gamma + Complex(bits), ctx) /
                       bracket(s.p.lambda + Complex(n - bits), ctx);
        for (int i = 0; i < n; ++i) {
            if (!((mask >> i) & 1u)) continue;
            for (int j = 0; j < n; ++j) {
                if ((mask >> j) & 1u) continue;
                term *= bracket(s.p.x[i] + Complex(1) - s.p.x[j], ctx) /
                        need(bracket(s.p.x[i] - s.p.x[j], ctx), "[x_i-x_j]");
            }
        }
        for (int j = 0; j < n; ++j) {
            Complex col(1);
            for (int i = 0; i < n; ++i) {
                if ((mask >> i) & 1u)
                    col *= bracket(s.p.x[i] - s.p.y[j], ctx);
                else
                    col *= bracket(s.p.x[i] + Complex(1) - s.p.y[j], ctx);
            }
            term *= col;
        }
        out.emplace_back(mask, term);
    }
    return out;
}

Complex z_factored_sum(const SpectralParams& params0, const ThetaContext& ctx) {
    const SubsetSetup s = subset_setup(params0, ctx);
    const int n = s.n;
    const Complex one = need(bracket(Complex(1), ctx), "[1]");
    Complex den = need(bracket(s.gamma, ctx), "[gamma]") *
                  bracket(s.sx - s.sy + s.p.lambda + s.gamma + Complex(n), ctx);
    for (long long k = 0; k < static_cast<long long>(n) * n; ++k) den *= one;
    Complex sum(0);
    for (auto& [mask, term] : z_factored_terms(params0, ctx)) sum += term;
    Complex v = bracket(s.p.lambda + Complex(n), ctx) * sum / den;
    check_finite(v, "z_factored_sum");
    return v;
}

Complex gamma_dropping_term(int k0, Complex lambda_mult, int N, const ThetaContext& ctx) {
    if (ctx.p == Complex(0)) throw DomainError("gamma_dropping_term: p = 0");
    if (lambda_mult == Complex(0)) throw DomainError("gamma_dropping_term: lambda = 0");
    return cpow_int(ctx.p, -k0) * cpow_int(lambda_mult, -N);
}

namespace {

// prefactor and fixed matrices shared by the root-of-unity and Laurent sums
struct DetSeriesSetup {
    int n;
    Complex q, gamma, lambda;
    Complex pref;               // everything outside the k-sum
    std::vector<Complex> A, B;  // M_k = A - q^{-k} B entrywise
};

DetSeriesSetup det_series_setup(const SpectralParams& params0, const ThetaContext& ctx,
                                bool root_of_unity_norm, int N) {
    if (ctx.p == Complex(0)) throw DomainError("determinant series: p = 0 not supported");
    const SpectralParams m = to_multiplicative(params0, ctx);
    DetSeriesSetup st;
    st.n = m.n();
    st.q = ctx.q();
    st.lambda = m.lambda;
    st.gamma = m.gamma.value_or(ctx.qpow(default_gamma_add()));
    const int n = st.n;
    const Complex X = vprod(m.x), Y = vprod(m.y);
    const Complex qn = cpow_int(st.q, n);
    const Complex E = euler_product(ctx);

    const Complex tg = need(theta(st.gamma, ctx), "theta(gamma)");
    Complex den = E * E;
    for (int k = 0; k < n - 1; ++k) den *= tg;
    const Complex tq = need(theta(st.q, ctx), "theta(q)");
    for (long long k = 0; k < static_cast<long long>(n) * n; ++k) den *= tq;
    den *= Y * need(theta(X * st.lambda * st.gamma * qn / Y, ctx),
                    "theta(X lambda gamma q^n / Y)");
    Complex num = binom2_sign(n) * theta(st.lambda * qn, ctx);
    if (root_of_unity_norm) {
        const ThetaContext ctxN = ctx.nome_power(N);
        const Complex EN = euler_product(ctxN);
        num *= EN * EN;
        den *= need(theta(cpow_int(st.lambda, N), ctxN), "theta(lambda^N; p^N)");
    }

    Complex grid(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid *= m.y[j] * m.y[j] * theta(m.x[i] / m.y[j], ctx) *
                    theta(st.q * m.x[i] / m.y[j], ctx);
    Complex pairs(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs *= m.x[j] * m.y[j] * need(theta(m.x[i] / m.x[j], ctx), "theta(x_i/x_j)") *
                     need(theta(m.y[i] / m.y[j], ctx), "theta(y_i/y_j)");
    st.pref = num * grid / (den * pairs);

    st.A.resize(static_cast<size_t>(n) * n);
    st.B.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex r = m.x[i] / m.y[j];
            st.A[static_cast<size_t>(i) * n + j] =
                theta(st.gamma * r, ctx) / need(theta(r, ctx), "theta(x_i/y_j)");
            st.B[static_cast<size_t>(i) * n + j] =
                theta(st.q * st.gamma * r, ctx) / need(theta(st.q * r, ctx), "theta(q x_i/y_j)");
        }
    return st;
}

Complex det_series_det(const DetSeriesSetup& st, Complex qmk) {
    std::vector<Complex> m(st.A.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = st.A[i] - qmk * st.B[i];
    return det_lu(m, st.n);
}

} // namespace

Complex z_root_of_unity(const SpectralParams& params0, int N, const ThetaContext& ctx) {
    if (N < 2) throw UsageError("z_root_of_unity: N >= 2 required");
    const Complex q = ctx.q();
    if (std::abs(cpow_int(q, N) - Complex(1)) > 1e-9)
        throw DomainError("z_root_of_unity: q^N != 1");
    const DetSeriesSetup st = det_series_setup(params0, ctx, true, N);
    const ThetaContext ctxN = ctx.nome_power(N);
    const Complex lamN = cpow_int(st.lambda, N);
    const Complex qn = cpow_int(q, st.n);

    Complex sum(0);
    Complex lamk(1), pk(1);
    for (int k = 0; k < N; ++k) {
        const Complex ck = lamk * theta(st.gamma * lamN * pk, ctxN) /
                           need(theta(st.gamma * pk, ctxN), "theta(gamma p^k; p^N)");
        sum += ck * det_series_det(st, cpow_int(q, -k));
        lamk *= st.lambda * qn;
        pk *= ctx.p;
    }
    Complex v = st.pref * sum;
    check_finite(v, "z_root_of_unity");
    return v;
}

Complex z_laurent(const SpectralParams& params0, int K, const ThetaContext& ctx) {
    if (K < 0) throw UsageError("z_laurent: K >= 0 required");
    const DetSeriesSetup st = det_series_setup(params0, ctx, false, 0);
    const Complex q = st.q;
    const Complex qn = cpow_int(q, st.n);
    const double ap = std::abs(ctx.p);
    for (int k = 0; k <= st.n; ++k) {
        const double m = std::abs(st.lambda * cpow_int(q, k));
        if (!(ap < m && m < 1.0))
            throw DomainError("z_laurent: need |p| < |lambda q^k| < 1 for 0 <= k <= n");
    }

    auto term = [&](int k) {
        const Complex pk = cpow_int(ctx.p, k);
        const Complex den = need(Complex(1) - st.gamma * pk, "1 - gamma p^k");
        return cpow_int(st.lambda * qn, k) / den * det_series_det(st, cpow_int(q, -k));
    };
    Complex sum = term(0);
    for (int k = 1; k <= K; ++k) sum += term(k) + term(-k);
    Complex v = st.pref * sum;
    check_finite(v, "z_laurent");
    return v;
}

Complex z_free_fermion(const SpectralParams& params0, const ThetaContext& ctx) {
    const Complex q = ctx.q();
    if (std::abs(q + Complex(1)) > 1e-9) throw DomainError("z_free_fermion: q != -1");
    const SpectralParams m = to_multiplicative(params0, ctx);
    const int n = m.n();
    const Complex X = vprod(m.x), Y = vprod(m.y);
    const Complex sgn = (n % 2 == 0) ? Complex(-1) : Complex(1);  // (-1)^{n+1}

    const ThetaContext ctx2 = ctx.nome_power(2);
    const Complex ratio = euler_product(ctx) / euler_product(ctx2);
    Complex head(1);
    const long long e = 2LL * n * (n - 1);
    for (long long k = 0; k < e; ++k) head *= ratio;
    head /= std::pow(2.0, static_cast<double>(n) * (n - 1));

    Complex v = head * X * theta(sgn * m.lambda * Y / X, ctx) /
                need(theta(sgn * m.lambda, ctx), "theta(+-lambda)");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            v *= m.x[i] * m.y[i] * theta(-m.x[j] / m.x[i], ctx) * theta(-m.y[j] / m.y[i], ctx);
    check_finite(v, "z_free_fermion");
    return v;
}

Complex z_sixvertex_ik(const SpectralParams& params0, const ThetaContext& ctx) {
    if (ctx.p != Complex(0)) throw DomainError("z_sixvertex_ik: p = 0 required");
    const SpectralParams params = to_additive(params0, ctx);
    const int n = params.n();
    const auto& x = params.x;
    const auto& y = params.y;
    const Complex one = need(bracket(Complex(1), ctx), "[1]");

    Complex grid(1);
    std::vector<Complex> m(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex b1 = need(bracket(x[i] - y[j], ctx), "[x_i-y_j]");
            const Complex b2 = need(bracket(x[i] + Complex(1) - y[j], ctx), "[x_i+1-y_j]");
            grid *= b1 * b2;
            m[static_cast<size_t>(i) * n + j] = Complex(1) / (b1 * b2);
        }
    Complex pairs(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs *= need(bracket(x[i] - x[j], ctx), "[x_i-x_j]") *
                     need(bracket(y[i] - y[j], ctx), "[y_i-y_j]");
    Complex den(1);
    for (long long k = 0; k < static_cast<long long>(n) * n - n; ++k) den *= one;

    // e^{i pi eta (|x|-|y|)}
    const Complex phase = ctx.qpow_half_neg(vsum(y) - vsum(x));
    Complex v = binom2_sign(n) * phase * grid * det_lu(m, n) / (den * pairs);
    check_finite(v, "z_sixvertex_ik");
    return v;
}

RecursionPair recursion_check(const SpectralParams& params0, const ThetaContext& ctx,
                              RecursionBranch branch, const EvalOptions& opts) {
    const SpectralParams P = to_additive(params0, ctx);
    const int n = P.n();
    if (n < 1) throw UsageError("recursion_check: n >= 1 required");
    const Complex one = need(bracket(Complex(1), ctx), "[1]");

    SpectralParams Q = P;
    Q.y[0] = (branch == RecursionBranch::y1_eq_x1_plus_1) ? P.x[0] + Complex(1) : P.x[0];
    const Complex lhs = z_bruteforce(Q, ctx, opts);

    SpectralParams R;
    R.x.assign(P.x.begin() + 1, P.x.end());
    R.y.assign(P.y.begin() + 1, P.y.end());
    R.convention = Convention::additive;

    Complex pref(1);
    if (branch == RecursionBranch::y1_eq_x1_plus_1) {
        R.lambda = P.lambda;
        pref = bracket(P.lambda + Complex(n), ctx) /
               need(bracket(P.lambda + Complex(n - 1), ctx), "[lambda+n-1]");
        for (int k = 1; k < n; ++k)
            pref *= bracket(Q.y[0] - P.y[k] - Complex(1), ctx) *
                    bracket(P.x[k] - Q.y[0], ctx) / (one * one);
    } else {
        R.lambda = P.lambda + Complex(1);
        for (int k = 1; k < n; ++k)
            pref *= bracket(Q.y[0] - P.y[k] + Complex(1), ctx) *
                    bracket(P.x[k] - Q.y[0] + Complex(1), ctx) / (one * one);
    }
    const Complex rhs = pref * z_bruteforce(R, ctx, opts);
    return {lhs, rhs};
}

bool symmetry_check(const SpectralParams& params0, const ThetaContext& ctx, int trials,
                    std::mt19937_64& rng, double rtol, const EvalOptions& opts) {
    const SpectralParams P = to_additive(params0, ctx);
    const Complex base = z_bruteforce(P, ctx, opts);
    for (int t = 0; t < trials; ++t) {
        SpectralParams Q = P;
        std::shuffle(Q.x.begin(), Q.x.end(), rng);
        std::shuffle(Q.y.begin(), Q.y.end(), rng);
        const Complex v = z_bruteforce(Q, ctx, opts);
        const double scale = std::max(std::abs(v), std::abs(base));
        if (scale > 0 && std::abs(v - base) / scale > rtol) return false;
    }
    return true;
}

namespace {

// offset keeps the sampled lambda away from the [lambda+a] zero divisor
constexpr Complex kLambdaProbeShift{0.37, 0.11};

} // namespace

bool lambda_structure_check(const std::vector<Complex>& x, const std::vector<Complex>& y,
                            const ThetaContext& ctx, int samples, std::mt19937_64& rng,
                            double rtol, const EvalOptions& opts) {
    const int n = static_cast<int>(x.size());
    Complex sx(0), sy(0);
    for (auto& v : x) sx += v;
    for (auto& v : y) sy += v;

    auto zn = [&](Complex lam) {
        SpectralParams P;
        P.x = x;
        P.y = y;
        P.lambda = lam;
        return z_bruteforce(P, ctx, opts);
    };

    std::function<Complex(Complex)> f = [&](Complex u) {
        const Complex lam = u + kLambdaProbeShift;
        Complex v = zn(lam);
        for (int j = 1; j <= n; ++j) v *= bracket(lam + Complex(j - 1), ctx);
        return v;
    };
    const Complex norm = sx - sy - Complex(n * (n - 1) / 2) - Complex(n) * kLambdaProbeShift;
    bool ok = order_norm_check<double>(f, n, norm, ctx, samples, rng, rtol);

    // when eta = 1/N the shorter product already has theta structure
    for (int N = 2; N <= n; ++N) {
        const Complex etaN = ctx.eta * Complex(N);
        if (std::abs(etaN.imag()) > 1e-9) continue;
        if (std::abs(etaN.real() - std::round(etaN.real())) > 1e-9) continue;
        std::function<Complex(Complex)> g = [&](Complex u) {
            const Complex lam = u + kLambdaProbeShift;
            Complex v = zn(lam);
            for (int j = 1; j <= N - 1; ++j) v *= bracket(lam + Complex(n - j), ctx);
            return v;
        };
        const Complex norm2 = sx - sy + Complex(n) - Complex(N * (N - 1) / 2) -
                              Complex(N - 1) * kLambdaProbeShift;
        ok = order_norm_check<double>(g, N - 1, norm2, ctx, samples, rng, rtol) && ok;
    }
    return ok;
}

bool x_structure_check(const SpectralParams& params0, const ThetaContext& ctx, int samples,
                       std::mt19937_64& rng, double rtol, const EvalOptions& opts) {
    const SpectralParams P = to_additive(params0, ctx);
    Complex sy(0);
    for (auto& v : P.y) sy += v;
    std::function<Complex(Complex)> f = [&](Complex x1) {
        SpectralParams Q = P;
        Q.x[0] = x1;
        return z_bruteforce(Q, ctx, opts);
    };
    return order_norm_check<double>(f, P.n(), sy + P.lambda, ctx, samples, rng, rtol);
}

} // namespace sosdw
