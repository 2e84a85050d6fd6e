#include "sosdw.h"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "partition.hpp"
#include "sampling.hpp"
#include "states.hpp"
#include "tables.hpp"
#include "theta.hpp"
#include "verify.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

struct sosdw_ctx {
    sosdw::ThetaContext ctx;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
sosdw_status guarded(F&& f) {
    try {
        f();
        return SOSDW_OK;
    } catch (const sosdw::DomainError& e) {
        g_last_error = e.what();
        return SOSDW_E_DOMAIN;
    } catch (const sosdw::PoleError& e) {
        g_last_error = e.what();
        return SOSDW_E_POLE;
    } catch (const sosdw::NumericError& e) {
        g_last_error = e.what();
        return SOSDW_E_NUMERIC;
    } catch (const sosdw::ResourceError& e) {
        g_last_error = e.what();
        return SOSDW_E_RESOURCE;
    } catch (const sosdw::UsageError& e) {
        g_last_error = e.what();
        return SOSDW_E_USAGE;
    } catch (const json::exception& e) {
        g_last_error = e.what();
        return SOSDW_E_USAGE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SOSDW_E_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown error";
        return SOSDW_E_UNKNOWN;
    }
}

sosdw::SuiteConfig suite_config_from(const json& cfg) {
    sosdw::SuiteConfig sc;
    sc.n_max = cfg.value("n_max", sc.n_max);
    sc.trials = cfg.value("trials", sc.trials);
    sc.seed = cfg.value("seed", sc.seed);
    sc.tol = cfg.value("tol", sc.tol);
    sc.nome = cfg.value("nome", sc.nome);
    sc.eta = sosdw::Complex(cfg.value("eta_re", sc.eta.real()),
                            cfg.value("eta_im", sc.eta.imag()));
    sc.state_cap = cfg.value("state_cap", sc.state_cap);
    sc.exact = cfg.value("exact", sc.exact);
    sc.threads = cfg.value("threads", sc.threads);
    return sc;
}

ordered_json config_echo(const sosdw::SuiteConfig& sc, const std::vector<std::string>& suites) {
    ordered_json c;
    c["suites"] = suites.empty() ? std::vector<std::string>{"all"} : suites;
    c["n_max"] = sc.n_max;
    c["trials"] = sc.trials;
    c["seed"] = sc.seed;
    c["tol"] = sc.tol;
    c["nome"] = sc.nome;
    c["eta_re"] = sc.eta.real();
    c["eta_im"] = sc.eta.imag();
    c["state_cap"] = sc.state_cap;
    c["exact"] = sc.exact;
    // worker count deliberately not echoed: results are independent of it
    return c;
}

} // namespace

extern "C" {

const char* sosdw_version(void) { return "1.0.0"; }

const char* sosdw_last_error(void) { return g_last_error.c_str(); }

void sosdw_string_free(char* s) { std::free(s); }

sosdw_status sosdw_ctx_new(double p_re, double p_im, double eta_re, double eta_im,
                           sosdw_ctx** out) {
    return guarded([&] {
        if (!out) throw sosdw::UsageError("ctx_new: out is null");
        auto ctx = sosdw::ThetaContext::from_nome(sosdw::Complex(p_re, p_im),
                                                  sosdw::Complex(eta_re, eta_im));
        *out = new sosdw_ctx{ctx};
    });
}

void sosdw_ctx_free(sosdw_ctx* ctx) { delete ctx; }

sosdw_status sosdw_theta(const sosdw_ctx* ctx, double x_re, double x_im, double* out_re,
                         double* out_im) {
    return guarded([&] {
        if (!ctx || !out_re || !out_im) throw sosdw::UsageError("theta: null argument");
        const auto v = sosdw::theta(sosdw::Complex(x_re, x_im), ctx->ctx);
        *out_re = v.real();
        *out_im = v.imag();
    });
}

sosdw_status sosdw_bracket(const sosdw_ctx* ctx, double x_re, double x_im, double* out_re,
                           double* out_im) {
    return guarded([&] {
        if (!ctx || !out_re || !out_im) throw sosdw::UsageError("bracket: null argument");
        const auto v = sosdw::bracket(sosdw::Complex(x_re, x_im), ctx->ctx);
        *out_re = v.real();
        *out_im = v.imag();
    });
}

sosdw_status sosdw_state_count(int n, int state_cap, char** out_decimal) {
    return guarded([&] {
        if (!out_decimal) throw sosdw::UsageError("state_count: out is null");
        const long long c = sosdw::count_states(n, state_cap);
        *out_decimal = dup_string(std::to_string(c));
    });
}

sosdw_status sosdw_asm_count(int n, char** out_decimal) {
    return guarded([&] {
        if (!out_decimal) throw sosdw::UsageError("asm_count: out is null");
        *out_decimal = dup_string(sosdw::asm_count(n).get_str());
    });
}

sosdw_status sosdw_cspp_count(int n, char** out_decimal) {
    return guarded([&] {
        if (!out_decimal) throw sosdw::UsageError("cspp_count: out is null");
        *out_decimal = dup_string(sosdw::cspp_count(n).get_str());
    });
}

sosdw_status sosdw_states_jsonl(int n, int state_cap, char** out) {
    return guarded([&] {
        if (!out) throw sosdw::UsageError("states_jsonl: out is null");
        *out = dup_string(sosdw::states_jsonl(n, state_cap));
    });
}

sosdw_status sosdw_evaluate(const sosdw_ctx* ctx, const char* method, int n,
                            const double* x_re, const double* x_im, const double* y_re,
                            const double* y_im, double lambda_re, double lambda_im,
                            int aux, int state_cap, int threads, double* out_re,
                            double* out_im) {
    return guarded([&] {
        if (!ctx || !method || !out_re || !out_im)
            throw sosdw::UsageError("evaluate: null argument");
        if (n < 0 || (n > 0 && (!x_re || !x_im || !y_re || !y_im)))
            throw sosdw::UsageError("evaluate: missing spectral parameters");
        sosdw::SpectralParams P;
        P.convention = sosdw::Convention::additive;
        for (int i = 0; i < n; ++i) {
            P.x.emplace_back(x_re[i], x_im[i]);
            P.y.emplace_back(y_re[i], y_im[i]);
        }
        P.lambda = sosdw::Complex(lambda_re, lambda_im);
        sosdw::EvalOptions opts;
        if (state_cap > 0) opts.state_cap = state_cap;
        if (threads > 0) opts.threads = threads;

        const std::string m = method;
        sosdw::Complex v;
        if (m == "brute") {
            v = sosdw::z_bruteforce(P, ctx->ctx, opts);
        } else if (m == "weightfn") {
            v = sosdw::z_weightfunction(P, ctx->ctx);
        } else if (m == "ik") {
            v = sosdw::z_ik_sum(P, ctx->ctx, sosdw::DetPath::lu);
        } else if (m == "factored") {
            v = sosdw::z_factored_sum(P, ctx->ctx);
        } else if (m == "rootN") {
            if (aux < 2) throw sosdw::UsageError("evaluate: rootN needs aux = N >= 2");
            v = sosdw::z_root_of_unity(P, aux, ctx->ctx);
        } else if (m == "laurent") {
            v = sosdw::z_laurent(P, aux > 0 ? aux : 40, ctx->ctx);
        } else if (m == "freefermion") {
            v = sosdw::z_free_fermion(P, ctx->ctx);
        } else {
            throw sosdw::UsageError("evaluate: unknown method '" + m + "'");
        }
        *out_re = v.real();
        *out_im = v.imag();
    });
}

sosdw_status sosdw_verify(const char* config_json, char** report_json) {
    return guarded([&] {
        if (!config_json || !report_json) throw sosdw::UsageError("verify: null argument");
        const json cfg = json::parse(config_json);
        const auto sc = suite_config_from(cfg);
        std::vector<std::string> suites;
        if (cfg.contains("suites")) suites = cfg["suites"].get<std::vector<std::string>>();
        const bool timings = cfg.value("timings", true);

        const auto results = sosdw::run_suites(suites, sc);

        ordered_json rep;
        rep["schema"] = "sosdw/1";
        rep["command"] = "verify";
        rep["config"] = config_echo(sc, suites);
        ordered_json checks = ordered_json::array();
        int failed = 0;
        for (const auto& r : results) {
            ordered_json c;
            c["suite"] = r.suite;
            c["check"] = r.check;
            c["n"] = r.n;
            c["params"] = r.params;
            c["exact"] = r.exact;
            if (!r.exact) c["max_rel_err"] = r.max_rel_err;
            c["passed"] = r.passed;
            if (timings) c["ms"] = r.ms;
            if (!r.passed) ++failed;
            checks.push_back(std::move(c));
        }
        rep["checks"] = std::move(checks);
        rep["total"] = results.size();
        rep["failed"] = failed;
        rep["all_passed"] = (failed == 0);
        *report_json = dup_string(rep.dump(2) + "\n");
    });
}

sosdw_status sosdw_tables(const char* config_json, char** out) {
    return guarded([&] {
        if (!config_json || !out) throw sosdw::UsageError("tables: null argument");
        const json cfg = json::parse(config_json);
        const std::string kind = cfg.value("kind", "colours");
        const int n_min = cfg.value("n_min", 1);
        const int n_max = cfg.value("n_max", 5);
        const std::string format = cfg.value("format", "csv");
        const int cap = cfg.value("state_cap", static_cast<int>(sosdw::kDefaultStateCap));
        std::string text;
        if (kind == "identities") {
            text = sosdw::poly_identities_json(n_max, cap);
        } else if (kind == "colours") {
            if (format == "csv")
                text = sosdw::tables_csv(n_min, n_max);
            else if (format == "json")
                text = sosdw::tables_json(n_min, n_max);
            else
                throw sosdw::UsageError("tables: unknown format '" + format + "'");
        } else {
            throw sosdw::UsageError("tables: unknown kind '" + kind + "'");
        }
        *out = dup_string(text);
    });
}

sosdw_status sosdw_bench(const char* config_json, char** report_json) {
    return guarded([&] {
        if (!config_json || !report_json) throw sosdw::UsageError("bench: null argument");
        const json cfg = json::parse(config_json);
        const int n = cfg.value("n", 6);
        const uint64_t seed = cfg.value("seed", static_cast<uint64_t>(42));
        const double nome = cfg.value("nome", 0.2);
        const sosdw::Complex eta(cfg.value("eta_re", 0.30), cfg.value("eta_im", 0.11));
        const int cap = cfg.value("state_cap", static_cast<int>(sosdw::kDefaultStateCap));
        const int threads = cfg.value("threads", 1);
        std::vector<std::string> methods =
            cfg.value("methods", std::vector<std::string>{"brute", "weightfn", "ik", "factored"});

        const auto ctx = sosdw::ThetaContext::from_nome(sosdw::Complex(nome), eta);
        std::mt19937_64 rng(sosdw::task_seed(seed, 0));
        const sosdw::SpectralParams P = sosdw::draw_params(n, ctx, rng, true);
        sosdw::EvalOptions opts;
        opts.state_cap = cap;
        opts.threads = threads;

        using Clock = std::chrono::steady_clock;
        ordered_json rep;
        rep["schema"] = "sosdw/1";
        rep["command"] = "bench";
        rep["n"] = n;
        rep["seed"] = seed;
        rep["states"] = sosdw::asm_count(n).get_str();
        ordered_json rows = ordered_json::array();
        double brute_ms = -1;
        for (const auto& m : methods) {
            const auto t0 = Clock::now();
            sosdw::Complex v;
            if (m == "brute")
                v = sosdw::z_bruteforce(P, ctx, opts);
            else if (m == "weightfn")
                v = sosdw::z_weightfunction(P, ctx);
            else if (m == "ik")
                v = sosdw::z_ik_sum(P, ctx, sosdw::DetPath::lu);
            else if (m == "factored")
                v = sosdw::z_factored_sum(P, ctx);
            else
                throw sosdw::UsageError("bench: unknown method '" + m + "'");
            const double ms =
                std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            if (m == "brute") brute_ms = ms;
            ordered_json row;
            row["method"] = m;
            row["ms"] = ms;
            row["value_re"] = v.real();
            row["value_im"] = v.imag();
            if (brute_ms > 0 && m != "brute") row["speedup_vs_brute"] = brute_ms / ms;
            rows.push_back(std::move(row));
        }
        rep["results"] = std::move(rows);
        *report_json = dup_string(rep.dump(2) + "\n");
    });
}

} // extern "C"
