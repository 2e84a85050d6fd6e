// Command-line front end. Talks to the engine exclusively through the
// C API in sosdw.h, so it doubles as a smoke test of the shared library.
#include <CLI11.hpp>
#include <json.hpp>
#include <sosdw.h>

#include <chrono>
#include <complex>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

// "0.3", "0.3-0.11i", "10i", "1e-3+2e-4i" -> complex
std::complex<double> parse_complex(const std::string& in) {
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    auto to_double = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("trailing characters");
        return v;
    };

    if (s.back() != 'i') return {to_double(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
    if (split == std::string::npos) return {0.0, to_double(s)};
    return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

std::string iso_timestamp() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 2;
    }
    f << text;
    return 0;
}

int fail(sosdw_status st) {
    std::cerr << "error: " << sosdw_last_error() << "\n";
    (void)st;
    return 2;
}

std::string take(char* s) {
    std::string out = s ? s : "";
    sosdw_string_free(s);
    return out;
}

int env_threads() {
    if (const char* e = std::getenv("SOSDW_THREADS")) {
        const int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition-function verification engine for the dynamical "
                 "square-ice model with domain-wall boundaries"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sosdw_version()));

    // ---- shared option state -------------------------------------------
    int n = 2, n_max = 3, trials = 20, state_cap = 7, root_N = 0, terms = 0;
    int tbl_n = 1, tbl_n_max = 5, bench_n = 6;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    std::string p_str = "0.2", eta_str = "0.30+0.11i", lambda_str = "0.5+0.1i";
    std::vector<std::string> x_str, y_str, suites, methods;
    std::string method = "ik", format, out_path, kind = "colours";
    bool exact = true, no_timestamp = false;

    // ---- verify ---------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "Run identity verification suites");
    cmd_verify->add_option("--suite", suites, "Suite name (repeatable; default: all)");
    cmd_verify->add_option("--n-max", n_max, "Largest matrix size exercised");
    cmd_verify->add_option("--seed", seed, "Seed for random parameter draws");
    cmd_verify->add_option("--trials", trials, "Random trials per numeric check");
    cmd_verify->add_option("--tol", tol, "Relative tolerance for numeric checks");
    cmd_verify->add_option("--p", p_str, "Elliptic nome (real, |p| < 0.9)");
    cmd_verify->add_option("--eta", eta_str, "Crossing parameter eta, e.g. 0.3+0.11i");
    cmd_verify->add_option("--state-cap", state_cap, "Max n for exhaustive state sums");
    cmd_verify->add_flag("--exact,!--no-exact", exact, "Include exact polynomial checks");
    cmd_verify->add_option("--format", format, "json (default) or text");
    cmd_verify->add_option("--out", out_path, "Write output to file");
    cmd_verify->add_flag("--no-timestamp", no_timestamp,
                         "Suppress timestamp and runtime fields (byte-stable output)");

    // ---- evaluate -------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("evaluate", "Evaluate the partition function once");
    cmd_eval->add_option("--n", n, "Matrix size")->required();
    cmd_eval->add_option("--method", method,
                         "brute|weightfn|ik|factored|rootN|laurent|freefermion");
    cmd_eval->add_option("--p", p_str, "Elliptic nome (complex)");
    cmd_eval->add_option("--eta", eta_str, "Crossing parameter eta");
    cmd_eval->add_option("--root-of-unity", root_N, "N with q = exp(2 pi i/N) (sets eta=1/N)");
    cmd_eval->add_option("--terms", terms, "Truncation order for method=laurent");
    cmd_eval->add_option("--x", x_str, "Row parameter x_i (repeatable, n values)");
    cmd_eval->add_option("--y", y_str, "Column parameter y_j (repeatable, n values)");
    cmd_eval->add_option("--lambda", lambda_str, "Dynamical parameter");
    cmd_eval->add_option("--state-cap", state_cap, "Max n for method=brute");
    cmd_eval->add_option("--format", format, "json (default) or text");
    cmd_eval->add_option("--out", out_path, "Write output to file");
    cmd_eval->add_flag("--no-timestamp", no_timestamp,
                       "Suppress timestamp and runtime fields");

    // ---- tables ---------------------------------------------------------
    auto* cmd_tables = app.add_subcommand("tables", "Emit enumeration tables");
    cmd_tables->add_option("--kind", kind, "colours (A_n/C_n/K_i/p_i) or identities");
    cmd_tables->add_option("--n", tbl_n, "Smallest n in the table");
    cmd_tables->add_option("--n-max", tbl_n_max, "Largest n in the table");
    cmd_tables->add_option("--format", format, "csv (default) or json");
    cmd_tables->add_option("--state-cap", state_cap, "Max n for exhaustive sums");
    cmd_tables->add_option("--out", out_path, "Write output to file");

    // ---- bench ----------------------------------------------------------
    auto* cmd_bench = app.add_subcommand("bench", "Time evaluation methods at seeded params");
    cmd_bench->add_option("--n", bench_n, "Matrix size");
    cmd_bench->add_option("--seed", seed, "Seed for the parameter draw");
    cmd_bench->add_option("--p", p_str, "Elliptic nome (real)");
    cmd_bench->add_option("--eta", eta_str, "Crossing parameter eta");
    cmd_bench->add_option("--method", methods, "Method to time (repeatable; default set)");
    cmd_bench->add_option("--state-cap", state_cap, "Max n for brute force");
    cmd_bench->add_option("--out", out_path, "Write output to file");

    // ---- states ---------------------------------------------------------
    auto* cmd_states = app.add_subcommand("states", "Export all states for one n as JSONL");
    cmd_states->add_option("--n", n, "Matrix size")->required();
    cmd_states->add_option("--state-cap", state_cap, "Refuse n beyond this cap");
    cmd_states->add_option("--out", out_path, "Write output to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        // ---------------- verify ----------------
        if (cmd_verify->parsed()) {
            const auto p = parse_complex(p_str);
            if (p.imag() != 0.0) {
                std::cerr << "error: verify expects a real nome\n";
                return 2;
            }
            const auto eta = parse_complex(eta_str);
            ordered_json cfg;
            cfg["suites"] = suites;
            cfg["n_max"] = n_max;
            cfg["trials"] = trials;
            cfg["seed"] = seed;
            cfg["tol"] = tol;
            cfg["nome"] = p.real();
            cfg["eta_re"] = eta.real();
            cfg["eta_im"] = eta.imag();
            cfg["state_cap"] = state_cap;
            cfg["exact"] = exact;
            cfg["threads"] = env_threads();
            cfg["timings"] = !no_timestamp;

            char* rep = nullptr;
            if (auto st = sosdw_verify(cfg.dump().c_str(), &rep); st != SOSDW_OK)
                return fail(st);
            ordered_json r = ordered_json::parse(take(rep));
            if (!no_timestamp) r["timestamp"] = iso_timestamp();

            std::string text;
            if (format == "text") {
                for (const auto& c : r["checks"]) {
                    text += c["passed"].get<bool>() ? "PASS  " : "FAIL  ";
                    text += c["suite"].get<std::string>() + " / " +
                            c["check"].get<std::string>() + "  n=" +
                            std::to_string(c["n"].get<int>());
                    if (!c["exact"].get<bool>())
                        text += "  max_rel_err=" + c["max_rel_err"].dump();
                    text += "\n";
                }
                text += (r["all_passed"].get<bool>() ? "OK" : "FAILED");
                text += "  (" + r["total"].dump() + " checks, " + r["failed"].dump() +
                        " failed)\n";
            } else {
                text = r.dump(2) + "\n";
            }
            const int rc = emit(text, out_path);
            if (rc != 0) return rc;
            return r["all_passed"].get<bool>() ? 0 : 1;
        }

        // ---------------- evaluate ----------------
        if (cmd_eval->parsed()) {
            const std::complex<double> eta =
                root_N > 0 && cmd_eval->count("--eta") == 0
                    ? std::complex<double>(1.0 / root_N, 0.0)
                    : parse_complex(eta_str);
            const auto p = parse_complex(p_str);
            if (static_cast<int>(x_str.size()) != n || static_cast<int>(y_str.size()) != n) {
                std::cerr << "error: evaluate needs exactly n values of --x and --y\n";
                return 2;
            }
            std::vector<double> xr, xi, yr, yi;
            for (const auto& s : x_str) {
                const auto v = parse_complex(s);
                xr.push_back(v.real());
                xi.push_back(v.imag());
            }
            for (const auto& s : y_str) {
                const auto v = parse_complex(s);
                yr.push_back(v.real());
                yi.push_back(v.imag());
            }
            const auto lambda = parse_complex(lambda_str);

            sosdw_ctx* ctx = nullptr;
            if (auto st = sosdw_ctx_new(p.real(), p.imag(), eta.real(), eta.imag(), &ctx);
                st != SOSDW_OK)
                return fail(st);
            int aux = 0;
            if (method == "rootN") aux = root_N;
            if (method == "laurent") aux = terms;
            double re = 0, im = 0;
            const auto t0 = std::chrono::steady_clock::now();
            const auto st = sosdw_evaluate(ctx, method.c_str(), n, xr.data(), xi.data(),
                                           yr.data(), yi.data(), lambda.real(),
                                           lambda.imag(), aux, state_cap, env_threads(),
                                           &re, &im);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            sosdw_ctx_free(ctx);
            if (st != SOSDW_OK) return fail(st);

            std::string text;
            if (format == "text") {
                text = method + ": " + std::to_string(re) +
                       (im < 0 ? " - " : " + ") + std::to_string(std::abs(im)) + "i\n";
            } else {
                ordered_json r;
                r["schema"] = "sosdw/1";
                r["command"] = "evaluate";
                r["method"] = method;
                // series methods compute the translation-invariant rendering
                r["object"] = (method == "rootN" || method == "laurent" ||
                               method == "freefermion")
                                  ? "Z-tilde"
                                  : "Z";
                r["n"] = n;
                r["value_re"] = re;
                r["value_im"] = im;
                if (!no_timestamp) {
                    r["runtime_ms"] = ms;
                    r["timestamp"] = iso_timestamp();
                }
                text = r.dump(2) + "\n";
            }
            return emit(text, out_path);
        }

        // ---------------- tables ----------------
        if (cmd_tables->parsed()) {
            ordered_json cfg;
            cfg["kind"] = kind;
            cfg["n_min"] = tbl_n;
            cfg["n_max"] = tbl_n_max;
            cfg["format"] = format.empty() ? "csv" : format;
            cfg["state_cap"] = state_cap;
            char* out = nullptr;
            if (auto st = sosdw_tables(cfg.dump().c_str(), &out); st != SOSDW_OK)
                return fail(st);
            return emit(take(out), out_path);
        }

        // ---------------- bench ----------------
        if (cmd_bench->parsed()) {
            const auto p = parse_complex(p_str);
            const auto eta = parse_complex(eta_str);
            ordered_json cfg;
            cfg["n"] = bench_n;
            cfg["seed"] = seed;
            cfg["nome"] = p.real();
            cfg["eta_re"] = eta.real();
            cfg["eta_im"] = eta.imag();
            cfg["state_cap"] = std::max(state_cap, bench_n);
            cfg["threads"] = env_threads();
            if (!methods.empty()) cfg["methods"] = methods;
            char* rep = nullptr;
            if (auto st = sosdw_bench(cfg.dump().c_str(), &rep); st != SOSDW_OK)
                return fail(st);
            return emit(take(rep), out_path);
        }

        // ---------------- states ----------------
        if (cmd_states->parsed()) {
            char* out = nullptr;
            if (auto st = sosdw_states_jsonl(n, state_cap, &out); st != SOSDW_OK)
                return fail(st);
            return emit(take(out), out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
