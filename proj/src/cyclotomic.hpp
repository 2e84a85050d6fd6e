#pragma once

// Exact arithmetic in Z[w] (w = e^{2 pi i/3}, w^2 = -1 - w) and Z[i], plus
// dense polynomials over either ring. Coefficients are GMP integers, so the
// enumeration identities can be checked literally, not to rounding.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace sosdw {

struct Eisenstein {
    mpz_class a, b;  // a + b w

    Eisenstein() : a(0), b(0) {}
    Eisenstein(long v) : a(v), b(0) {}  // NOLINT: implicit by design
    Eisenstein(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {}

    static Eisenstein omega_power(long k) {
        switch (((k % 3) + 3) % 3) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            default: return {mpz_class(-1), mpz_class(-1)};  // w^2 = -1 - w
        }
    }

    bool is_zero() const { return a == 0 && b == 0; }

    friend Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend Eisenstein operator-(const Eisenstein& x) { return {-x.a, -x.b}; }
    friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
        // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    friend bool operator==(const Eisenstein& x, const Eisenstein& y) {
        return x.a == y.a && x.b == y.b;
    }

    std::complex<double> to_complex() const {
        static const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
        return std::complex<double>(a.get_d()) + std::complex<double>(b.get_d()) * w;
    }
    std::string str() const { return "(" + a.get_str() + "," + b.get_str() + ")"; }
};

struct Gaussian {
    mpz_class a, b;  // a + b i

    Gaussian() : a(0), b(0) {}
    Gaussian(long v) : a(v), b(0) {}  // NOLINT: implicit by design
    Gaussian(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {}

    static Gaussian i_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {mpz_class(-1), mpz_class(0)};
            default: return {mpz_class(0), mpz_class(-1)};
        }
    }

    bool is_zero() const { return a == 0 && b == 0; }

    friend Gaussian operator+(const Gaussian& x, const Gaussian& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend Gaussian operator-(const Gaussian& x, const Gaussian& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend Gaussian operator-(const Gaussian& x) { return {-x.a, -x.b}; }
    friend Gaussian operator*(const Gaussian& x, const Gaussian& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const Gaussian& x, const Gaussian& y) {
        return x.a == y.a && x.b == y.b;
    }

    std::complex<double> to_complex() const { return {a.get_d(), b.get_d()}; }
    std::string str() const { return "(" + a.get_str() + "," + b.get_str() + ")"; }
};

// Dense polynomial in lambda over R; trailing zeros stripped, zero == empty.
template <class R>
struct Poly {
    std::vector<R> c;

    Poly() = default;
    explicit Poly(R v) : c{std::move(v)} { normalize(); }

    static Poly monomial(R v, int k) {
        Poly p;
        p.c.assign(static_cast<size_t>(k) + 1, R(0));
        p.c[static_cast<size_t>(k)] = std::move(v);
        p.normalize();
        return p;
    }

    void normalize() {
        while (!c.empty() && c.back() == R(0)) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    R coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[static_cast<size_t>(k)] : R(0);
    }

    friend Poly operator+(const Poly& x, const Poly& y) {
        Poly r;
        r.c.resize(std::max(x.c.size(), y.c.size()), R(0));
        for (size_t k = 0; k < x.c.size(); ++k) r.c[k] = r.c[k] + x.c[k];
        for (size_t k = 0; k < y.c.size(); ++k) r.c[k] = r.c[k] + y.c[k];
        r.normalize();
        return r;
    }
    friend Poly operator-(const Poly& x, const Poly& y) {
        Poly r;
        r.c.resize(std::max(x.c.size(), y.c.size()), R(0));
        for (size_t k = 0; k < x.c.size(); ++k) r.c[k] = r.c[k] + x.c[k];
        for (size_t k = 0; k < y.c.size(); ++k) r.c[k] = r.c[k] - y.c[k];
        r.normalize();
        return r;
    }
    friend Poly operator*(const Poly& x, const Poly& y) {
        if (x.is_zero() || y.is_zero()) return {};
        Poly r;
        r.c.assign(x.c.size() + y.c.size() - 1, R(0));
        for (size_t i = 0; i < x.c.size(); ++i)
            for (size_t j = 0; j < y.c.size(); ++j) r.c[i + j] = r.c[i + j] + x.c[i] * y.c[j];
        r.normalize();
        return r;
    }
    friend Poly operator*(const R& s, const Poly& y) {
        Poly r = y;
        for (auto& v : r.c) v = s * v;
        r.normalize();
        return r;
    }
    friend bool operator==(const Poly& x, const Poly& y) { return x.c == y.c; }

    Poly pow(int e) const {
        if (e < 0) throw UsageError("Poly::pow: negative exponent");
        Poly r(R(1));
        for (int k = 0; k < e; ++k) r = r * *this;
        return r;
    }

    // Exact division; the divisor's leading coefficient must be +-1.
    // Throws NumericError when the remainder is nonzero.
    Poly divide_exact(const Poly& d) const {
        if (d.is_zero()) throw UsageError("Poly::divide_exact: zero divisor");
        const R lead = d.c.back();
        if (!(lead == R(1) || lead == R(-1)))
            throw UsageError("Poly::divide_exact: leading coefficient not a sign");
        Poly rem = *this;
        Poly q;
        if (degree() >= d.degree())
            q.c.assign(static_cast<size_t>(degree() - d.degree()) + 1, R(0));
        while (rem.degree() >= d.degree()) {
            const int k = rem.degree() - d.degree();
            R coef = (lead == R(1)) ? rem.c.back() : -rem.c.back();
            rem = rem - Poly::monomial(coef, k) * d;
            q.c[static_cast<size_t>(k)] = std::move(coef);
        }
        if (!rem.is_zero()) throw NumericError("Poly::divide_exact: nonzero remainder");
        q.normalize();
        return q;
    }

    std::complex<double> eval(std::complex<double> lambda) const {
        std::complex<double> v(0);
        for (size_t k = c.size(); k-- > 0;) v = v * lambda + c[k].to_complex();
        return v;
    }
};

} // namespace sosdw
