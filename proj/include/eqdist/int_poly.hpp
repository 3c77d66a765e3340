#pragma once

// Exact arithmetic on integer-coefficient polynomials: products, exact
// division, content/primitive split, squarefree parts via integer gcd,
// cyclotomic polynomials and the substitution p(1 - x^n).
//
// Coefficients are arbitrary-precision integers (GMP). The zero polynomial
// is the empty coefficient vector; degree() must not be asked of it.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqdist/errors.hpp"

namespace eqdist {

class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> c) : coeffs_(std::move(c)) { trim(); }

    static IntPolynomial constant(mpz_class c) {
        IntPolynomial p;
        if (c != 0) p.coeffs_.push_back(std::move(c));
        return p;
    }
    static IntPolynomial one() { return constant(1); }
    // c * x^k
    static IntPolynomial monomial(std::size_t k, mpz_class c = 1) {
        IntPolynomial p;
        if (c != 0) {
            p.coeffs_.assign(k + 1, 0);
            p.coeffs_[k] = std::move(c);
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }

    std::size_t degree() const {
        if (is_zero()) throw ZeroPolynomial("degree of the zero polynomial is undefined");
        return coeffs_.size() - 1;
    }

    const mpz_class& lead() const {
        if (is_zero()) throw ZeroPolynomial("zero polynomial has no leading coefficient");
        return coeffs_.back();
    }

    // Coefficient of x^i (0 beyond the degree).
    const mpz_class& operator[](std::size_t i) const {
        static const mpz_class kZero = 0;
        return i < coeffs_.size() ? coeffs_[i] : kZero;
    }

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

    mpz_class eval(const mpz_class& x) const {
        mpz_class acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc *= x;
            acc += coeffs_[i];
        }
        return acc;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            if (coeffs_[i] == 0) continue;
            if (!s.empty()) s += (coeffs_[i] > 0 ? " + " : " - ");
            else if (coeffs_[i] < 0) s += "-";
            mpz_class a = abs(coeffs_[i]);
            if (a != 1 || i == 0) s += a.get_str();
            if (i > 0) s += (i == 1 ? "x" : "x^" + std::to_string(i));
        }
        return s;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<mpz_class> coeffs_;
};

inline IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return IntPolynomial(std::move(out));
}

inline IntPolynomial poly_sub(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return IntPolynomial(std::move(out));
}

inline IntPolynomial poly_neg(const IntPolynomial& a) {
    std::vector<mpz_class> out(a.coeffs());
    for (auto& c : out) c = -c;
    return IntPolynomial(std::move(out));
}

inline IntPolynomial poly_scale(const IntPolynomial& a, const mpz_class& c) {
    if (c == 0) return {};
    std::vector<mpz_class> out(a.coeffs());
    for (auto& v : out) v *= c;
    return IntPolynomial(std::move(out));
}

inline IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> out(a.coeffs().size() + b.coeffs().size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return IntPolynomial(std::move(out));
}

// Exact quotient a / b over the integers. The top-down division computes the
// unique candidate quotient; any inexact leading-coefficient step or a
// nonzero final remainder proves there is no integer quotient.
inline IntPolynomial poly_divexact(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw ZeroPolynomial("poly_divexact: divisor is zero");
    if (a.is_zero()) return {};
    const std::size_t db = b.degree();
    if (a.degree() < db) throw NotDivisible("poly_divexact: dividend degree below divisor degree");

    std::vector<mpz_class> rem(a.coeffs());
    std::vector<mpz_class> q(a.degree() - db + 1, mpz_class(0));
    mpz_class qk, r;
    for (std::size_t k = q.size(); k-- > 0;) {
        mpz_class& top = rem[k + db];
        if (top == 0) continue;
        mpz_tdiv_qr(qk.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
        if (r != 0) throw NotDivisible("poly_divexact: leading coefficient does not divide");
        q[k] = qk;
        for (std::size_t i = 0; i <= db; ++i)
            mpz_submul(rem[k + i].get_mpz_t(), qk.get_mpz_t(), b[i].get_mpz_t());
    }
    for (std::size_t i = 0; i < db; ++i)
        if (rem[i] != 0) throw NotDivisible("poly_divexact: nonzero remainder");
    return IntPolynomial(std::move(q));
}

inline mpz_class poly_content(const IntPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("content of the zero polynomial");
    mpz_class g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// (content, primitive part); content is positive and primitive keeps the sign
// of the input, so content * primitive == p.
inline std::pair<mpz_class, IntPolynomial> content_primitive(const IntPolynomial& p) {
    mpz_class c = poly_content(p);
    std::vector<mpz_class> out(p.coeffs());
    for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    return {std::move(c), IntPolynomial(std::move(out))};
}

inline IntPolynomial poly_derivative(const IntPolynomial& p) {
    if (p.is_zero() || p.degree() == 0) return {};
    std::vector<mpz_class> out(p.degree());
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) out[i - 1] = p[i] * mpz_class(static_cast<unsigned long>(i));
    return IntPolynomial(std::move(out));
}

namespace detail {

// Pseudo-remainder: a scaled by powers of lead(b) until reduced below deg b.
inline IntPolynomial poly_prem(IntPolynomial a, const IntPolynomial& b) {
    const std::size_t db = b.degree();
    const mpz_class& lb = b.lead();
    while (!a.is_zero() && a.degree() >= db) {
        const std::size_t shift = a.degree() - db;
        mpz_class la = a.lead();
        std::vector<mpz_class> out(a.coeffs());
        for (auto& v : out) v *= lb;
        for (std::size_t i = 0; i <= db; ++i)
            mpz_submul(out[shift + i].get_mpz_t(), la.get_mpz_t(), b[i].get_mpz_t());
        a = IntPolynomial(std::move(out));
    }
    return a;
}

} // namespace detail

// Exact gcd over Z[x] by the primitive-part Euclidean scheme: pseudo-remainder
// then strip content each round, so coefficients stay desk-sized.
// Result is normalized with positive leading coefficient.
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero()) std::swap(a, b);
    mpz_class cg;
    if (b.is_zero()) {
        auto [c, prim] = content_primitive(a);
        if (prim.lead() < 0) prim = poly_neg(prim);
        return poly_scale(prim, c);
    }
    {
        mpz_class ca = poly_content(a), cb = poly_content(b);
        mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        a = content_primitive(a).second;
        b = content_primitive(b).second;
    }
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = detail::poly_prem(a, b);
        a = std::move(b);
        b = r.is_zero() ? std::move(r) : content_primitive(r).second;
    }
    if (a.lead() < 0) a = poly_neg(a);
    return poly_scale(a, cg);
}

// Primitive squarefree polynomial with the same root set, via p / gcd(p, p').
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("squarefree_part of the zero polynomial");
    IntPolynomial pp = content_primitive(p).second;
    if (pp.degree() == 0) return IntPolynomial::one();
    IntPolynomial g = poly_gcd(pp, poly_derivative(pp));
    IntPolynomial sf = poly_divexact(pp, g);
    if (sf.lead() < 0) sf = poly_neg(sf);
    return sf;
}

inline bool is_squarefree(const IntPolynomial& p) {
    if (p.is_zero()) return false;
    if (p.degree() == 0) return true;
    return poly_gcd(p, poly_derivative(p)).degree() == 0;
}

// m-th cyclotomic polynomial by the exact division cascade
// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
inline IntPolynomial cyclotomic(unsigned long m) {
    if (m == 0) throw UsageError("cyclotomic: m must be >= 1");
    std::vector<unsigned long> divs;
    for (unsigned long d = 1; d <= m; ++d)
        if (m % d == 0) divs.push_back(d);
    std::map<unsigned long, IntPolynomial> table;
    for (unsigned long d : divs) {
        IntPolynomial q = poly_sub(IntPolynomial::monomial(d), IntPolynomial::one());
        for (unsigned long e : divs) {
            if (e >= d) break;
            if (d % e == 0) q = poly_divexact(q, table.at(e));
        }
        table.emplace(d, std::move(q));
    }
    return table.at(m);
}

// p(1 - x^n), exact, by Horner in the variable 1 - x^n.
inline IntPolynomial compose_shift_power(const IntPolynomial& p, unsigned long n) {
    if (p.is_zero()) throw ZeroPolynomial("compose_shift_power: zero polynomial");
    if (n == 0) throw UsageError("compose_shift_power: n must be >= 1");
    IntPolynomial y = poly_sub(IntPolynomial::one(), IntPolynomial::monomial(n));
    IntPolynomial acc;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc = poly_mul(acc, y);
        acc = poly_add(acc, IntPolynomial::constant(p[i]));
    }
    return acc;
}

} // namespace eqdist
