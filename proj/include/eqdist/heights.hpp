#pragma once

// Weil heights and Mahler measures. All heights are in natural logarithms.
//
// m(S) for the full root set of a squarefree primitive polynomial is
// log M(p) / deg p: the measure is multiplicative over the (unknown)
// irreducible factors and heights within one factor are equal, so no
// factorization is needed. h(S) = 24 (m(S) + log(2|S|)/|S|)^{1/3} is the
// discrepancy driver used by the angular statistics.

#include <cmath>
#include <cstddef>
#include <utility>

#include "eqdist/errors.hpp"
#include "eqdist/int_poly.hpp"
#include "eqdist/roots.hpp"

namespace eqdist {

struct HeightSummary {
    long card_S = 0;
    double m_S = 0.0;
    double h_S = 0.0;
    double mahler_log = 0.0;
    int warnings = 0; // roots within 1e-9 of the unit circle
};

inline double height_driver(long card_S, double m_S) {
    return 24.0 * std::cbrt(m_S + std::log(2.0 * static_cast<double>(card_S)) / static_cast<double>(card_S));
}

inline double log_abs(const mpz_class& v) {
    long e;
    double d = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(e) * M_LN2;
}

namespace detail {

struct MahlerLog {
    double value = 0.0;
    int near_circle = 0;
};

// sum of log max(1, |z|) over the roots of q with multiplicity, peeling one
// squarefree layer at a time so the root finder only ever sees simple roots.
inline void log_plus_roots(const IntPolynomial& q, MahlerLog& out) {
    if (q.degree() == 0) return;
    IntPolynomial g = poly_gcd(q, poly_derivative(q));
    IntPolynomial sf = g.degree() == 0 ? q : poly_divexact(q, g);
    if (sf.degree() >= 1) {
        RootSet rs = roots(content_primitive(sf).second);
        for (const auto& z : rs.points) {
            double az = std::abs(z);
            if (std::abs(az - 1.0) <= 1e-9) ++out.near_circle;
            if (az > 1.0) out.value += std::log(az);
        }
    }
    if (g.degree() >= 1) log_plus_roots(g, out);
}

inline MahlerLog mahler_log_primitive(const IntPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("mahler measure of the zero polynomial");
    if (p.degree() < 1) throw ConstantPolynomial("mahler measure needs degree >= 1");
    IntPolynomial pp = content_primitive(p).second;
    MahlerLog out;
    out.value = log_abs(pp.lead());
    log_plus_roots(pp, out);
    return out;
}

} // namespace detail

// M(p) = |lead of primitive part| * prod max(1, |root|), multiplicities included.
inline double mahler_measure(const IntPolynomial& p) {
    return std::exp(detail::mahler_log_primitive(p).value);
}

// Independent oracle: Jensen's formula. log M(p) equals the mean of
// log|p(e^{2 pi i t})| on the circle; the periodic trapezoid rule with an
// irrational node offset converges spectrally when no root is near the
// circle and like 1/nodes otherwise (exact error: the node-product identity
// turns the mean into (1/N) sum_k log|w_k^N - e^{2 pi i offset}|).
// Unlike mahler_measure this keeps the content of p.
inline double mahler_jensen(const IntPolynomial& p, std::size_t nodes) {
    if (p.is_zero()) throw ZeroPolynomial("mahler_jensen of the zero polynomial");
    if (nodes == 0) throw UsageError("mahler_jensen: nodes must be positive");

    // shared power-of-two rescaling keeps huge coefficients finite; it shifts
    // log|p| by a known constant that is added back below.
    long emax = 0;
    for (const auto& c : p.coeffs()) {
        if (c == 0) continue;
        long e;
        mpz_get_d_2exp(&e, c.get_mpz_t());
        emax = std::max(emax, e);
    }
    std::vector<double> cs(p.coeffs().size(), 0.0);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (p[i] == 0) continue;
        long e;
        double d = mpz_get_d_2exp(&e, p[i].get_mpz_t());
        cs[i] = std::ldexp(d, static_cast<int>(e - emax));
    }

    double acc = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        double t = (static_cast<double>(j) + kIrrationalOffset) / static_cast<double>(nodes);
        Complex z = std::polar(1.0, 2.0 * M_PI * t);
        Complex v(0.0, 0.0);
        for (std::size_t i = cs.size(); i-- > 0;) v = v * z + cs[i];
        double av = std::abs(v);
        if (av < 1e-300) throw NodeOnRoot("mahler_jensen: |p| underflowed at a node");
        acc += std::log(av);
    }
    return std::exp(acc / static_cast<double>(nodes) + static_cast<double>(emax) * M_LN2);
}

// Height summary for S = full root set of a primitive squarefree polynomial.
inline HeightSummary mean_height(const IntPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("mean_height of the zero polynomial");
    if (p.degree() < 1) throw ConstantPolynomial("mean_height needs degree >= 1");
    if (poly_content(p) != 1) throw NotPrimitive("mean_height: input must be primitive");
    if (!is_squarefree(p)) throw NotSquarefree("mean_height: input must be squarefree");

    detail::MahlerLog ml = detail::mahler_log_primitive(p);
    HeightSummary hs;
    hs.card_S = static_cast<long>(p.degree());
    hs.mahler_log = ml.value;
    hs.m_S = ml.value / static_cast<double>(hs.card_S);
    if (hs.m_S < 0.0 && hs.m_S > -1e-12) hs.m_S = 0.0; // root-finder noise on measure-1 inputs
    hs.h_S = height_driver(hs.card_S, hs.m_S);
    hs.warnings = ml.near_circle;
    return hs;
}

// Height budget of the auxiliary-polynomial lemma:
// card/(L+1-card) * (3/2 log(L+1) + (L+1) m) + log(L+1)/2, valid for L > card.
inline double siegel_bound(long card_S, double m_S, long L) {
    if (card_S < 1) throw UsageError("siegel_bound: card_S must be positive");
    if (L <= card_S) throw DegreeTooSmall("siegel_bound: require L > card_S");
    double Lp1 = static_cast<double>(L) + 1.0;
    return static_cast<double>(card_S) / (Lp1 - static_cast<double>(card_S)) *
               (1.5 * std::log(Lp1) + Lp1 * m_S) +
           0.5 * std::log(Lp1);
}

} // namespace eqdist
