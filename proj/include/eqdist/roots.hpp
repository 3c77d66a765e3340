#pragma once

// Numerical root finding for complex polynomials: Aberth-Ehrlich simultaneous
// iteration with Newton polishing and residual-based error radii. This is the
// bridge from exact polynomials to the point sets all distribution statistics
// run on; exactness (squarefree reduction, primitivity) lives upstream.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "eqdist/errors.hpp"
#include "eqdist/int_poly.hpp"

namespace eqdist {

using Complex = std::complex<double>;

// Fixed irrational offset (conjugate golden ratio) used wherever a
// deterministic symmetry-breaking phase or quadrature shift is needed.
inline constexpr double kIrrationalOffset = 0.6180339887498949;

struct ComplexPolynomial {
    std::vector<Complex> coeffs; // constant term first; leading coefficient nonzero

    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<Complex> c) : coeffs(std::move(c)) {
        while (!coeffs.empty() && coeffs.back() == Complex(0.0, 0.0)) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    std::size_t degree() const {
        if (coeffs.empty()) throw ZeroPolynomial("degree of the zero polynomial is undefined");
        return coeffs.size() - 1;
    }
};

// Double image of an integer polynomial. Coefficients beyond roughly 2^512,
// or degrees beyond 2^12, are rescaled by a shared power of two; root
// locations are unchanged by a constant scaling of the polynomial.
inline ComplexPolynomial to_complex(const IntPolynomial& p) {
    if (p.is_zero()) return {};
    long emax = 0;
    bool scale = p.degree() > 4096;
    for (const auto& c : p.coeffs()) {
        if (c == 0) continue;
        long e;
        mpz_get_d_2exp(&e, c.get_mpz_t());
        emax = std::max(emax, e);
    }
    if (emax > 512) scale = true;
    std::vector<Complex> out(p.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (p[i] == 0) continue;
        if (scale) {
            long e;
            double d = mpz_get_d_2exp(&e, p[i].get_mpz_t());
            out[i] = Complex(std::ldexp(d, static_cast<int>(e - emax)), 0.0);
        } else {
            out[i] = Complex(p[i].get_d(), 0.0);
        }
    }
    return ComplexPolynomial(std::move(out));
}

struct RootSet {
    std::vector<Complex> points;
    std::vector<double> radii; // residual-based error radius per point
    std::size_t source_degree = 0;
};

// R = 1 + max_{i<D} |p_i| / |p_D|; every root has modulus <= R.
inline double cauchy_bound(const ComplexPolynomial& p) {
    if (p.is_zero() || p.degree() < 1) throw ConstantPolynomial("cauchy_bound needs degree >= 1");
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < p.coeffs.size(); ++i) m = std::max(m, std::abs(p.coeffs[i]));
    return 1.0 + m / std::abs(p.coeffs.back());
}

// Horner evaluation of p(z) and p'(z) in one pass.
inline std::pair<Complex, Complex> eval_with_derivative(const ComplexPolynomial& p, Complex z) {
    Complex v(0.0, 0.0), d(0.0, 0.0);
    for (std::size_t i = p.coeffs.size(); i-- > 0;) {
        d = d * z + v;
        v = v * z + p.coeffs[i];
    }
    return {v, d};
}

namespace detail {

// Scale for the relative residual test: sum |p_i| |z|^i.
inline double eval_abs_bound(const ComplexPolynomial& p, double az) {
    double b = 0.0;
    for (std::size_t i = p.coeffs.size(); i-- > 0;) b = b * az + std::abs(p.coeffs[i]);
    return b;
}

// Robust Newton ratio p(z)/p'(z) plus the scaled residual test. For |z| > 1
// the direct Horner partials can overflow even at a root, so the reversed
// polynomial q(y) = y^D p(1/y) is evaluated at y = 1/z instead:
//   p/p' = z q(y) / (D q(y) - y q'(y)),
// and the residual test |p| <= tol sum |p_i| |z|^i divides through by |z|^D
// on both sides, which stays finite.
struct RatioEval {
    Complex newton{0.0, 0.0}; // p(z)/p'(z), or a unit fallback when p' = 0
    bool converged = false;
    bool zero = false; // residual is exactly 0
    bool derivative_vanished = false;
};

inline RatioEval newton_ratio(const ComplexPolynomial& p, const ComplexPolynomial& reversed,
                              Complex z, double eff_tol) {
    const double az = std::abs(z);
    RatioEval out;
    if (az <= 1.0) {
        Complex v(0.0, 0.0), d(0.0, 0.0);
        for (std::size_t i = p.coeffs.size(); i-- > 0;) {
            d = d * z + v;
            v = v * z + p.coeffs[i];
        }
        double av = std::abs(v);
        out.zero = av == 0.0;
        out.converged = av <= eff_tol * eval_abs_bound(p, az);
        if (d == Complex(0.0, 0.0)) {
            out.derivative_vanished = !out.zero;
            out.newton = Complex(1.0, 0.0);
        } else {
            out.newton = v / d;
        }
    } else {
        const Complex y = 1.0 / z;
        Complex q(0.0, 0.0), qd(0.0, 0.0);
        for (std::size_t i = reversed.coeffs.size(); i-- > 0;) {
            qd = qd * y + q;
            q = q * y + reversed.coeffs[i];
        }
        double aq = std::abs(q);
        out.zero = aq == 0.0;
        out.converged = aq <= eff_tol * eval_abs_bound(reversed, std::abs(y));
        Complex denom = static_cast<double>(p.degree()) * q - y * qd;
        if (denom == Complex(0.0, 0.0)) {
            out.derivative_vanished = !out.zero;
            out.newton = Complex(1.0, 0.0);
        } else {
            out.newton = z * q / denom;
        }
    }
    if (!std::isfinite(out.newton.real()) || !std::isfinite(out.newton.imag())) {
        out.newton = Complex(1.0, 0.0);
        out.converged = false;
    }
    return out;
}

// Initial approximations on circles whose radii come from the Newton polygon:
// each edge of the upper convex envelope of (i, log|p_i|) between exponents
// k1 < k2 contributes k2 - k1 points of modulus (|p_{k1}|/|p_{k2}|)^{1/(k2-k1)},
// the classical root-modulus estimate. A trailing power of x contributes
// near-zero candidates. Fully deterministic.
inline std::vector<Complex> initial_points(const ComplexPolynomial& p) {
    struct Node {
        std::size_t i;
        double y;
    };
    std::vector<Node> support;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        double a = std::abs(p.coeffs[i]);
        if (a > 0.0) support.push_back({i, std::log(a)});
    }
    std::vector<Node> hull;
    for (const auto& q : support) {
        while (hull.size() >= 2) {
            const Node& a = hull[hull.size() - 2];
            const Node& b = hull.back();
            if ((b.y - a.y) * static_cast<double>(q.i - a.i) <=
                (q.y - a.y) * static_cast<double>(b.i - a.i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    std::vector<Complex> z;
    z.reserve(p.degree());
    double first_radius =
        hull.size() >= 2 ? std::exp((hull[0].y - hull[1].y) / static_cast<double>(hull[1].i - hull[0].i))
                         : 1.0;
    for (std::size_t j = 0; j < support.front().i; ++j) {
        double ang = 2.0 * M_PI * (static_cast<double>(j) + kIrrationalOffset) /
                     static_cast<double>(support.front().i);
        z.push_back(std::polar(1e-3 * first_radius * (1.0 + static_cast<double>(j)), ang));
    }
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        std::size_t cnt = hull[e + 1].i - hull[e].i;
        double rad = std::exp((hull[e].y - hull[e + 1].y) / static_cast<double>(cnt));
        for (std::size_t j = 0; j < cnt; ++j) {
            // the per-candidate jitter keeps the spacing non-uniform; perfectly
            // uniform candidates mirror cyclic root sets and stall the repulsion
            double jitter = std::fmod(static_cast<double>(j) * kIrrationalOffset, 1.0);
            double ang = 2.0 * M_PI * ((static_cast<double>(j) + kIrrationalOffset + 0.31 * jitter) /
                                           static_cast<double>(cnt) +
                                       kIrrationalOffset * static_cast<double>(e + 1));
            z.push_back(std::polar(rad, ang));
        }
    }
    return z;
}

} // namespace detail

// All complex roots by Aberth-Ehrlich iteration, polished with Newton steps.
// Callers wanting set semantics must pass the squarefree part; repeated roots
// produce overlapping certificates and raise ClusterDetected.
inline RootSet roots(const ComplexPolynomial& p, double tol = 1e-13, unsigned max_iters = 200) {
    if (p.is_zero() || p.degree() < 1) throw ConstantPolynomial("roots needs degree >= 1");
    const std::size_t deg = p.degree();
    RootSet rs;
    rs.source_degree = deg;

    // below (2D+1) eps the computed residual is Horner roundoff, not signal;
    // demanding more than that floor can never be satisfied
    const double eff_tol =
        std::max(tol, (2.0 * static_cast<double>(deg) + 1.0) * std::numeric_limits<double>::epsilon());
    ComplexPolynomial reversed;
    reversed.coeffs.assign(p.coeffs.rbegin(), p.coeffs.rend());
    while (!reversed.coeffs.empty() && reversed.coeffs.back() == Complex(0.0, 0.0))
        reversed.coeffs.pop_back();

    if (deg == 1) {
        rs.points = {-p.coeffs[0] / p.coeffs[1]};
    } else {
        const double R = cauchy_bound(p);
        std::vector<Complex> z = detail::initial_points(p);
        bool done = false;
        for (unsigned it = 0; it < max_iters && !done; ++it) {
            done = true;
            for (std::size_t i = 0; i < deg; ++i) {
                // a candidate thrown outside the root disk is pulled back
                double az = std::abs(z[i]);
                if (!std::isfinite(az) || az > R) {
                    z[i] = std::isfinite(az) && az > 0.0
                               ? z[i] * (R / az)
                               : std::polar(0.9 * R, 2.0 * M_PI * (static_cast<double>(i) / deg - kIrrationalOffset));
                    done = false;
                }
                auto ratio = detail::newton_ratio(p, reversed, z[i], eff_tol);
                if (ratio.converged) continue;
                done = false;
                Complex s(0.0, 0.0);
                for (std::size_t j = 0; j < deg; ++j)
                    if (j != i) s += 1.0 / (z[i] - z[j]);
                Complex denom = 1.0 - ratio.newton * s;
                Complex step = (denom != Complex(0.0, 0.0)) ? ratio.newton / denom : ratio.newton;
                if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
            }
        }
        if (!done) {
            for (std::size_t i = 0; i < deg; ++i)
                if (!detail::newton_ratio(p, reversed, z[i], eff_tol).converged)
                    throw NoConvergence("roots: " + std::to_string(max_iters) + " iterations exceeded");
        }
        rs.points = std::move(z);
    }

    // Newton polishing.
    for (auto& zi : rs.points) {
        for (int k = 0; k < 3; ++k) {
            auto ratio = detail::newton_ratio(p, reversed, zi, eff_tol);
            if (ratio.zero || ratio.derivative_vanished) break;
            zi -= ratio.newton;
        }
    }

    rs.radii.resize(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        auto ratio = detail::newton_ratio(p, reversed, rs.points[i], eff_tol);
        if (ratio.zero) {
            rs.radii[i] = 0.0;
            continue;
        }
        if (ratio.derivative_vanished)
            throw ClusterDetected("roots: derivative vanished at an approximate root");
        double rad = static_cast<double>(deg) * std::abs(ratio.newton);
        if (!std::isfinite(rad)) throw ClusterDetected("roots: unbounded error radius");
        rs.radii[i] = rad;
    }

    // Certificates must be pairwise disjoint relative to root separation.
    for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = i + 1; j < deg; ++j)
            if (rs.radii[i] + rs.radii[j] > std::abs(rs.points[i] - rs.points[j]))
                throw ClusterDetected("roots: overlapping certified disks (raise precision or accept set-level tolerance)");

    return rs;
}

inline RootSet roots(const IntPolynomial& p, double tol = 1e-13, unsigned max_iters = 200) {
    return roots(to_complex(p), tol, max_iters);
}

} // namespace eqdist
