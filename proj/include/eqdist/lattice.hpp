#pragma once

// Lattice search for low-height integer multiples of a polynomial, and the
// auxiliary-polynomial pipeline that feeds the result into the Erdos-Turan
// checker. The lattice of multiples of p with degree < L is spanned by the
// coefficient vectors of x^i p; an all-integer LLL reduction (Gram
// determinants d_i and scaled Gram-Schmidt numerators lambda_{i,j}, so every
// division below is exact) finds a short multiple.

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eqdist/discrepancy.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/heights.hpp"
#include "eqdist/int_poly.hpp"

namespace eqdist {

struct LatticeBasis {
    std::vector<std::vector<mpz_class>> rows; // common dimension, independent over Q
};

// Coefficient vectors of x^i p for i = 0 .. L-1-deg p, each padded to length L.
inline LatticeBasis multiples_lattice(const IntPolynomial& p, std::size_t L) {
    if (p.is_zero()) throw ZeroPolynomial("multiples_lattice: zero polynomial");
    const std::size_t d = p.degree();
    if (d < 1 || L <= d) throw DegreeTooSmall("multiples_lattice: require L > deg p >= 1");
    LatticeBasis basis;
    for (std::size_t shift = 0; shift + d < L; ++shift) {
        std::vector<mpz_class> row(L, mpz_class(0));
        for (std::size_t i = 0; i <= d; ++i) row[shift + i] = p[i];
        basis.rows.push_back(std::move(row));
    }
    return basis;
}

namespace detail {

inline mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
    return s;
}

// round(a / b) for b > 0, ties toward +infinity
inline mpz_class round_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q, num = 2 * a + b, den = 2 * b;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

} // namespace detail

// All-integer LLL with Lovasz parameter delta (default 0.99). Always
// terminates; the returned rows span the same lattice, size-reduced and with
// a short first vector.
inline LatticeBasis lll_reduce(LatticeBasis basis, double delta = 0.99) {
    if (!(delta > 0.25 && delta < 1.0)) throw UsageError("lll_reduce: delta must lie in (1/4, 1)");
    auto& b = basis.rows;
    const std::size_t n = b.size();
    if (n <= 1) return basis;

    // delta as an exact fraction num/den
    const long den = 1000000;
    const long num = static_cast<long>(delta * static_cast<double>(den));

    // Gram determinants d[0..n] (d[0] = 1) and lambda[i][j] = mu_{i,j} d[j+1]
    std::vector<mpz_class> d(n + 1);
    d[0] = 1;
    std::vector<std::vector<mpz_class>> lam(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            mpz_class u = detail::dot(b[i], b[j]);
            for (std::size_t k = 0; k < j; ++k) {
                u = d[k + 1] * u - lam[i][k] * lam[j][k];
                mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[k].get_mpz_t());
            }
            if (j < i)
                lam[i][j] = u;
            else
                d[i + 1] = u;
        }
        if (d[i + 1] <= 0) throw InvariantViolation("lll_reduce: basis rows are dependent");
    }

    auto reduce = [&](std::size_t k, std::size_t l) {
        mpz_class two_lam = 2 * lam[k][l];
        if (abs(two_lam) > d[l + 1]) {
            mpz_class q = detail::round_div(lam[k][l], d[l + 1]);
            for (std::size_t i = 0; i < b[k].size(); ++i)
                mpz_submul(b[k][i].get_mpz_t(), q.get_mpz_t(), b[l][i].get_mpz_t());
            lam[k][l] -= q * d[l + 1];
            for (std::size_t i = 0; i < l; ++i)
                mpz_submul(lam[k][i].get_mpz_t(), q.get_mpz_t(), lam[l][i].get_mpz_t());
        }
    };

    std::size_t k = 1;
    while (k < n) {
        reduce(k, k - 1);
        // Lovasz: den * d[k+1] d[k-1] >= num * d[k]^2 - den * lambda^2
        mpz_class lhs = den * d[k + 1] * d[k - 1];
        mpz_class rhs = num * d[k] * d[k] - den * lam[k][k - 1] * lam[k][k - 1];
        if (lhs < rhs) {
            std::swap(b[k], b[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            mpz_class lam_kk = lam[k][k - 1];
            mpz_class B = d[k - 1] * d[k + 1] + lam_kk * lam_kk;
            mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d[k].get_mpz_t());
            for (std::size_t i = k + 1; i < n; ++i) {
                mpz_class t = lam[i][k];
                lam[i][k] = d[k + 1] * lam[i][k - 1] - lam_kk * t;
                mpz_divexact(lam[i][k].get_mpz_t(), lam[i][k].get_mpz_t(), d[k].get_mpz_t());
                lam[i][k - 1] = B * t + lam_kk * lam[i][k];
                mpz_divexact(lam[i][k - 1].get_mpz_t(), lam[i][k - 1].get_mpz_t(), d[k + 1].get_mpz_t());
            }
            d[k] = B;
            k = (k > 1) ? k - 1 : 1;
        } else {
            for (std::size_t l = k; l-- > 1;) reduce(k, l - 1);
            // the loop above runs l-1 = k-2 .. 0
            ++k;
        }
    }
    return basis;
}

struct ShortMultiple {
    IntPolynomial F;        // multiple of p, trailing powers of x stripped, positive lead
    double achieved_height; // log max|f_i| - log content(F)
    double siegel_rhs;      // absolute-lemma budget at the same (card, m_S, L); advisory
};

// Shortest reduced-basis vector of the multiples lattice, as a polynomial.
// p must be primitive, squarefree and nonzero at 0 so stripping powers of x
// preserves divisibility; divisibility of the result is re-verified exactly.
inline ShortMultiple short_multiple(const IntPolynomial& p, std::size_t L, double delta = 0.99) {
    if (p.is_zero()) throw ZeroPolynomial("short_multiple: zero polynomial");
    if (p.degree() < 1 || L <= p.degree()) throw DegreeTooSmall("short_multiple: require L > deg p >= 1");
    if (p[0] == 0) throw ZeroIsRoot("short_multiple: p(0) = 0");
    if (poly_content(p) != 1) throw NotPrimitive("short_multiple: input must be primitive");
    if (!is_squarefree(p)) throw NotSquarefree("short_multiple: input must be squarefree");

    LatticeBasis reduced = lll_reduce(multiples_lattice(p, L), delta);
    const std::vector<mpz_class>* best = nullptr;
    mpz_class best_norm;
    for (const auto& row : reduced.rows) {
        mpz_class norm = detail::dot(row, row);
        if (!best || norm < best_norm) {
            best = &row;
            best_norm = norm;
        }
    }

    IntPolynomial F{std::vector<mpz_class>(*best)};
    std::size_t strip = 0;
    while (F[strip] == 0) ++strip; // F != 0, so this terminates
    if (strip > 0) {
        std::vector<mpz_class> c(F.coeffs().begin() + static_cast<long>(strip), F.coeffs().end());
        F = IntPolynomial(std::move(c));
    }
    if (F.lead() < 0) F = poly_neg(F);
    (void)poly_divexact(F, p); // raises NotDivisible on an internal inconsistency

    mpz_class max_abs = 0;
    for (const auto& c : F.coeffs()) {
        mpz_class a = abs(c);
        if (a > max_abs) max_abs = a;
    }
    ShortMultiple out;
    out.F = std::move(F);
    out.achieved_height = log_abs(max_abs) - log_abs(poly_content(out.F));
    out.siegel_rhs = siegel_bound(static_cast<long>(p.degree()), mean_height(p).m_S,
                                  static_cast<long>(L));
    return out;
}

struct AuxPolyReport {
    ShortMultiple aux;
    std::size_t L = 0;
    DiscrepancyReport erdos_turan; // check on the auxiliary polynomial itself
    DiscrepancyReport pipeline;    // triangle-inequality-adjusted discrepancy for p
};

// Auxiliary-polynomial pipeline for the sector discrepancy of the roots of p:
// choose L = max(deg p + 1, floor((1 + h_S/6) card)), find a short multiple F,
// run the Erdos-Turan check on F and transfer it back to p through
//   |Z_p - theta card / 2pi|
//     <= (deg F - deg p) + |Z_F - theta deg F / 2pi| + theta (deg F - deg p) / 2pi,
// with the middle term replaced by the square root of the Erdos-Turan budget.
inline AuxPolyReport angular_via_auxpoly(const IntPolynomial& p, const SectorSpec& sector,
                                         std::size_t L_override = 0) {
    if (p.is_zero()) throw ZeroPolynomial("angular_via_auxpoly: zero polynomial");
    if (p.degree() < 2) throw DegreeTooSmall("angular_via_auxpoly: require deg p >= 2");
    HeightSummary hs = mean_height(p);
    const double card = static_cast<double>(p.degree());

    AuxPolyReport out;
    out.L = L_override ? L_override
                       : std::max(p.degree() + 1,
                                  static_cast<std::size_t>(std::floor((1.0 + hs.h_S / 6.0) * card)));
    out.aux = short_multiple(p, out.L);

    RootSet f_roots = roots(out.aux.F);
    out.erdos_turan = erdos_turan_check(to_complex(out.aux.F), sector, &f_roots);

    RootSet p_roots = roots(p);
    long warn = 0;
    std::size_t zp = sector_count(p_roots.points, sector, &p_roots.radii, &warn);
    double deg_gap = static_cast<double>(out.aux.F.degree()) - card;
    double stat = std::abs(static_cast<double>(zp) - sector.theta * card / (2.0 * M_PI));
    double bound = deg_gap + std::sqrt(out.erdos_turan.bound) + sector.theta * deg_gap / (2.0 * M_PI);
    out.pipeline = make_report(stat, bound, warn + out.erdos_turan.boundary_warnings);
    out.pipeline.params["L"] = static_cast<double>(out.L);
    out.pipeline.params["deg_F"] = static_cast<double>(out.aux.F.degree());
    out.pipeline.params["theta"] = sector.theta;
    out.pipeline.params["achieved_height"] = out.aux.achieved_height;
    out.pipeline.params["siegel_rhs"] = out.aux.siegel_rhs;
    out.pipeline.note = "L floored at deg p + 1 when the canonical (1 + h_S/6) card falls below it";
    return out;
}

} // namespace eqdist
