#pragma once

// Annulus and sector counting statistics and the three finite-level
// inequalities they feed: the radial mean bound 2 |S| m(S) / log r, the
// angular mean bound |S| h(S), and the Erdos-Turan discrepancy inequality
// (Z - theta D / 2 pi)^2 <= 256 D log(L(Q)/sqrt|q_D q_0|).
//
// Sector membership is start-closed / end-open so that the counts of a full
// partition add up exactly; points whose certificate straddles a region
// boundary are counted by disk center and flagged.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "eqdist/ensemble.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/roots.hpp"

namespace eqdist {

struct AnnulusSpec {
    double r; // annulus 1/r <= |z| <= r
    explicit AnnulusSpec(double r_) : r(r_) {
        if (!(r > 1.0)) throw UsageError("AnnulusSpec: r must exceed 1");
    }
};

struct SectorSpec {
    double start_angle; // radians, taken mod 2 pi
    double theta;       // in [0, 2 pi]
    SectorSpec(double start, double theta_) : start_angle(start), theta(theta_) {
        if (!(theta >= 0.0 && theta <= 2.0 * M_PI + 1e-15))
            throw UsageError("SectorSpec: theta must lie in [0, 2 pi]");
    }
};

struct DiscrepancyReport {
    double statistic = 0.0;
    double bound = 0.0;
    double margin = 0.0; // bound - statistic
    bool holds = false;  // statistic <= bound
    long boundary_warnings = 0;
    std::map<std::string, double> params;
    std::string note;
};

inline DiscrepancyReport make_report(double statistic, double bound, long warnings = 0) {
    DiscrepancyReport rep;
    rep.statistic = statistic;
    rep.bound = bound;
    rep.margin = bound - statistic;
    rep.holds = statistic <= bound;
    rep.boundary_warnings = warnings;
    return rep;
}

namespace detail {

inline double mod_two_pi(double x) {
    double u = std::fmod(x, 2.0 * M_PI);
    if (u < 0.0) u += 2.0 * M_PI;
    if (u >= 2.0 * M_PI) u = 0.0;
    return u;
}

// nominal positional uncertainty for analytically constructed points
inline constexpr double kNominalRadius = 1e-12;

} // namespace detail

// Number of points with argument in [start, start + theta) mod 2 pi.
// A point whose angular uncertainty (radius / |z|) reaches a cut increments
// *boundary_hits; it is still counted by its center.
inline std::size_t sector_count(const std::vector<Complex>& points, const SectorSpec& sector,
                                const std::vector<double>* radii = nullptr,
                                long* boundary_hits = nullptr) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double u = detail::mod_two_pi(std::arg(points[i]) - sector.start_angle);
        if (u < sector.theta) ++count;
        if (boundary_hits) {
            double az = std::abs(points[i]);
            double slack = (radii ? (*radii)[i] : detail::kNominalRadius) / az;
            double d0 = std::min(u, 2.0 * M_PI - u);
            double d1 = std::abs(u - sector.theta);
            if (std::min(d0, d1) <= slack) ++(*boundary_hits);
        }
    }
    return count;
}

// Number of points outside the closed annulus 1/r <= |z| <= r.
inline std::size_t annulus_outside_count(const std::vector<Complex>& points, const AnnulusSpec& annulus,
                                         const std::vector<double>* radii = nullptr,
                                         long* boundary_hits = nullptr) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double az = std::abs(points[i]);
        if (az < 1.0 / annulus.r || az > annulus.r) ++count;
        if (boundary_hits) {
            double slack = radii ? (*radii)[i] : detail::kNominalRadius;
            if (std::abs(az - annulus.r) <= slack || std::abs(az - 1.0 / annulus.r) <= slack)
                ++(*boundary_hits);
        }
    }
    return count;
}

// Radial mean statistic: weighted mean of |set \ A_r| against 2 |S| m(S)/log r.
inline DiscrepancyReport radial_mean_stat(const OrbitEnsemble& ens, const AnnulusSpec& annulus) {
    double stat = 0.0;
    long warn = 0;
    for (std::size_t k = 0; k < ens.size(); ++k)
        stat += ens.weights[k] *
                static_cast<double>(annulus_outside_count(ens.conjugate_sets[k], annulus, nullptr, &warn));
    double bound = 2.0 * static_cast<double>(ens.card_S) * ens.heights.m_S / std::log(annulus.r);
    DiscrepancyReport rep = make_report(stat, bound, warn);
    rep.params["r"] = annulus.r;
    rep.params["card_S"] = static_cast<double>(ens.card_S);
    rep.params["m_S"] = ens.heights.m_S;
    rep.note = "m_S mode: " + ens.m_s_mode;
    return rep;
}

// Angular mean statistic: weighted mean of |count - theta |S| / 2 pi| against |S| h(S).
inline DiscrepancyReport angular_mean_stat(const OrbitEnsemble& ens, const SectorSpec& sector) {
    double expected = sector.theta * static_cast<double>(ens.card_S) / (2.0 * M_PI);
    double stat = 0.0;
    long warn = 0;
    for (std::size_t k = 0; k < ens.size(); ++k) {
        auto c = sector_count(ens.conjugate_sets[k], sector, nullptr, &warn);
        stat += ens.weights[k] * std::abs(static_cast<double>(c) - expected);
    }
    double bound = static_cast<double>(ens.card_S) * ens.heights.h_S;
    DiscrepancyReport rep = make_report(stat, bound, warn);
    rep.params["theta"] = sector.theta;
    rep.params["start_angle"] = sector.start_angle;
    rep.params["card_S"] = static_cast<double>(ens.card_S);
    rep.params["h_S"] = ens.heights.h_S;
    rep.params["statistic_per_card"] = stat / static_cast<double>(ens.card_S);
    rep.note = "m_S mode: " + ens.m_s_mode;
    return rep;
}

// Erdos-Turan inequality for the zero counting of a sector. Callers must
// strip powers of x first; both end coefficients have to be nonzero.
inline DiscrepancyReport erdos_turan_check(const ComplexPolynomial& q, const SectorSpec& sector,
                                           const RootSet* precomputed_roots = nullptr) {
    if (q.is_zero() || q.degree() < 1) throw ConstantPolynomial("erdos_turan_check needs degree >= 1");
    if (std::abs(q.coeffs.front()) == 0.0 || std::abs(q.coeffs.back()) == 0.0)
        throw VanishingEndCoefficient("erdos_turan_check: q_0 and q_D must be nonzero");

    const double D = static_cast<double>(q.degree());
    double length = 0.0;
    for (const auto& c : q.coeffs) length += std::abs(c);
    double end_product = std::abs(q.coeffs.front()) * std::abs(q.coeffs.back());

    RootSet local;
    const RootSet* rs = precomputed_roots;
    if (!rs) {
        local = roots(q);
        rs = &local;
    }
    long warn = 0;
    std::size_t z = sector_count(rs->points, sector, &rs->radii, &warn);
    double dev = static_cast<double>(z) - sector.theta * D / (2.0 * M_PI);
    double bound = 256.0 * D * std::log(length / std::sqrt(end_product));
    DiscrepancyReport rep = make_report(dev * dev, bound, warn);
    rep.params["degree"] = D;
    rep.params["length"] = length;
    rep.params["theta"] = sector.theta;
    rep.params["start_angle"] = sector.start_angle;
    rep.params["zero_count"] = static_cast<double>(z);
    return rep;
}

} // namespace eqdist
