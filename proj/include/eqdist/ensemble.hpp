#pragma once

// Orbit ensembles: finite weighted families of conjugate point sets modelling
// the embedding images of a set of algebraic numbers. Two constructions are
// built in -- the Galois-stable case (one set, weight 1) and the
// Kummer-cyclotomic family of n-th roots of 1 - zeta_m^a -- plus a JSON
// loader for externally supplied ensembles.

#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqdist/errors.hpp"
#include "eqdist/heights.hpp"
#include "eqdist/int_poly.hpp"
#include "eqdist/roots.hpp"

namespace eqdist {

struct OrbitEnsemble {
    std::vector<std::vector<Complex>> conjugate_sets;
    std::vector<double> weights; // positive, summing to 1
    long card_S = 0;
    HeightSummary heights;
    std::string label;
    std::string m_s_mode = "exact"; // "exact" | "bound"

    std::size_t size() const { return conjugate_sets.size(); }
};

inline void validate_ensemble(const OrbitEnsemble& e) {
    if (e.conjugate_sets.empty()) throw InvariantViolation("ensemble has no conjugate sets");
    if (e.card_S < 1) throw InvariantViolation("ensemble card_S must be positive");
    if (e.weights.size() != e.conjugate_sets.size())
        throw InvariantViolation("ensemble weights length mismatch");
    for (const auto& set : e.conjugate_sets) {
        if (set.size() != static_cast<std::size_t>(e.card_S))
            throw InvariantViolation("conjugate set cardinality mismatch");
        for (const auto& z : set)
            if (std::abs(z) == 0.0) throw InvariantViolation("conjugate set contains 0");
    }
    double ws = 0.0;
    for (double w : e.weights) {
        if (!(w > 0.0)) throw InvariantViolation("ensemble weights must be positive");
        ws += w;
    }
    if (std::abs(ws - 1.0) > 1e-12) throw InvariantViolation("ensemble weights must sum to 1");
}

// Full root set of a primitive squarefree polynomial: every embedding fixes
// the set, so a single conjugate set of weight 1 carries the whole mean.
inline OrbitEnsemble galois_stable_ensemble(const IntPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("galois_stable_ensemble of the zero polynomial");
    if (p.degree() < 1) throw ConstantPolynomial("galois_stable_ensemble needs degree >= 1");
    if (p[0] == 0) throw ZeroIsRoot("galois_stable_ensemble: p(0) = 0");
    OrbitEnsemble e;
    e.heights = mean_height(p); // raises NotPrimitive / NotSquarefree
    e.card_S = e.heights.card_S;
    RootSet rs = roots(p);
    e.conjugate_sets.push_back(rs.points);
    e.weights.push_back(1.0);
    e.label = "roots of " + p.to_string();
    validate_ensemble(e);
    return e;
}

// One conjugate set per residue a coprime to m: all n-th roots of
// gamma_a = 1 - e^{2 pi i a / m}, with uniform weights. Heights come from
// the n-th root relation h(gamma^{1/n}) = h(gamma)/n; h(1 - zeta_m) itself
// is evaluated through the closed-form measure
//   log M = sum_{gcd(a,m)=1} log+ (2 sin(pi a / m)),
// which equals the polynomial route through Phi_m(1 - x) (checked in the
// test suite for small m, where the integer composition is representable in
// doubles). With use_height_bound the shortcut h(1 - zeta_m) <= log 2 is
// used instead and the mode is recorded for every downstream report.
inline OrbitEnsemble kummer_ensemble(unsigned long m, unsigned long n, bool use_height_bound = false) {
    if (m < 3) throw UsageError("kummer_ensemble: m must be >= 3");
    if (n < 1) throw UsageError("kummer_ensemble: n must be >= 1");
    OrbitEnsemble e;
    e.card_S = static_cast<long>(n);
    e.label = "kummer(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")";

    unsigned long phi = 0;
    double log_measure = 0.0;
    for (unsigned long a = 1; a < m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        ++phi;
        double gamma_abs = 2.0 * std::sin(M_PI * static_cast<double>(a) / static_cast<double>(m));
        double gamma_arg = (2.0 * M_PI * static_cast<double>(a) / static_cast<double>(m) - M_PI) / 2.0;
        if (gamma_abs > 1.0) log_measure += std::log(gamma_abs);

        std::vector<Complex> set(n);
        double rho = std::pow(gamma_abs, 1.0 / static_cast<double>(n));
        for (unsigned long j = 0; j < n; ++j)
            set[j] = std::polar(rho, (gamma_arg + 2.0 * M_PI * static_cast<double>(j)) / static_cast<double>(n));
        e.conjugate_sets.push_back(std::move(set));
    }
    e.weights.assign(phi, 1.0 / static_cast<double>(phi));

    double h_gamma;
    if (use_height_bound) {
        h_gamma = M_LN2;
        e.m_s_mode = "bound";
        e.heights.mahler_log = static_cast<double>(phi) * M_LN2;
    } else {
        h_gamma = log_measure / static_cast<double>(phi);
        e.heights.mahler_log = log_measure;
    }
    e.heights.card_S = e.card_S;
    e.heights.m_S = h_gamma / static_cast<double>(n);
    e.heights.h_S = height_driver(e.card_S, e.heights.m_S);
    validate_ensemble(e);
    return e;
}

// JSON schema:
// { "label": text, "card_S": int, "m_S": real, "m_S_mode": "exact"|"bound",
//   "sets": [ [ {"re": real, "im": real}, ... ], ... ], "weights": [real, ...] }
inline OrbitEnsemble ensemble_from_json(const nlohmann::json& j) {
    OrbitEnsemble e;
    try {
        e.label = j.at("label").get<std::string>();
        e.card_S = j.at("card_S").get<long>();
        e.heights.m_S = j.at("m_S").get<double>();
        e.m_s_mode = j.value("m_S_mode", std::string("exact"));
        for (const auto& set : j.at("sets")) {
            std::vector<Complex> pts;
            for (const auto& pt : set)
                pts.emplace_back(pt.at("re").get<double>(), pt.at("im").get<double>());
            e.conjugate_sets.push_back(std::move(pts));
        }
        e.weights = j.at("weights").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& ex) {
        throw SchemaError(std::string("ensemble JSON: ") + ex.what());
    }
    if (e.m_s_mode != "exact" && e.m_s_mode != "bound")
        throw SchemaError("ensemble JSON: m_S_mode must be \"exact\" or \"bound\"");
    if (e.heights.m_S < 0.0) throw SchemaError("ensemble JSON: m_S must be non-negative");
    e.heights.card_S = e.card_S;
    e.heights.h_S = height_driver(e.card_S, e.heights.m_S);
    e.heights.mahler_log = e.heights.m_S * static_cast<double>(e.card_S);
    validate_ensemble(e);
    return e;
}

inline OrbitEnsemble load_ensemble(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open ensemble file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw SchemaError(std::string("ensemble JSON parse: ") + ex.what());
    }
    return ensemble_from_json(j);
}

} // namespace eqdist
