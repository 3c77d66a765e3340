#pragma once

// JSON and CSV encodings. Polynomials serialize as arrays of decimal strings
// (constant term first) so arbitrary-precision coefficients survive the round
// trip; root sets go to CSV with columns re, im, radius.

#include <sstream>
#include <string>

#include "json.hpp"

#include "eqdist/discrepancy.hpp"
#include "eqdist/ensemble.hpp"
#include "eqdist/heights.hpp"
#include "eqdist/int_poly.hpp"
#include "eqdist/roots.hpp"

namespace eqdist {

using ordered_json = nlohmann::ordered_json;

inline ordered_json poly_to_json(const IntPolynomial& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
    return arr;
}

inline IntPolynomial poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw SchemaError("polynomial JSON must be an array of decimal strings");
    std::vector<mpz_class> coeffs;
    for (const auto& v : j) {
        if (!v.is_string()) throw SchemaError("polynomial coefficients must be decimal strings");
        try {
            coeffs.emplace_back(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw SchemaError("bad decimal coefficient: " + v.get<std::string>());
        }
    }
    return IntPolynomial(std::move(coeffs));
}

inline ordered_json height_summary_to_json(const HeightSummary& h) {
    ordered_json j;
    j["card_S"] = h.card_S;
    j["m_S"] = h.m_S;
    j["h_S"] = h.h_S;
    j["mahler_log"] = h.mahler_log;
    j["warnings"] = h.warnings;
    return j;
}

inline ordered_json report_to_json(const DiscrepancyReport& r) {
    ordered_json j;
    j["statistic"] = r.statistic;
    j["bound"] = r.bound;
    j["margin"] = r.margin;
    j["holds"] = r.holds;
    j["boundary_warnings"] = r.boundary_warnings;
    ordered_json params;
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline ordered_json ensemble_to_json(const OrbitEnsemble& e) {
    ordered_json j;
    j["label"] = e.label;
    j["card_S"] = e.card_S;
    j["m_S"] = e.heights.m_S;
    j["m_S_mode"] = e.m_s_mode;
    ordered_json sets = ordered_json::array();
    for (const auto& set : e.conjugate_sets) {
        ordered_json pts = ordered_json::array();
        for (const auto& z : set) pts.push_back({{"re", z.real()}, {"im", z.imag()}});
        sets.push_back(std::move(pts));
    }
    j["sets"] = std::move(sets);
    j["weights"] = e.weights;
    return j;
}

inline std::string rootset_to_csv(const RootSet& rs) {
    std::ostringstream out;
    out.precision(17);
    out << "re,im,radius\n";
    for (std::size_t i = 0; i < rs.points.size(); ++i)
        out << rs.points[i].real() << ',' << rs.points[i].imag() << ',' << rs.radii[i] << '\n';
    return out.str();
}

} // namespace eqdist
