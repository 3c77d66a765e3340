#pragma once

// Command runner behind the CLI: builds ensembles, executes the requested
// checks, and writes one deterministic JSON report per run (plus optional
// CSVs). Exit status: 0 when every bound holds, 1 when a bound fails or an
// invariant is violated, 2 on usage errors.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "eqdist/discrepancy.hpp"
#include "eqdist/ensemble.hpp"
#include "eqdist/equidist.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/heights.hpp"
#include "eqdist/int_poly.hpp"
#include "eqdist/lattice.hpp"
#include "eqdist/parallel.hpp"
#include "eqdist/poly_expr.hpp"
#include "eqdist/roots.hpp"
#include "eqdist/serialize.hpp"

namespace eqdist {

struct RunConfig {
    std::string command; // analyze | et-fuzz | bound-check | select | auxpoly | family
    std::string poly_expr;
    std::string ensemble_path;
    std::string family; // "kummer"
    unsigned long m = 0;
    unsigned long n = 1;
    std::string m_s_mode = "exact";
    double r = 1.5;
    int N = 0; // 0 resolves via the h_S^{-1/4} rule
    double eps = 0.25;
    long degK = 1;
    double theta = M_PI / 2.0;
    double start_angle = 0.5;
    unsigned long seed = 0;
    std::size_t nodes = 4096;
    double tol = 1e-13;
    std::size_t L = 0; // 0 = canonical choice
    long card_s = 0;
    double m_s = 0.0;
    std::size_t count = 1000;
    std::size_t degree = 100;
    std::size_t sectors = 16;
    std::string out_path; // empty = stdout
    std::string csv_dir;
};

namespace detail {

inline std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

struct PreparedPoly {
    IntPolynomial poly; // primitive, squarefree
    bool reduced = false;
};

inline PreparedPoly prepare_poly(const std::string& expr) {
    IntPolynomial p = parse_poly(expr);
    if (p.is_zero()) throw UsageError("--poly: the zero polynomial is not allowed");
    IntPolynomial sf = squarefree_part(p);
    PreparedPoly out{sf, sf != p};
    return out;
}

inline std::vector<unsigned long> coprime_residues(unsigned long m) {
    std::vector<unsigned long> out;
    for (unsigned long a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1) out.push_back(a);
    return out;
}

} // namespace detail

class Runner {
  public:
    explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)) {}

    int run() {
        try {
            report_["version"] = "report_v1";
            report_["command"] = cfg_.command;
            report_["timestamp"] = detail::iso_timestamp();
            echo_params();
            if (cfg_.command == "analyze")
                cmd_analyze();
            else if (cfg_.command == "et-fuzz")
                cmd_et_fuzz();
            else if (cfg_.command == "bound-check")
                cmd_bound_check();
            else if (cfg_.command == "select")
                cmd_select();
            else if (cfg_.command == "auxpoly")
                cmd_auxpoly();
            else if (cfg_.command == "family")
                cmd_family();
            else
                throw UsageError("unknown command: " + cfg_.command);
        } catch (const UsageError& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        report_["holds_all"] = failed_.empty();
        emit();
        if (!failed_.empty()) {
            std::cerr << "violated bounds:";
            for (const auto& name : failed_) std::cerr << ' ' << name;
            std::cerr << "\n";
            return 1;
        }
        return 0;
    }

  private:
    void echo_params() {
        ordered_json p;
        p["poly"] = cfg_.poly_expr;
        p["ensemble"] = cfg_.ensemble_path;
        p["family"] = cfg_.family;
        p["m"] = cfg_.m;
        p["n"] = cfg_.n;
        p["m_S_mode"] = cfg_.m_s_mode;
        p["r"] = cfg_.r;
        p["N"] = cfg_.N == 0 ? ordered_json("auto") : ordered_json(cfg_.N);
        p["eps"] = cfg_.eps;
        p["degK"] = cfg_.degK;
        p["theta"] = cfg_.theta;
        p["start_angle"] = cfg_.start_angle;
        p["seed"] = cfg_.seed;
        p["nodes"] = cfg_.nodes;
        p["tol"] = cfg_.tol;
        p["L"] = cfg_.L;
        p["card_s"] = cfg_.card_s;
        p["m_s"] = cfg_.m_s;
        p["count"] = cfg_.count;
        p["degree"] = cfg_.degree;
        p["sectors"] = cfg_.sectors;
        report_["params"] = std::move(p);
    }

    OrbitEnsemble make_ensemble() {
        if (!cfg_.family.empty()) {
            if (cfg_.family != "kummer") throw UsageError("unknown family: " + cfg_.family);
            if (cfg_.m < 3) throw UsageError("family kummer requires --m >= 3");
            return kummer_ensemble(cfg_.m, cfg_.n, cfg_.m_s_mode == "bound");
        }
        if (!cfg_.ensemble_path.empty()) return load_ensemble(cfg_.ensemble_path);
        if (!cfg_.poly_expr.empty()) {
            auto prep = detail::prepare_poly(cfg_.poly_expr);
            if (prep.reduced) report_["poly_note"] = "input reduced to its primitive squarefree part";
            report_["poly_canonical"] = poly_to_json(prep.poly);
            return galois_stable_ensemble(prep.poly);
        }
        throw UsageError("need one of --poly, --ensemble or --family");
    }

    int resolve_partition(const OrbitEnsemble& ens) {
        return cfg_.N > 0 ? cfg_.N : default_partition_count(ens.heights.h_S);
    }

    void record(const std::string& name, const DiscrepancyReport& rep) {
        report_[name] = report_to_json(rep);
        if (!rep.holds) failed_.push_back(name);
    }

    void cmd_analyze() {
        OrbitEnsemble ens = make_ensemble();
        report_["label"] = ens.label;
        report_["heights"] = height_summary_to_json(ens.heights);
        int N = resolve_partition(ens);
        report_["resolved_N"] = N;

        record("radial", radial_mean_stat(ens, AnnulusSpec(cfg_.r)));
        record("angular", angular_mean_stat(ens, SectorSpec(cfg_.start_angle, cfg_.theta)));

        if (!cfg_.poly_expr.empty()) {
            auto prep = detail::prepare_poly(cfg_.poly_expr);
            if (prep.poly[0] != 0 && prep.poly.degree() >= 1) {
                RootSet rs = roots(to_complex(prep.poly), cfg_.tol);
                record("erdos_turan",
                       erdos_turan_check(to_complex(prep.poly), SectorSpec(cfg_.start_angle, cfg_.theta), &rs));
                write_csv("roots.csv", rootset_to_csv(rs));
            }
        }

        ordered_json integral_reports = ordered_json::array();
        bool integral_failed = false;
        for (const auto& fn : test_function_library(cfg_.r)) {
            DiscrepancyReport rep = mean_integral_check(ens, fn, cfg_.r, N, cfg_.nodes);
            if (!rep.holds) integral_failed = true;
            ordered_json jr = report_to_json(rep);
            jr["function"] = fn.label;
            integral_reports.push_back(std::move(jr));
        }
        report_["mean_integral_checks"] = std::move(integral_reports);
        if (integral_failed) failed_.push_back("mean_integral_checks");

        write_cell_csv(ens, N);
    }

    void cmd_et_fuzz() {
        if (cfg_.count == 0 || cfg_.degree < 1) throw UsageError("et-fuzz needs --count >= 1, --degree >= 1");
        struct PolyOutcome {
            long violations = 0;
            double min_margin = std::numeric_limits<double>::infinity();
            double max_statistic = 0.0;
            std::string error;
        };
        // one seeded generator per polynomial keeps the sweep order-independent
        std::vector<PolyOutcome> outcomes(cfg_.count);
        parallel_for(cfg_.count, [&](std::size_t idx) {
            std::mt19937_64 rng(cfg_.seed * 0x9e3779b97f4a7c15ULL + idx);
            std::vector<Complex> coeffs(cfg_.degree + 1);
            for (auto& c : coeffs) c = Complex((rng() & 1) ? 1.0 : -1.0, 0.0);
            ComplexPolynomial q(std::move(coeffs));
            PolyOutcome& out = outcomes[idx];
            try {
                RootSet rs = roots(q, cfg_.tol);
                for (std::size_t k = 0; k < cfg_.sectors; ++k) {
                    double start = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(cfg_.sectors) + 0.37;
                    DiscrepancyReport rep = erdos_turan_check(q, SectorSpec(start, cfg_.theta), &rs);
                    if (!rep.holds) ++out.violations;
                    out.min_margin = std::min(out.min_margin, rep.margin);
                    out.max_statistic = std::max(out.max_statistic, rep.statistic);
                }
            } catch (const Error& e) {
                out.error = e.what();
            }
        }, 4);

        long violations = 0, errors = 0;
        double min_margin = std::numeric_limits<double>::infinity(), max_stat = 0.0;
        for (const auto& o : outcomes) {
            if (!o.error.empty()) {
                ++errors;
                continue;
            }
            violations += o.violations;
            min_margin = std::min(min_margin, o.min_margin);
            max_stat = std::max(max_stat, o.max_statistic);
        }
        ordered_json j;
        j["polynomials"] = cfg_.count;
        j["sector_starts"] = cfg_.sectors;
        j["checks"] = cfg_.count * cfg_.sectors;
        j["violations"] = violations;
        j["root_failures"] = errors;
        j["min_margin"] = min_margin;
        j["max_statistic"] = max_stat;
        report_["et_fuzz"] = std::move(j);
        if (violations > 0) failed_.push_back("erdos_turan_fuzz");
        if (errors > 0) failed_.push_back("root_finding");
    }

    void cmd_bound_check() {
        if (cfg_.card_s < 1) throw UsageError("bound-check needs --card-s >= 1");
        if (cfg_.m_s < 0.0) throw UsageError("bound-check needs --m-s >= 0");
        if (cfg_.L == 0 || static_cast<long>(cfg_.L) <= cfg_.card_s)
            throw UsageError("bound-check needs --L > card_s");
        ordered_json j;
        j["card_S"] = cfg_.card_s;
        j["m_S"] = cfg_.m_s;
        j["L"] = cfg_.L;
        j["siegel_bound"] = siegel_bound(cfg_.card_s, cfg_.m_s, static_cast<long>(cfg_.L));
        double h = height_driver(cfg_.card_s, cfg_.m_s);
        j["h_S"] = h;
        j["radial_bound"] = 2.0 * static_cast<double>(cfg_.card_s) * cfg_.m_s / std::log(cfg_.r);
        j["angular_bound"] = static_cast<double>(cfg_.card_s) * h;
        report_["bounds"] = std::move(j);
    }

    void cmd_select() {
        OrbitEnsemble ens = make_ensemble();
        report_["label"] = ens.label;
        report_["heights"] = height_summary_to_json(ens.heights);
        int N = resolve_partition(ens);
        report_["resolved_N"] = N;
        SelectionResult sel = select_embeddings(ens, cfg_.r, N, cfg_.eps, cfg_.degK);
        record("selection", sel.report);
        attach_selection(ens, sel);
    }

    void cmd_auxpoly() {
        if (cfg_.poly_expr.empty()) throw UsageError("auxpoly needs --poly");
        auto prep = detail::prepare_poly(cfg_.poly_expr);
        AuxPolyReport aux = angular_via_auxpoly(prep.poly, SectorSpec(cfg_.start_angle, cfg_.theta), cfg_.L);
        report_["poly_canonical"] = poly_to_json(prep.poly);
        report_["aux_polynomial"] = poly_to_json(aux.aux.F);
        report_["L"] = aux.L;
        report_["achieved_height"] = aux.aux.achieved_height;
        report_["siegel_rhs"] = aux.aux.siegel_rhs;
        record("erdos_turan", aux.erdos_turan);
        record("pipeline", aux.pipeline);
    }

    void cmd_family() {
        if (cfg_.family.empty()) throw UsageError("family command needs a family name (kummer)");
        OrbitEnsemble ens = make_ensemble();
        report_["label"] = ens.label;
        report_["heights"] = height_summary_to_json(ens.heights);
        int N = resolve_partition(ens);
        report_["resolved_N"] = N;

        record("radial", radial_mean_stat(ens, AnnulusSpec(cfg_.r)));
        record("angular", angular_mean_stat(ens, SectorSpec(cfg_.start_angle, cfg_.theta)));
        SelectionResult sel = select_embeddings(ens, cfg_.r, N, cfg_.eps, cfg_.degK);
        record("selection", sel.report);
        attach_selection(ens, sel);
        if (!cfg_.csv_dir.empty()) {
            std::filesystem::create_directories(cfg_.csv_dir);
            std::ofstream out(std::filesystem::path(cfg_.csv_dir) / "ensemble.json");
            out << ensemble_to_json(ens).dump(2) << '\n';
        }
        write_cell_csv(ens, N);
    }

    void attach_selection(const OrbitEnsemble& ens, const SelectionResult& sel) {
        report_["selected"] = sel.selected;
        report_["failed_radial"] = sel.failed_radial;
        report_["failed_angular"] = sel.failed_angular;
        AnnulusSpec annulus(cfg_.r);
        std::vector<std::size_t> outside(ens.size());
        for (std::size_t k = 0; k < ens.size(); ++k)
            outside[k] = annulus_outside_count(ens.conjugate_sets[k], annulus);
        report_["outside_counts"] = outside;
        if (!cfg_.family.empty() && cfg_.family == "kummer") {
            auto residues = detail::coprime_residues(cfg_.m);
            report_["residues"] = residues;
            std::vector<unsigned long> failing;
            for (std::size_t k : sel.failed_radial) failing.push_back(residues[k]);
            report_["failed_radial_residues"] = failing;
        }
    }

    void write_cell_csv(const OrbitEnsemble& ens, int N) {
        if (cfg_.csv_dir.empty()) return;
        std::filesystem::create_directories(cfg_.csv_dir);
        PartitionSpec part = choose_offset(ens, N);
        std::ostringstream csv;
        csv.precision(17);
        csv << "cell,count,expected,deviation\n";
        double expected = static_cast<double>(ens.card_S) / static_cast<double>(N);
        for (int j = 0; j < N; ++j) {
            double mean_count = 0.0;
            for (std::size_t k = 0; k < ens.size(); ++k)
                mean_count += ens.weights[k] *
                              static_cast<double>(sector_count(ens.conjugate_sets[k], partition_cell(part, j)));
            csv << j << ',' << mean_count << ',' << expected << ',' << (mean_count - expected) << '\n';
        }
        std::ofstream out(std::filesystem::path(cfg_.csv_dir) / "cells.csv");
        out << csv.str();
    }

    void write_csv(const std::string& name, const std::string& content) {
        if (cfg_.csv_dir.empty()) return;
        std::filesystem::create_directories(cfg_.csv_dir);
        std::ofstream out(std::filesystem::path(cfg_.csv_dir) / name);
        out << content;
    }

    void emit() {
        std::string text = report_.dump(2) + "\n";
        if (cfg_.out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg_.out_path);
            if (!out) throw Error("cannot write report to " + cfg_.out_path);
            out << text;
        }
    }

    RunConfig cfg_;
    ordered_json report_;
    std::vector<std::string> failed_;
};

inline int run(const RunConfig& cfg) { return Runner(cfg).run(); }

} // namespace eqdist
