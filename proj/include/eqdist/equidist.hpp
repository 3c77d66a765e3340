#pragma once

// Test-function machinery for equidistribution around the unit circle:
// integrals against empirical measures and the circle's Haar measure, the
// rotated sector partition with a generic offset, per-cell window estimates,
// the mean integral-comparison bound, and the embedding-selection procedure
// with its radial and angular thresholds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "eqdist/discrepancy.hpp"
#include "eqdist/ensemble.hpp"
#include "eqdist/errors.hpp"

namespace eqdist {

// A test function together with analytically declared constants on the
// annulus A_r: a Lipschitz constant and a sup norm that must be true upper
// bounds (the bounds below use them as such). Outside A_r the function may
// be unbounded and discontinuous.
struct TestFunction {
    std::function<Complex(Complex)> f;
    double lip_r = 0.0;
    double sup_r = 0.0;
    std::string label;
};

struct PartitionSpec {
    int N = 2;           // number of sector cells, each of angle 2 pi / N
    double offset_x = 0; // cut positions are offset_x + 2 pi j / N
};

// Canonical partition size max(2, floor(h_S^{-1/4})).
inline int default_partition_count(double h_S) {
    if (!(h_S > 0.0)) return 2;
    return std::max(2, static_cast<int>(std::floor(std::pow(h_S, -0.25))));
}

// Haar integral of f over the unit circle: periodic trapezoid quadrature at
// `nodes` equally spaced parameters with a fixed irrational offset. Exact for
// trigonometric polynomials of degree < nodes.
inline Complex circle_integral(const TestFunction& fn, std::size_t nodes) {
    if (nodes < 16) throw UsageError("circle_integral: nodes must be >= 16");
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < nodes; ++j) {
        double t = (static_cast<double>(j) + kIrrationalOffset) / static_cast<double>(nodes);
        acc += fn.f(std::polar(1.0, 2.0 * M_PI * t));
    }
    return acc / static_cast<double>(nodes);
}

// Integral of f against the discrete probability measure of a point set.
inline Complex measure_integral(const TestFunction& fn, const std::vector<Complex>& points) {
    if (points.empty()) throw UsageError("measure_integral: empty point set");
    Complex acc(0.0, 0.0);
    for (const auto& z : points) acc += fn.f(z);
    return acc / static_cast<double>(points.size());
}

// Offset x such that no point argument of the ensemble comes within 1e-9 of
// any cut x + 2 pi j / N: collapse all arguments mod 2 pi / N and take the
// midpoint of the largest gap.
inline PartitionSpec choose_offset(const OrbitEnsemble& ens, int N) {
    if (N < 2) throw UsageError("choose_offset: N must be >= 2");
    const double cell = 2.0 * M_PI / static_cast<double>(N);
    std::vector<double> collapsed;
    for (const auto& set : ens.conjugate_sets)
        for (const auto& z : set) collapsed.push_back(std::fmod(detail::mod_two_pi(std::arg(z)), cell));
    std::sort(collapsed.begin(), collapsed.end());
    double best_gap = -1.0, best_mid = 0.0;
    for (std::size_t i = 0; i < collapsed.size(); ++i) {
        double lo = collapsed[i];
        double hi = (i + 1 < collapsed.size()) ? collapsed[i + 1] : collapsed.front() + cell;
        if (hi - lo > best_gap) {
            best_gap = hi - lo;
            best_mid = std::fmod(0.5 * (lo + hi), cell);
        }
    }
    if (best_gap < 2e-9) throw NoGap("choose_offset: largest angular gap below 2e-9");
    return PartitionSpec{N, best_mid};
}

inline SectorSpec partition_cell(const PartitionSpec& part, int j) {
    double cell = 2.0 * M_PI / static_cast<double>(part.N);
    return SectorSpec(part.offset_x + cell * static_cast<double>(j), cell);
}

// Window estimate on V = {rho e^{2 pi i t} : rho in [1/r, r], t in [t0, t1]}:
// the mean of f over T (restricted to V, normalized by |T|) against the arc
// integral, bounded by 2 r pi theta^2 Lip + sup * |frac(T in V) - theta|.
// f is taken real (real part) on V; window length must lie in (0, 1/2].
inline DiscrepancyReport window_estimate_check(const TestFunction& fn, const std::vector<Complex>& points,
                                       double r, double t0, double t1) {
    if (!(r > 1.0)) throw UsageError("window_estimate_check: r must exceed 1");
    if (points.empty()) throw UsageError("window_estimate_check: empty point set");
    const double theta = t1 - t0;
    if (!(theta > 0.0 && theta <= 0.5)) throw BadWindow("window_estimate_check: t1 - t0 must lie in (0, 1/2]");

    double sum_in = 0.0;
    std::size_t count_in = 0;
    long warn = 0;
    for (const auto& z : points) {
        double az = std::abs(z);
        double u = std::arg(z) / (2.0 * M_PI) - t0;
        u -= std::floor(u); // reduce mod 1
        bool in_v = (az >= 1.0 / r && az <= r && u <= theta);
        if (in_v) {
            sum_in += fn.f(z).real();
            ++count_in;
        }
        if (std::min(u, std::abs(u - theta)) * 2.0 * M_PI <= detail::kNominalRadius ||
            std::abs(az - r) <= detail::kNominalRadius || std::abs(az - 1.0 / r) <= detail::kNominalRadius)
            ++warn;
    }

    // arc integral of Re f over [t0, t1] by composite Simpson
    const std::size_t panels = 2048;
    double h = theta / static_cast<double>(panels);
    double integral = 0.0;
    auto g = [&](double t) { return fn.f(std::polar(1.0, 2.0 * M_PI * t)).real(); };
    for (std::size_t i = 0; i < panels; ++i) {
        double a = t0 + h * static_cast<double>(i);
        integral += (h / 6.0) * (g(a) + 4.0 * g(a + 0.5 * h) + g(a + h));
    }

    double frac = static_cast<double>(count_in) / static_cast<double>(points.size());
    double stat = std::abs(sum_in / static_cast<double>(points.size()) - integral);
    double bound = 2.0 * r * M_PI * theta * theta * fn.lip_r + fn.sup_r * std::abs(frac - theta);
    DiscrepancyReport rep = make_report(stat, bound, warn);
    rep.params["r"] = r;
    rep.params["t0"] = t0;
    rep.params["t1"] = t1;
    rep.params["count_in_window"] = static_cast<double>(count_in);
    return rep;
}

// Mean integral comparison: weighted mean over the conjugate sets of
// |int f dmu_set - int f dHaar| against
//   4 r pi Lip / N + (sup_outside + 2 sup) 2 m(S)/log r + 2 N sup h(S),
// where sup_outside is the max of |f| over ensemble points outside A_r.
inline DiscrepancyReport mean_integral_check(const OrbitEnsemble& ens, const TestFunction& fn, double r,
                                          int N, std::size_t nodes = 4096) {
    if (!(r > 1.0)) throw UsageError("mean_integral_check: r must exceed 1");
    if (N < 2) throw UsageError("mean_integral_check: N must be >= 2");
    Complex haar = circle_integral(fn, nodes);
    double stat = 0.0;
    double sup_outside = 0.0;
    for (std::size_t k = 0; k < ens.size(); ++k) {
        stat += ens.weights[k] * std::abs(measure_integral(fn, ens.conjugate_sets[k]) - haar);
        for (const auto& z : ens.conjugate_sets[k]) {
            double az = std::abs(z);
            if (az < 1.0 / r || az > r) sup_outside = std::max(sup_outside, std::abs(fn.f(z)));
        }
    }
    double bound = 4.0 * r * M_PI * fn.lip_r / static_cast<double>(N) +
                   (sup_outside + 2.0 * fn.sup_r) * 2.0 * ens.heights.m_S / std::log(r) +
                   2.0 * static_cast<double>(N) * fn.sup_r * ens.heights.h_S;
    DiscrepancyReport rep = make_report(stat, bound);
    rep.params["r"] = r;
    rep.params["N"] = static_cast<double>(N);
    rep.params["nodes"] = static_cast<double>(nodes);
    rep.params["sup_outside"] = sup_outside;
    rep.params["haar_re"] = haar.real();
    rep.params["haar_im"] = haar.imag();
    rep.note = fn.label + "; m_S mode: " + ens.m_s_mode;
    return rep;
}

struct SelectionResult {
    std::vector<std::size_t> selected;
    std::vector<std::size_t> failed_radial;
    std::vector<std::size_t> failed_angular;
    PartitionSpec partition;
    double radial_threshold = 0.0;
    double angular_threshold = 0.0;
    DiscrepancyReport report; // statistic = 1 - selected fraction, bound = eps
};

// Embedding selection: keep the conjugate sets whose outside count stays
// under 4 degK |S| m(S) / (eps log r) and whose per-cell counts stay within
// 2 N degK |S| h(S) / eps of |S|/N for every cell of the chosen partition.
inline SelectionResult select_embeddings(const OrbitEnsemble& ens, double r, int N, double eps,
                                         long degK = 1) {
    if (!(r > 1.0)) throw UsageError("select_embeddings: r must exceed 1");
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("select_embeddings: eps must lie in (0,1)");
    if (degK < 1) throw UsageError("select_embeddings: degK must be positive");

    SelectionResult res;
    res.partition = choose_offset(ens, N);
    const double card = static_cast<double>(ens.card_S);
    res.radial_threshold =
        4.0 * static_cast<double>(degK) * card * ens.heights.m_S / (eps * std::log(r));
    res.angular_threshold =
        2.0 * static_cast<double>(N) * static_cast<double>(degK) * card * ens.heights.h_S / eps;

    AnnulusSpec annulus(r);
    for (std::size_t k = 0; k < ens.size(); ++k) {
        const auto& set = ens.conjugate_sets[k];
        bool rad_ok = static_cast<double>(annulus_outside_count(set, annulus)) <= res.radial_threshold;
        bool ang_ok = true;
        for (int j = 0; j < N && ang_ok; ++j) {
            auto c = sector_count(set, partition_cell(res.partition, j));
            ang_ok = std::abs(static_cast<double>(c) - card / static_cast<double>(N)) <= res.angular_threshold;
        }
        if (!rad_ok) res.failed_radial.push_back(k);
        if (!ang_ok) res.failed_angular.push_back(k);
        if (rad_ok && ang_ok) res.selected.push_back(k);
    }
    double frac = static_cast<double>(res.selected.size()) / static_cast<double>(ens.size());
    res.report = make_report(1.0 - frac, eps);
    res.report.params["r"] = r;
    res.report.params["N"] = static_cast<double>(N);
    res.report.params["eps"] = eps;
    res.report.params["degK"] = static_cast<double>(degK);
    res.report.params["radial_threshold"] = res.radial_threshold;
    res.report.params["angular_threshold"] = res.angular_threshold;
    res.report.params["selected_fraction"] = frac;
    res.report.note = "m_S mode: " + ens.m_s_mode;
    return res;
}

// Bundled test functions with analytically true constants on A_r:
// Re z^k and Im z^k for k <= 8 (gradient bound k r^{k-1} on the disk |z| <= r),
// log|z| (|log a - log b| <= r |a - b| since |z| >= 1/r),
// the distance to the unit circle, and a function that vanishes on A_r but is
// 1/|z| outside -- unbounded near 0 and discontinuous at the boundary.
inline std::vector<TestFunction> test_function_library(double r) {
    if (!(r > 1.0)) throw UsageError("test_function_library: r must exceed 1");
    std::vector<TestFunction> lib;
    for (int k = 1; k <= 8; ++k) {
        double lip = static_cast<double>(k) * std::pow(r, k - 1);
        double sup = std::pow(r, k);
        lib.push_back({[k](Complex z) { return Complex(std::pow(z, k).real(), 0.0); },
                       lip, sup, "re_z^" + std::to_string(k)});
        lib.push_back({[k](Complex z) { return Complex(std::pow(z, k).imag(), 0.0); },
                       lip, sup, "im_z^" + std::to_string(k)});
    }
    lib.push_back({[](Complex z) { return Complex(std::log(std::abs(z)), 0.0); },
                   r, std::log(r), "log|z|"});
    lib.push_back({[](Complex z) { return Complex(std::abs(std::abs(z) - 1.0), 0.0); },
                   1.0, r - 1.0, "dist_to_circle"});
    lib.push_back({[r](Complex z) {
                       double az = std::abs(z);
                       if (az >= 1.0 / r && az <= r) return Complex(0.0, 0.0);
                       return Complex(1.0 / az, 0.0);
                   },
                   0.0, 0.0, "outside_only_inverse_modulus"});
    return lib;
}

} // namespace eqdist
