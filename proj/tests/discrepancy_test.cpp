#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "eqdist/discrepancy.hpp"
#include "eqdist/ensemble.hpp"

using namespace eqdist;

namespace {

IntPolynomial from_ints(std::initializer_list<long> cs) {
    std::vector<mpz_class> v;
    for (long c : cs) v.emplace_back(c);
    return IntPolynomial(std::move(v));
}

std::vector<Complex> roots_of_unity(std::size_t n) {
    std::vector<Complex> pts(n);
    for (std::size_t j = 0; j < n; ++j)
        pts[j] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n));
    return pts;
}

// independent membership count used as the oracle for sector statistics
std::size_t brute_count(const std::vector<Complex>& pts, double start, double theta) {
    std::size_t c = 0;
    for (const auto& z : pts) {
        double u = std::fmod(std::arg(z) - start, 2.0 * M_PI);
        if (u < 0) u += 2.0 * M_PI;
        if (u < theta) ++c;
    }
    return c;
}

} // namespace

TEST_CASE("sector membership convention") {
    auto quads = roots_of_unity(4);
    CHECK(sector_count(quads, SectorSpec(-M_PI / 4.0, M_PI / 2.0)) == 1);
    CHECK(sector_count(quads, SectorSpec(1.234, 2.0 * M_PI)) == 4);
    auto octs = roots_of_unity(8);
    CHECK(sector_count(octs, SectorSpec(0.1, M_PI)) == 4);
    CHECK(sector_count(octs, SectorSpec(0.1, M_PI)) == brute_count(octs, 0.1, M_PI));
}

TEST_CASE("sector count is rotation invariant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> da(0.0, 2.0 * M_PI), dr(0.3, 2.5);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Complex> pts;
        for (int i = 0; i < 24; ++i) pts.push_back(std::polar(dr(rng), da(rng)));
        double start = da(rng), theta = da(rng) / 2.0, shift = da(rng);
        auto base = sector_count(pts, SectorSpec(start, theta));
        std::vector<Complex> rotated;
        for (const auto& z : pts) rotated.push_back(z * std::polar(1.0, shift));
        CHECK(sector_count(rotated, SectorSpec(start + shift, theta)) == base);
    }
}

TEST_CASE("annulus outside counts") {
    auto e = galois_stable_ensemble(from_ints({-2, 0, 0, 0, 0, 1}));
    const auto& pts = e.conjugate_sets[0];
    CHECK(annulus_outside_count(pts, AnnulusSpec(1.2)) == 0);
    CHECK(annulus_outside_count(pts, AnnulusSpec(1.1)) == 5);
    CHECK(annulus_outside_count(roots_of_unity(16), AnnulusSpec(1.0001)) == 0);
}

TEST_CASE("radial mean statistic") {
    auto cyc = galois_stable_ensemble(poly_sub(IntPolynomial::monomial(9), IntPolynomial::one()));
    auto rep = radial_mean_stat(cyc, AnnulusSpec(2.0));
    CHECK(rep.statistic == 0.0);
    CHECK(std::abs(rep.bound) < 1e-12);
    CHECK(rep.holds);

    auto e = galois_stable_ensemble(from_ints({-2, 0, 0, 0, 0, 1}));
    auto rep2 = radial_mean_stat(e, AnnulusSpec(1.1));
    CHECK(rep2.statistic == 5.0);
    CHECK(rep2.bound == Catch::Approx(2.0 * std::log(2.0) / std::log(1.1)).epsilon(1e-9));
    CHECK(rep2.holds);
    CHECK(rep2.margin == Catch::Approx(rep2.bound - 5.0));

    // kummer(7,2), r = 1.5: every modulus (2 sin(pi a/7))^{1/2} lies inside A_1.5
    auto k = kummer_ensemble(7, 2);
    auto rep3 = radial_mean_stat(k, AnnulusSpec(1.5));
    double expected_stat = 0.0;
    for (unsigned long a = 1; a <= 6; ++a) {
        double mod = std::sqrt(2.0 * std::sin(M_PI * static_cast<double>(a) / 7.0));
        if (mod < 1.0 / 1.5 || mod > 1.5) expected_stat += 2.0 / 6.0;
    }
    CHECK(rep3.statistic == Catch::Approx(expected_stat).margin(1e-12));
    CHECK(rep3.holds);
}

TEST_CASE("angular mean statistic") {
    for (unsigned long n : {2ul, 5ul, 12ul, 63ul}) {
        auto e = galois_stable_ensemble(poly_sub(IntPolynomial::monomial(n), IntPolynomial::one()));
        auto rep = angular_mean_stat(e, SectorSpec(0.3, M_PI));
        CHECK(rep.statistic <= 1.0 + 1e-12);
        CHECK(rep.bound == Catch::Approx(static_cast<double>(n) * e.heights.h_S).epsilon(1e-12));
        CHECK(rep.holds);

        auto full = angular_mean_stat(e, SectorSpec(1.0, 2.0 * M_PI));
        CHECK(full.statistic == Catch::Approx(0.0).margin(1e-12));
    }

    auto k = kummer_ensemble(5, 3);
    double theta = 2.0 * M_PI / 3.0, start = 0.0;
    auto rep = angular_mean_stat(k, SectorSpec(start, theta));
    double expected = 0.0;
    for (std::size_t a = 0; a < k.size(); ++a) {
        double c = static_cast<double>(brute_count(k.conjugate_sets[a], start, theta));
        expected += 0.25 * std::abs(c - theta * 3.0 / (2.0 * M_PI));
    }
    CHECK(rep.statistic == Catch::Approx(expected).margin(1e-12));
    CHECK(rep.holds);
}

TEST_CASE("erdos-turan bound on cyclic polynomials") {
    for (std::size_t d : {4ul, 16ul, 100ul}) {
        auto q = to_complex(poly_sub(IntPolynomial::monomial(d), IntPolynomial::one()));
        auto rep = erdos_turan_check(q, SectorSpec(0.5, M_PI / 2.0));
        CHECK(rep.statistic <= 1.0 + 1e-9);
        CHECK(rep.bound == Catch::Approx(256.0 * static_cast<double>(d) * std::log(2.0)).epsilon(1e-12));
        CHECK(rep.holds);
    }
}

TEST_CASE("erdos-turan needs nonzero end coefficients") {
    ComplexPolynomial q({{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(erdos_turan_check(q, SectorSpec(0.0, 1.0)), VanishingEndCoefficient);
}

TEST_CASE("erdos-turan holds on random littlewood polynomials") {
    std::mt19937_64 rng(4242);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<Complex> cs(51);
        for (auto& c : cs) c = Complex((rng() & 1) ? 1.0 : -1.0, 0.0);
        ComplexPolynomial q(std::move(cs));
        RootSet rs = roots(q);
        for (int k = 0; k < 4; ++k) {
            auto r = erdos_turan_check(q, SectorSpec(0.37 + k * M_PI / 2.0, M_PI / 2.0), &rs);
            CHECK(r.holds);
        }
    }
}

TEST_CASE("boundary crossing is flagged") {
    std::vector<Complex> pts = {std::polar(1.0, 0.5)};
    std::vector<double> radii = {1e-6};
    long warn = 0;
    sector_count(pts, SectorSpec(0.5 + 5e-7, 1.0), &radii, &warn);
    CHECK(warn == 1);
    warn = 0;
    sector_count(pts, SectorSpec(0.4, 1.0), &radii, &warn);
    CHECK(warn == 0);
}
