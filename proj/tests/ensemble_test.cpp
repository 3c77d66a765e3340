#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#include "eqdist/ensemble.hpp"
#include "eqdist/serialize.hpp"

using namespace eqdist;

namespace {

IntPolynomial from_ints(std::initializer_list<long> cs) {
    std::vector<mpz_class> v;
    for (long c : cs) v.emplace_back(c);
    return IntPolynomial(std::move(v));
}

bool contains_point(const std::vector<Complex>& set, Complex z, double tol = 1e-12) {
    for (const auto& w : set)
        if (std::abs(w - z) < tol) return true;
    return false;
}

} // namespace

TEST_CASE("galois stable ensemble basics") {
    auto e = galois_stable_ensemble(from_ints({-1, 0, 0, 0, 1}));
    REQUIRE(e.size() == 1);
    CHECK(e.card_S == 4);
    CHECK(e.weights[0] == 1.0);
    for (Complex z : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)})
        CHECK(contains_point(e.conjugate_sets[0], z));

    auto e2 = galois_stable_ensemble(from_ints({-2, 0, 0, 0, 0, 1}));
    for (const auto& z : e2.conjugate_sets[0])
        CHECK(std::abs(z) == Catch::Approx(std::pow(2.0, 0.2)).epsilon(1e-12));

    CHECK_THROWS_AS(galois_stable_ensemble(from_ints({0, -1, 1})), ZeroIsRoot);
    CHECK_THROWS_AS(galois_stable_ensemble(from_ints({2, 0, 2})), NotPrimitive);
    CHECK_THROWS_AS(galois_stable_ensemble(from_ints({1, -2, 1})), NotSquarefree);
}

TEST_CASE("kummer ensemble small cases") {
    auto e41 = kummer_ensemble(4, 1);
    REQUIRE(e41.size() == 2);
    CHECK(e41.card_S == 1);
    CHECK(e41.weights[0] == Catch::Approx(0.5));
    CHECK(contains_point(e41.conjugate_sets[0], Complex(1, -1)));
    CHECK(contains_point(e41.conjugate_sets[1], Complex(1, 1)));
    CHECK(e41.heights.m_S == Catch::Approx(0.5 * std::log(2.0)).epsilon(1e-12));

    auto e32 = kummer_ensemble(3, 2);
    REQUIRE(e32.size() == 2);
    CHECK(e32.card_S == 2);
    for (const auto& set : e32.conjugate_sets)
        for (const auto& z : set)
            CHECK(std::abs(z) == Catch::Approx(std::pow(3.0, 0.25)).epsilon(1e-12));
}

TEST_CASE("kummer point moduli follow the sine formula") {
    for (auto [m, n] : std::vector<std::pair<unsigned long, unsigned long>>{{7, 2}, {12, 3}, {101, 8}}) {
        auto e = kummer_ensemble(m, n);
        std::size_t k = 0;
        for (unsigned long a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            double expect = std::pow(2.0 * std::sin(M_PI * static_cast<double>(a) / static_cast<double>(m)),
                                     1.0 / static_cast<double>(n));
            for (const auto& z : e.conjugate_sets[k])
                CHECK(std::abs(z) == Catch::Approx(expect).margin(1e-12));
            ++k;
        }
    }
}

TEST_CASE("kummer extreme residues bracket the annulus") {
    // a near m/2: all moduli approach 2^{1/n} from below
    unsigned long m = 257, n = 4;
    auto e = kummer_ensemble(m, n);
    double top = std::pow(2.0, 1.0 / static_cast<double>(n));
    double lo = std::pow(2.0, 1.0 / static_cast<double>(n)) *
                std::pow(1.0 - M_PI * M_PI / (2.0 * static_cast<double>(m) * static_cast<double>(m)),
                         1.0 / static_cast<double>(n));
    // residues are the coprime a in increasing order; a = 128 sits at index 127
    for (const auto& z : e.conjugate_sets[127]) {
        CHECK(std::abs(z) < top);
        CHECK(std::abs(z) > lo);
    }
    // a = 1: modulus ~ (2 pi / m)^{1/n} < 1
    for (const auto& z : e.conjugate_sets[0]) CHECK(std::abs(z) < 1.0);
}

TEST_CASE("kummer sets pair up by conjugation and rotate into themselves") {
    unsigned long m = 11, n = 5;
    auto e = kummer_ensemble(m, n);
    REQUIRE(e.size() == 10);
    for (std::size_t k = 0; k < e.size(); ++k) {
        const auto& set = e.conjugate_sets[k];
        const auto& mirror = e.conjugate_sets[e.size() - 1 - k]; // residue m - a
        for (const auto& z : set) CHECK(contains_point(mirror, std::conj(z)));
        Complex rot = std::polar(1.0, 2.0 * M_PI / static_cast<double>(n));
        for (const auto& z : set) CHECK(contains_point(set, z * rot));
    }
}

TEST_CASE("kummer heights match the polynomial route for small m") {
    for (unsigned long m : {3ul, 4ul, 5ul, 7ul, 12ul}) {
        for (unsigned long n : {1ul, 2ul, 3ul}) {
            auto e = kummer_ensemble(m, n);
            double poly_route = mean_height(compose_shift_power(cyclotomic(m), 1)).m_S /
                                static_cast<double>(n);
            CHECK(e.heights.m_S == Catch::Approx(poly_route).margin(1e-9));
        }
    }
}

TEST_CASE("kummer bound mode") {
    auto e = kummer_ensemble(10007, 16, true);
    CHECK(e.m_s_mode == "bound");
    CHECK(e.heights.m_S == Catch::Approx(std::log(2.0) / 16.0).epsilon(1e-12));
    auto exact = kummer_ensemble(10007, 16, false);
    CHECK(exact.heights.m_S <= e.heights.m_S); // the shortcut is an upper bound
}

TEST_CASE("ensemble json round trip and validation") {
    auto e = kummer_ensemble(5, 2);
    auto j = ensemble_to_json(e);
    auto back = ensemble_from_json(j);
    CHECK(back.card_S == e.card_S);
    CHECK(back.size() == e.size());
    CHECK(back.heights.m_S == Catch::Approx(e.heights.m_S));

    auto bad_zero = j;
    bad_zero["sets"][0][0]["re"] = 0.0;
    bad_zero["sets"][0][0]["im"] = 0.0;
    CHECK_THROWS_AS(ensemble_from_json(bad_zero), InvariantViolation);

    auto bad_weights = j;
    bad_weights["weights"][0] = bad_weights["weights"][0].get<double>() - 0.1;
    CHECK_THROWS_AS(ensemble_from_json(bad_weights), InvariantViolation);

    auto bad_card = j;
    bad_card["sets"][0].erase(0);
    CHECK_THROWS_AS(ensemble_from_json(bad_card), InvariantViolation);

    auto missing = j;
    missing.erase("weights");
    CHECK_THROWS_AS(ensemble_from_json(missing), SchemaError);
}

TEST_CASE("load ensemble from disk") {
    auto e = kummer_ensemble(7, 3);
    std::string path = "ensemble_roundtrip_test.json";
    {
        std::ofstream out(path);
        out << ensemble_to_json(e).dump(2);
    }
    auto back = load_ensemble(path);
    CHECK(back.size() == e.size());
    CHECK(back.label == e.label);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_ensemble("does_not_exist.json"), SchemaError);
}
