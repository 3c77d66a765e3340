#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "eqdist/poly_expr.hpp"
#include "eqdist/runner.hpp"

using namespace eqdist;
namespace fs = std::filesystem;

namespace {

IntPolynomial from_ints(std::initializer_list<long> cs) {
    std::vector<mpz_class> v;
    for (long c : cs) v.emplace_back(c);
    return IntPolynomial(std::move(v));
}

nlohmann::json read_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    nlohmann::json j;
    in >> j;
    return j;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("eqdist_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("polynomial expressions") {
    CHECK(parse_poly("x^3-1") == from_ints({-1, 0, 0, 1}));
    CHECK(parse_poly("3x^2-2x+1") == from_ints({1, -2, 3}));
    CHECK(parse_poly("-x+5") == from_ints({5, -1}));
    CHECK(parse_poly("Phi(3)") == from_ints({1, 1, 1}));
    CHECK(parse_poly("compose1m(Phi(3),2)") == from_ints({3, 0, -3, 0, 1}));
    CHECK(parse_poly("(x-1)*(x+1)") == from_ints({-1, 0, 1}));
    CHECK(parse_poly(" 2 * x ^ 4 - 7 ") == from_ints({-7, 0, 0, 0, 2}));
    CHECK_THROWS_AS(parse_poly("x^2 +"), UsageError);
    CHECK_THROWS_AS(parse_poly("Psi(3)"), UsageError);
    CHECK_THROWS_AS(parse_poly("x^2)("), UsageError);
}

TEST_CASE("analyze produces a holding report") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "analyze";
    cfg.poly_expr = "x^16-2";
    cfg.r = 1.2;
    cfg.out_path = (tmp.path / "report.json").string();
    cfg.csv_dir = (tmp.path / "csv").string();
    CHECK(run(cfg) == 0);
    auto j = read_json(tmp.path / "report.json");
    CHECK(j.at("version") == "report_v1");
    CHECK(j.at("holds_all") == true);
    CHECK(j.at("radial").at("holds") == true);
    CHECK(j.at("angular").at("holds") == true);
    CHECK(j.at("erdos_turan").at("holds") == true);
    for (const auto& rep : j.at("mean_integral_checks")) CHECK(rep.at("holds") == true);
    CHECK(fs::exists(tmp.path / "csv" / "roots.csv"));
    CHECK(fs::exists(tmp.path / "csv" / "cells.csv"));
}

TEST_CASE("analyze reduces imprimitive squareful input") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "analyze";
    cfg.poly_expr = "(x-2)*(x-2)*2"; // 2 (x-2)^2
    cfg.out_path = (tmp.path / "r.json").string();
    CHECK(run(cfg) == 0);
    auto j = read_json(tmp.path / "r.json");
    CHECK(j.at("poly_note").get<std::string>() ==
          "input reduced to its primitive squarefree part");
    CHECK(j.at("poly_canonical") == nlohmann::json({"-2", "1"}));
}

TEST_CASE("et-fuzz finds no violations") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "et-fuzz";
    cfg.count = 20;
    cfg.degree = 40;
    cfg.sectors = 4;
    cfg.seed = 7;
    cfg.out_path = (tmp.path / "fuzz.json").string();
    CHECK(run(cfg) == 0);
    auto j = read_json(tmp.path / "fuzz.json");
    CHECK(j.at("et_fuzz").at("violations") == 0);
    CHECK(j.at("et_fuzz").at("checks") == 80);
}

TEST_CASE("bound-check evaluates the formulas") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "bound-check";
    cfg.card_s = 10;
    cfg.m_s = 0.1;
    cfg.L = 20;
    cfg.out_path = (tmp.path / "b.json").string();
    CHECK(run(cfg) == 0);
    auto j = read_json(tmp.path / "b.json");
    CHECK(j.at("bounds").at("siegel_bound").get<double>() == Catch::Approx(7.5829736339391065));

    cfg.L = 5; // violates L > card_s
    CHECK(run(cfg) == 2);
}

TEST_CASE("family kummer reports selection with residues") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "family";
    cfg.family = "kummer";
    cfg.m = 31;
    cfg.n = 4;
    cfg.r = 1.2;
    cfg.eps = 0.3;
    cfg.out_path = (tmp.path / "fam.json").string();
    cfg.csv_dir = (tmp.path / "csv").string();
    CHECK(run(cfg) == 0);
    auto j = read_json(tmp.path / "fam.json");
    CHECK(j.at("selection").at("holds") == true);
    CHECK(j.at("residues").size() == 30);
    CHECK(j.at("outside_counts").size() == 30);
    CHECK(fs::exists(tmp.path / "csv" / "ensemble.json"));
    // the saved ensemble round-trips through the loader
    CHECK_NOTHROW(load_ensemble((tmp.path / "csv" / "ensemble.json").string()));
}

TEST_CASE("auxpoly command emits the short multiple") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "auxpoly";
    cfg.poly_expr = "Phi(105)";
    cfg.L = 106;
    cfg.out_path = (tmp.path / "aux.json").string();
    CHECK(run(cfg) == 0);
    auto j = read_json(tmp.path / "aux.json");
    auto f = poly_from_json(j.at("aux_polynomial"));
    CHECK(f == poly_sub(IntPolynomial::monomial(105), IntPolynomial::one()));
    CHECK(j.at("achieved_height").get<double>() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("usage errors exit with status 2") {
    RunConfig cfg;
    cfg.command = "analyze"; // no source given
    CHECK(run(cfg) == 2);
    cfg.command = "no-such-command";
    CHECK(run(cfg) == 2);
    cfg.command = "analyze";
    cfg.poly_expr = "x^2 + oops";
    CHECK(run(cfg) == 2);
}

TEST_CASE("reports are deterministic apart from the timestamp") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "analyze";
    cfg.poly_expr = "x^8-2";
    cfg.seed = 42;
    cfg.out_path = (tmp.path / "a.json").string();
    CHECK(run(cfg) == 0);
    cfg.out_path = (tmp.path / "b.json").string();
    CHECK(run(cfg) == 0);
    auto a = read_json(tmp.path / "a.json");
    auto b = read_json(tmp.path / "b.json");
    a.erase("timestamp");
    b.erase("timestamp");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("polynomial json round trip") {
    auto p = from_ints({-123456789, 0, 987654321});
    CHECK(poly_from_json(nlohmann::json::parse(poly_to_json(p).dump())) == p);
    mpz_class huge("123456789012345678901234567890123456789");
    IntPolynomial big(std::vector<mpz_class>{huge, -huge});
    CHECK(poly_from_json(nlohmann::json::parse(poly_to_json(big).dump())) == big);
    CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse("[1, 2]")), SchemaError);
    CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse("[\"seven\"]")), SchemaError);
}
