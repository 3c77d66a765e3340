// Command-line front end: builds ensembles, runs the distribution checks and
// writes JSON reports / CSV plot data. See README for examples.

#include <string>

#include "CLI11.hpp"

#include "eqdist/runner.hpp"

namespace {

void add_common(CLI::App* cmd, eqdist::RunConfig& cfg) {
    cmd->add_option("--r", cfg.r, "annulus parameter r > 1");
    cmd->add_option("--N", [&cfg](const std::vector<std::string>& vals) {
        if (vals.empty()) return false;
        if (vals.front() == "auto") {
            cfg.N = 0;
            return true;
        }
        try {
            cfg.N = std::stoi(vals.front());
        } catch (...) {
            return false;
        }
        return cfg.N >= 2;
    }, "partition count (integer >= 2, or 'auto' for the h_S^{-1/4} rule)");
    cmd->add_option("--eps", cfg.eps, "selection budget in (0,1)");
    cmd->add_option("--degK", cfg.degK, "base-field degree factor for the thresholds");
    cmd->add_option("--theta", cfg.theta, "sector angle in [0, 2pi]");
    cmd->add_option("--start", cfg.start_angle, "sector start angle (radians)");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--nodes", cfg.nodes, "quadrature node count");
    cmd->add_option("--tol", cfg.tol, "root-finder relative tolerance");
    cmd->add_option("--out", cfg.out_path, "write the JSON report here (default stdout)");
    cmd->add_option("--csv-dir", cfg.csv_dir, "directory for CSV plot data");
}

void add_source(CLI::App* cmd, eqdist::RunConfig& cfg) {
    cmd->add_option("--poly", cfg.poly_expr,
                    "polynomial expression (e.g. \"x^64-2\", \"Phi(105)\", \"compose1m(Phi(3),2)\")");
    cmd->add_option("--ensemble", cfg.ensemble_path, "path to an ensemble JSON file");
    cmd->add_option("--family", cfg.family, "point family name (kummer)");
    cmd->add_option("--m", cfg.m, "family parameter m");
    cmd->add_option("--n", cfg.n, "family parameter n");
    cmd->add_option("--m-s-mode", cfg.m_s_mode, "kummer height mode: exact | bound")
        ->check(CLI::IsMember({"exact", "bound"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equidistribution statistics for algebraic numbers of small height"};
    app.require_subcommand(1);
    eqdist::RunConfig cfg;

    auto* analyze = app.add_subcommand("analyze", "radial, angular and mean-integral checks for one source");
    add_source(analyze, cfg);
    add_common(analyze, cfg);

    auto* fuzz = app.add_subcommand("et-fuzz", "seeded Erdos-Turan property sweep over random polynomials");
    fuzz->add_option("--count", cfg.count, "number of random polynomials");
    fuzz->add_option("--degree", cfg.degree, "polynomial degree");
    fuzz->add_option("--sectors", cfg.sectors, "number of sector starts per polynomial");
    add_common(fuzz, cfg);

    auto* bounds = app.add_subcommand("bound-check", "evaluate the bound formulas for given parameters");
    bounds->add_option("--card-s", cfg.card_s, "set cardinality")->required();
    bounds->add_option("--m-s", cfg.m_s, "mean height")->required();
    bounds->add_option("--L", cfg.L, "auxiliary degree bound (requires L > card_s)")->required();
    add_common(bounds, cfg);

    auto* select = app.add_subcommand("select", "embedding selection by the radial/angular thresholds");
    add_source(select, cfg);
    add_common(select, cfg);

    auto* aux = app.add_subcommand("auxpoly", "short-multiple search and the auxiliary-polynomial pipeline");
    add_source(aux, cfg);
    aux->add_option("--L", cfg.L, "lattice degree bound (0 = canonical)");
    add_common(aux, cfg);

    auto* family = app.add_subcommand("family", "build a named family ensemble and run the full battery");
    family->add_option("name", cfg.family, "family name (kummer)")->required();
    family->add_option("--m", cfg.m, "family parameter m");
    family->add_option("--n", cfg.n, "family parameter n");
    family->add_option("--m-s-mode", cfg.m_s_mode, "kummer height mode: exact | bound")
        ->check(CLI::IsMember({"exact", "bound"}));
    add_common(family, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    return eqdist::run(cfg);
}
