// wsys: command-line driver for the weighted-basis toolkit.
#include "wsys/cli.hpp"

#include "CLI11.hpp"

#include <string>

int main(int argc, char** argv) {
    wsys::RunConfig cfg;
    std::string quad_spec = "64x64";

    CLI::App app{"weighted orthogonal basis toolkit: skew-symmetric "
                 "differentiation matrices on the reference triangle"};
    app.require_subcommand(1);

    const auto attach_common = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "weight exponent alpha (> 0)")
            ->capture_default_str();
        sub->add_option("--beta", cfg.beta, "weight exponent beta (> 0)")
            ->capture_default_str();
        sub->add_option("--gamma", cfg.gamma, "weight exponent gamma (> 0)")
            ->capture_default_str();
        sub->add_option("--level", cfg.level, "truncation level M (<= 200)")
            ->capture_default_str();
        sub->add_option("--nmax", cfg.nmax, "expansion degree (<= 200)")
            ->capture_default_str();
        sub->add_option("--quad", quad_spec, "Duffy tensor rule, e.g. 64x64")
            ->capture_default_str();
        sub->add_option("--grid", cfg.grid, "cosine evaluation grid parameter")
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "output path")->required();
        sub->add_option("--cache", cfg.cache, "binary coupling-table cache");
        sub->add_flag("--verify", cfg.verify,
                      "run internal checks; nonzero exit on failure");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks")
            ->capture_default_str();
        sub->add_option("--dt", cfg.dt, "time step (evolve)")
            ->capture_default_str();
        sub->add_option("--tfinal", cfg.tfinal, "final time (evolve)")
            ->capture_default_str();
        sub->add_option("--function", cfg.function,
                        "test function / trace selector")
            ->capture_default_str();
    };

    attach_common(app.add_subcommand(
        "assemble", "write both differentiation matrices in coordinate "
                    "text form (--out gets d/dx, --out.y gets d/dy)"));
    attach_common(app.add_subcommand(
        "bench", "fast apply vs dense product: flop tallies, wall times, "
                 "and accuracy over a doubling ladder of levels"));
    attach_common(app.add_subcommand(
        "converge", "expansion convergence table (selectors: ex1_sqrt, "
                    "ex3_sine, custom); ex3_sine also writes <out>.poly.csv"));
    attach_common(app.add_subcommand(
        "evolve", "RK4 advection demo on the coefficient ODE; CSV of "
                  "(t, coefficient 2-norm)"));
    attach_common(app.add_subcommand(
        "lift", "sample the transfinite boundary lift on the cosine grid "
                "(selectors: affine, constant, generic, broken)"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? wsys::kExitOk : wsys::kExitConfig;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        wsys::parse_quad_spec(quad_spec, cfg.quad_n1, cfg.quad_n2);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return wsys::kExitConfig;
    }
    return wsys::run_command(cfg);
}
