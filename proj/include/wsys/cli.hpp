// Command-line front end: dense assembly export, fast-apply benchmarking,
// convergence studies, a boundary-lift sampler, and an RK4 evolution demo.
#pragma once

#include "wsys/fast_apply.hpp"

#include <string>

namespace wsys {

// process exit codes shared by every subcommand
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitVerify = 3,
    kExitIo = 4,
};

// one flat bag of options; each command reads the subset it needs
struct RunConfig {
    std::string command;                 // assemble|bench|converge|evolve|lift
    double alpha = 2.0;
    double beta = 2.0;
    double gamma = 2.0;
    int level = 8;                       // truncation level M
    int nmax = 8;                        // expansion degree (converge)
    int quad_n1 = 64;                    // Duffy tensor rule, x direction
    int quad_n2 = 64;                    // Duffy tensor rule, t direction
    int grid = 4;                        // cosine evaluation grid parameter
    std::string out;                     // primary output path
    std::string cache;                   // optional binary table cache
    bool verify = false;                 // run internal checks, exit 3 on fail
    unsigned seed = 1;                   // rng seed for randomized checks
    double dt = 1e-3;                    // evolve step size
    double tfinal = 1.0;                 // evolve horizon
    std::string function = "ex1_sqrt";   // test-function / trace selector
};

// "64x64" -> {64, 64}; throws std::invalid_argument on malformed input
void parse_quad_spec(const std::string& spec, int& n1, int& n2);

// throws std::invalid_argument when shared limits are violated
// (parameters > 0, 0 <= level/nmax <= 200, quad/grid >= 1)
void validate_config(const RunConfig& cfg);

// one classical 4-stage Runge-Kutta step of a' = X a in place;
// dt = 0 leaves the vector exactly unchanged
void rk4_step(const FEFactors& f, CoeffVector& a, double dt);

// commands; each returns a process exit code and reports on stdout/stderr
int cmd_assemble(const RunConfig& cfg);
int cmd_matvec_bench(const RunConfig& cfg);
int cmd_converge(const RunConfig& cfg);
int cmd_evolve(const RunConfig& cfg);
int cmd_lift(const RunConfig& cfg);

// dispatch on cfg.command with uniform exception-to-exit-code mapping
int run_command(const RunConfig& cfg);

} // namespace wsys
