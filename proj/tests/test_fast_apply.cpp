#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wsys/diffmat.hpp"
#include "wsys/fast_apply.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

using namespace wsys;

namespace {

CoeffVector random_coeffs(int M, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CoeffVector x(M);
    for (double& c : x.v)
        c = dist(rng);
    return x;
}

Eigen::Map<const Eigen::VectorXd> as_vec(const CoeffVector& x) {
    return {x.v.data(), static_cast<Eigen::Index>(x.v.size())};
}

// inf-norm error of y against A*x, scaled by the natural matvec bound
double matvec_err(const Eigen::MatrixXd& A, const CoeffVector& x,
                  const CoeffVector& y) {
    const Eigen::VectorXd ref = A * as_vec(x);
    double e = 0.0;
    for (size_t i = 0; i < y.v.size(); ++i)
        e = std::max(e, std::abs(y.v[i] - ref[static_cast<Eigen::Index>(i)]));
    const double denom =
        std::max(1.0, A.cwiseAbs().rowwise().sum().maxCoeff() *
                          as_vec(x).cwiseAbs().maxCoeff());
    return e / denom;
}

const ParamTriple kTriples[] = {
    ParamTriple{1.0, 1.0, 1.0},
    ParamTriple{2.0, 2.0, 2.0},
    ParamTriple{2.0, 1.0, 3.0},
    ParamTriple{1.5, 2.5, 0.5},
};

} // namespace

TEST_CASE("separable diagonal equals the propagated diagonal") {
    const int M = 20;
    for (const ParamTriple& p : kTriples) {
        const FEFactors f = make_fe_factors(M, p);
        for (int m = 0; m <= M; ++m)
            for (int l = 0; l <= m; ++l) {
                const int i = LevelIndex{m, l}.linear();
                const double fd = f.A[i] * f.B[i];
                CHECK(std::abs(fd - f.ediag[i]) <=
                      1e-13 * std::max(1e-30, std::abs(fd)));
            }
    }
}

TEST_CASE("standalone factors agree with table-backed factors") {
    const int M = 12;
    const ParamTriple p{2.0, 1.0, 3.0};
    const ItildeTable table = build_itilde(M, p);
    const FEFactors fa = make_fe_factors(M, p);
    const FEFactors fb = make_fe_factors(table);
    REQUIRE(fa.A == fb.A);
    REQUIRE(fa.B == fb.B);
    REQUIRE(fa.q == fb.q);
    REQUIRE(fa.d1 == fb.d1);
    REQUIRE(fa.d2 == fb.d2);
    REQUIRE(fa.ul == fb.ul);
    REQUIRE(fa.vl == fb.vl);
    REQUIRE(fa.utl == fb.utl);
    REQUIRE(fa.vtl == fb.vtl);
    for (size_t i = 0; i < fa.idiag.size(); ++i)
        CHECK(std::abs(fa.idiag[i] - fb.idiag[i]) <=
              1e-12 * std::max(1.0, std::abs(fb.idiag[i])));
}

TEST_CASE("fast F application matches its dense form") {
    std::mt19937 rng(12345);
    for (const ParamTriple& p : {ParamTriple{2.0, 1.0, 3.0},
                                 ParamTriple{1.5, 2.5, 0.5}})
        for (int M : {2, 5, 10, 20}) {
            const FEFactors f = make_fe_factors(M, p);
            const Eigen::MatrixXd F = dense_f(f);
            for (int trial = 0; trial < 25; ++trial) {
                const CoeffVector x = random_coeffs(M, rng);
                const CoeffVector y = apply_f(f, x);
                CHECK(matvec_err(F, x, y) <= 1e-12);
            }
        }
}

TEST_CASE("fast E application matches its dense form") {
    std::mt19937 rng(777);
    for (const ParamTriple& p : {ParamTriple{2.0, 1.0, 3.0},
                                 ParamTriple{1.5, 2.5, 0.5}})
        for (int M : {2, 5, 10, 20}) {
            const ItildeTable table = build_itilde(M, p);
            const FEFactors f = make_fe_factors(table);
            const Eigen::MatrixXd E = dense_e(f, table);
            for (int trial = 0; trial < 25; ++trial) {
                const CoeffVector x = random_coeffs(M, rng);
                const CoeffVector y = apply_e(f, x);
                CHECK(matvec_err(E, x, y) <= 1e-11);
            }
        }
}

TEST_CASE("fast applications match the assembled operators") {
    std::mt19937 rng(20260825);
    for (const ParamTriple& p : {ParamTriple{1.0, 1.0, 1.0},
                                 ParamTriple{2.0, 1.0, 3.0}})
        for (int M : {2, 5, 10, 20}) {
            const FEFactors f = make_fe_factors(M, p);
            const Eigen::MatrixXd X = assemble_x(M, p).dense;
            const Eigen::MatrixXd Y = assemble_y(M, p).dense;
            for (int trial = 0; trial < 25; ++trial) {
                const CoeffVector x = random_coeffs(M, rng);
                CHECK(matvec_err(X, x, apply_x(f, x)) <= 1e-11);
                CHECK(matvec_err(Y, x, apply_y(f, x)) <= 1e-11);
            }
        }
}

TEST_CASE("unit-vector probes recover matrix columns") {
    const int M = 8;
    const ParamTriple p{1.0, 2.0, 3.0};
    const FEFactors f = make_fe_factors(M, p);
    const Eigen::MatrixXd X = assemble_x(M, p).dense;
    const Eigen::MatrixXd Y = assemble_y(M, p).dense;
    const double scale =
        std::max(1.0, std::max(X.cwiseAbs().maxCoeff(), Y.cwiseAbs().maxCoeff()));
    for (int col : {0, 3, 17, level_count(M) - 1}) {
        CoeffVector e(M);
        e.v[col] = 1.0;
        const CoeffVector cx = apply_x(f, e);
        const CoeffVector cy = apply_y(f, e);
        for (int i = 0; i < level_count(M); ++i) {
            CHECK(std::abs(cx.v[i] - X(i, col)) <= 1e-12 * scale);
            CHECK(std::abs(cy.v[i] - Y(i, col)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("factor split reproduces the assembled X matrix") {
    const int M = 12;
    for (const ParamTriple& p : kTriples) {
        const ItildeTable table = build_itilde(M, p);
        const FEFactors f = make_fe_factors(table);
        const Eigen::MatrixXd split = dense_f(f) - dense_e(f, table);
        const Eigen::MatrixXd X = assemble_x(M, p).dense;
        const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
        CHECK((split - X).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    }
}

TEST_CASE("linearity and the skew quadratic form") {
    std::mt19937 rng(99);
    const int M = 15;
    const ParamTriple p{2.0, 2.0, 2.0};
    const FEFactors f = make_fe_factors(M, p);
    const Eigen::MatrixXd X = assemble_x(M, p).dense;
    const double xnorm = X.cwiseAbs().rowwise().sum().maxCoeff();
    for (int trial = 0; trial < 20; ++trial) {
        const CoeffVector v = random_coeffs(M, rng);
        const CoeffVector w = random_coeffs(M, rng);
        const double a = 0.3 + 0.1 * trial, b = -1.7 + 0.2 * trial;
        CoeffVector comb(M);
        for (size_t i = 0; i < comb.v.size(); ++i)
            comb.v[i] = a * v.v[i] + b * w.v[i];
        const CoeffVector lhs = apply_x(f, comb);
        const CoeffVector xv = apply_x(f, v);
        const CoeffVector xw = apply_x(f, w);
        for (size_t i = 0; i < lhs.v.size(); ++i)
            CHECK(std::abs(lhs.v[i] - (a * xv.v[i] + b * xw.v[i])) <=
                  1e-12 * xnorm);

        double quad = 0.0;
        for (size_t i = 0; i < v.v.size(); ++i)
            quad += v.v[i] * xv.v[i];
        const double n2 = v.norm2();
        CHECK(std::abs(quad) <= 1e-12 * xnorm * n2 * n2);
    }
}

TEST_CASE("smallest expansions degenerate cleanly") {
    const ParamTriple p{2.0, 1.0, 3.0};
    const FEFactors f0 = make_fe_factors(0, p);
    CoeffVector x0(0);
    x0.v[0] = 1.75;
    const CoeffVector dx = apply_x(f0, x0);
    CHECK(std::abs(dx.v[0]) <= 1e-14 * std::abs(x0.v[0]));
    const CoeffVector dy = apply_y(f0, x0);
    CHECK(dy.v[0] == 0.0);

    // 1x1 E is the single weighted diagonal coupling value
    const CoeffVector de = apply_e(f0, x0);
    CHECK(de.v[0] == f0.ediag[0] * x0.v[0]);
    const double s00 = s_value(0, 0, p);
    const double r00 = r_norm(0, 0, p);
    const double e00 =
        0.5 * p.gamma * r00 * r00 * s00 * itilde_diag_quadrature(0, 0, p);
    CHECK(std::abs(f0.ediag[0] - e00) <= 1e-14 * std::abs(e00));

    std::mt19937 rng(5);
    const FEFactors f1 = make_fe_factors(1, p);
    const Eigen::MatrixXd X1 = assemble_x(1, p).dense;
    const CoeffVector x1 = random_coeffs(1, rng);
    CHECK(matvec_err(X1, x1, apply_x(f1, x1)) <= 1e-13);
}

TEST_CASE("operation counters follow the documented convention") {
    const ParamTriple p{2.0, 2.0, 2.0};
    std::mt19937 rng(31);

    auto flops_of = [&](const FEFactors& f,
                        CoeffVector (*op)(const FEFactors&, const CoeffVector&,
                                          OpCounter*)) {
        const CoeffVector x = random_coeffs(f.M, rng);
        OpCounter ctr;
        (void)op(f, x, &ctr);
        CHECK(ctr.setup_flops == 0);
        CHECK(ctr.raw_mul > 0);
        CHECK(ctr.raw_add > 0);
        return ctr.flops;
    };

    long long f10 = 0, f20 = 0, e10 = 0, e20 = 0;
    for (int M : {4, 10, 20, 40, 80}) {
        const FEFactors f = make_fe_factors(M, p);
        const long long ff = flops_of(f, apply_f);
        const long long fe = flops_of(f, apply_e);
        CHECK(ff == 2LL * (M + 1) * (M + 2));
        CHECK(fe == 2LL * M * (M + 2));
        CHECK(flops_of(f, apply_y) == 4LL * M * (M + 2));
        CHECK(flops_of(f, apply_x) ==
              2LL * (M + 1) * (M + 2) + 2LL * M * (M + 2));
        if (M == 10) {
            f10 = ff;
            e10 = fe;
        }
        if (M == 20) {
            f20 = ff;
            e20 = fe;
        }
    }

    // size-doubling cost ratios sit near 4, well inside [3.4, 4.6]
    const double rf = double(f20) / double(f10);
    const double re = double(e20) / double(e10);
    CHECK(rf >= 3.4);
    CHECK(rf <= 4.6);
    CHECK(re >= 3.4);
    CHECK(re <= 4.6);

    OpCounter setup;
    const FEFactors f8 = make_fe_factors(8, p, &setup);
    CHECK(setup.setup_flops > 0);
    CHECK(setup.flops == 0);

    // a zero input is recognised and costs nothing
    OpCounter zc;
    const CoeffVector zero(8);
    for (auto op : {apply_f, apply_e, apply_x, apply_y}) {
        const CoeffVector out = op(f8, zero, &zc);
        for (double v : out.v)
            CHECK(v == 0.0);
    }
    CHECK(zc.flops == 0);
    CHECK(zc.raw_mul == 0);
    CHECK(zc.raw_add == 0);
}

TEST_CASE("level mismatch is rejected") {
    const FEFactors f = make_fe_factors(4, ParamTriple{1.0, 1.0, 1.0});
    CoeffVector wrong(3);
    CHECK_THROWS_AS((void)apply_f(f, wrong), std::invalid_argument);
    CHECK_THROWS_AS((void)apply_e(f, wrong), std::invalid_argument);
    CHECK_THROWS_AS((void)apply_y(f, wrong), std::invalid_argument);
}
