// O(M^2) structured application of the differentiation operators, split into
// the separable part F and the recursion-propagated part E with X = F - E.
// Dense reference builders are provided for verification.
#pragma once

#include "wsys/basis.hpp"
#include "wsys/coupling_integrals.hpp"

#include <Eigen/Dense>

#include <vector>

namespace wsys {

// Operation tally. `flops` follows the documented counting convention
// (multiply-add pair = 2, readout scalings and setup excluded): the F pass
// charges 4 per visited (m,j) pair, totalling 2(M+1)(M+2); an E-type pass
// charges 4m+2 per level m >= 1, totalling 2M(M+2). raw_mul/raw_add count
// every floating-point operation the implementation actually performs;
// setup_flops tallies factor-table construction work (transcendental calls
// counted as one operation each).
struct OpCounter {
    long long flops = 0;
    long long raw_mul = 0;
    long long raw_add = 0;
    long long setup_flops = 0;
};

// Coefficient vector blocked by level, level-major layout.
struct CoeffVector {
    int M = 0;
    std::vector<double> v;

    CoeffVector() = default;
    explicit CoeffVector(int M_) : M(M_), v(level_count(M_), 0.0) {}
    double& at(int n, int k) { return v[LevelIndex{n, k}.linear()]; }
    double at(int n, int k) const { return v[LevelIndex{n, k}.linear()]; }
    double norm2() const;
};

// Precomputed separated factors and recursion tables; O(M^2) memory.
struct FEFactors {
    int M;
    ParamTriple p;
    std::vector<double> A, B;          // F factors, level-major (m,j)
    std::vector<double> q, d1, d2;     // level-step coefficients, (m,l)
    std::vector<double> ul, vl;        // S factor pieces, index l
    std::vector<double> utl, vtl;      // S-tilde factor pieces, index l
    std::vector<double> r;             // r_{n,k}, level-major
    std::vector<double> idiag;         // diag I-tilde, level-major (m,l)
    std::vector<double> ediag;         // E_{mm} diagonal, level-major (m,l)
};

// Standalone construction (diagonal I-tilde values by exact quadrature).
FEFactors make_fe_factors(int M, ParamTriple p, OpCounter* ctr = nullptr);
// Reuse a prebuilt table for the diagonal values.
FEFactors make_fe_factors(const ItildeTable& table, OpCounter* ctr = nullptr);

CoeffVector apply_f(const FEFactors& f, const CoeffVector& x,
                    OpCounter* ctr = nullptr);
CoeffVector apply_e(const FEFactors& f, const CoeffVector& x,
                    OpCounter* ctr = nullptr);
CoeffVector apply_x(const FEFactors& f, const CoeffVector& x,
                    OpCounter* ctr = nullptr);
CoeffVector apply_y(const FEFactors& f, const CoeffVector& x,
                    OpCounter* ctr = nullptr);

// Dense references assembled directly from the factors (and, for E, the
// table); used by tests and the benchmark.
Eigen::MatrixXd dense_f(const FEFactors& f);
Eigen::MatrixXd dense_e(const FEFactors& f, const ItildeTable& table);

} // namespace wsys
