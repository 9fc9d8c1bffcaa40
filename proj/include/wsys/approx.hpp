// Triangle quadrature, expansion of functions in the weighted basis (or in
// the plain orthonormal polynomial family), series evaluation, and the grid
// error diagnostics used by the convergence experiments.
#pragma once

#include "wsys/basis.hpp"
#include "wsys/fast_apply.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wsys {

using ScalarField = std::function<double(TrianglePoint)>;

struct TriangleQuadrature {
    std::vector<TrianglePoint> nodes; // strictly interior
    std::vector<double> weights;      // positive, sum = 1/2
    int order;                        // polynomial exactness degree
    int size() const { return static_cast<int>(nodes.size()); }
};

// Tensor Gauss-Legendre on the (x,t) square mapped by y = (1-x)t with
// Jacobian (1-x); n1 nodes in x, n2 in t.
TriangleQuadrature duffy_quadrature(int n1, int n2);

// Which family the coefficients refer to: the weighted functions
// phi = sqrt(w) p (coefficients are plain L2 projections), or the
// orthonormal polynomials p themselves (coefficients are w-weighted
// projections).
enum class BasisKind { wsystem, polynomial };

struct ExpansionResult {
    CoeffVector coeffs;
    ParamTriple params;
    int nmax;
    BasisKind kind;
};

// coeffs[(n,k)] = integral of f * phi_{n,k} (wsystem) or f * p_{n,k} * w
// (polynomial), approximated on quad. Deterministic: per-coefficient
// pairwise summation over nodes, independent of thread count.
ExpansionResult expand(const ScalarField& f, int nmax, ParamTriple p,
                       const TriangleQuadrature& quad,
                       BasisKind kind = BasisKind::wsystem);
ExpansionResult expand_serial(const ScalarField& f, int nmax, ParamTriple p,
                              const TriangleQuadrature& quad,
                              BasisKind kind = BasisKind::wsystem);

// Partial-sum value at pt; exactly 0 on the boundary for the weighted family.
double evaluate_series(const ExpansionResult& res, TrianglePoint pt);

struct GridError {
    double x, y, err;
};

struct ErrorReport {
    double e_inf;
    double e_2;
    int m_grid;
    std::vector<GridError> pointwise;
};

// Errors over the cosine grid x_i = (1 - cos(i pi / M))/2, i = 0..M,
// restricted to j <= M - i.
ErrorReport error_report(const ScalarField& f, const ExpansionResult& res,
                         int m_grid);

struct ConvergenceRow {
    int N;           // retained coefficient count, level-major prefix
    double coef_abs; // |f_N|, magnitude of the N-th coefficient
    double e_inf;
    double e_2;
};

std::vector<ConvergenceRow> convergence_table(
    const ScalarField& f, ParamTriple p, int nmax, int m_grid,
    const TriangleQuadrature& quad, BasisKind kind = BasisKind::wsystem);

// header `N,coef_abs,e_inf,e_2`, 17 significant digits per float
void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           const std::string& path);

// estimate of lim |f_N|^(1/N): exp of the least-squares slope of log|f_N|
// against N over the trailing `window` rows. Values >= 0.9 flag a
// non-spectral (at best algebraic) coefficient decay.
double decay_estimator(const std::vector<ConvergenceRow>& rows,
                       int window = 15);

} // namespace wsys
