#include "wsys/approx.hpp"

#include "wsys/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wsys {

namespace {

// fixed-shape recursive pairwise sum: result independent of thread layout
double pairwise_sum(const double* a, int n) {
    if (n <= 16) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += a[i];
        return s;
    }
    const int h = n / 2;
    return pairwise_sum(a, h) + pairwise_sum(a + h, n - h);
}

ExpansionResult expand_impl(const ScalarField& f, int nmax, ParamTriple p,
                            const TriangleQuadrature& quad, BasisKind kind,
                            bool parallel) {
    if (nmax < 0)
        throw std::invalid_argument("expand: nmax must be nonnegative");
    if (quad.size() == 0 ||
        quad.nodes.size() != quad.weights.size())
        throw std::invalid_argument("expand: malformed quadrature rule");

    const int D = level_count(nmax);
    const int nn = quad.size();

    // node factors: weight * f * (sqrt(w) or w); f checked for finiteness
    std::vector<double> g(nn);
    for (int a = 0; a < nn; ++a) {
        const TrianglePoint pt = quad.nodes[a];
        const double fv = f(pt);
        if (!std::isfinite(fv)) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "expand: non-finite value at node (%.17g, %.17g)",
                          pt.x, pt.y);
            throw std::invalid_argument(buf);
        }
        const double wv = weight(p, pt);
        const double scale =
            kind == BasisKind::wsystem ? std::sqrt(wv) : wv;
        g[a] = quad.weights[a] * fv * scale;
    }

    // column-major contribution matrix: row i holds the per-node terms of c_i
    std::vector<double> contrib(static_cast<size_t>(D) * nn);
#pragma omp parallel for schedule(static) if (parallel)
    for (int a = 0; a < nn; ++a) {
        std::vector<double> row;
        koornwinder_all(nmax, p, quad.nodes[a], row);
        for (int i = 0; i < D; ++i)
            contrib[static_cast<size_t>(i) * nn + a] = row[i] * g[a];
    }

    ExpansionResult res{CoeffVector(nmax), p, nmax, kind};
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < D; ++i)
        res.coeffs.v[i] = pairwise_sum(&contrib[static_cast<size_t>(i) * nn], nn);
    return res;
}

const double kPi = std::acos(-1.0);

std::vector<TrianglePoint> cosine_grid(int m_grid) {
    if (m_grid < 1)
        throw std::invalid_argument("cosine grid: M must be >= 1");
    std::vector<TrianglePoint> pts;
    for (int i = 0; i <= m_grid; ++i) {
        const double x = 0.5 * (1.0 - std::cos(i * kPi / m_grid));
        for (int j = 0; j <= m_grid - i; ++j) {
            const double y = 0.5 * (1.0 - std::cos(j * kPi / m_grid));
            pts.push_back({x, y});
        }
    }
    return pts;
}

} // namespace

TriangleQuadrature duffy_quadrature(int n1, int n2) {
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("duffy_quadrature: node counts must be >= 1");
    const Rule1D rx = gauss_legendre01(n1);
    const Rule1D rt = gauss_legendre01(n2);
    TriangleQuadrature q;
    q.order = std::min(2 * n1 - 2, 2 * n2 - 1);
    q.nodes.reserve(static_cast<size_t>(n1) * n2);
    q.weights.reserve(static_cast<size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const double x = rx.x[i];
            const double t = rt.x[j];
            q.nodes.push_back({x, (1.0 - x) * t});
            q.weights.push_back(rx.w[i] * rt.w[j] * (1.0 - x));
        }
    return q;
}

ExpansionResult expand(const ScalarField& f, int nmax, ParamTriple p,
                       const TriangleQuadrature& quad, BasisKind kind) {
    return expand_impl(f, nmax, p, quad, kind, true);
}

ExpansionResult expand_serial(const ScalarField& f, int nmax, ParamTriple p,
                              const TriangleQuadrature& quad, BasisKind kind) {
    return expand_impl(f, nmax, p, quad, kind, false);
}

double evaluate_series(const ExpansionResult& res, TrianglePoint pt) {
    if (!in_reference_triangle(pt))
        throw std::domain_error("evaluate_series: point outside the triangle");
    double scale = 1.0;
    if (res.kind == BasisKind::wsystem) {
        scale = std::sqrt(weight(res.params, pt));
        if (scale == 0.0)
            return 0.0; // the weighted family vanishes on the boundary
    }
    std::vector<double> row;
    koornwinder_all(res.nmax, res.params, pt, row);
    double s = 0.0;
    for (size_t i = 0; i < row.size(); ++i)
        s += res.coeffs.v[i] * row[i];
    return scale * s;
}

ErrorReport error_report(const ScalarField& f, const ExpansionResult& res,
                         int m_grid) {
    ErrorReport rep{0.0, 0.0, m_grid, {}};
    double sq = 0.0;
    for (const TrianglePoint pt : cosine_grid(m_grid)) {
        const double e = f(pt) - evaluate_series(res, pt);
        rep.pointwise.push_back({pt.x, pt.y, e});
        rep.e_inf = std::max(rep.e_inf, std::abs(e));
        sq += e * e;
    }
    rep.e_2 = std::sqrt(sq);
    return rep;
}

std::vector<ConvergenceRow> convergence_table(const ScalarField& f,
                                              ParamTriple p, int nmax,
                                              int m_grid,
                                              const TriangleQuadrature& quad,
                                              BasisKind kind) {
    const ExpansionResult res = expand(f, nmax, p, quad, kind);
    const std::vector<TrianglePoint> grid = cosine_grid(m_grid);
    const int D = level_count(nmax);
    const size_t G = grid.size();

    // per-point basis values (scaled for evaluation) and exact targets
    std::vector<double> fval(G), partial(G, 0.0);
    std::vector<std::vector<double>> basis(G);
    for (size_t a = 0; a < G; ++a) {
        fval[a] = f(grid[a]);
        koornwinder_all(nmax, p, grid[a], basis[a]);
        double scale = 1.0;
        if (kind == BasisKind::wsystem)
            scale = std::sqrt(weight(p, grid[a]));
        for (double& b : basis[a])
            b *= scale;
    }

    std::vector<ConvergenceRow> rows;
    rows.reserve(D);
    for (int N = 1; N <= D; ++N) {
        double einf = 0.0, sq = 0.0;
        for (size_t a = 0; a < G; ++a) {
            partial[a] += res.coeffs.v[N - 1] * basis[a][N - 1];
            const double e = fval[a] - partial[a];
            einf = std::max(einf, std::abs(e));
            sq += e * e;
        }
        rows.push_back({N, std::abs(res.coeffs.v[N - 1]), einf, std::sqrt(sq)});
    }
    return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp)
        throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(fp, "N,coef_abs,e_inf,e_2\n");
    for (const ConvergenceRow& r : rows)
        std::fprintf(fp, "%d,%.17g,%.17g,%.17g\n", r.N, r.coef_abs, r.e_inf,
                     r.e_2);
    if (std::fclose(fp) != 0)
        throw std::runtime_error("write failure: " + path);
}

double decay_estimator(const std::vector<ConvergenceRow>& rows, int window) {
    // least-squares slope of log|f_N| against N over the trailing window;
    // exp(slope) estimates the limit of |f_N|^{1/N}. Zero coefficients are
    // skipped (already converged); fewer than two usable points -> 0.
    const int n = static_cast<int>(rows.size());
    const int lo = std::max(0, n - window);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (int i = lo; i < n; ++i) {
        if (rows[i].coef_abs <= 0.0)
            continue;
        const double x = rows[i].N;
        const double y = std::log(rows[i].coef_abs);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2)
        return 0.0;
    const double denom = cnt * sxx - sx * sx;
    if (denom <= 0.0)
        return 0.0;
    return std::exp((cnt * sxy - sx * sy) / denom);
}

} // namespace wsys
