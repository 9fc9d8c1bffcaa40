#include "wsys/diffmat.hpp"

#include "wsys/quadrature.hpp"
#include "wsys/special_fn.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace wsys {

namespace {

int lin(int n, int k) { return LevelIndex{n, k}.linear(); }

DiffOperator assemble_impl(DiffAxis axis, int M, ParamTriple p, bool parallel) {
    const int D = level_count(M);
    DiffOperator op{axis, M, p, Eigen::MatrixXd::Zero(D, D)};
    const SCache sc = recurrence_ladders(M, p);
    const ItildeTable it = build_itilde(M, p);

    std::vector<double> r(D), h01t(M + 1);
    for (int n = 0; n <= M; ++n)
        for (int k = 0; k <= n; ++k)
            r[lin(n, k)] = r_norm(n, k, p);
    for (int k = 0; k <= M; ++k)
        h01t[k] = jacobi_norm_h01(k, JacobiParams{p.gamma, p.beta});

    // lower triangle rows by level, mirrored on the fly; each (m,n) block is
    // written by exactly one iteration, so the level loop can run in parallel
    auto fill_level = [&](int m) {
        for (int l = 0; l <= m; ++l) {
            const int row = lin(m, l);
            for (int n = 0; n < m; ++n)
                for (int k = 0; k <= n; ++k) {
                    const int col = lin(n, k);
                    const double rr = 0.5 * r[row] * r[col];
                    double val;
                    if (axis == DiffAxis::X) {
                        const double fpart =
                            l == k ? p.alpha * h01t[k] * sc.i_val(m, n, k)
                                   : 0.0;
                        const double epart =
                            l >= k ? p.gamma * sc.s(l, k) * it.raw(m, l, n, k)
                                   : 0.0;
                        val = rr * (fpart - epart);
                    } else {
                        val = l >= k
                                  ? rr *
                                        (p.beta * sc.st(l, k) -
                                         p.gamma * sc.s(l, k)) *
                                        it.raw(m, l, n, k)
                                  : 0.0;
                    }
                    op.dense(row, col) = val;
                    op.dense(col, row) = -val;
                }
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int m = 1; m <= M; ++m)
            fill_level(m);
    } else {
        for (int m = 1; m <= M; ++m)
            fill_level(m);
    }
    return op;
}

// d/dx and d/dy of p_{n,k} at the Duffy point (x, t), ambient derivatives
double dp_dx(int n, int k, ParamTriple p, double x, double t, double rnk) {
    const JacobiParams jx{p.beta + p.gamma + 2.0 * k + 1.0, p.alpha};
    const JacobiParams jt{p.gamma, p.beta};
    const double ux = 2.0 * x - 1.0, ut = 2.0 * t - 1.0;
    const double Pj = jacobi_eval(n - k, jx, ux);
    const double Pk = jacobi_eval(k, jt, ut);
    const double dPj = jacobi_deriv(n - k, jx, ux);
    const double dPk = jacobi_deriv(k, jt, ut);
    const double omx = 1.0 - x;
    const double omxk = std::pow(omx, k);
    const double omxk1 = k >= 1 ? std::pow(omx, k - 1) : 0.0;
    return rnk * (-k * omxk1 * Pj * Pk + 2.0 * omxk * dPj * Pk +
                  2.0 * t * omxk1 * Pj * dPk);
}

double dp_dy(int n, int k, ParamTriple p, double x, double t, double rnk) {
    if (k == 0)
        return 0.0;
    const JacobiParams jx{p.beta + p.gamma + 2.0 * k + 1.0, p.alpha};
    const JacobiParams jt{p.gamma, p.beta};
    const double Pj = jacobi_eval(n - k, jx, 2.0 * x - 1.0);
    const double dPk = jacobi_deriv(k, jt, 2.0 * t - 1.0);
    return rnk * 2.0 * std::pow(1.0 - x, k - 1) * Pj * dPk;
}

// weighted pairwise product accumulation: out += sum_ij w_ij u_i(x) v_j(x)
// for one Gauss-Jacobi tensor rule
template <class FillCols>
void accumulate_term(Eigen::MatrixXd& out, double scale, int M, ParamTriple p,
                     double ax, double bx, double at, double bt,
                     FillCols fill_cols) {
    const int D = level_count(M);
    const int nx = M + 4, nt = M + 4;
    const Rule1D rx = gauss_jacobi01(nx, ax, bx);
    const Rule1D rt = gauss_jacobi01(nt, at, bt);
    std::vector<double> rows, cols(D);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nt; ++j) {
            const double w = scale * rx.w[i] * rt.w[j];
            koornwinder_all_duffy(M, p, rx.x[i], rt.x[j], rows);
            fill_cols(rx.x[i], rt.x[j], cols);
            for (int a = 0; a < D; ++a) {
                const double wa = w * rows[a];
                for (int b = 0; b < D; ++b)
                    out(a, b) += wa * cols[b];
            }
        }
}

} // namespace

DiffOperator assemble_x(int M, ParamTriple p) {
    return assemble_impl(DiffAxis::X, M, p, true);
}
DiffOperator assemble_y(int M, ParamTriple p) {
    return assemble_impl(DiffAxis::Y, M, p, true);
}
DiffOperator assemble_x_serial(int M, ParamTriple p) {
    return assemble_impl(DiffAxis::X, M, p, false);
}
DiffOperator assemble_y_serial(int M, ParamTriple p) {
    return assemble_impl(DiffAxis::Y, M, p, false);
}

Eigen::MatrixXd oracle_assemble(DiffAxis axis, int M, ParamTriple p) {
    const int D = level_count(M);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(D, D);
    std::vector<double> r(D);
    for (int n = 0; n <= M; ++n)
        for (int k = 0; k <= n; ++k)
            r[lin(n, k)] = r_norm(n, k, p);

    const double a = p.alpha, b = p.beta, g = p.gamma;
    auto cols_p = [&](double x, double t, std::vector<double>& c) {
        koornwinder_all_duffy(M, p, x, t, c);
    };

    if (axis == DiffAxis::X) {
        // <dphi_n/dx, phi_m> = int w dp_n/dx p_m
        //   + a/2 int x^{a-1} y^b z^g p_n p_m - g/2 int x^a y^b z^{g-1} p_n p_m
        accumulate_term(out, 1.0, M, p, b + g + 1.0, a, g, b,
                        [&](double x, double t, std::vector<double>& c) {
                            for (int n = 0; n <= M; ++n)
                                for (int k = 0; k <= n; ++k)
                                    c[lin(n, k)] =
                                        dp_dx(n, k, p, x, t, r[lin(n, k)]);
                        });
        accumulate_term(out, 0.5 * a, M, p, b + g + 1.0, a - 1.0, g, b, cols_p);
        accumulate_term(out, -0.5 * g, M, p, b + g, a, g - 1.0, b, cols_p);
    } else {
        accumulate_term(out, 1.0, M, p, b + g + 1.0, a, g, b,
                        [&](double x, double t, std::vector<double>& c) {
                            for (int n = 0; n <= M; ++n)
                                for (int k = 0; k <= n; ++k)
                                    c[lin(n, k)] =
                                        dp_dy(n, k, p, x, t, r[lin(n, k)]);
                        });
        accumulate_term(out, 0.5 * b, M, p, b + g, a, g, b - 1.0, cols_p);
        accumulate_term(out, -0.5 * g, M, p, b + g, a, g - 1.0, b, cols_p);
    }
    return out;
}

void export_coordinate(const Eigen::MatrixXd& mat, const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f)
        throw std::runtime_error("export_coordinate: cannot open " + path);
    char buf[96];
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
        for (Eigen::Index j = 0; j < mat.cols(); ++j) {
            const double v = mat(i, j);
            if (v == 0.0)
                continue;
            std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n",
                          static_cast<long long>(i), static_cast<long long>(j),
                          v);
            f << buf;
        }
    if (!f)
        throw std::runtime_error("export_coordinate: write failed " + path);
}

} // namespace wsys
