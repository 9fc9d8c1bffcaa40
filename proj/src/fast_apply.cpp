#include "wsys/fast_apply.hpp"

#include "wsys/special_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace wsys {

namespace {

int lin(int n, int k) { return LevelIndex{n, k}.linear(); }

bool all_zero(const CoeffVector& x) {
    for (double c : x.v)
        if (c != 0.0)
            return false;
    return true;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

FEFactors make_common(int M, ParamTriple p, OpCounter* ctr) {
    FEFactors f{M, p, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    const int D = level_count(M);
    const double a = p.alpha, b = p.beta, g = p.gamma;
    long long setup = 0;

    f.r.resize(D);
    for (int n = 0; n <= M; ++n)
        for (int k = 0; k <= n; ++k) {
            f.r[lin(n, k)] = r_norm(n, k, p);
            setup += 6;
        }

    std::vector<double> h01t(M + 1);
    for (int j = 0; j <= M; ++j) {
        h01t[j] = jacobi_norm_h01(j, JacobiParams{g, b});
        setup += 8;
    }

    f.A.resize(D);
    f.B.resize(D);
    for (int m = 0; m <= M; ++m)
        for (int j = 0; j <= m; ++j) {
            const double sgn = m % 2 == 0 ? 1.0 : -1.0;
            f.A[lin(m, j)] =
                f.r[lin(m, j)] * sgn * h01t[j] *
                std::exp(log_gamma(b + g + m + j + 2.0) -
                         log_gamma(a + b + g + m + j + 2.0)) *
                kInvSqrt2;
            f.B[lin(m, j)] = f.r[lin(m, j)] * sgn *
                             std::exp(log_gamma(a + m - j + 1.0) -
                                      log_gamma(m - j + 1.0)) *
                             kInvSqrt2;
            setup += 12;
        }

    f.q.resize(D);
    f.d1.resize(D);
    f.d2.resize(D);
    for (int m = 0; m <= M; ++m)
        for (int l = 0; l <= m; ++l) {
            const StepCoeffs c = itilde_step_coeffs(m, l, p);
            f.q[lin(m, l)] = c.q;
            f.d1[lin(m, l)] = c.d1;
            f.d2[lin(m, l)] = c.d2;
            setup += 10;
        }

    f.ul.resize(M + 1);
    f.vl.resize(M + 1);
    f.utl.resize(M + 1);
    f.vtl.resize(M + 1);
    for (int l = 0; l <= M; ++l) {
        const double sgn = l % 2 == 0 ? 1.0 : -1.0;
        f.ul[l] = std::exp(log_gamma(b + l + 1.0) - log_gamma(b + g + l + 1.0));
        f.vl[l] =
            std::exp(log_gamma(g + l + 1.0) - log_gamma(l + 1.0)) / g;
        f.utl[l] =
            sgn * std::exp(log_gamma(g + l + 1.0) - log_gamma(b + g + l + 1.0));
        f.vtl[l] =
            sgn * std::exp(log_gamma(b + l + 1.0) - log_gamma(l + 1.0)) / b;
        setup += 16;
    }
    if (ctr)
        ctr->setup_flops += setup;
    return f;
}

void finish_ediag(FEFactors& f, OpCounter* ctr) {
    const int M = f.M;
    f.ediag.resize(level_count(M));
    for (int m = 0; m <= M; ++m)
        for (int l = 0; l <= m; ++l) {
            const double rv = f.r[lin(m, l)];
            f.ediag[lin(m, l)] = 0.5 * f.p.gamma * f.ul[l] * f.vl[l] * rv *
                                 rv * f.idiag[lin(m, l)];
        }
    if (ctr)
        ctr->setup_flops += 6LL * level_count(M);
}

// One E-type pass: out += sign * [lower readout - upper readout], where the
// lower readout scales with cfac/2 * U[l] and injects V[k], and the upper
// readout scales with cfac/2 * V[l] and injects U[k].
void e_like_pass(const FEFactors& f, const CoeffVector& x,
                 const std::vector<double>& U, const std::vector<double>& V,
                 double cfac, double sign, CoeffVector& out, OpCounter* ctr) {
    const int M = f.M;
    const double scale = sign * 0.5 * cfac;
    long long rmul = 0, radd = 0;

    // ascending sweep for the strictly-lower part
    std::vector<double> t(M + 1, 0.0), z(M + 1, 0.0);
    for (int m = 1; m <= M; ++m) {
        for (int l = 0; l <= m - 1; ++l) {
            const double gv = V[l] * f.r[lin(m - 1, l)] * x.at(m - 1, l);
            z[l] = t[l] + f.idiag[lin(m - 1, l)] * gv;
        }
        z[m] = 0.0;
        t[0] = f.q[lin(m, 0)] * z[0];
        for (int l = 1; l <= m; ++l)
            t[l] = f.q[lin(m, l)] * z[l] + f.d1[lin(m, l)] * z[l - 1] -
                   f.d2[lin(m, l)] * t[l - 1];
        for (int l = 0; l <= m; ++l)
            out.at(m, l) += scale * f.r[lin(m, l)] * U[l] * t[l];
        rmul += 3LL * m + (3LL * m + 1) + 3LL * (m + 1);
        radd += 2LL * m + 2LL * m + (m + 1);
    }

    // descending adjoint sweep for the strictly-upper part
    std::vector<double> c(M + 1), zz(M + 2), chat(M + 1);
    for (int k = 0; k <= M; ++k)
        c[k] = U[k] * f.r[lin(M, k)] * x.at(M, k);
    rmul += 2LL * (M + 1);
    for (int m = M - 1; m >= 0; --m) {
        zz[m + 1] = c[m + 1];
        for (int k = m; k >= 0; --k)
            zz[k] = c[k] - f.d2[lin(m + 1, k + 1)] * zz[k + 1];
        for (int k = 0; k <= m; ++k)
            chat[k] = f.q[lin(m + 1, k)] * zz[k] +
                      f.d1[lin(m + 1, k + 1)] * zz[k + 1];
        for (int l = 0; l <= m; ++l)
            out.at(m, l) -=
                scale * f.r[lin(m, l)] * V[l] * f.idiag[lin(m, l)] * chat[l];
        for (int k = 0; k <= m; ++k)
            c[k] = U[k] * f.r[lin(m, k)] * x.at(m, k) + chat[k];
        rmul += (m + 1) + 2LL * (m + 1) + 4LL * (m + 1) + 2LL * (m + 1);
        radd += (m + 1) + (m + 1) + (m + 1) + (m + 1);
    }

    if (ctr) {
        ctr->raw_mul += rmul;
        ctr->raw_add += radd;
        // counting convention: 4m+2 per level
        for (int m = 1; m <= M; ++m)
            ctr->flops += 4LL * m + 2;
    }
}

} // namespace

double CoeffVector::norm2() const {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

FEFactors make_fe_factors(int M, ParamTriple p, OpCounter* ctr) {
    FEFactors f = make_common(M, p, ctr);
    f.idiag.resize(level_count(M));
    for (int m = 0; m <= M; ++m)
        for (int l = 0; l <= m; ++l)
            f.idiag[lin(m, l)] = itilde_diag_quadrature(m, l, p);
    if (ctr)
        ctr->setup_flops += 4LL * level_count(M) * (M + 2);
    finish_ediag(f, ctr);
    return f;
}

FEFactors make_fe_factors(const ItildeTable& table, OpCounter* ctr) {
    FEFactors f = make_common(table.M, table.p, ctr);
    f.idiag.resize(level_count(table.M));
    for (int m = 0; m <= table.M; ++m)
        for (int l = 0; l <= m; ++l)
            f.idiag[lin(m, l)] = table.diag(m, l);
    finish_ediag(f, ctr);
    return f;
}

CoeffVector apply_f(const FEFactors& f, const CoeffVector& x, OpCounter* ctr) {
    if (x.M != f.M)
        throw std::invalid_argument("apply_f: level mismatch");
    const int M = f.M;
    CoeffVector out(M);
    if (all_zero(x))
        return out;
    std::vector<double> rho(M + 1);
    for (int j = 0; j <= M; ++j) {
        double acc = 0.0;
        for (int m = M; m >= j; --m) {
            rho[m] = acc;
            acc += f.A[lin(m, j)] * x.at(m, j);
        }
        double sigma = 0.0;
        for (int m = j; m <= M; ++m) {
            sigma += f.B[lin(m, j)] * x.at(m, j);
            out.at(m, j) =
                f.A[lin(m, j)] * sigma - f.B[lin(m, j)] * rho[m];
        }
        if (ctr) {
            const int visits = M - j + 1;
            ctr->flops += 4LL * visits;
            ctr->raw_mul += 4LL * visits;
            ctr->raw_add += 3LL * visits;
        }
    }
    return out;
}

CoeffVector apply_e(const FEFactors& f, const CoeffVector& x, OpCounter* ctr) {
    if (x.M != f.M)
        throw std::invalid_argument("apply_e: level mismatch");
    CoeffVector out(f.M);
    if (all_zero(x))
        return out;
    e_like_pass(f, x, f.ul, f.vl, f.p.gamma, 1.0, out, ctr);
    for (int m = 0; m <= f.M; ++m)
        for (int l = 0; l <= m; ++l)
            out.at(m, l) += f.ediag[lin(m, l)] * x.at(m, l);
    if (ctr) {
        ctr->raw_mul += level_count(f.M);
        ctr->raw_add += level_count(f.M);
    }
    return out;
}

CoeffVector apply_x(const FEFactors& f, const CoeffVector& x, OpCounter* ctr) {
    if (x.M == f.M && all_zero(x))
        return CoeffVector(f.M);
    CoeffVector fe = apply_f(f, x, ctr);
    CoeffVector ee = apply_e(f, x, ctr);
    for (int i = 0; i < level_count(f.M); ++i)
        fe.v[i] -= ee.v[i];
    if (ctr)
        ctr->raw_add += level_count(f.M);
    return fe;
}

CoeffVector apply_y(const FEFactors& f, const CoeffVector& x, OpCounter* ctr) {
    if (x.M != f.M)
        throw std::invalid_argument("apply_y: level mismatch");
    CoeffVector out(f.M);
    if (all_zero(x))
        return out;
    e_like_pass(f, x, f.utl, f.vtl, f.p.beta, 1.0, out, ctr);
    e_like_pass(f, x, f.ul, f.vl, f.p.gamma, -1.0, out, ctr);
    return out;
}

Eigen::MatrixXd dense_f(const FEFactors& f) {
    const int D = level_count(f.M);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(D, D);
    for (int j = 0; j <= f.M; ++j)
        for (int m = j; m <= f.M; ++m)
            for (int n = j; n <= f.M; ++n) {
                double v;
                if (m >= n)
                    v = f.A[lin(m, j)] * f.B[lin(n, j)];
                else
                    v = -f.A[lin(n, j)] * f.B[lin(m, j)];
                out(lin(m, j), lin(n, j)) = v;
            }
    return out;
}

Eigen::MatrixXd dense_e(const FEFactors& f, const ItildeTable& table) {
    const int D = level_count(f.M);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(D, D);
    for (int m = 0; m <= f.M; ++m)
        for (int l = 0; l <= m; ++l)
            for (int n = 0; n < m; ++n)
                for (int k = 0; k <= n; ++k) {
                    if (l < k)
                        continue;
                    const double v = 0.5 * f.p.gamma * f.r[lin(m, l)] *
                                     f.r[lin(n, k)] * f.ul[l] * f.vl[k] *
                                     table.raw(m, l, n, k);
                    out(lin(m, l), lin(n, k)) = v;
                    out(lin(n, k), lin(m, l)) = -v;
                }
    for (int m = 0; m <= f.M; ++m)
        for (int l = 0; l <= m; ++l)
            out(lin(m, l), lin(m, l)) = f.ediag[lin(m, l)];
    return out;
}

} // namespace wsys
