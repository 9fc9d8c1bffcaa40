#include "wsys/coupling_integrals.hpp"

#include "wsys/quadrature.hpp"
#include "wsys/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wsys {

namespace {

int lin(int n, int k) { return LevelIndex{n, k}.linear(); }

int panel_size(int M, int n) {
    return ((M + 1) * (M + 2) - n * (n + 1)) / 2;
}

double gamma_ratio(double num, double den) {
    return std::exp(log_gamma(num) - log_gamma(den));
}

} // namespace

// --- closed forms -----------------------------------------------------------

double s_value(int l, int k, ParamTriple p) {
    if (l < k)
        std::swap(l, k);
    const double u = gamma_ratio(p.beta + l + 1.0, p.beta + p.gamma + l + 1.0);
    const double v =
        std::exp(log_gamma(p.gamma + k + 1.0) - log_gamma(k + 1.0)) / p.gamma;
    return u * v;
}

double s_tilde_value(int l, int k, ParamTriple p) {
    if (l < k)
        std::swap(l, k);
    const double u = gamma_ratio(p.gamma + l + 1.0, p.beta + p.gamma + l + 1.0);
    const double v =
        std::exp(log_gamma(p.beta + k + 1.0) - log_gamma(k + 1.0)) / p.beta;
    const double sign = (l + k) % 2 == 0 ? 1.0 : -1.0;
    return sign * u * v;
}

double i_value(int m, int n, int k, ParamTriple p) {
    if (m < n)
        std::swap(m, n);
    if (k < 0 || k > n)
        throw std::out_of_range("i_value: need 0 <= k <= min(m,n)");
    const double sign = (m + n) % 2 == 0 ? 1.0 : -1.0;
    const double nk = std::exp(log_gamma(p.alpha + n - k + 1.0) -
                               log_gamma(n - k + 1.0)) /
                      p.alpha;
    const double mk = gamma_ratio(p.beta + p.gamma + m + k + 2.0,
                                  p.alpha + p.beta + p.gamma + m + k + 2.0);
    return sign * nk * mk;
}

// --- ladders ------------------------------------------------------------------

double SCache::i_val(int m, int n, int k) const {
    if (m < n)
        std::swap(m, n);
    return i_tab[m * (m + 1) * (m + 2) / 6 + n * (n + 1) / 2 + k];
}

SCache recurrence_ladders(int M, ParamTriple p) {
    SCache c{M, p, {}, {}, {}};
    const int W = M + 1;
    c.s_tab.assign(W * W, 0.0);
    c.st_tab.assign(W * W, 0.0);

    // S ladder, lower branch l >= k, then mirror
    c.s_tab[0] = beta(p.beta + 1.0, p.gamma);
    for (int l = 1; l <= M; ++l)
        c.s_tab[l * W] =
            (p.beta + l) / (p.beta + p.gamma + l) * c.s_tab[(l - 1) * W];
    for (int l = 0; l <= M; ++l)
        for (int k = 1; k <= l; ++k)
            c.s_tab[l * W + k] = (p.gamma + k) / k * c.s_tab[l * W + k - 1];
    for (int l = 0; l <= M; ++l)
        for (int k = l + 1; k <= M; ++k)
            c.s_tab[l * W + k] = c.s_tab[k * W + l];

    // S-tilde ladder
    c.st_tab[0] = beta(p.beta, p.gamma + 1.0);
    for (int l = 1; l <= M; ++l)
        c.st_tab[l * W] =
            -(p.gamma + l) / (p.beta + p.gamma + l) * c.st_tab[(l - 1) * W];
    for (int l = 0; l <= M; ++l)
        for (int k = 1; k <= l; ++k)
            c.st_tab[l * W + k] = -(p.beta + k) / k * c.st_tab[l * W + k - 1];
    for (int l = 0; l <= M; ++l)
        for (int k = l + 1; k <= M; ++k)
            c.st_tab[l * W + k] = c.st_tab[k * W + l];

    // I ladder over (m, n, k), k <= n <= m
    c.i_tab.assign((M + 1) * (M + 2) * (M + 3) / 6, 0.0);
    auto at = [&](int m, int n, int k) -> double& {
        return c.i_tab[m * (m + 1) * (m + 2) / 6 + n * (n + 1) / 2 + k];
    };
    const double a = p.alpha, bg = p.beta + p.gamma;
    at(0, 0, 0) = beta(a, bg + 2.0);
    for (int m = 1; m <= M; ++m)
        at(m, 0, 0) = -(bg + m + 1.0) / (a + bg + m + 1.0) * at(m - 1, 0, 0);
    for (int m = 0; m <= M; ++m) {
        for (int n = 1; n <= m; ++n)
            at(m, n, 0) = -(a + n) / n * at(m, n - 1, 0);
        for (int n = 0; n <= m; ++n)
            for (int k = 1; k <= n; ++k)
                at(m, n, k) = (n - k + 1.0) * (bg + m + k + 1.0) /
                              ((a + n - k + 1.0) * (a + bg + m + k + 1.0)) *
                              at(m, n, k - 1);
    }
    return c;
}

// --- I-tilde table ------------------------------------------------------------

StepCoeffs itilde_step_coeffs(int m, int l, ParamTriple p) {
    const ShiftCoeffs s = shift_coeffs(
        m - l, JacobiParams{p.beta + p.gamma + 2.0 * l - 1.0, p.alpha});
    return {s.c, 0.5 * s.d * s.a, 0.5 * s.d * s.b};
}

double ItildeTable::get(int m, int l, int n, int k) const {
    if (l < 0 || l > m || k < 0 || k > n || m > M || n > M)
        throw std::out_of_range("ItildeTable::get: bad indices");
    if (m < n) {
        std::swap(m, n);
        std::swap(l, k);
    }
    if (m == n)
        return l == k ? panels[lin(m, k)][k] : 0.0;
    if (l < k)
        return 0.0;
    return raw(m, l, n, k);
}

namespace {

// fill panel (n,k); panels of level n-1 must already be complete
void fill_panel(ItildeTable& t, int n, int k,
                const std::vector<StepCoeffs>& sc) {
    const int M = t.M;
    const ParamTriple p = t.p;
    auto& P = t.panels[lin(n, k)];
    P.assign(panel_size(M, n), 0.0);

    // diagonal row m = n: single nonzero at column k
    double dval;
    if (n == 0) {
        dval = beta(p.alpha + 1.0, p.beta + p.gamma + 1.0);
    } else if (k == 0) {
        // level-step relation at (n,1) solved for the diagonal; its (n,1)
        // target is a structural zero
        const StepCoeffs& c = sc[lin(n, 1)];
        const int ro = ItildeTable::row_off(n - 1, n);
        const double z1 = 1 <= n - 1 ? t.panels[lin(n - 1, 1)][ro + 0] : 0.0;
        const double z0 = t.panels[lin(n - 1, 0)][ro + 0];
        dval = (c.q * z1 + c.d1 * z0) / c.d2;
    } else {
        // level-step relation in the second pair at component k
        const StepCoeffs& c = sc[lin(n, k)];
        const int ro = ItildeTable::row_off(n - 1, n);
        const double zk =
            k <= n - 1 ? t.panels[lin(n - 1, k)][ro + k] : 0.0;
        const double zk1 = t.panels[lin(n - 1, k - 1)][ro + k];
        dval = c.q * zk + c.d1 * zk1;
    }
    P[k] = dval;

    // rows m > n
    for (int m = n + 1; m <= M; ++m) {
        const int ro = ItildeTable::row_off(n, m);
        const int rp = ItildeTable::row_off(n, m - 1);
        if (k == 0)
            P[ro] = sc[lin(m, 0)].q * P[rp];
        for (int l = std::max(1, k); l <= m; ++l) {
            const StepCoeffs& c = sc[lin(m, l)];
            const double s1 = l <= m - 1 ? P[rp + l] : 0.0;
            const double s2 = P[rp + l - 1];
            const double s3 = P[ro + l - 1];
            P[ro + l] = c.q * s1 + c.d1 * s2 - c.d2 * s3;
        }
    }
}

ItildeTable build_itilde_impl(int M, ParamTriple p, bool parallel) {
    if (M < 0)
        throw std::invalid_argument("build_itilde: M must be >= 0");
    ItildeTable t{M, p, {}};
    t.panels.resize(level_count(M));

    // step coefficients shared by every panel
    std::vector<StepCoeffs> sc(level_count(M));
    for (int m = 0; m <= M; ++m)
        for (int l = 0; l <= m; ++l)
            sc[lin(m, l)] = itilde_step_coeffs(m, l, p);

    for (int n = 0; n <= M; ++n) {
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (int k = 0; k <= n; ++k)
                fill_panel(t, n, k, sc);
        } else {
            for (int k = 0; k <= n; ++k)
                fill_panel(t, n, k, sc);
        }
    }
    return t;
}

} // namespace

ItildeTable build_itilde(int M, ParamTriple p) {
    return build_itilde_impl(M, p, true);
}

ItildeTable build_itilde_serial(int M, ParamTriple p) {
    return build_itilde_impl(M, p, false);
}

double itilde_diag_quadrature(int m, int l, ParamTriple p) {
    const Rule1D r =
        gauss_jacobi01(m - l + 1, 2.0 * l + p.beta + p.gamma, p.alpha);
    const JacobiParams jp{p.beta + p.gamma + 2.0 * l + 1.0, p.alpha};
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) {
        const double v = jacobi_eval(m - l, jp, 2.0 * r.x[i] - 1.0);
        s += r.w[i] * v * v;
    }
    return s;
}

// --- oracles ------------------------------------------------------------------

namespace {

template <class F>
OracleValue oracle_pair(int nodes, double wa, double wb, F integrand) {
    auto eval = [&](int n) {
        const Rule1D r = gauss_jacobi01(n, wa, wb);
        double s = 0.0;
        for (int i = 0; i < r.size(); ++i)
            s += r.w[i] * integrand(r.x[i]);
        return s;
    };
    const double v1 = eval(nodes);
    const double v2 = eval(nodes + 8);
    return {v2, std::abs(v2 - v1)};
}

} // namespace

OracleValue oracle_s(int l, int k, ParamTriple p) {
    const JacobiParams jp{p.gamma, p.beta};
    return oracle_pair((l + k) / 2 + 2, p.gamma - 1.0, p.beta, [&](double t) {
        return jacobi_eval(l, jp, 2.0 * t - 1.0) *
               jacobi_eval(k, jp, 2.0 * t - 1.0);
    });
}

OracleValue oracle_s_tilde(int l, int k, ParamTriple p) {
    const JacobiParams jp{p.gamma, p.beta};
    return oracle_pair((l + k) / 2 + 2, p.gamma, p.beta - 1.0, [&](double t) {
        return jacobi_eval(l, jp, 2.0 * t - 1.0) *
               jacobi_eval(k, jp, 2.0 * t - 1.0);
    });
}

OracleValue oracle_i(int m, int n, int k, ParamTriple p) {
    const JacobiParams jp{p.beta + p.gamma + 2.0 * k + 1.0, p.alpha};
    return oracle_pair((m + n) / 2 + 2, p.beta + p.gamma + 2.0 * k + 1.0,
                       p.alpha - 1.0, [&](double x) {
                           return jacobi_eval(m - k, jp, 2.0 * x - 1.0) *
                                  jacobi_eval(n - k, jp, 2.0 * x - 1.0);
                       });
}

OracleValue oracle_itilde(int m, int l, int n, int k, ParamTriple p) {
    const JacobiParams jl{p.beta + p.gamma + 2.0 * l + 1.0, p.alpha};
    const JacobiParams jk{p.beta + p.gamma + 2.0 * k + 1.0, p.alpha};
    return oracle_pair((m + n) / 2 + 2, l + k + p.beta + p.gamma, p.alpha,
                       [&](double x) {
                           return jacobi_eval(m - l, jl, 2.0 * x - 1.0) *
                                  jacobi_eval(n - k, jk, 2.0 * x - 1.0);
                       });
}

// --- binary cache ---------------------------------------------------------------

namespace {
constexpr uint8_t kCacheVersion = 1;
}

void dump_itilde(const ItildeTable& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("dump_itilde: cannot open " + path);
    f.put(static_cast<char>(kCacheVersion));
    const double hdr[4] = {static_cast<double>(t.M), t.p.alpha, t.p.beta,
                           t.p.gamma};
    f.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    for (int n = 0; n <= t.M; ++n)
        for (int k = 0; k <= n; ++k) {
            const auto& P = t.panels[lin(n, k)];
            f.write(reinterpret_cast<const char*>(P.data()),
                    static_cast<std::streamsize>(P.size() * sizeof(double)));
        }
    if (!f)
        throw std::runtime_error("dump_itilde: write failed for " + path);
}

ItildeTable load_itilde(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("load_itilde: cannot open " + path);
    const int ver = f.get();
    if (ver != kCacheVersion)
        throw std::runtime_error("load_itilde: unsupported version");
    double hdr[4];
    f.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    if (!f)
        throw std::runtime_error("load_itilde: truncated header");
    const double Md = hdr[0];
    if (!(Md >= 0.0) || Md != std::floor(Md) || Md > 1e6)
        throw std::runtime_error("load_itilde: bad level in header");
    const int M = static_cast<int>(Md);
    ItildeTable t{M, ParamTriple(hdr[1], hdr[2], hdr[3]), {}};
    t.panels.resize(level_count(M));
    for (int n = 0; n <= M; ++n)
        for (int k = 0; k <= n; ++k) {
            auto& P = t.panels[lin(n, k)];
            P.resize(panel_size(M, n));
            f.read(reinterpret_cast<char*>(P.data()),
                   static_cast<std::streamsize>(P.size() * sizeof(double)));
            if (!f)
                throw std::runtime_error("load_itilde: truncated payload");
        }
    f.get();
    if (!f.eof())
        throw std::runtime_error("load_itilde: trailing bytes");
    return t;
}

} // namespace wsys
