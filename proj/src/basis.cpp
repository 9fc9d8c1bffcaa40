#include "wsys/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace wsys {

namespace {

constexpr double kSnapTol = 1e-12;

// Snap a point that is within kSnapTol of the closed triangle onto it;
// reject anything farther out.
TrianglePoint snap_point(TrianglePoint pt) {
    double x = pt.x, y = pt.y;
    if (x < 0.0) {
        if (x < -kSnapTol)
            throw std::domain_error("basis: point outside reference triangle");
        x = 0.0;
    }
    if (y < 0.0) {
        if (y < -kSnapTol)
            throw std::domain_error("basis: point outside reference triangle");
        y = 0.0;
    }
    if (x + y > 1.0) {
        if (x + y > 1.0 + kSnapTol)
            throw std::domain_error("basis: point outside reference triangle");
        if (x > 1.0)
            x = 1.0;
        y = 1.0 - x;
    }
    return {x, y};
}

// P_j^{(a,b)}(u) for j = 0..jmax into out (ascending recurrence, one pass).
void jacobi_row(int jmax, double a, double b, double u, double* out) {
    out[0] = 1.0;
    if (jmax == 0)
        return;
    out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * u;
    for (int m = 2; m <= jmax; ++m) {
        const double c1 = 2.0 * m * (m + a + b) * (2.0 * m + a + b - 2.0);
        const double c2 = (2.0 * m + a + b - 1.0) * (a * a - b * b);
        const double c3 = (2.0 * m + a + b - 2.0) * (2.0 * m + a + b - 1.0) *
                          (2.0 * m + a + b);
        const double c4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + a + b);
        out[m] = ((c2 + c3 * u) * out[m - 1] - c4 * out[m - 2]) / c1;
    }
}

} // namespace

ParamTriple::ParamTriple(double a, double b, double g)
    : alpha(a), beta(b), gamma(g) {
    if (!(a > 0.0) || !(b > 0.0) || !(g > 0.0))
        throw std::domain_error("ParamTriple: exponents must be positive");
}

LevelIndex level_unrank(int i) {
    if (i < 0)
        throw std::out_of_range("level_unrank: negative index");
    int n = static_cast<int>((std::sqrt(8.0 * i + 1.0) - 1.0) / 2.0);
    while (n * (n + 1) / 2 > i)
        --n;
    while ((n + 1) * (n + 2) / 2 <= i)
        ++n;
    return {n, i - n * (n + 1) / 2};
}

bool in_reference_triangle(TrianglePoint pt, double tol) {
    return pt.x >= -tol && pt.y >= -tol && pt.x + pt.y <= 1.0 + tol;
}

TrianglePoint GeneralTriangle::to_reference(std::array<double, 2> q) const {
    const double a11 = v1[0] - v0[0], a12 = v2[0] - v0[0];
    const double a21 = v1[1] - v0[1], a22 = v2[1] - v0[1];
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0)
        throw std::domain_error("GeneralTriangle: degenerate triangle");
    const double rx = q[0] - v0[0], ry = q[1] - v0[1];
    return {(a22 * rx - a12 * ry) / det, (a11 * ry - a21 * rx) / det};
}

std::array<double, 2> GeneralTriangle::from_reference(TrianglePoint pt) const {
    return {v0[0] + pt.x * (v1[0] - v0[0]) + pt.y * (v2[0] - v0[0]),
            v0[1] + pt.x * (v1[1] - v0[1]) + pt.y * (v2[1] - v0[1])};
}

double GeneralTriangle::jacobian() const {
    return (v1[0] - v0[0]) * (v2[1] - v0[1]) -
           (v2[0] - v0[0]) * (v1[1] - v0[1]);
}

double weight(ParamTriple p, TrianglePoint pt) {
    const TrianglePoint s = snap_point(pt);
    const double z = 1.0 - s.x - s.y;
    return std::pow(s.x, p.alpha) * std::pow(s.y, p.beta) *
           std::pow(z <= 0.0 ? 0.0 : z, p.gamma);
}

double r_norm(int n, int k, ParamTriple p) {
    if (k < 0 || k > n)
        throw std::out_of_range("r_norm: need 0 <= k <= n");
    const double h1 = jacobi_norm_h01(
        n - k, JacobiParams{p.beta + p.gamma + 2.0 * k + 1.0, p.alpha});
    const double h2 = jacobi_norm_h01(k, JacobiParams{p.gamma, p.beta});
    return 1.0 / std::sqrt(h1 * h2);
}

double koornwinder_eval(int n, int k, ParamTriple p, TrianglePoint pt) {
    if (k < 0 || k > n)
        throw std::out_of_range("koornwinder_eval: need 0 <= k <= n");
    const TrianglePoint s = snap_point(pt);
    const double omx = 1.0 - s.x;
    const double t = omx > 0.0 ? s.y / omx : 0.0;
    const double px = jacobi_eval(
        n - k, JacobiParams{p.beta + p.gamma + 2.0 * k + 1.0, p.alpha},
        2.0 * s.x - 1.0);
    const double pt2 = jacobi_eval(k, JacobiParams{p.gamma, p.beta},
                                   2.0 * t - 1.0);
    return r_norm(n, k, p) * std::pow(omx, k) * px * pt2;
}

double wfun_eval(int n, int k, ParamTriple p, TrianglePoint pt) {
    return std::sqrt(weight(p, pt)) * koornwinder_eval(n, k, p, pt);
}

void koornwinder_all_duffy(int nmax, ParamTriple p, double x, double t,
                           std::vector<double>& out) {
    out.assign(level_count(nmax), 0.0);
    const double ux = 2.0 * x - 1.0;
    const double ut = 2.0 * t - 1.0;
    std::vector<double> pk(nmax + 1), pj(nmax + 1);
    jacobi_row(nmax, p.gamma, p.beta, ut, pk.data());
    double omxk = 1.0; // (1-x)^k
    for (int k = 0; k <= nmax; ++k) {
        jacobi_row(nmax - k, p.beta + p.gamma + 2.0 * k + 1.0, p.alpha, ux,
                   pj.data());
        for (int n = k; n <= nmax; ++n)
            out[LevelIndex{n, k}.linear()] =
                r_norm(n, k, p) * omxk * pj[n - k] * pk[k];
        omxk *= 1.0 - x;
    }
}

void koornwinder_all(int nmax, ParamTriple p, TrianglePoint pt,
                     std::vector<double>& out) {
    const TrianglePoint s = snap_point(pt);
    const double omx = 1.0 - s.x;
    koornwinder_all_duffy(nmax, p, s.x, omx > 0.0 ? s.y / omx : 0.0, out);
}

} // namespace wsys
