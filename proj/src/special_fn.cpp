#include "wsys/special_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace wsys {

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double beta(double x, double y) {
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

double pochhammer(double x, int n) {
    if (n < 0)
        throw std::domain_error("pochhammer: n must be >= 0");
    double r = 1.0;
    for (int i = 0; i < n; ++i)
        r *= x + i;
    return r;
}

double jacobi_eval(int n, JacobiParams p, double u) {
    if (n < 0)
        throw std::domain_error("jacobi_eval: n must be >= 0");
    const double a = p.a, b = p.b;
    double pm1 = 1.0; // P_0
    if (n == 0)
        return pm1;
    double pm = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * u; // P_1
    for (int m = 2; m <= n; ++m) {
        // standard three-term recurrence, ascending in degree
        const double c1 = 2.0 * m * (m + a + b) * (2.0 * m + a + b - 2.0);
        const double c2 = (2.0 * m + a + b - 1.0) * (a * a - b * b);
        const double c3 = (2.0 * m + a + b - 2.0) * (2.0 * m + a + b - 1.0) *
                          (2.0 * m + a + b);
        const double c4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + a + b);
        const double pnext = ((c2 + c3 * u) * pm - c4 * pm1) / c1;
        pm1 = pm;
        pm = pnext;
    }
    return pm;
}

double jacobi_deriv(int n, JacobiParams p, double u) {
    if (n <= 0)
        return 0.0;
    return 0.5 * (n + p.a + p.b + 1.0) *
           jacobi_eval(n - 1, JacobiParams{p.a + 1.0, p.b + 1.0}, u);
}

double jacobi_norm_h(int m, JacobiParams p) {
    if (m < 0)
        throw std::domain_error("jacobi_norm_h: m must be >= 0");
    const double a = p.a, b = p.b;
    const double lg = (1.0 + a + b) * std::log(2.0) + log_gamma(1.0 + a + m) +
                      log_gamma(1.0 + b + m) - log_gamma(1.0 + m) -
                      std::log(1.0 + a + b + 2.0 * m) -
                      log_gamma(1.0 + a + b + m);
    return std::exp(lg);
}

double jacobi_norm_h01(int m, JacobiParams p) {
    return jacobi_norm_h(m, p) * std::exp2(-(1.0 + p.a + p.b));
}

ShiftCoeffs shift_coeffs(int n, JacobiParams p) {
    if (n < 0)
        throw std::domain_error("shift_coeffs: n must be >= 0");
    const double a = p.a, b = p.b;
    ShiftCoeffs s;
    s.a = 2.0 * (n + a + 1.0) / (2.0 * n + a + b + 2.0);
    s.b = 2.0 * (n + 1.0) / (2.0 * n + a + b + 2.0);
    s.c = (n + b) / (n + a + b + 2.0);
    s.d = (2.0 * n + a + b + 2.0) / (n + a + b + 2.0);
    return s;
}

} // namespace wsys
