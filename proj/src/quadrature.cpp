#include "wsys/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <stdexcept>

namespace wsys {

namespace {

Rule1D from_fixed(const gsl_integration_fixed_type* type, int n, double a,
                  double b, double lo, double hi) {
    gsl_integration_fixed_workspace* ws =
        gsl_integration_fixed_alloc(type, static_cast<size_t>(n), lo, hi, a, b);
    if (!ws)
        throw std::runtime_error("quadrature: workspace allocation failed");
    Rule1D r;
    r.x.assign(gsl_integration_fixed_nodes(ws),
               gsl_integration_fixed_nodes(ws) + n);
    r.w.assign(gsl_integration_fixed_weights(ws),
               gsl_integration_fixed_weights(ws) + n);
    gsl_integration_fixed_free(ws);
    return r;
}

} // namespace

Rule1D gauss_legendre01(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_legendre01: n must be >= 1");
    return from_fixed(gsl_integration_fixed_legendre, n, 0.0, 0.0, 0.0, 1.0);
}

Rule1D gauss_jacobi01(int n, double a, double b) {
    if (n < 1)
        throw std::invalid_argument("gauss_jacobi01: n must be >= 1");
    if (a <= -1.0 || b <= -1.0)
        throw std::invalid_argument("gauss_jacobi01: exponents must be > -1");
    // GSL's jacobi type uses weight (b-x)^alpha (x-a)^beta on [a,b].
    return from_fixed(gsl_integration_fixed_jacobi, n, a, b, 0.0, 1.0);
}

} // namespace wsys
