// Gamma/Beta helpers and Jacobi polynomial primitives used everywhere else.
#pragma once

#include <cstdint>

namespace wsys {

// Parameter pair (a,b) of a Jacobi family P_n^{(a,b)}.
struct JacobiParams {
    double a;
    double b;
};

// Coefficients of the parameter-shift identity
//   (1-u) P_n^{(a+2,b)}(u) = c_n (1-u) P_{n-1}^{(a+2,b)}(u)
//                            + d_n [ a_n P_n^{(a,b)}(u) - b_n P_{n+1}^{(a,b)}(u) ]
// on u in [-1,1], with P_{-1} == 0.
struct ShiftCoeffs {
    double a;
    double b;
    double c;
    double d;
};

// log Gamma(x), x > 0. Relative accuracy ~1e-15 on [1e-3, 1e4].
double log_gamma(double x);

// Euler Beta B(x,y), x,y > 0.
double beta(double x, double y);

// Rising factorial (x)_n = x(x+1)...(x+n-1); (x)_0 = 1.
double pochhammer(double x, int n);

// P_n^{(a,b)}(u) by the ascending three-term recurrence. n >= 0, a,b > -1.
double jacobi_eval(int n, JacobiParams p, double u);

// d/du P_n^{(a,b)}(u) = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}(u).
double jacobi_deriv(int n, JacobiParams p, double u);

// Squared L2 norm of P_m^{(a,b)} on [-1,1] with weight (1-u)^a (1+u)^b:
//   h_m = 2^{a+b+1} Gamma(a+m+1) Gamma(b+m+1)
//         / ( m! (a+b+2m+1) Gamma(a+b+m+1) ).
double jacobi_norm_h(int m, JacobiParams p);

// Same norm for the shifted family on [0,1] with weight (1-x)^a x^b,
// i.e. jacobi_norm_h / 2^{a+b+1}.
double jacobi_norm_h01(int m, JacobiParams p);

// Coefficients of the shift identity above, valid for n >= 0 (at n = 0 the
// c-term multiplies P_{-1} == 0 and c is set so that the n=0 identity holds).
ShiftCoeffs shift_coeffs(int n, JacobiParams p);

} // namespace wsys
