// 1-D Gauss rules on [0,1] (nodes/weights via GSL's Golub-Welsch fixed rules).
#pragma once

#include <vector>

namespace wsys {

struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;
    int size() const { return static_cast<int>(x.size()); }
};

// n-point Gauss-Legendre on [0,1]; exact for polynomials of degree <= 2n-1.
Rule1D gauss_legendre01(int n);

// n-point Gauss-Jacobi on [0,1] for the weight (1-x)^a * x^b, a,b > -1;
// sum w_i f(x_i) ~= \int_0^1 (1-x)^a x^b f(x) dx, exact for deg(f) <= 2n-1.
Rule1D gauss_jacobi01(int n, double a, double b);

} // namespace wsys
