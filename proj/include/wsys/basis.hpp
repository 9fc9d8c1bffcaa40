// Reference-triangle geometry, the weight function, and the orthonormal
// Koornwinder family p_{n,k} together with its weighted companions
// phi_{n,k} = sqrt(w) * p_{n,k}.
#pragma once

#include "wsys/special_fn.hpp"

#include <array>
#include <vector>

namespace wsys {

// Weight exponents (alpha, beta, gamma), all required positive.
struct ParamTriple {
    double alpha;
    double beta;
    double gamma;
    ParamTriple(double a, double b, double g);
};

// Level-major index: level n >= 0, in-level position k = 0..n.
struct LevelIndex {
    int n;
    int k;
    int linear() const { return n * (n + 1) / 2 + k; }
};

// Number of pairs (n,k) with n <= M.
inline int level_count(int M) { return (M + 1) * (M + 2) / 2; }

// Inverse of LevelIndex::linear().
LevelIndex level_unrank(int i);

struct TrianglePoint {
    double x;
    double y;
};

// True if (x,y) lies in the closed reference triangle x,y >= 0, x+y <= 1
// (up to a small tolerance on the boundary).
bool in_reference_triangle(TrianglePoint pt, double tol = 1e-12);

// Affine correspondence between an arbitrary nondegenerate triangle with
// vertices v0,v1,v2 and the reference triangle (v0 -> (0,0), v1 -> (1,0),
// v2 -> (0,1)).
struct GeneralTriangle {
    std::array<double, 2> v0, v1, v2;
    TrianglePoint to_reference(std::array<double, 2> q) const;
    std::array<double, 2> from_reference(TrianglePoint pt) const;
    double jacobian() const; // signed area factor of from_reference
};

// w(x,y) = x^alpha y^beta (1-x-y)^gamma on the open triangle.
double weight(ParamTriple p, TrianglePoint pt);

// Normalization r_{n,k} making p_{n,k} orthonormal in L^2_w.
double r_norm(int n, int k, ParamTriple p);

// p_{n,k}(x,y) = r_{n,k} (1-x)^k P_{n-k}^{(beta+gamma+2k+1, alpha)}(2x-1)
//                * P_k^{(gamma, beta)}(2y/(1-x) - 1);
// the x -> 1 limit is taken continuously (only the k=0 factor survives).
double koornwinder_eval(int n, int k, ParamTriple p, TrianglePoint pt);

// phi_{n,k} = sqrt(w) * p_{n,k}; defined on the open triangle.
double wfun_eval(int n, int k, ParamTriple p, TrianglePoint pt);

// Evaluate every p_{n,k} with n <= nmax at the Duffy point (x, t), where
// y = (1-x) t. out is filled in level-major order (size level_count(nmax)).
// Cost O(nmax^2) per call: one recurrence per k-family plus the t-family.
void koornwinder_all_duffy(int nmax, ParamTriple p, double x, double t,
                           std::vector<double>& out);

// Same, addressed by an ambient point (handles the x = 1 limit).
void koornwinder_all(int nmax, ParamTriple p, TrianglePoint pt,
                     std::vector<double>& out);

} // namespace wsys
