#include "wsys/boundary_lift.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wsys {

namespace {

constexpr double kVertexTol = 1e-12; // trace consistency at shared vertices
constexpr double kBeltTol = 1e-10;   // vertex / edge snapping distance
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double dist(TrianglePoint a, double bx, double by) {
    return std::hypot(a.x - bx, a.y - by);
}

} // namespace

BoundaryTrace::BoundaryTrace(EdgeFn edge1, EdgeFn edge2, EdgeFn edge3)
    : e1(std::move(edge1)), e2(std::move(edge2)), e3(std::move(edge3)) {
    if (!e1 || !e2 || !e3)
        throw std::invalid_argument("BoundaryTrace: all three edges required");
    v00 = e1(0.0);
    v10 = e1(1.0);
    v01 = e2(1.0);
    if (std::abs(v10 - e2(0.0)) > kVertexTol ||
        std::abs(v01 - e3(0.0)) > kVertexTol ||
        std::abs(v00 - e3(1.0)) > kVertexTol)
        throw std::invalid_argument(
            "BoundaryTrace: edge data disagree at a shared vertex");
}

BoundaryTrace BoundaryTrace::from_ambient(const ScalarField& mu) {
    return BoundaryTrace(
        [mu](double t) { return mu(TrianglePoint{t, 0.0}); },
        [mu](double t) { return mu(TrianglePoint{1.0 - t, t}); },
        [mu](double t) { return mu(TrianglePoint{0.0, 1.0 - t}); });
}

double BoundaryTrace::at_boundary(TrianglePoint pt) const {
    const double s = 1.0 - pt.x - pt.y;
    // nearest edge by Euclidean distance
    const double d1 = std::abs(pt.y);
    const double d2 = std::abs(s) * kInvSqrt2;
    const double d3 = std::abs(pt.x);
    if (d1 <= d2 && d1 <= d3)
        return e1(pt.x);
    if (d2 <= d3)
        return e2(pt.y);
    return e3(1.0 - pt.y);
}

EdgeInterpolants edge_interpolants(const BoundaryTrace& tr, TrianglePoint pt) {
    const double x = pt.x, y = pt.y;
    const double s = 1.0 - x - y;
    if (!(x > 0.0) || !(y > 0.0) || !(s > 0.0))
        throw std::domain_error("edge_interpolants: point not interior");
    // boundary values used by the chord interpolants
    const double mu_x0 = tr.e1(x);            // (x, 0)
    const double mu_0y = tr.e3(1.0 - y);      // (0, y)
    const double mu_hx = tr.e2(1.0 - x);      // (x, 1-x)
    const double mu_hy = tr.e2(y);            // (1-y, y)
    const double mu_d0 = tr.e1(x + y);        // (x+y, 0)
    const double mu_0d = tr.e3(1.0 - x - y);  // (0, x+y)

    EdgeInterpolants q;
    q.qA = (s * mu_0y + x * mu_hy) / (1.0 - y);
    q.qB = (s * mu_x0 + y * mu_hx) / (1.0 - x);
    q.qC = (x * mu_d0 + y * mu_0d) / (x + y);
    return q;
}

double lift_mu(const BoundaryTrace& tr, TrianglePoint pt) {
    if (!in_reference_triangle(pt))
        throw std::domain_error("lift_mu: point outside the triangle");

    if (dist(pt, 0.0, 0.0) <= kBeltTol)
        return tr.v00;
    if (dist(pt, 1.0, 0.0) <= kBeltTol)
        return tr.v10;
    if (dist(pt, 0.0, 1.0) <= kBeltTol)
        return tr.v01;

    const double s = 1.0 - pt.x - pt.y;
    if (pt.y <= kBeltTol)
        return tr.e1(pt.x);
    if (pt.x <= kBeltTol)
        return tr.e3(1.0 - pt.y);
    if (s * kInvSqrt2 <= kBeltTol) {
        // orthogonal projection onto x + y = 1
        const double py = (pt.y - pt.x + 1.0) * 0.5;
        return tr.e2(py);
    }

    const EdgeInterpolants q = edge_interpolants(tr, pt);
    const double linear = 0.5 * (tr.v00 + (tr.v10 - tr.v00) * pt.x +
                                 (tr.v01 - tr.v00) * pt.y);
    return 0.5 * (q.qA + q.qB + q.qC) - linear;
}

ScalarField zero_bc_reduction(const ScalarField& f, const BoundaryTrace& tr) {
    return [f, tr](TrianglePoint pt) { return f(pt) - lift_mu(tr, pt); };
}

} // namespace wsys
