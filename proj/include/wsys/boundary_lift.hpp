// Transfinite interpolation of Dirichlet data on the reference triangle:
// three chordwise linear interpolants blended and corrected by a shared
// linear function, reproducing the trace on the whole boundary. Used to
// reduce problems with arbitrary Dirichlet data to zero boundary conditions.
#pragma once

#include "wsys/approx.hpp"
#include "wsys/basis.hpp"

#include <functional>

namespace wsys {

using EdgeFn = std::function<double(double)>;

// Dirichlet data on the three edges, each parameterized by arclength
// fraction t in [0,1]:
//   edge 1: t -> (t, 0)        (from (0,0) to (1,0))
//   edge 2: t -> (1-t, t)      (from (1,0) to (0,1))
//   edge 3: t -> (0, 1-t)      (from (0,1) to (0,0))
// Construction validates consistency at the shared vertices; a mismatch
// beyond 1e-12 is rejected.
struct BoundaryTrace {
    EdgeFn e1, e2, e3;
    double v00, v10, v01; // cached vertex values

    BoundaryTrace(EdgeFn edge1, EdgeFn edge2, EdgeFn edge3);

    // adapter sampling a single ambient function along the edges
    static BoundaryTrace from_ambient(const ScalarField& mu);

    // trace value at a boundary point (nearest-edge parameterization)
    double at_boundary(TrianglePoint pt) const;
};

struct EdgeInterpolants {
    double qA, qB, qC;
};

// The three linear interpolants along the chords through pt parallel to the
// edges. pt must be strictly interior (all denominators positive); points on
// or near the boundary are handled by lift_mu, not here.
EdgeInterpolants edge_interpolants(const BoundaryTrace& tr, TrianglePoint pt);

// The blended interpolant (qA+qB+qC)/2 minus the shared linear part; equals
// the trace on the boundary. Within 1e-10 of a vertex the cached vertex
// value is returned; within 1e-10 of an edge the trace at the orthogonal
// projection is returned.
double lift_mu(const BoundaryTrace& tr, TrianglePoint pt);

// f minus its lift: vanishes on the boundary when f's trace equals tr.
ScalarField zero_bc_reduction(const ScalarField& f, const BoundaryTrace& tr);

} // namespace wsys
