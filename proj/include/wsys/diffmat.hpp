// Dense assembly of the skew-symmetric differentiation matrices in the
// weighted basis, an independent quadrature oracle, and coordinate export.
#pragma once

#include "wsys/basis.hpp"
#include "wsys/coupling_integrals.hpp"

#include <Eigen/Dense>

#include <string>

namespace wsys {

enum class DiffAxis { X, Y };

struct DiffOperator {
    DiffAxis axis;
    int M;
    ParamTriple p;
    Eigen::MatrixXd dense; // level_count(M) square, skew-symmetric
};

// Table-driven assembly: lower triangle from the separated closed forms,
// upper triangle mirrored with negation, diagonal blocks exactly zero.
DiffOperator assemble_x(int M, ParamTriple p);
DiffOperator assemble_y(int M, ParamTriple p);
DiffOperator assemble_x_serial(int M, ParamTriple p);
DiffOperator assemble_y_serial(int M, ParamTriple p);

// Quadrature-built reference: weak-derivative inner products evaluated with
// exact Gauss-Jacobi tensor rules on the Duffy square; no tables involved.
Eigen::MatrixXd oracle_assemble(DiffAxis axis, int M, ParamTriple p);

// Plain-text coordinate export: one "row col value" line per nonzero,
// 17 significant digits, row-major order.
void export_coordinate(const Eigen::MatrixXd& mat, const std::string& path);

} // namespace wsys
