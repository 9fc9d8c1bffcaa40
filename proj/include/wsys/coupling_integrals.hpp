// Coupling integrals between basis levels: the S / S-tilde pair integrals in
// the collapsed coordinate, the I family, and the big I-tilde table driving
// the structured matvec. Tables are filled by Beta-seeded recurrences; exact
// quadrature oracles are provided for verification.
#pragma once

#include "wsys/basis.hpp"

#include <string>
#include <vector>

namespace wsys {

// --- closed forms -----------------------------------------------------------

// S_{l,k} = int_0^1 t^beta (1-t)^{gamma-1} P_l^{(g,b)}(2t-1) P_k^{(g,b)}(2t-1) dt
double s_value(int l, int k, ParamTriple p);

// Same with weight t^{beta-1} (1-t)^gamma.
double s_tilde_value(int l, int k, ParamTriple p);

// I_{m,n,k} = int_0^1 x^{alpha-1} (1-x)^{beta+gamma+2k+1}
//             P_{m-k}^{(b+g+2k+1,a)}(2x-1) P_{n-k}^{(b+g+2k+1,a)}(2x-1) dx,
// k <= min(m,n).
double i_value(int m, int n, int k, ParamTriple p);

// --- ladder-filled caches ----------------------------------------------------

struct SCache {
    int M;
    ParamTriple p;
    std::vector<double> s_tab;  // (M+1)^2, row-major [l][k]
    std::vector<double> st_tab; // (M+1)^2
    std::vector<double> i_tab;  // packed (m,n,k), k <= n <= m

    double s(int l, int k) const { return s_tab[l * (M + 1) + k]; }
    double st(int l, int k) const { return st_tab[l * (M + 1) + k]; }
    double i_val(int m, int n, int k) const;
};

// Fill all three tables from their Beta seeds by the ratio ladders only.
SCache recurrence_ladders(int M, ParamTriple p);

// --- the I-tilde table -------------------------------------------------------

// Coefficients (q, d1, d2) of the level-step relation at (m, l):
//   T(m,l) = q T(m-1,l) + d1 T(m-1,l-1) - d2 T(m,l-1).
struct StepCoeffs {
    double q;
    double d1;
    double d2;
};
StepCoeffs itilde_step_coeffs(int m, int l, ParamTriple p);

// Itilde_{(m,l),(n,k)} = int_0^1 x^a (1-x)^{l+k+b+g}
//   P_{m-l}^{(b+g+2l+1,a)}(2x-1) P_{n-k}^{(b+g+2k+1,a)}(2x-1) dx.
// Stored as one panel per (n,k) covering rows m = n..M (the other triangle is
// recovered through the pair symmetry, which therefore holds bit-exactly).
struct ItildeTable {
    int M;
    ParamTriple p;
    std::vector<std::vector<double>> panels; // key LevelIndex{n,k}.linear()

    // offset of row m inside panel (n,k); row m holds columns l = 0..m
    static int row_off(int n, int m) { return (m * (m + 1) - n * (n + 1)) / 2; }

    double raw(int m, int l, int n, int k) const {
        return panels[LevelIndex{n, k}.linear()][row_off(n, m) + l];
    }
    // full lookup: symmetry swap, structural zeros, bounds checks
    double get(int m, int l, int n, int k) const;
    // Itilde_{(m,l),(m,l)}
    double diag(int m, int l) const {
        return panels[LevelIndex{m, l}.linear()][l];
    }
};

ItildeTable build_itilde(int M, ParamTriple p);
ItildeTable build_itilde_serial(int M, ParamTriple p);

// Exact weighted-quadrature evaluation of diag(m,l); O(m-l) nodes. Used where
// a full table would be wasteful, and as an independent check of the fill.
double itilde_diag_quadrature(int m, int l, ParamTriple p);

// --- quadrature oracles ------------------------------------------------------

struct OracleValue {
    double value;
    double err_est; // |difference| between two node counts
};

OracleValue oracle_s(int l, int k, ParamTriple p);
OracleValue oracle_s_tilde(int l, int k, ParamTriple p);
OracleValue oracle_i(int m, int n, int k, ParamTriple p);
OracleValue oracle_itilde(int m, int l, int n, int k, ParamTriple p);

// --- binary table cache ------------------------------------------------------

void dump_itilde(const ItildeTable& t, const std::string& path);
ItildeTable load_itilde(const std::string& path);

} // namespace wsys
