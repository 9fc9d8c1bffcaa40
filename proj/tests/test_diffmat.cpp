#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsys/diffmat.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wsys;

namespace {

const ParamTriple kTriples[] = {ParamTriple(1.0, 1.0, 1.0),
                                ParamTriple(2.0, 2.0, 2.0),
                                ParamTriple(2.0, 1.0, 3.0)};

double max_entry_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("dense assembly matches the quadrature oracle") {
    for (ParamTriple p : kTriples) {
        for (int M : {4, 6}) {
            const double tol = M == 4 ? 1e-9 : 1e-8;
            DiffOperator X = assemble_x(M, p);
            Eigen::MatrixXd OX = oracle_assemble(DiffAxis::X, M, p);
            CHECK(max_entry_diff(X.dense, OX) <= tol);
            DiffOperator Y = assemble_y(M, p);
            Eigen::MatrixXd OY = oracle_assemble(DiffAxis::Y, M, p);
            CHECK(max_entry_diff(Y.dense, OY) <= tol);
        }
    }
}

TEST_CASE("skew-symmetry is exact and diagonal blocks vanish") {
    ParamTriple p(2.5, 1.5, 0.5);
    const int M = 7;
    for (DiffOperator op : {assemble_x(M, p), assemble_y(M, p)}) {
        const int D = level_count(M);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                // bitwise: upper is written as the negated lower
                CHECK(op.dense(i, j) == -op.dense(j, i));
                LevelIndex a = level_unrank(i), b = level_unrank(j);
                if (a.n == b.n)
                    CHECK(op.dense(i, j) == 0.0);
                if (a.n > b.n && a.k < b.k && op.axis == DiffAxis::Y)
                    CHECK(op.dense(i, j) == 0.0);
            }
    }
}

TEST_CASE("x-operator sparsity: lower entries need l >= k or l == k block") {
    ParamTriple p(2.0, 2.0, 2.0);
    const int M = 6;
    DiffOperator X = assemble_x(M, p);
    for (int m = 1; m <= M; ++m)
        for (int l = 0; l <= m; ++l)
            for (int n = 0; n < m; ++n)
                for (int k = 0; k <= n; ++k)
                    if (l < k)
                        CHECK(X.dense(LevelIndex{m, l}.linear(),
                                      LevelIndex{n, k}.linear()) == 0.0);
}

TEST_CASE("parity zeros of the y-operator at beta == gamma") {
    ParamTriple p(1.5, 2.0, 2.0);
    const int M = 6;
    DiffOperator Y = assemble_y(M, p);
    for (int m = 1; m <= M; ++m)
        for (int l = 0; l <= m; ++l)
            for (int n = 0; n < m; ++n)
                for (int k = 0; k <= n; ++k)
                    if ((l + k) % 2 == 0)
                        CHECK(Y.dense(LevelIndex{m, l}.linear(),
                                      LevelIndex{n, k}.linear()) == 0.0);
}

TEST_CASE("serial and parallel assembly agree bitwise") {
    ParamTriple p(2.0, 1.0, 3.0);
    const int M = 5;
    DiffOperator a = assemble_x(M, p), b = assemble_x_serial(M, p);
    CHECK((a.dense.array() == b.dense.array()).all());
    DiffOperator c = assemble_y(M, p), d = assemble_y_serial(M, p);
    CHECK((c.dense.array() == d.dense.array()).all());
}

TEST_CASE("coordinate export writes parseable 17-digit entries") {
    namespace fs = std::filesystem;
    ParamTriple p(2.0, 2.0, 2.0);
    DiffOperator X = assemble_x(3, p);
    const fs::path path = fs::temp_directory_path() / "wsys_coord_test.txt";
    export_coordinate(X.dense, path.string());

    std::ifstream f(path);
    REQUIRE(f.good());
    Eigen::MatrixXd back = Eigen::MatrixXd::Zero(X.dense.rows(), X.dense.cols());
    std::string line;
    int count = 0;
    while (std::getline(f, line)) {
        std::istringstream ss(line);
        long long i, j;
        double v;
        REQUIRE((ss >> i >> j >> v));
        back(i, j) = v;
        ++count;
    }
    CHECK(count == (X.dense.array() != 0.0).count());
    // %.17g roundtrips doubles exactly
    CHECK((back.array() == X.dense.array()).all());
    fs::remove(path);

    // M=0: the 1x1 operator is zero, so the file must be empty
    DiffOperator Z = assemble_x(0, p);
    export_coordinate(Z.dense, path.string());
    CHECK(fs::file_size(path) == 0);
    fs::remove(path);
}
