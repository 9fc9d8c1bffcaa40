// Compares the OpenMP kernels against the serial reference implementations
// that the tests keep around: coupling-table fill, dense assembly, and the
// projection of a smooth field. Reports wall times and the deviation between
// the two routes; exits nonzero if any deviation is out of bounds, so this
// doubles as a consistency check.
#include "wsys/approx.hpp"
#include "wsys/coupling_integrals.hpp"
#include "wsys/diffmat.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

namespace {

double seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* kernel, int size, double ts, double tp, double dev) {
    std::printf("%-14s %6d %12.4e %12.4e %8.2fx %10.2e\n", kernel, size, ts,
                tp, ts / std::max(tp, 1e-12), dev);
}

} // namespace

int main(int argc, char** argv) {
    int M = 40, nmax = 24, nq = 96;
    if (argc == 4) {
        M = std::atoi(argv[1]);
        nmax = std::atoi(argv[2]);
        nq = std::atoi(argv[3]);
    } else if (argc != 1) {
        std::fprintf(stderr, "usage: bench_kernels [M nmax nq]\n");
        return 2;
    }
    if (M < 1 || M > 200 || nmax < 1 || nmax > 200 || nq < 2 || nq > 512) {
        std::fprintf(stderr, "bench_kernels: arguments out of range\n");
        return 2;
    }

    const wsys::ParamTriple p{2.0, 2.0, 2.0};
    std::printf("%-14s %6s %12s %12s %9s %10s\n", "kernel", "size", "serial_s",
                "parallel_s", "speedup", "max_dev");
    bool ok = true;

    {
        wsys::ItildeTable ts{0, p, {}}, tp{0, p, {}};
        const double t_s = seconds([&] { ts = wsys::build_itilde_serial(M, p); });
        const double t_p = seconds([&] { tp = wsys::build_itilde(M, p); });
        double dev = 0.0;
        for (size_t a = 0; a < ts.panels.size(); ++a)
            for (size_t b = 0; b < ts.panels[a].size(); ++b)
                dev = std::max(dev,
                               std::abs(ts.panels[a][b] - tp.panels[a][b]) /
                                   std::max(std::abs(ts.panels[a][b]), 1e-30));
        report("itilde_fill", M, t_s, t_p, dev);
        ok = ok && dev <= 1e-13;
    }

    {
        wsys::DiffOperator xs{wsys::DiffAxis::X, 0, p, {}};
        wsys::DiffOperator xp = xs;
        const double t_s = seconds([&] { xs = wsys::assemble_x_serial(M, p); });
        const double t_p = seconds([&] { xp = wsys::assemble_x(M, p); });
        const double dev = (xs.dense - xp.dense).cwiseAbs().maxCoeff();
        report("assemble_x", M, t_s, t_p, dev);
        ok = ok && dev == 0.0;
    }

    {
        const wsys::ScalarField f = [](wsys::TrianglePoint pt) {
            return pt.x * (1.0 - std::exp(pt.y)) *
                   std::sin(std::acos(-1.0) * (1.0 - pt.x - pt.y));
        };
        const wsys::TriangleQuadrature quad = wsys::duffy_quadrature(nq, nq);
        wsys::ExpansionResult rs{wsys::CoeffVector{0}, p, 0,
                                 wsys::BasisKind::wsystem};
        wsys::ExpansionResult rp = rs;
        const double t_s =
            seconds([&] { rs = wsys::expand_serial(f, nmax, p, quad); });
        const double t_p = seconds([&] { rp = wsys::expand(f, nmax, p, quad); });
        double dev = 0.0; // pairwise sums make the two routes bit-identical
        for (size_t i = 0; i < rs.coeffs.v.size(); ++i)
            dev = std::max(dev, std::abs(rs.coeffs.v[i] - rp.coeffs.v[i]));
        report("expand", nmax, t_s, t_p, dev);
        ok = ok && dev == 0.0;
    }

    if (!ok) {
        std::fprintf(stderr, "bench_kernels: route deviation out of bounds\n");
        return 1;
    }
    return 0;
}
