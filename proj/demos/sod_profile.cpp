// Runs the Sod shock tube and prints the density, velocity and pressure
// profile next to the exact Riemann solution.
//
//   seqexp_demo_sod [nx]

#include <cstdio>
#include <cstdlib>

#include "seqexp/seqexp.hpp"

int main(int argc, char** argv) {
    const int nx = argc > 1 ? std::atoi(argv[1]) : 200;
    if (nx < 10) {
        std::fprintf(stderr, "nx must be at least 10\n");
        return 1;
    }
    try {
        const auto r = seqexp::run_shock_tube(seqexp::CaseKind::Sod, nx, 0.65, 0.2);
        std::printf("# Sod, %d cells, %ld steps, L1(rho) error %.6g\n", nx, r.steps, r.l1_rho);
        std::printf("%10s %10s %10s %10s %10s %10s %10s\n", "x", "rho", "rho_ex", "u", "u_ex", "p", "p_ex");
        for (const auto& row : r.profile)
            std::printf("%10.5f %10.5f %10.5f %10.5f %10.5f %10.5f %10.5f\n", row.x, row.rho, row.rho_exact, row.u,
                        row.u_exact, row.p, row.p_exact);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
