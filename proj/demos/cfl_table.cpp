// Prints the numerically determined CFL limit of every 2D Maxwell scheme
// beside its tabulated value.

#include <cstdio>

#include "seqexp/seqexp.hpp"

int main() {
    using namespace seqexp;
    std::printf("%-26s %10s %10s\n", "scheme", "computed", "table");
    for (const auto& in : kMaxwellSchemes) {
        if (in.id == MaxwellSchemeId::YeeExtended3D || !in.sequential) continue;
        std::printf("%-26s %10.4f %10.4f\n", in.name, cfl_max(in.id, 64), in.cfl_max);
    }
}
