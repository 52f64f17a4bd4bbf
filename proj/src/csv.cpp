#include "qbsim/csv.hpp"

#include <cstdio>

namespace qbsim {

std::string format_value(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryResult& trajectory) {
    out << "tau,E_C";
    for (std::size_t m = 1; m < trajectory.energies.size(); ++m) out << ",E_B" << m;
    out << "\n";
    for (std::size_t k = 0; k < trajectory.tau_grid.size(); ++k) {
        out << format_value(trajectory.tau_grid[k]);
        for (const auto& series : trajectory.energies) out << "," << format_value(series[k]);
        out << "\n";
    }
}

} // namespace qbsim
