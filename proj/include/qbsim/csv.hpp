// csv.hpp — Deterministic CSV output (9 significant digits, LF endings)

#pragma once

#include <ostream>
#include <string>

#include "qbsim/dynamics.hpp"

namespace qbsim {

/// %.9g with the C locale; identical inputs produce identical bytes.
std::string format_value(double value);

/// Header `tau,E_C,E_B1,...,E_BM` followed by one row per grid point.
void write_trajectory_csv(std::ostream& out, const TrajectoryResult& trajectory);

} // namespace qbsim
