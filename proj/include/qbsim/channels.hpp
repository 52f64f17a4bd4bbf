// channels.hpp — Lindblad channel specifications for the charging protocol

#pragma once

#include <cstddef>
#include <vector>

#include "qbsim/scenario.hpp"

namespace qbsim {

enum class Ladder { lowering, raising };

/// One weighted collective ladder operator inside a jump operator.
struct JumpTerm {
    std::size_t ensemble = 0;
    Ladder kind = Ladder::lowering;
    double weight = 1.0;
};

/// Dissipator rate * (2 O rho O^dag - O^dag O rho - rho O^dag O) with jump
/// operator O given as a weighted combination of per-ensemble collective
/// raising/lowering operators. Note the explicit factor 2 in the convention.
struct LindbladChannel {
    std::vector<JumpTerm> jump;
    double rate = 0.0;
};

/// All terms in the jump operator shift the total magnetization the same
/// way (pure-lowering or pure-raising). Channels built from a scenario are
/// always homogeneous; the property enables the sector-reduced exact path.
bool is_homogeneous(const LindbladChannel& channel);

/// Channels of the master equation for a scenario: per reservoir m a
/// collective dissipator (J_C^- + J_Bm^-, gamma_down*(nbar+1)), its
/// thermal counterpart (J_C^+ + J_Bm^+, gamma_down*nbar) when nbar > 0,
/// and the charger pump (J_C^+, gamma_up) when gamma_up > 0.
std::vector<LindbladChannel> build_channels(const ScenarioConfig& scenario);

} // namespace qbsim
