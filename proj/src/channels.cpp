#include "qbsim/channels.hpp"

#include <stdexcept>

namespace qbsim {

bool is_homogeneous(const LindbladChannel& channel) {
    for (const JumpTerm& t : channel.jump)
        if (t.kind != channel.jump.front().kind) return false;
    return true;
}

std::vector<LindbladChannel> build_channels(const ScenarioConfig& scenario) {
    if (scenario.reservoir_count() < 1)
        throw std::invalid_argument("build_channels: at least one reservoir is required");
    if (scenario.gamma_down < 0.0 || scenario.gamma_up < 0.0)
        throw std::invalid_argument("build_channels: rates must be nonnegative");
    if (scenario.nbar < 0.0)
        throw std::invalid_argument("build_channels: nbar must be nonnegative");

    std::vector<LindbladChannel> channels;
    for (std::size_t m = 1; m <= scenario.reservoir_count(); ++m) {
        if (scenario.gamma_down > 0.0) {
            channels.push_back({{{0, Ladder::lowering}, {m, Ladder::lowering}},
                                scenario.gamma_down * (scenario.nbar + 1.0)});
            if (scenario.nbar > 0.0)
                channels.push_back({{{0, Ladder::raising}, {m, Ladder::raising}},
                                    scenario.gamma_down * scenario.nbar});
        }
    }
    if (scenario.gamma_up > 0.0)
        channels.push_back({{{0, Ladder::raising}}, scenario.gamma_up});
    return channels;
}

} // namespace qbsim
