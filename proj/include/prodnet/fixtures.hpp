#pragma once

#include <string>
#include <vector>

#include "prodnet/model.hpp"

namespace prodnet {

enum class FixtureId {
    Fig1Chain,
    Fig5PanelA,
    Fig5PanelB,
    Fig7Power,
    Fig9FiveCountry,
    Fig11NonConcave,
    Fig12Vertical,
    Fig12Horizontal,
    Fig12Parallel,
    AppendixBExtended,
    AppendixBWithBranch,
    ChipsMediumRun,
    ChipsMediumRunEqual,
    FlexibleRerouting,
    StrategicPower,
    LprFamily,
};

struct Fixture {
    Economy economy;
    FlowState state;
};

// `t` is used by LprFamily only.
Fixture build(FixtureId id, int t = 3);

// Accepts the names listed by fixture_names(); "LprFamily:<t>" selects t.
Fixture build(const std::string& name);

std::vector<std::string> fixture_names();
std::string fixture_name(FixtureId id);

// Fills in zero-profit prices for every active technology from the state's
// flows, outputs and wages: p = labor cost per unit + shipped inputs per unit
// valued at supplier prices.
void derive_prices(const Economy& economy, FlowState& state);

} // namespace prodnet
