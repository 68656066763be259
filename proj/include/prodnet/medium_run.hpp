#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "prodnet/model.hpp"

namespace prodnet {

struct Reroute {
    std::string from;
    std::string to;
    double amount = 0.0;
};

struct MediumRunResult {
    FlowState flows;
    double gdp_before = 0.0;
    double lost_gdp = 0.0;
    std::vector<Reroute> reroutes;  // positive flows absent before the shock

    double loss_fraction() const { return gdp_before > 0.0 ? lost_gdp / gdp_before : 0.0; }
};

struct MediumRunOptions {
    // Objective price per final-good technology id; defaults to the pre-shock
    // equilibrium prices. Lost GDP is always valued at pre-shock prices.
    std::map<std::string, double> objective_prices;
    std::size_t max_variables = 20000;
    // Solve the program in exact rational arithmetic (recipes, flows and prices
    // are converted exactly from their binary values).
    bool exact = false;
};

// Value-maximizing allocation with technologies and labor fixed: any active
// producer of a good may ship to any active user of it.
MediumRunResult medium_run_optimize(const Economy& economy, const FlowState& state,
                                    const ShockSpec& shock, const MediumRunOptions& options = {});

struct LprReport {
    double short_run_loss = 0.0;
    double medium_run_loss = 0.0;
    double lpr = 1.0;  // +infinity when only the medium-run loss is zero
};

LprReport lpr(const Economy& economy, const FlowState& state, const ShockSpec& shock,
              const MediumRunOptions& options = {});

struct GeneratedEconomy {
    Economy economy;
    FlowState state;
};

// The t-country family on which the loss to price rigidity grows like t.
GeneratedEconomy generate_lpr_family(int t);

} // namespace prodnet
