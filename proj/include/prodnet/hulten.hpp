#pragma once

#include <string>

#include "prodnet/model.hpp"

namespace prodnet {

struct HultenReport {
    std::string tech;
    double expenditure = 0.0;      // p * y of the technology
    double gdp = 0.0;
    double marginal_share = 0.0;   // expenditure / gdp
    double extrapolated_loss = 0.0;  // shock_size * marginal_share
};

// First-order long-run impact of a productivity shock to one technology.
HultenReport hulten_marginal(const Economy& economy, const FlowState& state,
                             const std::string& tech, double shock_size);

// Copy of the economy in which every shocked technology needs 1/lambda times
// its inputs (goods and labor) per unit of output.
Economy productivity_adjusted_economy(const Economy& economy, const ShockSpec& shock);

// Exact long-run equilibrium after a productivity shock, for economies where
// every good has a single active producer. Labor moves freely inside each
// country; each technology keeps its pre-shock mix of labor source countries.
// Demand follows Cobb-Douglas expenditure shares (economy demand_shares, or the
// pre-shock expenditure shares when absent). gdp_after is real GDP measured at
// pre-shock prices of the consumption bundle.
DisruptionOutcome long_run_reequilibrate(const Economy& economy, const FlowState& state,
                                         const ShockSpec& shock);

} // namespace prodnet
