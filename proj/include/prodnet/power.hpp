#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prodnet/model.hpp"

namespace prodnet {

// Where a technology with discretion sends its cut. Downstream routes split a
// technology's output shortfall over its customer flows; upstream routes split
// the reduction of its purchases of one good over its supplier flows. Weights
// of a distribution sum to 1. Technologies without a route ration
// proportionally to current flows.
struct RoutingStrategy {
    std::map<std::string, std::map<std::string, double>> downstream_routes;  // tech -> customer -> w
    std::map<EdgeKey, std::map<std::string, double>> upstream_routes;  // (tech, good) -> supplier -> w

    bool empty() const { return downstream_routes.empty() && upstream_routes.empty(); }
    std::string describe() const;
};

struct PowerReport {
    std::string aggressor;
    std::string target;
    std::string best_tech;
    RoutingStrategy best_routing;
    double power_pct = 0.0;  // (target % GDP loss) / (aggressor % GDP loss)
    double power_abs = 0.0;  // (target GDP loss) / (aggressor GDP loss)
    double aggressor_loss = 0.0;  // per unit of output cut at best_tech
    double target_loss = 0.0;
    bool no_leverage = false;  // the aggressor cannot hurt the target at all
    bool unbounded = false;    // best disruption costs the aggressor nothing
};

// Consistent disruption of `tech` (owned by the aggressor) reducing its output
// by scale * y. Aggressor technologies follow `routing`; everyone else rations
// proportionally. Losses are wage-weighted idle labor at pre-shock wages.
DisruptionOutcome individual_disruption(const Economy& economy, const FlowState& state,
                                        const std::string& aggressor, const std::string& tech,
                                        double scale, const RoutingStrategy& routing = {});

// Largest scale for which individual_disruption stays partial (no flow or
// output reaches zero).
double max_partial_scale(const Economy& economy, const FlowState& state,
                         const std::string& aggressor, const std::string& tech,
                         const RoutingStrategy& routing = {});

struct PartialCut {
    std::string tech;
    double scale = 0.0;
    RoutingStrategy routing;
};

// Simultaneous partial disruptions, each measured against the same baseline
// state; the result does not depend on the order of `cuts`.
DisruptionOutcome compose_disruptions(const Economy& economy, const FlowState& state,
                                      const std::string& aggressor,
                                      const std::vector<PartialCut>& cuts);

struct PowerOptions {
    bool exhaustive = false;  // consider every aggressor technology, not only border-adjacent ones
    std::size_t max_combinations = 1000000;
};

struct PowerCandidate {
    std::string tech;
    RoutingStrategy routing;
    double aggressor_loss = 0.0;
    double target_loss = 0.0;
    double power_pct = 0.0;
    double power_abs = 0.0;
};

// Every (candidate technology, pure routing) pair considered by power().
std::vector<PowerCandidate> power_candidates(const Economy& economy, const FlowState& state,
                                             const std::string& aggressor,
                                             const std::string& target,
                                             const PowerOptions& options = {});

// Aggressor technologies that border a foreign final market or a foreign
// labor-only supplier through foreign technologies only.
std::vector<std::string> border_adjacent(const Economy& economy, const FlowState& state,
                                         const std::string& aggressor);

PowerReport power(const Economy& economy, const FlowState& state, const std::string& aggressor,
                  const std::string& target, const PowerOptions& options = {});

// One frontier step: a pure-routing disruption run until its first flow (or
// output) reaches zero.
struct DisruptionStep {
    std::string tech;
    RoutingStrategy routing;
    double aggressor_loss = 0.0;
    double target_loss = 0.0;
    FlowState after;
};

std::vector<DisruptionStep> full_steps(const Economy& economy, const FlowState& state,
                                       const std::string& aggressor, const std::string& target);

struct Frontier {
    std::vector<std::pair<double, double>> points;  // (own loss %, target loss %)

    // Maximum target loss % reachable with own loss % at most x.
    double value_at(double own_pct) const;
};

struct FrontierOptions {
    int resolution = 6;                // maximum number of zero-out steps in a sequence
    std::size_t budget = 2000000;      // maximum number of step evaluations
};

Frontier frontier(const Economy& economy, const FlowState& state, const std::string& aggressor,
                  const std::string& target, const FrontierOptions& options = {});

// Zero-sum version in which the target's technologies also choose where to
// route the cuts they suffer.
PowerReport strategic_power(const Economy& economy, const FlowState& state,
                            const std::string& aggressor, const std::string& target,
                            const PowerOptions& options = {});

} // namespace prodnet
