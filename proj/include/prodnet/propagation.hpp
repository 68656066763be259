#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "prodnet/model.hpp"
#include "prodnet/network.hpp"

namespace prodnet {

struct PropagationConfig {
    double delta = 0.0;            // stop once the max output-fraction change is <= delta
    std::size_t max_sweeps = 10000;
    // Called after every sweep with the sweep number and the output fraction
    // of every technology (index order of Economy::technologies()).
    std::function<void(std::size_t, const std::vector<double>&)> observer;
};

// Short-run propagation engine. The equilibrium is validated once on
// construction so that many shocks (e.g. Monte Carlo trials) can reuse it.
// The engine keeps its own copies of the economy and the state.
class Propagator {
public:
    Propagator(const Economy& economy, const FlowState& state, double tolerance = 1e-9);

    DisruptionOutcome run(const ShockSpec& shock, const PropagationConfig& config = {}) const;

    // Output fractions y_hat / y at the fixed point (0 for inactive techs).
    std::vector<double> fractions(const ShockSpec& shock, const PropagationConfig& config = {},
                                  std::size_t* sweeps = nullptr) const;

    // Builds the outcome for arbitrary output fractions: flows scaled by the
    // supplier's (capped) fraction, idle labor at reduced utilization.
    DisruptionOutcome outcome(const std::vector<double>& phi) const;

    const Economy& economy() const { return economy_; }
    const FlowState& state() const { return state_; }
    const Network& network() const { return net_; }
    bool acyclic() const { return acyclic_; }
    double base_gdp() const { return gdp_; }

    // Received amount of each input good per technology, and the edges that
    // supply it, in the pre-shock equilibrium.
    struct InputGroup {
        double received = 0.0;
        std::vector<std::size_t> edges;
    };
    const std::vector<InputGroup>& input_groups(std::size_t tech) const { return groups_[tech]; }

    std::vector<double> caps(const ShockSpec& shock) const;

private:
    Economy economy_;
    FlowState state_;
    Network net_;
    bool acyclic_ = true;
    double gdp_ = 0.0;
    std::vector<std::vector<InputGroup>> groups_;
};

DisruptionOutcome propagate(const Economy& economy, const FlowState& state, const ShockSpec& shock,
                            const PropagationConfig& config = {});

struct OracleOptions {
    // Objective weight per technology id; defaults to p * y of every active
    // technology. Any strictly positive weights give the same solution.
    std::map<std::string, double> weights;
    std::size_t max_techs = 40;
};

// Exact greatest fixed point of the rationing constraints, found as the
// optimum of a linear program in rational arithmetic.
DisruptionOutcome minimum_disruption_oracle(const Economy& economy, const FlowState& state,
                                            const ShockSpec& shock,
                                            const OracleOptions& options = {});

struct BoundReport {
    std::vector<std::string> affected_finals;
    double bound_fraction = 0.0;
    double actual_fraction = 0.0;
    bool tight = false;
};

BoundReport shock_bound(const Economy& economy, const FlowState& state, const ShockSpec& shock,
                        double tight_tolerance = 1e-6);

struct CutConditionReport {
    bool holds = false;
    // When false: a surviving path from a source to an affected final, or a
    // directed cycle in the disrupted-industries sub-network.
    std::vector<std::string> certificate;
    std::string reason;
};

CutConditionReport check_cut_condition(const Economy& economy, const FlowState& state,
                                       const ShockSpec& shock);

bool check_industry_shock_condition(const Economy& economy, const FlowState& state,
                                    const ShockSpec& shock);

// Final-good technologies reachable from the shocked set over positive flows.
std::vector<std::size_t> affected_finals(const Economy& economy, const Network& net,
                                         const std::vector<std::string>& shocked);

} // namespace prodnet
