#pragma once

#include <map>
#include <string>
#include <vector>

#include "prodnet/model.hpp"
#include "prodnet/network.hpp"

namespace prodnet {

struct SourcingShares {
    // (final good, producing tech) -> share of the good's output.
    std::map<EdgeKey, double> final_shares;
    // (user tech, supplier tech) -> share of the user's receipts of that
    // supplier's good.
    std::map<EdgeKey, double> input_shares;
};

SourcingShares sourcing_shares(const Economy& economy, const FlowState& state);

struct CentralityReport {
    std::string tech;
    std::vector<std::string> affected_finals;  // final goods
    std::map<EdgeKey, double> d_values;        // (final good, tech) -> d
    double dc = 0.0;

    double scaled_loss(double lambda) const { return (1.0 - lambda) * dc; }
};

struct CentralityOptions {
    // Order in which ready nodes leave the topological sort; the result does
    // not depend on it.
    Network::TieBreak tie_break = Network::TieBreak::Ascending;
};

CentralityReport disruption_centrality(const Economy& economy, const FlowState& state,
                                       const std::string& tech,
                                       const CentralityOptions& options = {});

// Centrality of every active technology, ranked by dc (descending, then id).
std::vector<CentralityReport> all_centralities(const Economy& economy, const FlowState& state,
                                               const CentralityOptions& options = {});

} // namespace prodnet
