#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prodnet/model.hpp"

namespace prodnet {

// Index-based view of the positive good flows of a FlowState. Technologies are
// addressed by their position in Economy::technologies().
class Network {
public:
    struct Edge {
        std::size_t from = 0;
        std::size_t to = 0;
        double amount = 0.0;  // shipped units
        double theta = 1.0;
    };

    Network(const Economy& economy, const FlowState& state);

    std::size_t size() const { return active_.size(); }
    bool active(std::size_t t) const { return active_[t]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::size_t>& out_edges(std::size_t t) const { return out_[t]; }
    const std::vector<std::size_t>& in_edges(std::size_t t) const { return in_[t]; }

    // Nodes reachable along edge direction (or against it) from any seed,
    // seeds included.
    std::vector<bool> downstream(const std::vector<std::size_t>& seeds) const;
    std::vector<bool> upstream(const std::vector<std::size_t>& seeds) const;

    enum class TieBreak { Ascending, Descending };

    // Kahn order of the active nodes inside `subset` (all active nodes when
    // empty), considering only edges with both ends in the subset. Ready nodes
    // are released by index in the requested direction. nullopt on a cycle.
    std::optional<std::vector<std::size_t>> topo_order(const std::vector<bool>& subset = {},
                                                       TieBreak tie = TieBreak::Ascending) const;

    // A directed cycle inside `subset`, as a node sequence; empty if acyclic.
    std::vector<std::size_t> find_cycle(const std::vector<bool>& subset = {}) const;

private:
    std::vector<bool> active_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

// Human-readable "a -> b -> c" rendering of a node path.
std::string render_path(const Economy& economy, const std::vector<std::size_t>& nodes);

} // namespace prodnet
