#include "prodnet/centrality.hpp"

#include <algorithm>

namespace prodnet {

namespace {

struct ShareTables {
    std::vector<double> final_share;             // by tech index
    std::vector<std::map<std::size_t, double>> input_share;  // user -> supplier -> share
};

ShareTables compute_shares(const Economy& economy, const FlowState& state, const Network& net) {
    const auto& techs = economy.technologies();
    ShareTables tables;
    tables.final_share.assign(techs.size(), 0.0);
    tables.input_share.assign(techs.size(), {});

    std::map<std::string, double> final_total;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (net.active(t) && economy.is_final_good(techs[t].output))
            final_total[techs[t].output] += state.output(techs[t].id);
    }
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (net.active(t) && economy.is_final_good(techs[t].output))
            tables.final_share[t] = state.output(techs[t].id) / final_total[techs[t].output];
    }
    for (std::size_t t = 0; t < techs.size(); ++t) {
        std::map<std::string, double> by_good;
        for (std::size_t e : net.in_edges(t)) {
            const auto& edge = net.edges()[e];
            by_good[techs[edge.from].output] += edge.amount / edge.theta;
        }
        for (std::size_t e : net.in_edges(t)) {
            const auto& edge = net.edges()[e];
            tables.input_share[t][edge.from] +=
                edge.amount / edge.theta / by_good[techs[edge.from].output];
        }
    }
    return tables;
}

} // namespace

SourcingShares sourcing_shares(const Economy& economy, const FlowState& state) {
    Network net(economy, state);
    auto tables = compute_shares(economy, state, net);
    const auto& techs = economy.technologies();
    SourcingShares out;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (tables.final_share[t] > 0.0)
            out.final_shares[{techs[t].output, techs[t].id}] = tables.final_share[t];
        for (const auto& [s, share] : tables.input_share[t])
            out.input_shares[{techs[t].id, techs[s].id}] = share;
    }
    return out;
}

CentralityReport disruption_centrality(const Economy& economy, const FlowState& state,
                                       const std::string& tech,
                                       const CentralityOptions& options) {
    const std::size_t root = economy.tech_index(tech);
    Network net(economy, state);
    const auto& techs = economy.technologies();
    auto tables = compute_shares(economy, state, net);
    const double total_gdp = gdp(economy, state);

    CentralityReport report;
    report.tech = tech;
    if (!net.active(root)) return report;

    auto reach = net.downstream({root});
    std::map<std::string, std::vector<std::size_t>> finals;  // good -> producers
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (net.active(t) && economy.is_final_good(techs[t].output))
            finals[techs[t].output].push_back(t);
    }

    double numerator = 0.0;
    for (const auto& [good, producers] : finals) {
        std::vector<std::size_t> hit;
        for (std::size_t t : producers)
            if (reach[t]) hit.push_back(t);
        if (hit.empty()) continue;
        report.affected_finals.push_back(good);

        // Between-network: downstream of the root and upstream of f's producers.
        auto back = net.upstream(hit);
        std::vector<bool> between(techs.size(), false);
        for (std::size_t t = 0; t < techs.size(); ++t) between[t] = reach[t] && back[t];
        auto order = net.topo_order(between, options.tie_break);
        if (!order) {
            auto cycle = net.find_cycle(between);
            throw CyclicError("supply network between '" + tech + "' and final good '" + good +
                              "' has a directed cycle: " + render_path(economy, cycle));
        }

        std::vector<double> d(techs.size(), 0.0);
        for (std::size_t u : *order) {
            if (u == root) {
                d[u] = 1.0;
            } else {
                std::map<std::string, double> per_good;
                for (const auto& [s, share] : tables.input_share[u])
                    if (between[s]) per_good[techs[s].output] += d[s] * share;
                double best = 0.0;
                for (const auto& [g, v] : per_good) best = std::max(best, v);
                d[u] = best;
            }
            report.d_values[{good, techs[u].id}] = d[u];
        }

        double value = 0.0;
        double reached = 0.0;
        for (std::size_t t : producers) {
            value += *state.price(techs[t].id) * state.output(techs[t].id);
            reached += d[t] * tables.final_share[t];
        }
        numerator += value * reached;
    }
    report.dc = total_gdp > 0.0 ? numerator / total_gdp : 0.0;
    return report;
}

std::vector<CentralityReport> all_centralities(const Economy& economy, const FlowState& state,
                                               const CentralityOptions& options) {
    std::vector<CentralityReport> out;
    for (const auto& t : economy.technologies()) {
        if (!(state.output(t.id) > 0.0)) continue;
        out.push_back(disruption_centrality(economy, state, t.id, options));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.dc != b.dc) return a.dc > b.dc;
        return a.tech < b.tech;
    });
    return out;
}

} // namespace prodnet
