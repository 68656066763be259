#include "prodnet/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "prodnet/simplex.hpp"

namespace prodnet {

namespace {

std::string describe(const std::vector<Violation>& violations) {
    std::string out;
    std::size_t shown = 0;
    for (const auto& v : violations) {
        if (shown++ == 3) {
            out += ", ...";
            break;
        }
        if (!out.empty()) out += ", ";
        out += v.condition + " at " + v.entity + " (residual " + std::to_string(v.residual) + ")";
    }
    return out;
}

} // namespace

Propagator::Propagator(const Economy& economy, const FlowState& state, double tolerance)
    : economy_(economy), state_(state), net_(economy_, state_) {
    auto violations = validate_equilibrium(economy_, state_, tolerance);
    if (!violations.empty())
        throw NotEquilibriumError("state is not an equilibrium: " + describe(violations));
    acyclic_ = net_.topo_order().has_value();
    gdp_ = gdp(economy_, state_);

    const auto& techs = economy_.technologies();
    groups_.assign(techs.size(), {});
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!net_.active(t)) continue;
        std::map<std::string, InputGroup> by_good;
        for (const auto& [g, q] : techs[t].inputs) by_good[g];
        for (std::size_t e : net_.in_edges(t)) {
            const auto& edge = net_.edges()[e];
            auto& group = by_good[techs[edge.from].output];
            group.received += edge.amount / edge.theta;
            group.edges.push_back(e);
        }
        for (auto& [g, group] : by_good) groups_[t].push_back(std::move(group));
    }
}

std::vector<double> Propagator::caps(const ShockSpec& shock) const {
    std::vector<double> cap(net_.size(), 0.0);
    for (std::size_t t = 0; t < net_.size(); ++t) cap[t] = net_.active(t) ? 1.0 : 0.0;
    for (const auto& id : shock.shocked) cap[economy_.tech_index(id)] = shock.lambda;
    return cap;
}

std::vector<double> Propagator::fractions(const ShockSpec& shock, const PropagationConfig& config,
                                          std::size_t* sweeps) const {
    check_shock(economy_, state_, shock);
    if (config.delta < 0.0) throw InvariantError("delta must be >= 0");
    if (config.max_sweeps < 1) throw InvariantError("max_sweeps must be >= 1");
    const std::size_t n = net_.size();
    const bool amplify = shock.lambda > 1.0;
    const std::vector<double> cap = caps(shock);
    const auto& edges = net_.edges();

    std::vector<double> phi = cap;
    std::vector<double> next(n, 0.0);
    std::vector<double> scale(n, 0.0);
    std::size_t sweep = 0;
    while (true) {
        for (std::size_t t = 0; t < n; ++t) scale[t] = std::min(phi[t], 1.0);
        double change = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if (!net_.active(t)) {
                next[t] = 0.0;
                continue;
            }
            double ratio = 1.0;
            for (const auto& group : groups_[t]) {
                if (!(group.received > 0.0)) continue;
                double got = 0.0;
                for (std::size_t e : group.edges) got += edges[e].amount / edges[e].theta * scale[edges[e].from];
                ratio = std::min(ratio, got / group.received);
            }
            next[t] = amplify ? cap[t] * ratio : std::min(cap[t], ratio);
            change = std::max(change, std::abs(next[t] - phi[t]));
        }
        phi.swap(next);
        ++sweep;
        if (config.observer) config.observer(sweep, phi);
        bool done;
        if (config.delta > 0.0)
            done = change <= config.delta;
        else if (acyclic_)
            done = change == 0.0;
        else
            done = change < 1e-12;
        if (done) break;
        if (sweep >= config.max_sweeps) {
            if (config.delta == 0.0 && !acyclic_)
                throw NonConvergenceError("propagation did not converge within " +
                                          std::to_string(config.max_sweeps) +
                                          " sweeps (last max change " + std::to_string(change) +
                                          ")");
            break;
        }
    }
    if (sweeps) *sweeps = sweep;
    return phi;
}

DisruptionOutcome Propagator::outcome(const std::vector<double>& phi) const {
    const auto& techs = economy_.technologies();
    DisruptionOutcome out;
    out.gdp_before = gdp_;
    FlowState& f = out.flows;
    f.prices = state_.prices;
    f.wages = state_.wages;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        double y = state_.output(techs[t].id);
        if (state_.outputs.count(techs[t].id)) f.outputs[techs[t].id] = y * phi[t];
    }
    for (const auto& [key, x] : state_.good_flows) {
        double s = std::min(phi[economy_.tech_index(key.first)], 1.0);
        f.good_flows[key] = x * s;
    }
    for (const auto& c : economy_.countries()) {
        out.idle_labor[c.id] = 0.0;
        out.lost_gdp_by_country[c.id] = 0.0;
    }
    for (const auto& [key, x] : state_.labor_flows) {
        double u = std::min(phi[economy_.tech_index(key.second)], 1.0);
        f.labor_flows[key] = x * u;
        double idle = x * (1.0 - u);
        out.idle_labor[key.first] += idle;
        out.lost_gdp_by_country[key.first] += state_.wage(key.first).value_or(0.0) * idle;
    }
    double lost = 0.0;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!net_.active(t) || !economy_.is_final_good(techs[t].output)) continue;
        lost += *state_.price(techs[t].id) * state_.output(techs[t].id) * (1.0 - phi[t]);
    }
    out.lost_gdp_total = lost;
    out.gdp_after = gdp_ - lost;
    return out;
}

DisruptionOutcome Propagator::run(const ShockSpec& shock, const PropagationConfig& config) const {
    return outcome(fractions(shock, config));
}

DisruptionOutcome propagate(const Economy& economy, const FlowState& state, const ShockSpec& shock,
                            const PropagationConfig& config) {
    return Propagator(economy, state).run(shock, config);
}

DisruptionOutcome minimum_disruption_oracle(const Economy& economy, const FlowState& state,
                                            const ShockSpec& shock, const OracleOptions& options) {
    using Q = boost::multiprecision::cpp_rational;
    Propagator prop(economy, state);
    check_shock(economy, state, shock);
    if (shock.lambda > 1.0)
        throw InvariantError("the minimum disruption problem is defined for lambda <= 1");
    const auto& net = prop.network();
    const auto& techs = economy.technologies();

    std::vector<std::size_t> vars;
    std::vector<long> var_of(net.size(), -1);
    for (std::size_t t = 0; t < net.size(); ++t) {
        if (!net.active(t)) continue;
        var_of[t] = static_cast<long>(vars.size());
        vars.push_back(t);
    }
    if (vars.size() > options.max_techs)
        throw TooLargeError("oracle supports at most " + std::to_string(options.max_techs) +
                            " active technologies, got " + std::to_string(vars.size()));
    const std::size_t n = vars.size();
    const auto cap = prop.caps(shock);

    std::vector<std::vector<Q>> A;
    std::vector<Q> b;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Q> row(n, Q(0));
        row[k] = Q(1);
        A.push_back(std::move(row));
        b.push_back(Q(cap[vars[k]]));
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& group : prop.input_groups(vars[k])) {
            if (!(group.received > 0.0)) continue;
            std::vector<Q> row(n, Q(0));
            for (std::size_t e : group.edges) {
                const auto& edge = net.edges()[e];
                row[static_cast<std::size_t>(var_of[edge.from])] -= Q(edge.amount) / Q(edge.theta);
            }
            row[k] += Q(group.received);
            A.push_back(std::move(row));
            b.push_back(Q(0));
        }
    }
    std::vector<Q> c(n, Q(0));
    for (std::size_t k = 0; k < n; ++k) {
        const auto& id = techs[vars[k]].id;
        auto it = options.weights.find(id);
        double w;
        if (it != options.weights.end()) {
            w = it->second;
            if (!(w > 0.0)) throw InvariantError("oracle weight for '" + id + "' must be positive");
        } else {
            w = state.price(id).value_or(0.0) * state.output(id);
            if (!(w > 0.0)) w = state.output(id);
        }
        c[k] = Q(w);
    }
    DenseSimplex<Q> lp(std::move(A), std::move(b), std::move(c));
    auto result = lp.solve();
    std::vector<double> phi(net.size(), 0.0);
    for (std::size_t k = 0; k < n; ++k) phi[vars[k]] = result.x[k].convert_to<double>();
    return prop.outcome(phi);
}

std::vector<std::size_t> affected_finals(const Economy& economy, const Network& net,
                                         const std::vector<std::string>& shocked) {
    std::vector<std::size_t> seeds;
    for (const auto& id : shocked) seeds.push_back(economy.tech_index(id));
    auto reach = net.downstream(seeds);
    std::vector<std::size_t> finals;
    for (std::size_t t = 0; t < net.size(); ++t) {
        if (reach[t] && net.active(t) && economy.is_final_tech(economy.technologies()[t].id))
            finals.push_back(t);
    }
    return finals;
}

BoundReport shock_bound(const Economy& economy, const FlowState& state, const ShockSpec& shock,
                        double tight_tolerance) {
    Propagator prop(economy, state);
    auto finals = affected_finals(economy, prop.network(), shock.shocked);
    BoundReport r;
    double value = 0.0;
    for (std::size_t t : finals) {
        const auto& id = economy.technologies()[t].id;
        r.affected_finals.push_back(id);
        value += *state.price(id) * state.output(id);
    }
    std::sort(r.affected_finals.begin(), r.affected_finals.end());
    const double g = prop.base_gdp();
    r.bound_fraction = g > 0.0 ? (1.0 - shock.lambda) * value / g : 0.0;
    r.actual_fraction = prop.run(shock).loss_fraction();
    r.tight = std::abs(r.bound_fraction - r.actual_fraction) <= tight_tolerance;
    return r;
}

CutConditionReport check_cut_condition(const Economy& economy, const FlowState& state,
                                       const ShockSpec& shock) {
    Propagator prop(economy, state);
    check_shock(economy, state, shock);
    const auto& net = prop.network();
    const auto& techs = economy.technologies();
    CutConditionReport report;

    auto finals = affected_finals(economy, net, shock.shocked);
    auto sub = net.upstream(finals);
    if (auto cycle = net.find_cycle(sub); !cycle.empty()) {
        report.holds = false;
        report.reason = "disrupted-industries sub-network has a directed cycle";
        for (std::size_t t : cycle) report.certificate.push_back(techs[t].id);
        return report;
    }

    std::vector<bool> shocked(net.size(), false);
    for (const auto& id : shock.shocked) shocked[economy.tech_index(id)] = true;
    std::vector<bool> is_final(net.size(), false);
    for (std::size_t t : finals) is_final[t] = true;

    // Sources: sub-network nodes without in-links from the sub-network.
    std::vector<std::size_t> parent(net.size(), net.size());
    std::vector<bool> seen(net.size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t t = 0; t < net.size(); ++t) {
        if (!sub[t] || !net.active(t)) continue;
        bool has_in = false;
        for (std::size_t e : net.in_edges(t))
            if (sub[net.edges()[e].from]) has_in = true;
        if (!has_in && !shocked[t]) {
            seen[t] = true;
            queue.push_back(t);
        }
    }
    // Edges touching shocked technologies are deleted, so shocked nodes are
    // never entered.
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        if (is_final[u]) {
            report.holds = false;
            report.reason = "path from a source to an affected final avoids the shocked edges";
            std::vector<std::size_t> path;
            for (std::size_t v = u; v != net.size(); v = parent[v]) path.push_back(v);
            std::reverse(path.begin(), path.end());
            for (std::size_t t : path) report.certificate.push_back(techs[t].id);
            return report;
        }
        for (std::size_t e : net.out_edges(u)) {
            std::size_t v = net.edges()[e].to;
            if (!sub[v] || shocked[v] || seen[v]) continue;
            seen[v] = true;
            parent[v] = u;
            queue.push_back(v);
        }
    }
    report.holds = true;
    return report;
}

bool check_industry_shock_condition(const Economy& economy, const FlowState& state,
                                    const ShockSpec& shock) {
    Propagator prop(economy, state);
    check_shock(economy, state, shock);
    const auto& techs = economy.technologies();
    const auto& net = prop.network();
    std::map<std::string, std::set<std::string>> input_set;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!net.active(t)) continue;
        std::set<std::string> goods;
        for (const auto& [g, q] : techs[t].inputs) goods.insert(g);
        auto [it, fresh] = input_set.emplace(techs[t].output, goods);
        if (!fresh && it->second != goods) return false;
    }
    std::set<std::string> shocked(shock.shocked.begin(), shock.shocked.end());
    for (const auto& id : shock.shocked) {
        for (std::size_t p : economy.producers(economy.tech(id).output)) {
            if (net.active(p) && !shocked.count(techs[p].id)) return false;
        }
    }
    return true;
}

} // namespace prodnet
