#include "prodnet/power.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "prodnet/network.hpp"

namespace prodnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Linearized consistent-disruption engine over one flow state. All deltas are
// per unit of output cut at the initial technology.
class Engine {
public:
    struct Group {
        std::string good;
        std::vector<std::size_t> edges;
        double received = 0.0;
    };

    // Internal routing: per-tech downstream edge weights and per-(tech, group)
    // upstream edge weights. Empty means proportional rationing.
    struct Route {
        std::map<std::size_t, std::vector<std::pair<std::size_t, double>>> down;
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, double>>> up;
    };

    struct Delta {
        std::vector<double> dx;  // by edge, shipped units
        std::vector<double> dy;  // by tech
    };

    Engine(const Economy& economy, const FlowState& state)
        : economy_(economy), state_(state), net_(economy, state) {
        const auto& techs = economy.technologies();
        auto order = net_.topo_order();
        if (!order) {
            auto cycle = net_.find_cycle();
            throw CyclicNetworkError("supply network has a directed cycle: " +
                                     render_path(economy, cycle));
        }
        order_ = std::move(*order);
        y_.assign(techs.size(), 0.0);
        for (std::size_t t = 0; t < techs.size(); ++t) y_[t] = state.output(techs[t].id);
        groups_.assign(techs.size(), {});
        edge_group_.assign(net_.edges().size(), 0);
        for (std::size_t t = 0; t < techs.size(); ++t) {
            if (!net_.active(t)) continue;
            std::map<std::string, Group> by_good;
            for (const auto& [g, q] : techs[t].inputs) by_good[g].good = g;
            for (std::size_t e : net_.in_edges(t)) {
                const auto& edge = net_.edges()[e];
                auto& group = by_good[techs[edge.from].output];
                group.edges.push_back(e);
                group.received += edge.amount / edge.theta;
            }
            for (auto& [g, group] : by_good) {
                std::sort(group.edges.begin(), group.edges.end(), [&](std::size_t a, std::size_t b) {
                    return techs[net_.edges()[a].from].id < techs[net_.edges()[b].from].id;
                });
                for (std::size_t e : group.edges) edge_group_[e] = groups_[t].size();
                groups_[t].push_back(std::move(group));
            }
        }
        labor_.assign(techs.size(), {});
        for (const auto& [key, x] : state.labor_flows) {
            if (!(x > 0.0)) continue;
            labor_[economy.tech_index(key.second)].push_back({economy.country_index(key.first), x});
        }
        wages_.assign(economy.countries().size(), 0.0);
        for (std::size_t c = 0; c < wages_.size(); ++c)
            wages_[c] = state.wage(economy.countries()[c].id).value_or(0.0);
    }

    const Network& net() const { return net_; }
    const std::vector<Group>& groups(std::size_t t) const { return groups_[t]; }
    double output(std::size_t t) const { return y_[t]; }

    std::vector<std::size_t> out_edges_sorted(std::size_t t) const {
        auto out = net_.out_edges(t);
        const auto& techs = economy_.technologies();
        std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
            return techs[net_.edges()[a].to].id < techs[net_.edges()[b].to].id;
        });
        return out;
    }

    Delta unit(std::size_t root, const Route& route) const {
        const auto& edges = net_.edges();
        const std::size_t n = y_.size();
        Delta d;
        d.dx.assign(edges.size(), 0.0);
        d.dy.assign(n, 0.0);
        std::vector<std::vector<double>> cut(n);
        for (std::size_t t = 0; t < n; ++t) cut[t].assign(groups_[t].size(), 0.0);

        auto ship_cut = [&](std::size_t t) {
            const auto& outs = net_.out_edges(t);
            if (outs.empty() || !(d.dy[t] > 0.0)) return;
            double shipped = 0.0;
            for (std::size_t e : outs) shipped += edges[e].amount;
            auto it = route.down.find(t);
            if (it != route.down.end()) {
                double total = d.dy[t] * shipped / y_[t];
                for (const auto& [e, w] : it->second) d.dx[e] += w * total;
            } else {
                for (std::size_t e : outs) d.dx[e] += edges[e].amount * d.dy[t] / y_[t];
            }
        };

        // Downstream: shortfalls travel with the goods.
        d.dy[root] = 1.0;
        for (std::size_t t : order_) {
            if (t != root) {
                double worst = 0.0;
                for (std::size_t g = 0; g < groups_[t].size(); ++g) {
                    if (!(groups_[t][g].received > 0.0)) continue;
                    double lost = 0.0;
                    for (std::size_t e : groups_[t][g].edges) lost += d.dx[e] / edges[e].theta;
                    cut[t][g] = lost;
                    worst = std::max(worst, lost / groups_[t][g].received);
                }
                d.dy[t] = y_[t] * worst;
            }
            ship_cut(t);
        }
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t g = 0; g < groups_[t].size(); ++g) {
                double lost = 0.0;
                for (std::size_t e : groups_[t][g].edges) lost += d.dx[e] / edges[e].theta;
                cut[t][g] = lost;
            }
        }

        // Upstream: reduced production buys fewer inputs.
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            const std::size_t t = *it;
            const auto& outs = net_.out_edges(t);
            if (!outs.empty() && !economy_.is_final_tech(economy_.technologies()[t].id)) {
                double out_cut = 0.0;
                for (std::size_t e : outs) out_cut += d.dx[e];
                d.dy[t] = std::max(d.dy[t], out_cut);
            }
            if (!(d.dy[t] > 0.0)) continue;
            for (std::size_t g = 0; g < groups_[t].size(); ++g) {
                const auto& group = groups_[t][g];
                double need = group.received * d.dy[t] / y_[t] - cut[t][g];
                if (!(need > 1e-14 * group.received)) continue;
                auto rt = route.up.find({t, g});
                if (rt != route.up.end()) {
                    for (const auto& [e, w] : rt->second) d.dx[e] += need * w * edges[e].theta;
                } else {
                    // Linearized rationing: shares follow the baseline receipts.
                    for (std::size_t e : group.edges) {
                        double share = edges[e].amount / edges[e].theta / group.received;
                        d.dx[e] += need * share * edges[e].theta;
                    }
                }
                cut[t][g] += need;
            }
        }
        return d;
    }

    // Largest multiple of the unit delta that keeps every flow and output
    // nonnegative.
    double s_max(const Delta& d) const {
        double s = kInf;
        for (std::size_t e = 0; e < d.dx.size(); ++e)
            if (d.dx[e] > 0.0) s = std::min(s, net_.edges()[e].amount / d.dx[e]);
        for (std::size_t t = 0; t < d.dy.size(); ++t)
            if (d.dy[t] > 0.0) s = std::min(s, y_[t] / d.dy[t]);
        return s;
    }

    // Wage-weighted idle labor per country index.
    std::vector<double> losses(const Delta& d) const {
        std::vector<double> loss(wages_.size(), 0.0);
        for (std::size_t t = 0; t < d.dy.size(); ++t) {
            if (!(d.dy[t] > 0.0)) continue;
            for (const auto& [c, x] : labor_[t]) loss[c] += wages_[c] * x * d.dy[t] / y_[t];
        }
        return loss;
    }

    std::vector<double> idle(const Delta& d) const {
        std::vector<double> out(wages_.size(), 0.0);
        for (std::size_t t = 0; t < d.dy.size(); ++t) {
            if (!(d.dy[t] > 0.0)) continue;
            for (const auto& [c, x] : labor_[t]) out[c] += x * d.dy[t] / y_[t];
        }
        return out;
    }

    FlowState apply(const Delta& d, double s, bool snap) const {
        const auto& techs = economy_.technologies();
        FlowState f;
        f.prices = state_.prices;
        f.wages = state_.wages;
        auto clean = [&](double v, double ref) {
            if (snap && std::abs(v) <= 1e-12 * std::max(1.0, ref)) return 0.0;
            return v;
        };
        std::vector<double> y_new(y_.size(), 0.0);
        for (std::size_t t = 0; t < y_.size(); ++t) {
            y_new[t] = clean(y_[t] - s * d.dy[t], y_[t]);
            if (state_.outputs.count(techs[t].id)) f.outputs[techs[t].id] = y_new[t];
        }
        for (std::size_t e = 0; e < net_.edges().size(); ++e) {
            const auto& edge = net_.edges()[e];
            double x = clean(edge.amount - s * d.dx[e], edge.amount);
            if (snap && (y_new[edge.from] == 0.0 || y_new[edge.to] == 0.0)) x = 0.0;
            if (x != 0.0 || !snap) f.good_flows[{techs[edge.from].id, techs[edge.to].id}] = x;
        }
        for (const auto& [key, x] : state_.labor_flows) {
            std::size_t t = economy_.tech_index(key.second);
            double v = y_[t] > 0.0 ? x * (1.0 - s * d.dy[t] / y_[t]) : 0.0;
            v = clean(v, x);
            if (snap && y_new[t] == 0.0) v = 0.0;
            if (v != 0.0 || !snap) f.labor_flows[key] = v;
        }
        return f;
    }

    Route convert(const RoutingStrategy& routing) const {
        const auto& techs = economy_.technologies();
        Route route;
        auto check_sum = [](double sum, const std::string& where) {
            if (std::abs(sum - 1.0) > 1e-9)
                throw InvariantError("routing weights for " + where + " sum to " +
                                     std::to_string(sum) + ", not 1");
        };
        for (const auto& [tech, dist] : routing.downstream_routes) {
            std::size_t t = economy_.tech_index(tech);
            double sum = 0.0;
            for (const auto& [customer, w] : dist) {
                std::size_t c = economy_.tech_index(customer);
                std::size_t found = net_.edges().size();
                for (std::size_t e : net_.out_edges(t))
                    if (net_.edges()[e].to == c) found = e;
                if (found == net_.edges().size())
                    throw InvariantError("routing uses absent flow " + tech + "->" + customer);
                if (w < 0.0) throw InvariantError("negative routing weight");
                route.down[t].push_back({found, w});
                sum += w;
            }
            check_sum(sum, tech);
        }
        for (const auto& [key, dist] : routing.upstream_routes) {
            std::size_t t = economy_.tech_index(key.first);
            std::size_t g = groups_[t].size();
            for (std::size_t k = 0; k < groups_[t].size(); ++k)
                if (groups_[t][k].good == key.second) g = k;
            if (g == groups_[t].size())
                throw InvariantError("technology '" + key.first + "' does not buy good '" +
                                     key.second + "'");
            double sum = 0.0;
            for (const auto& [supplier, w] : dist) {
                std::size_t s = economy_.tech_index(supplier);
                std::size_t found = net_.edges().size();
                for (std::size_t e : groups_[t][g].edges)
                    if (net_.edges()[e].from == s) found = e;
                if (found == net_.edges().size())
                    throw InvariantError("routing uses absent flow " + supplier + "->" + key.first);
                if (w < 0.0) throw InvariantError("negative routing weight");
                route.up[{t, g}].push_back({found, w});
                sum += w;
            }
            check_sum(sum, key.first + "/" + key.second);
        }
        (void)techs;
        return route;
    }

private:
    const Economy& economy_;
    const FlowState& state_;
    Network net_;
    std::vector<std::size_t> order_;
    std::vector<double> y_;
    std::vector<std::vector<Group>> groups_;
    std::vector<std::size_t> edge_group_;
    std::vector<std::vector<std::pair<std::size_t, double>>> labor_;
    std::vector<double> wages_;
};

// A technology that may steer a cut: downstream over its customers (group ==
// npos) or upstream over the suppliers of one input good.
struct Decision {
    std::size_t tech = 0;
    std::size_t group = npos;
    std::vector<std::size_t> options;  // edges
    bool aggressor = true;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

std::vector<Decision> decisions_for(const Economy& economy, const Engine& engine, std::size_t root,
                                    const std::vector<bool>& discretion,
                                    const std::vector<bool>& is_aggressor) {
    const auto& net = engine.net();
    auto down = net.downstream({root});
    std::vector<std::size_t> down_list;
    for (std::size_t t = 0; t < net.size(); ++t)
        if (down[t]) down_list.push_back(t);
    auto up = net.upstream(down_list);
    std::vector<Decision> out;
    const auto& techs = economy.technologies();
    std::vector<std::size_t> ids(net.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(),
              [&](std::size_t a, std::size_t b) { return techs[a].id < techs[b].id; });
    for (std::size_t t : ids) {
        if (!net.active(t) || !discretion[t]) continue;
        if (down[t] && net.out_edges(t).size() >= 2) {
            Decision d;
            d.tech = t;
            d.options = engine.out_edges_sorted(t);
            d.aggressor = is_aggressor[t];
            out.push_back(std::move(d));
        }
        if (up[t]) {
            for (std::size_t g = 0; g < engine.groups(t).size(); ++g) {
                if (engine.groups(t)[g].edges.size() < 2) continue;
                Decision d;
                d.tech = t;
                d.group = g;
                d.options = engine.groups(t)[g].edges;
                d.aggressor = is_aggressor[t];
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

Engine::Route route_from(const std::vector<Decision>& decisions, const std::vector<std::size_t>& pick) {
    Engine::Route route;
    for (std::size_t k = 0; k < decisions.size(); ++k) {
        const auto& d = decisions[k];
        std::size_t e = d.options[pick[k]];
        if (d.group == Decision::npos)
            route.down[d.tech] = {{e, 1.0}};
        else
            route.up[{d.tech, d.group}] = {{e, 1.0}};
    }
    return route;
}

RoutingStrategy strategy_from(const Economy& economy, const Engine& engine,
                              const std::vector<Decision>& decisions,
                              const std::vector<std::size_t>& pick, const Engine::Delta& delta) {
    const auto& techs = economy.technologies();
    const auto& edges = engine.net().edges();
    RoutingStrategy s;
    for (std::size_t k = 0; k < decisions.size(); ++k) {
        const auto& d = decisions[k];
        if (!(delta.dy[d.tech] > 0.0)) continue;
        const auto& edge = edges[d.options[pick[k]]];
        if (d.group == Decision::npos) {
            s.downstream_routes[techs[d.tech].id][techs[edge.to].id] = 1.0;
        } else {
            s.upstream_routes[{techs[d.tech].id, engine.groups(d.tech)[d.group].good}]
                             [techs[edge.from].id] = 1.0;
        }
    }
    return s;
}

std::size_t combination_count(const std::vector<Decision>& decisions, std::size_t limit) {
    std::size_t total = 1;
    for (const auto& d : decisions) {
        total *= d.options.size();
        if (total > limit)
            throw TooLargeError("routing enumeration exceeds " + std::to_string(limit) +
                                " combinations");
    }
    return total;
}

// Advances a mixed-radix counter; false once every combination was visited.
bool next_pick(const std::vector<Decision>& decisions, std::vector<std::size_t>& pick) {
    for (std::size_t k = decisions.size(); k-- > 0;) {
        if (++pick[k] < decisions[k].options.size()) return true;
        pick[k] = 0;
    }
    return false;
}

double country_gdp(const Economy& economy, const FlowState& state, const std::string& country) {
    return state.wage(country).value_or(0.0) * economy.country(country).labor;
}

void check_countries(const Economy& economy, const std::string& aggressor,
                     const std::string& target) {
    economy.country(aggressor);
    economy.country(target);
    if (aggressor == target) throw InvariantError("aggressor and target must differ");
}

std::vector<bool> owned_by(const Economy& economy, const std::string& country) {
    std::vector<bool> mask(economy.technologies().size(), false);
    for (std::size_t t = 0; t < mask.size(); ++t)
        mask[t] = economy.technologies()[t].country == country;
    return mask;
}

DisruptionOutcome outcome_of(const Economy& economy, const FlowState& state, const Engine& engine,
                             const Engine::Delta& delta, double s) {
    DisruptionOutcome out;
    out.flows = engine.apply(delta, s, false);
    out.gdp_before = gdp(economy, state);
    auto loss = engine.losses(delta);
    auto idle = engine.idle(delta);
    for (std::size_t c = 0; c < economy.countries().size(); ++c) {
        out.lost_gdp_by_country[economy.countries()[c].id] = s * loss[c];
        out.idle_labor[economy.countries()[c].id] = s * idle[c];
    }
    double lost = 0.0;
    const auto& techs = economy.technologies();
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!economy.is_final_good(techs[t].output) || !(delta.dy[t] > 0.0)) continue;
        lost += state.price(techs[t].id).value_or(0.0) * s * delta.dy[t];
    }
    out.lost_gdp_total = lost;
    out.gdp_after = out.gdp_before - lost;
    return out;
}

std::size_t aggressor_tech(const Economy& economy, const FlowState& state,
                           const std::string& aggressor, const std::string& tech) {
    economy.country(aggressor);
    std::size_t t = economy.tech_index(tech);
    if (economy.technologies()[t].country != aggressor)
        throw ForeignTechError("technology '" + tech + "' does not belong to '" + aggressor + "'");
    if (!(state.output(tech) > 0.0))
        throw InactiveTechError("technology '" + tech + "' is not active");
    return t;
}

void check_routing_owner(const Economy& economy, const std::string& aggressor,
                         const RoutingStrategy& routing) {
    for (const auto& [tech, dist] : routing.downstream_routes)
        if (economy.tech(tech).country != aggressor)
            throw ForeignTechError("routing for foreign technology '" + tech + "'");
    for (const auto& [key, dist] : routing.upstream_routes)
        if (economy.tech(key.first).country != aggressor)
            throw ForeignTechError("routing for foreign technology '" + key.first + "'");
}

} // namespace

std::string RoutingStrategy::describe() const {
    std::string out;
    for (const auto& [tech, dist] : downstream_routes) {
        for (const auto& [to, w] : dist) {
            if (!out.empty()) out += "; ";
            out += tech + "->" + to;
            if (w != 1.0) out += "@" + std::to_string(w);
        }
    }
    for (const auto& [key, dist] : upstream_routes) {
        for (const auto& [from, w] : dist) {
            if (!out.empty()) out += "; ";
            out += key.first + "[" + key.second + "]<-" + from;
            if (w != 1.0) out += "@" + std::to_string(w);
        }
    }
    return out.empty() ? "proportional" : out;
}

DisruptionOutcome individual_disruption(const Economy& economy, const FlowState& state,
                                        const std::string& aggressor, const std::string& tech,
                                        double scale, const RoutingStrategy& routing) {
    std::size_t t = aggressor_tech(economy, state, aggressor, tech);
    check_routing_owner(economy, aggressor, routing);
    if (!(scale > 0.0 && scale < 1.0)) throw NotPartialError("scale must lie in (0, 1)");
    Engine engine(economy, state);
    auto delta = engine.unit(t, engine.convert(routing));
    const double s = scale * engine.output(t);
    if (!(s < engine.s_max(delta) * (1.0 - 1e-12)))
        throw NotPartialError("cut of " + std::to_string(s) + " at '" + tech +
                              "' drives a flow to zero (partial limit " +
                              std::to_string(engine.s_max(delta)) + ")");
    return outcome_of(economy, state, engine, delta, s);
}

double max_partial_scale(const Economy& economy, const FlowState& state,
                         const std::string& aggressor, const std::string& tech,
                         const RoutingStrategy& routing) {
    std::size_t t = aggressor_tech(economy, state, aggressor, tech);
    check_routing_owner(economy, aggressor, routing);
    Engine engine(economy, state);
    auto delta = engine.unit(t, engine.convert(routing));
    return engine.s_max(delta) / engine.output(t);
}

DisruptionOutcome compose_disruptions(const Economy& economy, const FlowState& state,
                                      const std::string& aggressor,
                                      const std::vector<PartialCut>& cuts) {
    Engine engine(economy, state);
    Engine::Delta total;
    total.dx.assign(engine.net().edges().size(), 0.0);
    total.dy.assign(engine.net().size(), 0.0);
    for (const auto& cut : cuts) {
        std::size_t t = aggressor_tech(economy, state, aggressor, cut.tech);
        check_routing_owner(economy, aggressor, cut.routing);
        auto d = engine.unit(t, engine.convert(cut.routing));
        const double s = cut.scale * engine.output(t);
        for (std::size_t e = 0; e < d.dx.size(); ++e) total.dx[e] += s * d.dx[e];
        for (std::size_t k = 0; k < d.dy.size(); ++k) total.dy[k] += s * d.dy[k];
    }
    if (!(engine.s_max(total) > 1.0))
        throw NotPartialError("combined cuts drive a flow to zero");
    return outcome_of(economy, state, engine, total, 1.0);
}

std::vector<std::string> border_adjacent(const Economy& economy, const FlowState& state,
                                         const std::string& aggressor) {
    economy.country(aggressor);
    Network net(economy, state);
    const auto& techs = economy.technologies();
    auto mine = owned_by(economy, aggressor);
    std::vector<std::string> out;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!mine[t] || !net.active(t)) continue;
        bool border = false;
        // Downstream: foreign-only path to a final-good technology.
        std::vector<bool> seen(net.size(), false);
        std::deque<std::size_t> queue;
        for (std::size_t e : net.out_edges(t)) {
            std::size_t v = net.edges()[e].to;
            if (!mine[v] && !seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while (!queue.empty() && !border) {
            std::size_t u = queue.front();
            queue.pop_front();
            if (economy.is_final_tech(techs[u].id)) border = true;
            for (std::size_t e : net.out_edges(u)) {
                std::size_t v = net.edges()[e].to;
                if (!mine[v] && !seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        // Upstream: foreign-only path from a labor-only technology.
        seen.assign(net.size(), false);
        queue.clear();
        for (std::size_t e : net.in_edges(t)) {
            std::size_t v = net.edges()[e].from;
            if (!mine[v] && !seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while (!queue.empty() && !border) {
            std::size_t u = queue.front();
            queue.pop_front();
            if (net.in_edges(u).empty()) border = true;
            for (std::size_t e : net.in_edges(u)) {
                std::size_t v = net.edges()[e].from;
                if (!mine[v] && !seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if (border) out.push_back(techs[t].id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PowerCandidate> power_candidates(const Economy& economy, const FlowState& state,
                                             const std::string& aggressor,
                                             const std::string& target,
                                             const PowerOptions& options) {
    check_countries(economy, aggressor, target);
    Engine engine(economy, state);
    const auto& techs = economy.technologies();
    const std::size_t ia = economy.country_index(aggressor);
    const std::size_t it = economy.country_index(target);
    const double gdp_a = country_gdp(economy, state, aggressor);
    const double gdp_t = country_gdp(economy, state, target);
    auto mine = owned_by(economy, aggressor);

    std::vector<std::string> candidates;
    if (options.exhaustive) {
        for (std::size_t t = 0; t < techs.size(); ++t)
            if (mine[t] && engine.net().active(t)) candidates.push_back(techs[t].id);
        std::sort(candidates.begin(), candidates.end());
    } else {
        candidates = border_adjacent(economy, state, aggressor);
    }

    std::vector<PowerCandidate> out;
    std::size_t evaluated = 0;
    for (const auto& id : candidates) {
        const std::size_t root = economy.tech_index(id);
        auto decisions = decisions_for(economy, engine, root, mine, mine);
        evaluated += combination_count(decisions, options.max_combinations);
        if (evaluated > options.max_combinations)
            throw TooLargeError("routing enumeration exceeds " +
                                std::to_string(options.max_combinations) + " combinations");
        std::vector<std::size_t> pick(decisions.size(), 0);
        do {
            auto delta = engine.unit(root, route_from(decisions, pick));
            auto loss = engine.losses(delta);
            PowerCandidate c;
            c.tech = id;
            c.routing = strategy_from(economy, engine, decisions, pick, delta);
            c.aggressor_loss = loss[ia];
            c.target_loss = loss[it];
            if (c.aggressor_loss > 0.0) {
                c.power_abs = c.target_loss / c.aggressor_loss;
                c.power_pct = (c.target_loss / gdp_t) / (c.aggressor_loss / gdp_a);
            } else {
                c.power_abs = c.power_pct = c.target_loss > 0.0 ? kInf : 0.0;
            }
            out.push_back(std::move(c));
        } while (next_pick(decisions, pick));
    }
    return out;
}

PowerReport power(const Economy& economy, const FlowState& state, const std::string& aggressor,
                  const std::string& target, const PowerOptions& options) {
    auto candidates = power_candidates(economy, state, aggressor, target, options);
    PowerReport r;
    r.aggressor = aggressor;
    r.target = target;
    const PowerCandidate* best = nullptr;
    for (const auto& c : candidates) {
        if (!(c.target_loss > 0.0)) continue;
        if (!best || c.power_abs > best->power_abs) best = &c;
    }
    if (!best) {
        r.no_leverage = true;
        return r;
    }
    r.best_tech = best->tech;
    r.best_routing = best->routing;
    r.power_abs = best->power_abs;
    r.power_pct = best->power_pct;
    r.aggressor_loss = best->aggressor_loss;
    r.target_loss = best->target_loss;
    r.unbounded = std::isinf(best->power_abs);
    return r;
}

// ---------------------------------------------------------------- frontier

namespace {

std::string state_key(const FlowState& s) {
    std::string key;
    char buf[64];
    for (const auto& [k, v] : s.good_flows) {
        if (v == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%s>%s=%.9g;", k.first.c_str(), k.second.c_str(), v);
        key += buf;
    }
    return key;
}

std::vector<DisruptionStep> steps_from(const Economy& economy, const FlowState& state,
                                       const std::string& aggressor, const std::string& target,
                                       std::size_t* evaluations, std::size_t budget) {
    Engine engine(economy, state);
    const auto& techs = economy.technologies();
    const std::size_t ia = economy.country_index(aggressor);
    const std::size_t it = economy.country_index(target);
    auto mine = owned_by(economy, aggressor);
    std::vector<std::size_t> order(techs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return techs[a].id < techs[b].id; });

    std::vector<DisruptionStep> out;
    std::set<std::string> seen;
    for (std::size_t root : order) {
        if (!mine[root] || !engine.net().active(root)) continue;
        auto decisions = decisions_for(economy, engine, root, mine, mine);
        combination_count(decisions, budget);
        std::vector<std::size_t> pick(decisions.size(), 0);
        do {
            if (evaluations && ++*evaluations > budget)
                throw TooLargeError("frontier search exceeds its budget of " +
                                    std::to_string(budget) + " step evaluations");
            auto delta = engine.unit(root, route_from(decisions, pick));
            const double s = engine.s_max(delta);
            if (!std::isfinite(s) || !(s > 0.0)) continue;
            auto loss = engine.losses(delta);
            DisruptionStep step;
            step.tech = techs[root].id;
            step.routing = strategy_from(economy, engine, decisions, pick, delta);
            step.aggressor_loss = s * loss[ia];
            step.target_loss = s * loss[it];
            step.after = engine.apply(delta, s, true);
            std::string key = state_key(step.after);
            if (!seen.insert(key).second) continue;
            out.push_back(std::move(step));
        } while (next_pick(decisions, pick));
    }
    return out;
}

struct Segment {
    double x0, y0, x1, y1;
};

// Best target value reachable by a segment (and anything before it on the
// same path) with own loss at most x.
double segment_value(const Segment& s, double x) {
    if (x < s.x0) return -kInf;
    if (x >= s.x1 || s.x1 <= s.x0) return s.y1;
    return s.y0 + (s.y1 - s.y0) * (x - s.x0) / (s.x1 - s.x0);
}

} // namespace

std::vector<DisruptionStep> full_steps(const Economy& economy, const FlowState& state,
                                       const std::string& aggressor, const std::string& target) {
    check_countries(economy, aggressor, target);
    return steps_from(economy, state, aggressor, target, nullptr, 1000000);
}

double Frontier::value_at(double own_pct) const {
    if (points.empty()) return 0.0;
    if (own_pct <= points.front().first) return points.front().second;
    for (std::size_t k = 1; k < points.size(); ++k) {
        const auto& [x0, y0] = points[k - 1];
        const auto& [x1, y1] = points[k];
        if (own_pct <= x1) return y0 + (y1 - y0) * (own_pct - x0) / (x1 - x0);
    }
    return points.back().second;
}

Frontier frontier(const Economy& economy, const FlowState& state, const std::string& aggressor,
                  const std::string& target, const FrontierOptions& options) {
    check_countries(economy, aggressor, target);
    if (options.resolution < 1) throw InvariantError("resolution must be >= 1");
    const double gdp_a = country_gdp(economy, state, aggressor);
    const double gdp_t = country_gdp(economy, state, target);
    if (!(gdp_a > 0.0) || !(gdp_t > 0.0))
        throw InvariantError("country GDP must be positive for frontier percentages");

    std::vector<Segment> segments;
    std::map<std::string, std::vector<std::pair<double, double>>> visited;
    std::size_t evaluations = 0;

    // Depth-first over sequences of zero-out steps; a state reached again
    // with no better (own, target) pair is not expanded twice.
    std::function<void(const FlowState&, double, double, int)> explore =
        [&](const FlowState& s, double own, double tgt, int depth) {
            auto& seen = visited[state_key(s)];
            for (const auto& [o, t] : seen)
                if (o <= own + 1e-12 && t >= tgt - 1e-12) return;
            seen.push_back({own, tgt});
            if (depth == options.resolution) return;
            auto steps = steps_from(economy, s, aggressor, target, &evaluations, options.budget);
            for (const auto& step : steps) {
                if (!(step.target_loss > 0.0)) continue;
                double own2 = own + 100.0 * step.aggressor_loss / gdp_a;
                double tgt2 = tgt + 100.0 * step.target_loss / gdp_t;
                segments.push_back({own, tgt, own2, tgt2});
                explore(step.after, own2, tgt2, depth + 1);
            }
        };
    explore(state, 0.0, 0.0, 0);

    // Upper envelope of all segments, evaluated at every endpoint and every
    // pairwise crossing.
    std::vector<double> xs{0.0};
    for (const auto& s : segments) {
        xs.push_back(s.x0);
        xs.push_back(s.x1);
    }
    for (std::size_t a = 0; a < segments.size(); ++a) {
        const auto& s = segments[a];
        if (!(s.x1 > s.x0)) continue;
        double ma = (s.y1 - s.y0) / (s.x1 - s.x0);
        for (std::size_t b = a + 1; b < segments.size(); ++b) {
            const auto& u = segments[b];
            if (!(u.x1 > u.x0)) continue;
            double mb = (u.y1 - u.y0) / (u.x1 - u.x0);
            if (ma == mb) continue;
            double x = (u.y0 - mb * u.x0 - s.y0 + ma * s.x0) / (ma - mb);
            if (x > std::max(s.x0, u.x0) && x < std::min(s.x1, u.x1)) xs.push_back(x);
        }
        // Crossings with the flat tails of earlier-finished segments.
        for (const auto& u : segments) {
            if (u.y1 > s.y0 && u.y1 < s.y1 && ma > 0.0) {
                double x = s.x0 + (u.y1 - s.y0) / ma;
                if (x > s.x0 && x < s.x1) xs.push_back(x);
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
             xs.end());

    std::vector<std::pair<double, double>> pts;
    for (double x : xs) {
        double best = 0.0;
        for (const auto& s : segments) best = std::max(best, segment_value(s, x));
        pts.push_back({x, best});
    }

    // Keep the curve up to where the maximum is first reached, then drop
    // interior points that lie on the line through their neighbours.
    double top = 0.0;
    for (const auto& p : pts) top = std::max(top, p.second);
    Frontier f;
    for (const auto& p : pts) {
        while (f.points.size() >= 2) {
            const auto& a = f.points[f.points.size() - 2];
            const auto& b = f.points.back();
            double u1 = b.first - a.first, v1 = b.second - a.second;
            double u2 = p.first - a.first, v2 = p.second - a.second;
            double cross = u1 * v2 - v1 * u2;
            if (std::abs(cross) <= 1e-9 * (std::abs(u1) + std::abs(v1)) * (std::abs(u2) + std::abs(v2)))
                f.points.pop_back();
            else
                break;
        }
        f.points.push_back(p);
        if (p.second >= top - 1e-12) break;
    }
    if (f.points.empty()) f.points.push_back({0.0, 0.0});
    return f;
}

// ---------------------------------------------------------- strategic power

PowerReport strategic_power(const Economy& economy, const FlowState& state,
                            const std::string& aggressor, const std::string& target,
                            const PowerOptions& options) {
    check_countries(economy, aggressor, target);
    Engine engine(economy, state);
    const auto& net = engine.net();
    const auto& techs = economy.technologies();

    // No undirected cycles: union-find over distinct linked pairs.
    {
        std::vector<std::size_t> parent(net.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            return parent[v] == v ? v : parent[v] = find(parent[v]);
        };
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto& e : net.edges())
            pairs.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
        for (const auto& [a, b] : pairs) {
            std::size_t ra = find(a), rb = find(b);
            if (ra == rb)
                throw UndirectedCycleError("supply network has an undirected cycle through '" +
                                           techs[a].id + "' and '" + techs[b].id + "'");
            parent[ra] = rb;
        }
    }

    const std::size_t ia = economy.country_index(aggressor);
    const std::size_t it = economy.country_index(target);
    const double gdp_a = country_gdp(economy, state, aggressor);
    const double gdp_t = country_gdp(economy, state, target);
    auto mine = owned_by(economy, aggressor);
    auto theirs = owned_by(economy, target);
    std::vector<bool> discretion(net.size(), false);
    for (std::size_t t = 0; t < net.size(); ++t) discretion[t] = mine[t] || theirs[t];

    auto ratio_of = [&](const std::vector<double>& loss) {
        if (!(loss[ia] > 0.0)) return loss[it] > 0.0 ? kInf : 0.0;
        return loss[it] / loss[ia];
    };

    PowerReport report;
    report.aggressor = aggressor;
    report.target = target;
    bool have = false;
    std::size_t leaves = 0;

    std::vector<std::size_t> roots;
    for (std::size_t t = 0; t < net.size(); ++t)
        if (mine[t] && net.active(t)) roots.push_back(t);
    std::sort(roots.begin(), roots.end(),
              [&](std::size_t a, std::size_t b) { return techs[a].id < techs[b].id; });

    for (std::size_t root : roots) {
        auto decisions = decisions_for(economy, engine, root, discretion, mine);
        // Backward induction order: by undirected distance from the root.
        std::vector<std::size_t> dist(net.size(), static_cast<std::size_t>(-1));
        std::deque<std::size_t> queue{root};
        dist[root] = 0;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            auto visit = [&](std::size_t v) {
                if (dist[v] == static_cast<std::size_t>(-1)) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            };
            for (std::size_t e : net.out_edges(u)) visit(net.edges()[e].to);
            for (std::size_t e : net.in_edges(u)) visit(net.edges()[e].from);
        }
        std::stable_sort(decisions.begin(), decisions.end(),
                         [&](const Decision& a, const Decision& b) { return dist[a.tech] < dist[b.tech]; });
        combination_count(decisions, options.max_combinations);

        std::vector<std::size_t> pick(decisions.size(), 0);
        struct Value {
            double ratio;
            std::vector<std::size_t> pick;
        };
        std::function<Value(std::size_t)> solve = [&](std::size_t k) -> Value {
            if (k == decisions.size()) {
                if (++leaves > options.max_combinations)
                    throw TooLargeError("strategic game tree exceeds " +
                                        std::to_string(options.max_combinations) + " leaves");
                auto delta = engine.unit(root, route_from(decisions, pick));
                return {ratio_of(engine.losses(delta)), pick};
            }
            Value best{0.0, {}};
            bool first = true;
            for (std::size_t o = 0; o < decisions[k].options.size(); ++o) {
                pick[k] = o;
                Value v = solve(k + 1);
                bool better = decisions[k].aggressor ? v.ratio > best.ratio : v.ratio < best.ratio;
                if (first || better) {
                    best = std::move(v);
                    first = false;
                }
            }
            pick[k] = 0;
            return best;
        };
        Value v = solve(0);
        if (!have || v.ratio > report.power_abs) {
            have = true;
            auto chosen = v.pick.empty() ? std::vector<std::size_t>(decisions.size(), 0) : v.pick;
            auto delta = engine.unit(root, route_from(decisions, chosen));
            auto loss = engine.losses(delta);
            report.best_tech = techs[root].id;
            report.best_routing = strategy_from(economy, engine, decisions, chosen, delta);
            report.aggressor_loss = loss[ia];
            report.target_loss = loss[it];
            report.power_abs = v.ratio;
            report.power_pct = loss[ia] > 0.0 ? (loss[it] / gdp_t) / (loss[ia] / gdp_a)
                                              : (loss[it] > 0.0 ? kInf : 0.0);
        }
    }
    if (!have || !(report.target_loss > 0.0)) {
        report.no_leverage = true;
        report.power_abs = report.power_pct = 0.0;
    }
    report.unbounded = std::isinf(report.power_abs);
    return report;
}

} // namespace prodnet
