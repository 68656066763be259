#include "prodnet/medium_run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "prodnet/propagation.hpp"
#include "prodnet/simplex.hpp"

namespace prodnet {

MediumRunResult medium_run_optimize(const Economy& economy, const FlowState& state,
                                    const ShockSpec& shock, const MediumRunOptions& options) {
    Propagator prop(economy, state);
    check_shock(economy, state, shock);
    const auto& techs = economy.technologies();
    const auto& net = prop.network();
    const auto cap = prop.caps(shock);

    // Variables: one output per active technology, then one flow per
    // (active producer, active user) pair of every good.
    std::vector<std::size_t> active;
    std::vector<long> out_var(techs.size(), -1);
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!net.active(t)) continue;
        out_var[t] = static_cast<long>(active.size());
        active.push_back(t);
    }
    struct Pair {
        std::size_t from, to;
        double theta;
    };
    std::vector<Pair> pairs;
    std::map<std::pair<std::size_t, std::string>, std::vector<std::size_t>> supply;  // (user, good)
    std::vector<std::vector<std::size_t>> shipments(techs.size());
    for (std::size_t d : active) {
        for (const auto& [g, q] : techs[d].inputs) {
            auto& list = supply[{d, g}];
            for (std::size_t s : economy.producers(g)) {
                if (!net.active(s)) continue;
                list.push_back(active.size() + pairs.size());
                shipments[s].push_back(active.size() + pairs.size());
                pairs.push_back({s, d, economy.good_theta(techs[s].id, techs[d].id)});
            }
        }
    }
    const std::size_t nvars = active.size() + pairs.size();
    if (nvars > options.max_variables)
        throw TooLargeError("medium-run program has " + std::to_string(nvars) +
                            " variables, above the limit of " +
                            std::to_string(options.max_variables));

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (std::size_t k = 0; k < active.size(); ++k) {
        std::size_t t = active[k];
        std::vector<double> row(nvars, 0.0);
        row[k] = 1.0;
        A.push_back(std::move(row));
        b.push_back(std::min(cap[t], 1.0) * state.output(techs[t].id));
    }
    for (std::size_t k = 0; k < active.size(); ++k) {
        std::size_t d = active[k];
        for (const auto& [g, q] : techs[d].inputs) {
            std::vector<double> row(nvars, 0.0);
            row[k] = q;
            for (std::size_t v : supply[{d, g}]) row[v] = -1.0 / pairs[v - active.size()].theta;
            A.push_back(std::move(row));
            b.push_back(0.0);
        }
        if (!shipments[d].empty()) {
            std::vector<double> row(nvars, 0.0);
            row[k] = -1.0;
            for (std::size_t v : shipments[d]) row[v] = 1.0;
            A.push_back(std::move(row));
            b.push_back(0.0);
        }
    }
    std::vector<double> c(nvars, 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
        const auto& t = techs[active[k]];
        if (!economy.is_final_good(t.output)) continue;
        auto it = options.objective_prices.find(t.id);
        c[k] = it != options.objective_prices.end() ? it->second : *state.price(t.id);
    }

    LpResult<double> sol;
    if (options.exact) {
        using Q = boost::multiprecision::cpp_rational;
        auto q = [](const std::vector<double>& v) { return std::vector<Q>(v.begin(), v.end()); };
        std::vector<std::vector<Q>> Aq;
        for (const auto& row : A) Aq.push_back(q(row));
        DenseSimplex<Q> lp(std::move(Aq), q(b), q(c));
        auto exact = lp.solve();
        for (const auto& x : exact.x) sol.x.push_back(static_cast<double>(x));
        sol.objective = static_cast<double>(exact.objective);
        sol.pivots = exact.pivots;
    } else {
        DenseSimplex<double> lp(std::move(A), std::move(b), std::move(c), 1e-11);
        sol = lp.solve();
    }

    MediumRunResult result;
    result.gdp_before = prop.base_gdp();
    FlowState& f = result.flows;
    f.prices = state.prices;
    f.wages = state.wages;
    std::vector<double> yhat(techs.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
        const std::size_t t = active[k];
        const double y = state.output(techs[t].id);
        yhat[t] = std::clamp(sol.x[k], 0.0, y);
    }
    for (const auto& t : techs)
        if (state.outputs.count(t.id)) f.outputs[t.id] = yhat[economy.tech_index(t.id)];
    for (std::size_t v = 0; v < pairs.size(); ++v) {
        double x = std::max(sol.x[active.size() + v], 0.0);
        if (x <= 1e-12) continue;
        const auto& p = pairs[v];
        EdgeKey key{techs[p.from].id, techs[p.to].id};
        f.good_flows[key] = x;
        if (!(state.good_flow(key.first, key.second) > 0.0))
            result.reroutes.push_back({key.first, key.second, x});
    }
    for (const auto& [key, x] : state.labor_flows) {
        std::size_t t = economy.tech_index(key.second);
        double y = state.output(key.second);
        f.labor_flows[key] = y > 0.0 ? x * yhat[t] / y : 0.0;
    }
    double lost = 0.0;
    for (std::size_t t : active) {
        if (!economy.is_final_good(techs[t].output)) continue;
        lost += *state.price(techs[t].id) * (state.output(techs[t].id) - yhat[t]);
    }
    result.lost_gdp = std::max(lost, 0.0);
    return result;
}

LprReport lpr(const Economy& economy, const FlowState& state, const ShockSpec& shock,
              const MediumRunOptions& options) {
    LprReport r;
    r.short_run_loss = propagate(economy, state, shock).lost_gdp_total;
    r.medium_run_loss = medium_run_optimize(economy, state, shock, options).lost_gdp;
    const double scale = std::max(gdp(economy, state), 1.0) * 1e-12;
    const bool short_zero = std::abs(r.short_run_loss) <= scale;
    const bool medium_zero = std::abs(r.medium_run_loss) <= scale;
    if (medium_zero)
        r.lpr = short_zero ? 1.0 : std::numeric_limits<double>::infinity();
    else
        r.lpr = r.short_run_loss / r.medium_run_loss;
    return r;
}

GeneratedEconomy generate_lpr_family(int t) {
    if (t < 2) throw InvariantError("the family is defined for t >= 2");
    const double td = t;
    std::vector<Country> countries;
    for (int j = 1; j <= t; ++j) {
        double labor = j == 1 ? 2.0 * td + 1.0 : j == 2 ? td * td + 1.0 : td + 1.0;
        countries.push_back({std::to_string(j), labor});
    }
    std::vector<Good> goods{{"0", GoodKind::Intermediate}};
    for (int i = 1; i <= t; ++i) goods.push_back({std::to_string(i), GoodKind::Intermediate});
    goods.push_back({"F", GoodKind::Final});

    auto level2 = [](int i, int j) { return std::to_string(i) + "_" + std::to_string(j); };
    auto final_tech = [](int j) { return "F_" + std::to_string(j); };

    std::vector<Technology> techs;
    techs.push_back({"01", "1", "0", 1.0, {}});
    techs.push_back({"02", "2", "0", 1.0, {}});
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= t; ++j)
            techs.push_back({level2(i, j), std::to_string(j), std::to_string(i), 1.0, {{"0", 1.0}}});
    for (int j = 1; j <= t; ++j) {
        Technology f{final_tech(j), std::to_string(j), "F", 1.0, {}};
        for (int i = 1; i <= t; ++i) f.inputs[std::to_string(i)] = 1.0;
        techs.push_back(std::move(f));
    }

    FlowState s;
    s.outputs["01"] = td;
    s.outputs["02"] = td * (td - 1.0);
    s.prices["01"] = 1.0;
    s.prices["02"] = 1.0;
    s.labor_flows[{"1", "01"}] = td;
    s.labor_flows[{"2", "02"}] = td * (td - 1.0);
    for (int i = 1; i <= t; ++i) {
        for (int j = 1; j <= t; ++j) {
            const std::string id = level2(i, j);
            s.outputs[id] = 1.0;
            s.prices[id] = 2.0;
            s.labor_flows[{std::to_string(j), id}] = 1.0;
            s.good_flows[{i == j ? "01" : "02", id}] = 1.0;
            s.good_flows[{id, final_tech(j)}] = 1.0;
        }
    }
    for (int j = 1; j <= t; ++j) {
        s.outputs[final_tech(j)] = 1.0;
        s.prices[final_tech(j)] = 2.0 * td + 1.0;
        s.labor_flows[{std::to_string(j), final_tech(j)}] = 1.0;
    }
    for (int j = 1; j <= t; ++j) s.wages[std::to_string(j)] = 1.0;

    return {Economy(std::move(countries), std::move(goods), std::move(techs), TransportCosts{}),
            std::move(s)};
}

} // namespace prodnet
