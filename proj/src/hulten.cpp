#include "prodnet/hulten.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

namespace prodnet {

HultenReport hulten_marginal(const Economy& economy, const FlowState& state,
                             const std::string& tech, double shock_size) {
    economy.tech(tech);
    const double y = state.output(tech);
    if (!(y > 0.0)) throw InactiveTechError("technology '" + tech + "' is not active");
    auto p = state.price(tech);
    if (!p) throw MissingPriceError("no price for technology '" + tech + "'");
    if (!(shock_size >= 0.0 && shock_size <= 1.0))
        throw InvariantError("shock size must lie in [0, 1]");
    HultenReport r;
    r.tech = tech;
    r.expenditure = *p * y;
    r.gdp = gdp(economy, state);
    r.marginal_share = r.gdp > 0.0 ? r.expenditure / r.gdp : 0.0;
    r.extrapolated_loss = shock_size * r.marginal_share;
    return r;
}

Economy productivity_adjusted_economy(const Economy& economy, const ShockSpec& shock) {
    if (!(shock.lambda > 0.0) || !std::isfinite(shock.lambda))
        throw InfeasibleError("productivity multiplier must be positive and finite");
    std::set<std::string> shocked(shock.shocked.begin(), shock.shocked.end());
    std::vector<Technology> techs = economy.technologies();
    for (auto& t : techs) {
        if (!shocked.count(t.id)) continue;
        t.labor_input /= shock.lambda;
        for (auto& [g, q] : t.inputs) q /= shock.lambda;
    }
    for (const auto& id : shocked) economy.tech(id);
    return Economy(economy.countries(), economy.goods(), std::move(techs), economy.transport(),
                   economy.demand_shares());
}

DisruptionOutcome long_run_reequilibrate(const Economy& economy, const FlowState& state,
                                         const ShockSpec& shock) {
    check_shock(economy, state, shock);
    DisruptionOutcome out;
    out.gdp_before = gdp(economy, state);
    if (shock.lambda == 1.0 || shock.shocked.empty()) {
        out.flows = state;
        out.gdp_after = out.gdp_before;
        for (const auto& c : economy.countries()) {
            out.lost_gdp_by_country[c.id] = 0.0;
            out.idle_labor[c.id] = 0.0;
        }
        return out;
    }
    const Economy adjusted = productivity_adjusted_economy(economy, shock);
    const auto& techs = adjusted.technologies();

    // Active technologies and the unique active producer of each good.
    std::vector<std::size_t> active;
    std::vector<long> pos(techs.size(), -1);
    std::map<std::string, std::size_t> producer_of;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!(state.output(techs[t].id) > 0.0)) continue;
        pos[t] = static_cast<long>(active.size());
        active.push_back(t);
        auto [it, fresh] = producer_of.emplace(techs[t].output, t);
        if (!fresh)
            throw UnsupportedEconomyError("good '" + techs[t].output +
                                          "' has several active producers ('" +
                                          techs[it->second].id + "', '" + techs[t].id + "')");
    }
    const std::size_t n = active.size();

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = techs[active[k]];
        for (const auto& [g, q] : t.inputs) {
            auto it = producer_of.find(g);
            if (it == producer_of.end())
                throw UnsupportedEconomyError("no active producer of input '" + g + "' for '" +
                                              t.id + "'");
            const auto src = static_cast<Eigen::Index>(pos[it->second]);
            B(src, static_cast<Eigen::Index>(k)) +=
                q * adjusted.good_theta(techs[it->second].id, t.id);
        }
    }
    if (n > 0) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(B, false);
        double radius = es.eigenvalues().cwiseAbs().maxCoeff();
        if (!(radius < 1.0 - 1e-12))
            throw InfeasibleError("input requirement matrix has spectral radius " +
                                  std::to_string(radius) + " >= 1 after the shock");
    }
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(B.rows(), B.cols());
    const auto lu_out = (I - B).partialPivLu();
    const auto lu_price = (I - B.transpose()).partialPivLu();

    // Labor per unit of output shipped from each country, keeping the
    // pre-shock mix of source countries.
    const auto& countries = adjusted.countries();
    const std::size_t nc = countries.size();
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nc),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = techs[active[k]];
        std::vector<double> sigma(nc, 0.0);
        double total = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
            sigma[c] = state.labor_flow(countries[c].id, t.id);
            total += sigma[c];
        }
        if (!(total > 0.0)) {
            sigma.assign(nc, 0.0);
            sigma[adjusted.country_index(t.country)] = 1.0;
            total = 1.0;
        }
        double received_per_shipped = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
            sigma[c] /= total;
            received_per_shipped += sigma[c] / adjusted.labor_theta(countries[c].id, t.id);
        }
        for (std::size_t c = 0; c < nc; ++c)
            U(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k)) =
                t.labor_input * sigma[c] / received_per_shipped;
    }

    Eigen::VectorXd L(static_cast<Eigen::Index>(nc));
    Eigen::VectorXd w(static_cast<Eigen::Index>(nc));
    for (std::size_t c = 0; c < nc; ++c) {
        L(static_cast<Eigen::Index>(c)) = countries[c].labor;
        auto wage = state.wage(countries[c].id);
        if (!wage) throw MissingPriceError("no wage for country '" + countries[c].id + "'");
        w(static_cast<Eigen::Index>(c)) = *wage;
    }
    const double income0 = w.dot(L);

    // Expenditure shares over final goods and pre-shock consumption.
    std::map<std::string, double> shares;
    std::map<std::string, double> c_old;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = techs[active[k]];
        if (!adjusted.is_final_good(t.output)) continue;
        c_old[t.output] += state.output(t.id);
    }
    if (adjusted.demand_shares()) {
        shares = *adjusted.demand_shares();
    } else if (c_old.size() == 1) {
        shares[c_old.begin()->first] = 1.0;
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const auto& t = techs[active[k]];
            if (!adjusted.is_final_good(t.output)) continue;
            shares[t.output] += *state.price(t.id) * state.output(t.id) / out.gdp_before;
        }
    }

    Eigen::VectorXd p, y;
    auto solve_at = [&](const Eigen::VectorXd& wages) {
        Eigen::VectorXd v = U.transpose() * wages;
        p = lu_price.solve(v);
        const double income = wages.dot(L);
        Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const auto& t = techs[active[k]];
            if (!adjusted.is_final_good(t.output)) continue;
            auto it = shares.find(t.output);
            double s = it == shares.end() ? 0.0 : it->second;
            d(static_cast<Eigen::Index>(k)) = s * income / p(static_cast<Eigen::Index>(k));
        }
        y = lu_out.solve(d);
    };

    solve_at(w);
    if (nc > 1) {
        // Tatonnement on relative wages: raise wages where labor is scarce.
        const int max_iter = 200000;
        int iter = 0;
        for (; iter < max_iter; ++iter) {
            Eigen::VectorXd demand = U * y;
            double residual = 0.0;
            for (Eigen::Index c = 0; c < w.size(); ++c) {
                residual = std::max(residual, std::abs(demand(c) / L(c) - 1.0));
                w(c) *= std::sqrt(std::max(demand(c), 1e-300) / L(c));
            }
            w *= income0 / w.dot(L);
            if (residual < 1e-14) break;
            solve_at(w);
        }
        if (iter == max_iter)
            throw NonConvergenceError("wage adjustment did not clear labor markets");
    }

    FlowState& f = out.flows;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = techs[active[k]];
        const auto kk = static_cast<Eigen::Index>(k);
        f.outputs[t.id] = y(kk);
        f.prices[t.id] = p(kk);
        for (const auto& [g, q] : t.inputs) {
            std::size_t src = producer_of.at(g);
            f.good_flows[{techs[src].id, t.id}] =
                B(static_cast<Eigen::Index>(pos[src]), kk) * y(kk);
        }
        for (std::size_t c = 0; c < nc; ++c) {
            double x = U(static_cast<Eigen::Index>(c), kk) * y(kk);
            if (x > 0.0) f.labor_flows[{countries[c].id, t.id}] = x;
        }
    }
    for (std::size_t c = 0; c < nc; ++c) f.wages[countries[c].id] = w(static_cast<Eigen::Index>(c));

    // Real GDP: post-shock final output valued at pre-shock prices.
    out.gdp_after = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = techs[active[k]];
        if (adjusted.is_final_good(t.output))
            out.gdp_after += *state.price(t.id) * y(static_cast<Eigen::Index>(k));
    }
    out.lost_gdp_total = out.gdp_before - out.gdp_after;
    const double income = w.dot(L);
    for (std::size_t c = 0; c < nc; ++c) {
        const auto cc = static_cast<Eigen::Index>(c);
        out.idle_labor[countries[c].id] = 0.0;
        out.lost_gdp_by_country[countries[c].id] = out.lost_gdp_total * w(cc) * L(cc) / income;
    }
    return out;
}

} // namespace prodnet
