#include <cmath>
#include <random>

#include "doctest.h"

#include "prodnet/fixtures.hpp"
#include "prodnet/hulten.hpp"
#include "prodnet/propagation.hpp"

using namespace prodnet;

namespace {

double long_run_gdp(const Fixture& f, const std::string& tech, double lambda) {
    return long_run_reequilibrate(f.economy, f.state, {{tech}, lambda}).gdp_after;
}

// Single-country chain g0 -> g1 -> ... -> g(n-1) (final) with one unit of the
// previous good per unit of output. Maximizes final output over labor splits
// by a grid search that is refined around the incumbent.
double grid_search_final_output(const std::vector<double>& labor_per_unit, double endowment,
                                std::size_t shocked, double lambda) {
    const std::size_t n = labor_per_unit.size();
    // A shocked stage needs 1/lambda of both its labor and its upstream input
    // per unit of output; every other stage converts one unit into one unit.
    auto final_output = [&](const std::vector<double>& share) {
        double y = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            const double scale = k == shocked ? lambda : 1.0;
            y = std::min(scale * share[k] * endowment / labor_per_unit[k], scale * y);
        }
        return y;
    };
    std::vector<double> best(n, 1.0 / static_cast<double>(n));
    double best_value = final_output(best);
    double span = 0.5;
    for (int round = 0; round < 5; ++round) {
        const int steps = 40;
        std::vector<double> center = best;
        // Coordinates 0..n-2 are free; the last takes the remainder.
        std::vector<int> idx(n - 1, 0);
        while (true) {
            std::vector<double> share(n);
            double used = 0.0;
            bool ok = true;
            for (std::size_t k = 0; k + 1 < n; ++k) {
                share[k] = center[k] + span * (2.0 * idx[k] / steps - 1.0);
                if (share[k] <= 0.0) ok = false;
                used += share[k];
            }
            share[n - 1] = 1.0 - used;
            if (ok && share[n - 1] > 0.0) {
                double v = final_output(share);
                if (v > best_value) {
                    best_value = v;
                    best = share;
                }
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] > steps) idx[k++] = 0;
            if (k == idx.size()) break;
        }
        span /= 10.0;
    }
    return best_value;
}

} // namespace

TEST_CASE("marginal share equals expenditure over gdp") {
    Fixture f = build(FixtureId::Fig1Chain);
    auto h = hulten_marginal(f.economy, f.state, "tauR", 0.1);
    const double oracle = *f.state.price("tauR") * f.state.output("tauR") / gdp(f.economy, f.state);
    CHECK(h.marginal_share == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(std::abs(h.marginal_share - 0.2) <= 1e-12);
    CHECK(std::abs(h.extrapolated_loss - 0.02) <= 1e-12);
    CHECK(h.extrapolated_loss <= h.marginal_share);
}

TEST_CASE("doubled economy: share one tenth, loss one hundredth") {
    for (auto id : {FixtureId::Fig5PanelA, FixtureId::Fig5PanelB}) {
        Fixture f = build(id);
        auto h = hulten_marginal(f.economy, f.state, "tau1", 0.1);
        CHECK(std::abs(h.marginal_share - 0.1) <= 1e-12);
        CHECK(std::abs(h.extrapolated_loss - 0.01) <= 1e-12);
    }
}

TEST_CASE("zero shock extrapolates to zero; inactive technologies are rejected") {
    Fixture f = build(FixtureId::Fig1Chain);
    CHECK(hulten_marginal(f.economy, f.state, "tauI", 0.0).extrapolated_loss == 0.0);
    std::vector<Technology> techs = f.economy.technologies();
    techs.push_back({"tauR2", "home", "R", 2, {}});
    Economy e(f.economy.countries(), f.economy.goods(), techs, f.economy.transport());
    CHECK_THROWS_AS(hulten_marginal(e, f.state, "tauR2", 0.1), InactiveTechError);
}

TEST_CASE("long-run re-equilibration of the chain") {
    Fixture f = build(FixtureId::Fig1Chain);
    auto o = long_run_reequilibrate(f.economy, f.state, {{"tauR"}, 0.9});
    // Oracle: all labor is used; a unit of F needs 1 + 7 + 2/lambda labor.
    const double y = 10.0 / (8.0 + 2.0 / 0.9);
    CHECK(o.gdp_after == doctest::Approx(y).epsilon(1e-12));
    CHECK(std::abs(o.gdp_after - 0.978) <= 0.001);
    CHECK(o.flows.output("tauF") == doctest::Approx(y));
    CHECK(o.flows.output("tauR") == doctest::Approx(2.0 * y));
    CHECK(o.flows.labor_flow("home", "tauR") == doctest::Approx(2.0 * y / 0.9));
    CHECK(o.flows.labor_flow("home", "tauI") == doctest::Approx(7.0 * y));
    CHECK(o.flows.good_flow("tauR", "tauI") == doctest::Approx(y));
    CHECK(o.flows.good_flow("tauI", "tauF") == doctest::Approx(y));
    // The new state is an equilibrium of the productivity-adjusted economy.
    Economy adjusted = productivity_adjusted_economy(f.economy, {{"tauR"}, 0.9});
    CHECK(validate_equilibrium(adjusted, o.flows, 1e-9).empty());
}

TEST_CASE("no shock returns the input outputs") {
    Fixture f = build(FixtureId::Fig5PanelB);
    auto o = long_run_reequilibrate(f.economy, f.state, {{"tau1"}, 1.0});
    for (const auto& t : f.economy.technologies()) CHECK(o.flows.output(t.id) == f.state.output(t.id));
    CHECK(o.lost_gdp_total == 0.0);
}

TEST_CASE("unsupported economies are rejected") {
    Fixture f = build(FixtureId::AppendixBExtended);
    CHECK_THROWS_AS(long_run_reequilibrate(f.economy, f.state, {{"tau2"}, 0.9}),
                    UnsupportedEconomyError);
}

TEST_CASE("finite differences recover the marginal share") {
    struct Case {
        FixtureId id;
        const char* tech;
    };
    for (auto c : {Case{FixtureId::Fig1Chain, "tauR"}, Case{FixtureId::Fig1Chain, "tauI"},
                   Case{FixtureId::Fig5PanelA, "tau1"}, Case{FixtureId::Fig5PanelB, "tau3"},
                   Case{FixtureId::Fig12Vertical, "tau2"}, Case{FixtureId::Fig12Horizontal, "tau4"},
                   Case{FixtureId::ChipsMediumRun, "tau1"}}) {
        CAPTURE(c.tech);
        Fixture f = build(c.id);
        const double g0 = gdp(f.economy, f.state);
        auto slope = [&](double eps) { return (g0 - long_run_gdp(f, c.tech, 1.0 - eps)) / eps / g0; };
        const double d1 = slope(1e-3), d2 = slope(1e-4);
        const double richardson = (10.0 * d2 - d1) / 9.0;
        const double share = hulten_marginal(f.economy, f.state, c.tech, 1.0).marginal_share;
        CHECK(std::abs(richardson - share) <= 1e-3 * share);
    }
}

TEST_CASE("long-run loss never exceeds short-run loss") {
    for (auto id : {FixtureId::Fig1Chain, FixtureId::Fig5PanelA, FixtureId::Fig5PanelB,
                    FixtureId::Fig12Vertical, FixtureId::Fig12Horizontal, FixtureId::Fig12Parallel,
                    FixtureId::ChipsMediumRun, FixtureId::ChipsMediumRunEqual}) {
        Fixture f = build(id);
        for (const auto& t : f.economy.technologies()) {
            for (double lambda : {0.5, 0.9}) {
                ShockSpec s{{t.id}, lambda};
                double lr = long_run_reequilibrate(f.economy, f.state, s).loss_fraction();
                double sr = propagate(f.economy, f.state, s).loss_fraction();
                CHECK(lr <= sr + 1e-12);
            }
        }
    }
}

TEST_CASE("network wiring is irrelevant to the marginal long-run loss") {
    Fixture a = build(FixtureId::Fig5PanelA);
    Fixture b = build(FixtureId::Fig5PanelB);
    const double lambda = 1.0 - 1e-5;
    const double la = long_run_reequilibrate(a.economy, a.state, {{"tau1"}, lambda}).loss_fraction();
    const double lb = long_run_reequilibrate(b.economy, b.state, {{"tau1"}, lambda}).loss_fraction();
    CHECK(std::abs(la - lb) <= 1e-6 * (1.0 - lambda));
}

TEST_CASE("random chains match a grid search over labor allocations") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 4;
        std::vector<double> labor(n);
        for (auto& l : labor) l = u(rng);
        std::vector<Good> goods;
        std::vector<Technology> techs;
        FlowState s;
        double total_labor = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::string g = "g" + std::to_string(k);
            goods.push_back({g, k + 1 == n ? GoodKind::Final : GoodKind::Intermediate});
            Technology t{"t" + std::to_string(k), "home", g, labor[k], {}};
            if (k > 0) {
                t.inputs["g" + std::to_string(k - 1)] = 1.0;
                s.good_flows[{"t" + std::to_string(k - 1), t.id}] = 1.0;
            }
            techs.push_back(t);
            s.outputs[t.id] = 1.0;
            s.labor_flows[{"home", t.id}] = labor[k];
            total_labor += labor[k];
        }
        s.wages["home"] = 1.0;
        Economy e({{"home", total_labor}}, goods, techs, TransportCosts{});
        derive_prices(e, s);
        REQUIRE(validate_equilibrium(e, s).empty());
        const std::size_t shocked = static_cast<std::size_t>(trial) % n;
        auto o = long_run_reequilibrate(e, s, {{"t" + std::to_string(shocked)}, 0.9});
        const double oracle = grid_search_final_output(labor, total_labor, shocked, 0.9);
        CHECK(o.flows.output("t3") == doctest::Approx(oracle).epsilon(1e-4));
        CHECK(o.flows.output("t3") >= oracle - 1e-12);
    }
}
