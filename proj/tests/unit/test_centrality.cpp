#include <cmath>
#include <random>

#include "doctest.h"

#include "prodnet/centrality.hpp"
#include "prodnet/fixtures.hpp"
#include "prodnet/propagation.hpp"
#include "../support/random_economy.hpp"

using namespace prodnet;

TEST_CASE("branch fixture: centrality of tau2") {
    Fixture f = build(FixtureId::AppendixBWithBranch);
    auto r = disruption_centrality(f.economy, f.state, "tau2");
    // Hand evaluation of the recursion on the fixture's shares.
    const double worked = 10.0 / 15.0 * (0.25 * 0.3 + 0.3625 * 0.4 + 0.475 * 0.3) + 5.0 / 15.0;
    CHECK(std::abs(r.dc - 0.575) <= 1e-9);
    CHECK(r.dc == doctest::Approx(worked).epsilon(1e-12));
    CHECK(r.d_values.at({"F", "tau8"}) == doctest::Approx(0.25));
    CHECK(r.d_values.at({"F", "tau9"}) == doctest::Approx(0.3625));
    CHECK(r.d_values.at({"F", "tau10"}) == doctest::Approx(0.475));
    CHECK(r.scaled_loss(0.9) == doctest::Approx(0.1 * r.dc));
}

TEST_CASE("sourcing shares") {
    Fixture f = build(FixtureId::AppendixBWithBranch);
    auto s = sourcing_shares(f.economy, f.state);
    CHECK(s.input_shares.at({"tau5", "tau3"}) == doctest::Approx(1.0));
    CHECK(s.input_shares.at({"tau9", "tau5"}) == doctest::Approx(0.5));
    CHECK(s.input_shares.at({"tau9", "tau6"}) == doctest::Approx(0.5));
    CHECK(s.final_shares.at({"F", "tau9"}) == doctest::Approx(0.4));
    // Shares over suppliers of each (user, good) sum to one.
    std::map<std::pair<std::string, std::string>, double> sums;
    for (const auto& [k, v] : s.input_shares) sums[{k.first, f.economy.tech(k.second).output}] += v;
    for (const auto& [k, v] : sums) CHECK(v == doctest::Approx(1.0));
    Fixture chain = build(FixtureId::Fig1Chain);
    for (const auto& [k, v] : sourcing_shares(chain.economy, chain.state).input_shares) CHECK(v == 1.0);
}

TEST_CASE("single-sourced networks: centrality equals the reachable final value") {
    Fixture f = build(FixtureId::Fig5PanelB);
    for (const auto& t : f.economy.technologies()) {
        auto r = disruption_centrality(f.economy, f.state, t.id);
        auto b = shock_bound(f.economy, f.state, {{t.id}, 0.9});
        CHECK(r.dc == doctest::Approx(b.bound_fraction / 0.1).epsilon(1e-12));
        for (double lambda : {0.5, 0.9}) {
            double actual = propagate(f.economy, f.state, {{t.id}, lambda}).loss_fraction();
            CHECK(std::abs(r.scaled_loss(lambda) - actual) <= 1e-9);
        }
    }
}

TEST_CASE("technology without downstream finals has zero centrality") {
    Fixture f = build(FixtureId::Fig1Chain);
    std::vector<Technology> techs = f.economy.technologies();
    techs.push_back({"tauR2", "home", "R", 2, {}});
    Economy e(f.economy.countries(), f.economy.goods(), techs, f.economy.transport());
    FlowState s = f.state;
    s.prices["tauR2"] = 0.2;
    CHECK(disruption_centrality(e, s, "tauR2").dc == 0.0);
}

TEST_CASE("topological tie-breaking does not change centrality") {
    std::mt19937_64 rng(9);
    std::vector<Fixture> cases;
    cases.push_back(build(FixtureId::AppendixBWithBranch));
    cases.push_back(build(FixtureId::Fig9FiveCountry));
    for (int i = 0; i < 20; ++i) cases.push_back(testing::random_acyclic_economy(rng));
    for (const auto& f : cases) {
        CentralityOptions desc;
        desc.tie_break = Network::TieBreak::Descending;
        auto a = all_centralities(f.economy, f.state);
        auto b = all_centralities(f.economy, f.state, desc);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].tech == b[k].tech);
            CHECK(a[k].dc == doctest::Approx(b[k].dc).epsilon(1e-14));
            CHECK(a[k].dc >= -1e-15);
            CHECK(a[k].dc <= 1.0 + 1e-12);
            for (const auto& [key, d] : a[k].d_values) {
                CHECK(d >= 0.0);
                CHECK(d <= 1.0 + 1e-12);
            }
            if (k > 0) CHECK(a[k - 1].dc >= a[k].dc);
        }
    }
}

TEST_CASE("centrality is invariant to uniform price rescaling") {
    Fixture f = build(FixtureId::AppendixBWithBranch);
    FlowState s = f.state;
    for (auto& [id, p] : s.prices) p *= 3.0;
    for (auto& [id, w] : s.wages) w *= 3.0;
    CHECK(disruption_centrality(f.economy, s, "tau2").dc ==
          doctest::Approx(disruption_centrality(f.economy, f.state, "tau2").dc).epsilon(1e-14));
}

TEST_CASE("cyclic between-networks are refused with the cycle") {
    Fixture f = build(FixtureId::AppendixBExtended);
    try {
        disruption_centrality(f.economy, f.state, "tau2");
        FAIL("expected CyclicError");
    } catch (const CyclicError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("tau7") != std::string::npos);
    }
}
