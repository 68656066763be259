#include "doctest.h"

#include "prodnet/fixtures.hpp"
#include "prodnet/medium_run.hpp"

using namespace prodnet;

TEST_CASE("every fixture is an equilibrium at 1e-9") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        Fixture f = build(name);
        auto v = validate_equilibrium(f.economy, f.state, 1e-9);
        CHECK(v.empty());
    }
    for (int t = 2; t <= 6; ++t) {
        Fixture f = build(FixtureId::LprFamily, t);
        CHECK(validate_equilibrium(f.economy, f.state).empty());
    }
}

TEST_CASE("chain fixture carries the labeled flows and prices") {
    Fixture f = build(FixtureId::Fig1Chain);
    CHECK(f.economy.country("home").labor == 10.0);
    CHECK(f.state.labor_flow("home", "tauR") == 2.0);
    CHECK(f.state.labor_flow("home", "tauI") == 7.0);
    CHECK(f.state.labor_flow("home", "tauF") == 1.0);
    CHECK(f.state.good_flow("tauR", "tauI") == 1.0);
    CHECK(f.state.good_flow("tauR", "tauF") == 1.0);
    CHECK(f.state.good_flow("tauI", "tauF") == 1.0);
    CHECK(*f.state.wage("home") == doctest::Approx(0.1));
    CHECK(*f.state.price("tauR") == doctest::Approx(0.1));
    CHECK(*f.state.price("tauI") == doctest::Approx(0.8));
    CHECK(*f.state.price("tauF") == doctest::Approx(1.0));
}

TEST_CASE("extended cyclic fixture has the labeled outputs") {
    Fixture f = build(FixtureId::AppendixBExtended);
    const double expect[] = {6, 4, 8, 2, 5, 10, 5, 3, 4, 3};
    REQUIRE(f.economy.technologies().size() == 10);
    for (int k = 0; k < 10; ++k)
        CHECK(f.state.output("tau" + std::to_string(k + 1)) == doctest::Approx(expect[k]));
    CHECK(gdp(f.economy, f.state) == doctest::Approx(10.0));
}

TEST_CASE("five-country fixture") {
    Fixture f = build(FixtureId::Fig9FiveCountry);
    CHECK(f.economy.country("1").labor == 100.0);
    CHECK(f.economy.country("2").labor == 100.0);
    CHECK(f.state.output("I1-2") == 20.0);
    CHECK(f.state.output("F1-5") == 35.0);
}

TEST_CASE("fixture wage normalizations") {
    Fixture f7 = build(FixtureId::Fig7Power);
    CHECK(*f7.state.price("tau4") == doctest::Approx(1.0));
    CHECK(*f7.state.price("tau5") == doctest::Approx(1.0));
    CHECK(f7.state.labor_flow("j", "tau4") == doctest::Approx(10.0));
    CHECK(f7.state.labor_flow("i", "tau5") == doctest::Approx(50.0));
}

TEST_CASE("fixture names resolve both ways") {
    auto names = fixture_names();
    CHECK(names.size() == 16);
    CHECK(fixture_name(FixtureId::StrategicPower) == "StrategicPower");
    CHECK(build("LprFamily:4").economy.countries().size() == 4);
    CHECK_THROWS_AS(build("NoSuchFixture"), UnknownEntityError);
    CHECK_THROWS_AS(build("Fig1Chain:3"), UnknownEntityError);
}

TEST_CASE("derived prices satisfy zero profit") {
    Fixture f = build(FixtureId::AppendixBWithBranch);
    f.state.prices.clear();
    derive_prices(f.economy, f.state);
    CHECK(validate_equilibrium(f.economy, f.state).empty());
    for (const auto& t : f.economy.technologies())
        if (f.economy.is_final_tech(t.id) && t.output == "F") CHECK(*f.state.price(t.id) == doctest::Approx(1.0));
}
