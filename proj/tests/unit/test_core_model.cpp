#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"

#include "prodnet/fixtures.hpp"
#include "prodnet/io.hpp"
#include "prodnet/model.hpp"
#include "../support/random_economy.hpp"

using namespace prodnet;
using nlohmann::json;

namespace {

json chain_economy_json() {
    return json::parse(R"({
      "countries": [{"id": "home", "labor": 10}],
      "goods": [{"id": "R", "kind": "intermediate"}, {"id": "I", "kind": "intermediate"},
                {"id": "F", "kind": "final"}],
      "technologies": [
        {"id": "tauR", "country": "home", "output": "R", "labor_input": 1, "inputs": {}},
        {"id": "tauI", "country": "home", "output": "I", "labor_input": 7, "inputs": {"R": 1}},
        {"id": "tauF", "country": "home", "output": "F", "labor_input": 1, "inputs": {"R": 1, "I": 1}}
      ],
      "transport": {"default": 1, "good_overrides": [], "labor_overrides": []}
    })");
}

json chain_flows_json() {
    return json::parse(R"({
      "good_flows": [{"from": "tauR", "to": "tauI", "amount": 1},
                     {"from": "tauR", "to": "tauF", "amount": 1},
                     {"from": "tauI", "to": "tauF", "amount": 1}],
      "labor_flows": [{"country": "home", "to": "tauR", "amount": 2},
                      {"country": "home", "to": "tauI", "amount": 7},
                      {"country": "home", "to": "tauF", "amount": 1}],
      "outputs": {"tauR": 2, "tauI": 1, "tauF": 1},
      "prices": {"tauR": 0.1, "tauI": 0.8, "tauF": 1},
      "wages": {"home": 0.1}
    })");
}

std::string temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "prodnet_unit";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

std::size_t count_condition(const std::vector<Violation>& v, const std::string& cond) {
    std::size_t n = 0;
    for (const auto& x : v) n += x.condition == cond;
    return n;
}

} // namespace

TEST_CASE("economy file loads the three-technology chain") {
    Economy e = economy_from_json(chain_economy_json());
    CHECK(e.technologies().size() == 3);
    CHECK(e.countries().size() == 1);
    CHECK(e.country("home").labor == 10.0);
    CHECK(e.is_final_good("F"));
    CHECK_FALSE(e.is_final_good("R"));
    CHECK(e.is_final_tech("tauF"));
}

TEST_CASE("flow file loads six flow entries") {
    Economy e = economy_from_json(chain_economy_json());
    FlowState s = flow_state_from_json(chain_flows_json(), e);
    CHECK(s.good_flows.size() + s.labor_flows.size() == 6);
    CHECK(s.labor_flow("home", "tauI") == 7.0);
    CHECK(s.good_flow("tauI", "tauF") == 1.0);
}

TEST_CASE("loader rejects malformed and inconsistent economies") {
    SUBCASE("empty technologies list") {
        json j = chain_economy_json();
        j["technologies"] = json::array();
        CHECK_THROWS_AS(economy_from_json(j), SchemaError);
    }
    SUBCASE("missing field") {
        json j = chain_economy_json();
        j["technologies"][0].erase("labor_input");
        CHECK_THROWS_AS(economy_from_json(j), SchemaError);
    }
    SUBCASE("transport cost below one") {
        json j = chain_economy_json();
        j["transport"]["good_overrides"].push_back({{"from", "tauR"}, {"to", "tauI"}, {"cost", 0.5}});
        CHECK_THROWS_AS(economy_from_json(j), InvariantError);
    }
    SUBCASE("non-positive labor input") {
        json j = chain_economy_json();
        j["technologies"][1]["labor_input"] = 0;
        CHECK_THROWS_AS(economy_from_json(j), InvariantError);
    }
    SUBCASE("output used as its own input") {
        json j = chain_economy_json();
        j["technologies"][1]["inputs"]["I"] = 1;
        CHECK_THROWS_AS(economy_from_json(j), InvariantError);
    }
    SUBCASE("unknown input good") {
        json j = chain_economy_json();
        j["technologies"][1]["inputs"]["Z"] = 1;
        CHECK_THROWS(economy_from_json(j));
    }
    SUBCASE("final good without a producer") {
        json j = chain_economy_json();
        j["goods"].push_back({{"id", "G"}, {"kind", "final"}});
        CHECK_THROWS_AS(economy_from_json(j), InvariantError);
    }
    SUBCASE("demand shares must sum to one") {
        json j = chain_economy_json();
        j["demand_shares"] = {{"F", 0.5}};
        CHECK_THROWS_AS(economy_from_json(j), InvariantError);
    }
    SUBCASE("duplicate ids") {
        json j = chain_economy_json();
        j["technologies"].push_back(j["technologies"][0]);
        CHECK_THROWS_AS(economy_from_json(j), InvariantError);
    }
    SUBCASE("bad kind") {
        json j = chain_economy_json();
        j["goods"][0]["kind"] = "service";
        CHECK_THROWS_AS(economy_from_json(j), SchemaError);
    }
}

TEST_CASE("flow loader rejects unknown entities and negative amounts") {
    Economy e = economy_from_json(chain_economy_json());
    SUBCASE("ghost technology") {
        json j = chain_flows_json();
        j["good_flows"].push_back({{"from", "tauR"}, {"to", "ghost"}, {"amount", 1}});
        CHECK_THROWS_AS(flow_state_from_json(j, e), UnknownEntityError);
    }
    SUBCASE("negative flow") {
        json j = chain_flows_json();
        j["good_flows"][0]["amount"] = -1;
        CHECK_THROWS_AS(flow_state_from_json(j, e), NegativeFlowError);
    }
    SUBCASE("all-zero flows load but do not validate") {
        json j = chain_flows_json();
        for (auto& f : j["good_flows"]) f["amount"] = 0;
        for (auto& f : j["labor_flows"]) f["amount"] = 0;
        for (auto& [k, v] : j["outputs"].items()) v = 0;
        FlowState s = flow_state_from_json(j, e);
        CHECK_FALSE(validate_equilibrium(e, s).empty());
    }
}

TEST_CASE("file loading reports parse and io errors") {
    const std::string bad = temp_path("bad.json");
    write_file(bad, "{ not json");
    CHECK_THROWS_AS(load_economy(bad), ParseError);
    CHECK_THROWS_AS(load_economy(temp_path("does_not_exist.json")), IoError);
}

TEST_CASE("economy and flow files round-trip") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        Fixture f = build(name);
        const std::string ep = temp_path("rt_economy.json");
        const std::string fp = temp_path("rt_flows.json");
        save_economy(f.economy, ep);
        save_flow_state(f.state, fp);
        Economy e2 = load_economy(ep);
        FlowState s2 = load_flow_state(fp, e2);
        CHECK(economy_to_json(e2) == economy_to_json(f.economy));
        CHECK(flow_state_to_json(s2) == flow_state_to_json(f.state));
        CHECK(validate_equilibrium(e2, s2).empty());
        // Canonical form is a fixed point of save/load.
        save_economy(e2, ep);
        std::ifstream a(ep);
        std::string text((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        CHECK(json::parse(text) == economy_to_json(f.economy));
    }
}

TEST_CASE("chain equilibrium validates and gdp is one") {
    Economy e = economy_from_json(chain_economy_json());
    FlowState s = flow_state_from_json(chain_flows_json(), e);
    CHECK(validate_equilibrium(e, s).empty());
    CHECK(gdp(e, s) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("perturbing the final price breaks zero profit on the final technology") {
    Fixture f = build(FixtureId::Fig1Chain);
    f.state.prices["tauF"] = 1.1;
    auto v = validate_equilibrium(f.economy, f.state);
    REQUIRE(v.size() == 1);
    CHECK(v[0].condition == "zero_profit");
    CHECK(v[0].entity == "tauF");
    CHECK(v[0].residual == doctest::Approx(0.1));
}

TEST_CASE("single mutations are flagged") {
    SUBCASE("labor endowment") {
        Fixture f = build(FixtureId::Fig1Chain);
        std::vector<Country> cs = f.economy.countries();
        cs[0].labor = 11;
        Economy e(cs, f.economy.goods(), f.economy.technologies(), f.economy.transport());
        auto v = validate_equilibrium(e, f.state);
        REQUIRE(v.size() == 1);
        CHECK(v[0].condition == "labor_clearing");
    }
    SUBCASE("wage") {
        Fixture f = build(FixtureId::Fig12Parallel);
        f.state.wages["home"] = 0.3;
        auto v = validate_equilibrium(f.economy, f.state);
        CHECK(count_condition(v, "zero_profit") > 0);
    }
    SUBCASE("intermediate shipment") {
        Fixture f = build(FixtureId::Fig1Chain);
        f.state.good_flows[{"tauR", "tauI"}] = 1.5;
        auto v = validate_equilibrium(f.economy, f.state);
        CHECK(count_condition(v, "intermediate_clearing") == 1);
        CHECK(count_condition(v, "feasibility") == 1);
        CHECK(v.size() == 2);
    }
    SUBCASE("world price of a final good") {
        Fixture f = build(FixtureId::Fig7Power);
        f.state.prices["tau4"] += 0.5;
        auto v = validate_equilibrium(f.economy, f.state);
        CHECK(count_condition(v, "zero_profit") == 1);
        CHECK(count_condition(v, "world_price") == 1);
    }
    SUBCASE("tolerance suppresses small residuals") {
        Fixture f = build(FixtureId::Fig1Chain);
        f.state.prices["tauF"] = 1.0 + 1e-11;
        CHECK(validate_equilibrium(f.economy, f.state, 1e-9).empty());
        CHECK_FALSE(validate_equilibrium(f.economy, f.state, 1e-13).empty());
    }
}

TEST_CASE("sourcing from an expensive supplier is flagged") {
    Fixture f = build(FixtureId::Fig1Chain);
    std::vector<Technology> techs = f.economy.technologies();
    techs.push_back({"tauR2", "home", "R", 2, {}});
    Economy e(f.economy.countries(), f.economy.goods(), techs, f.economy.transport());
    FlowState s = f.state;
    s.prices["tauR2"] = 0.2;  // inactive, priced above the market
    CHECK(validate_equilibrium(e, s).empty());
    s.prices["tauR2"] = 0.05;  // both users of R now buy above the cheapest source
    auto v = validate_equilibrium(e, s);
    CHECK(count_condition(v, "sourcing") == 2);
    // Their unit costs at the cheapest source no longer match their prices.
    CHECK(count_condition(v, "zero_profit") == 2);
    CHECK(v.size() == 4);
}

TEST_CASE("an idle technology that could undercut the market is flagged") {
    Fixture f = build(FixtureId::Fig1Chain);
    std::vector<Technology> techs = f.economy.technologies();
    techs.push_back({"tauR2", "home", "R", 0.5, {}});
    Economy e(f.economy.countries(), f.economy.goods(), techs, f.economy.transport());
    FlowState s = f.state;
    s.prices["tauR2"] = 0.2;
    auto v = validate_equilibrium(e, s);
    REQUIRE(count_condition(v, "inactive_profit") == 1);
    CHECK(v.size() == 1);
    CHECK(v[0].entity == "tauR2");
    CHECK(v[0].residual == doctest::Approx(0.05));
}

TEST_CASE("effective input prices pick the cheapest transport-adjusted source") {
    Fixture f = build(FixtureId::Fig1Chain);
    auto p = effective_input_price(f.economy, f.state, "tauF", "I");
    CHECK(p.price == doctest::Approx(0.8));
    CHECK(p.source == "tauI");

    std::vector<Technology> techs{
        {"a", "home", "G", 1, {}}, {"b", "home", "G", 1, {}}, {"u", "home", "F", 1, {{"G", 1}}}};
    std::vector<Good> goods{{"G", GoodKind::Intermediate}, {"F", GoodKind::Final}};
    std::vector<Country> cs{{"home", 10}};
    SUBCASE("plain prices: cheaper wins") {
        Economy e(cs, goods, techs, TransportCosts{});
        FlowState s;
        s.prices = {{"a", 3}, {"b", 2}};
        auto r = effective_input_price(e, s, "u", "G");
        CHECK(r.price == 2.0);
        CHECK(r.source == "b");
    }
    SUBCASE("iceberg cost changes the ranking") {
        TransportCosts tc;
        tc.good_overrides[{"a", "u"}] = 2.0;
        Economy e(cs, goods, techs, tc);
        FlowState s;
        s.prices = {{"a", 1}, {"b", 1.5}};
        auto r = effective_input_price(e, s, "u", "G");
        // Enumerate both options directly.
        double via_a = 2.0 * 1.0, via_b = 1.0 * 1.5;
        CHECK(r.price == std::min(via_a, via_b));
        CHECK(r.source == "b");
    }
    SUBCASE("ties go to the smaller id") {
        Economy e(cs, goods, techs, TransportCosts{});
        FlowState s;
        s.prices = {{"a", 2}, {"b", 2}};
        CHECK(effective_input_price(e, s, "u", "G").source == "a");
    }
}

TEST_CASE("gdp is linear in final output") {
    Fixture f = build(FixtureId::Fig5PanelA);
    CHECK(gdp(f.economy, f.state) == doctest::Approx(2.0));
    const double k = 3.25;
    FlowState s = f.state;
    for (const auto& t : f.economy.technologies())
        if (f.economy.is_final_tech(t.id)) s.outputs[t.id] *= k;
    CHECK(gdp(f.economy, s) == doctest::Approx(k * 2.0).epsilon(1e-14));
    for (auto& [id, y] : s.outputs) y = 0.0;
    CHECK(gdp(f.economy, s) == 0.0);
}

TEST_CASE("gdp requires final prices") {
    Fixture f = build(FixtureId::Fig1Chain);
    f.state.prices.erase("tauF");
    CHECK_THROWS_AS(gdp(f.economy, f.state), MissingPriceError);
}

TEST_CASE("shock specs must name active technologies and a valid lambda") {
    Fixture f = build(FixtureId::Fig1Chain);
    CHECK_NOTHROW(check_shock(f.economy, f.state, {{"tauR"}, 0.9}));
    CHECK_THROWS(check_shock(f.economy, f.state, {{"ghost"}, 0.9}));
    CHECK_THROWS(check_shock(f.economy, f.state, {{"tauR"}, -0.1}));
}

TEST_CASE("random acyclic economies are equilibria") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Fixture f = testing::random_acyclic_economy(rng);
        auto v = validate_equilibrium(f.economy, f.state);
        CHECK(v.empty());
    }
}
