#include "prodnet/fixtures.hpp"

#include <Eigen/Dense>

#include "prodnet/medium_run.hpp"

namespace prodnet {

void derive_prices(const Economy& economy, FlowState& state) {
    const auto& techs = economy.technologies();
    std::vector<std::size_t> active;
    std::vector<long> pos(techs.size(), -1);
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!(state.output(techs[t].id) > 0.0)) continue;
        pos[t] = static_cast<long>(active.size());
        active.push_back(t);
    }
    const auto n = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (const auto& [key, x] : state.good_flows) {
        std::size_t to = economy.tech_index(key.second);
        std::size_t from = economy.tech_index(key.first);
        if (pos[to] < 0 || pos[from] < 0 || x == 0.0) continue;
        A(pos[to], pos[from]) -= x / state.output(key.second);
    }
    for (const auto& [key, x] : state.labor_flows) {
        std::size_t to = economy.tech_index(key.second);
        if (pos[to] < 0) continue;
        auto w = state.wage(key.first);
        if (!w) throw MissingPriceError("no wage for country '" + key.first + "'");
        v(pos[to]) += *w * x / state.output(key.second);
    }
    Eigen::VectorXd p = A.partialPivLu().solve(v);
    for (std::size_t k = 0; k < active.size(); ++k)
        state.prices[techs[active[k]].id] = p(static_cast<Eigen::Index>(k));
}

namespace {

// Small declarative helper: labor is supplied by the technology's own country
// at the recipe's requirement.
class Spec {
public:
    void country(const std::string& id, double labor, double wage) {
        countries_.push_back({id, labor});
        state_.wages[id] = wage;
    }
    void good(const std::string& id, bool final = false) {
        goods_.push_back({id, final ? GoodKind::Final : GoodKind::Intermediate});
    }
    void tech(const std::string& id, const std::string& country, const std::string& output,
              double labor, std::map<std::string, double> inputs, double y) {
        techs_.push_back({id, country, output, labor, std::move(inputs)});
        state_.outputs[id] = y;
        state_.labor_flows[{country, id}] = labor * y;
    }
    void flow(const std::string& from, const std::string& to, double amount) {
        state_.good_flows[{from, to}] = amount;
    }
    void shares(std::map<std::string, double> s) { shares_ = std::move(s); }

    Fixture done() {
        Economy economy(countries_, goods_, techs_, TransportCosts{}, shares_);
        derive_prices(economy, state_);
        return {std::move(economy), std::move(state_)};
    }

private:
    std::vector<Country> countries_;
    std::vector<Good> goods_;
    std::vector<Technology> techs_;
    std::optional<std::map<std::string, double>> shares_;
    FlowState state_;
};

Fixture fig1_chain() {
    Spec s;
    s.country("home", 10, 0.1);
    s.good("R");
    s.good("I");
    s.good("F", true);
    s.tech("tauR", "home", "R", 1, {}, 2);
    s.tech("tauI", "home", "I", 7, {{"R", 1}}, 1);
    s.tech("tauF", "home", "F", 1, {{"R", 1}, {"I", 1}}, 1);
    s.flow("tauR", "tauI", 1);
    s.flow("tauR", "tauF", 1);
    s.flow("tauI", "tauF", 1);
    return s.done();
}

Fixture fig5(bool crossed) {
    Spec s;
    s.country("home", 20, 0.1);
    for (const char* g : {"Ra", "Rb", "Ia", "Ib"}) s.good(g);
    s.good("F1", true);
    s.good("F2", true);
    s.shares({{"F1", 0.5}, {"F2", 0.5}});
    s.tech("tau1", "home", "Ra", 1, {}, 2);
    s.tech("tau2", "home", "Rb", 1, {}, 2);
    s.tech("tau3", "home", "Ia", 7, {{"Ra", 1}}, 1);
    s.tech("tau4", "home", "Ib", 7, {{"Rb", 1}}, 1);
    s.tech("tau5", "home", "F1", 1, {{"Ia", 1}, {crossed ? "Rb" : "Ra", 1}}, 1);
    s.tech("tau6", "home", "F2", 1, {{"Ib", 1}, {crossed ? "Ra" : "Rb", 1}}, 1);
    s.flow("tau1", "tau3", 1);
    s.flow("tau2", "tau4", 1);
    s.flow("tau3", "tau5", 1);
    s.flow("tau4", "tau6", 1);
    s.flow(crossed ? "tau2" : "tau1", "tau5", 1);
    s.flow(crossed ? "tau1" : "tau2", "tau6", 1);
    return s.done();
}

Fixture fig7_power() {
    Spec s;
    s.country("i", 70, 1.0 / 3.0);
    s.country("j", 50, 1.0 / 3.0);
    for (const char* g : {"A", "B", "C"}) s.good(g);
    s.good("F", true);
    s.tech("tau1", "j", "A", 2, {}, 10);
    s.tech("tau2", "i", "B", 1, {}, 20);
    s.tech("tau3", "j", "C", 2, {{"A", 1}, {"B", 1}}, 10);
    s.tech("tau4", "j", "F", 0.5, {{"C", 0.5}}, 20);
    s.tech("tau5", "i", "F", 2.5, {{"B", 0.5}}, 20);
    s.flow("tau1", "tau3", 10);
    s.flow("tau2", "tau3", 10);
    s.flow("tau2", "tau5", 10);
    s.flow("tau3", "tau4", 10);
    return s.done();
}

Fixture fig9_five_country() {
    Spec s;
    s.country("1", 100, 1);
    s.country("2", 100, 1);
    s.country("3", 4, 1);
    s.country("4", 11, 1);
    s.country("5", 35, 1);
    for (const char* g : {"R1", "R2", "R3", "I1", "I2", "I3", "I4", "I5", "I6"}) s.good(g);
    for (const char* g : {"F1", "F2", "F3", "F4"}) s.good(g, true);
    s.tech("R1-3", "3", "R1", 1, {}, 4);
    s.tech("R2-1", "1", "R2", 1, {}, 11);
    s.tech("R3-4", "4", "R3", 1, {}, 11);
    s.tech("I1-2", "2", "I1", 1, {{"R1", 0.1}}, 20);
    s.tech("I2-1", "1", "I2", 1, {{"R1", 0.1}}, 20);
    s.tech("I3-1", "1", "I3", 1, {{"R2", 1}}, 11);
    s.tech("I4-1", "1", "I4", 1, {{"R3", 2.75}}, 4);
    s.tech("I5-2", "2", "I5", 1, {{"I3", 0.2}}, 15);
    s.tech("I5-1", "1", "I5", 1, {{"I3", 0.2}}, 10);
    s.tech("I6-1", "1", "I6", 1, {{"I3", 1}}, 6);
    s.tech("F1-5", "5", "F1", 1, {{"I1", 10.0 / 35.0}, {"I2", 10.0 / 35.0}}, 35);
    s.tech("F1-2", "2", "F1", 1, {{"I1", 10.0 / 35.0}, {"I2", 10.0 / 35.0}}, 35);
    s.tech("F2-2", "2", "F2", 1, {{"I5", 0.5}, {"I6", 0.1}}, 30);
    s.tech("F2-1", "1", "F2", 1, {{"I5", 0.5}, {"I6", 0.1}}, 20);
    s.tech("F3-1", "1", "F3", 1, {{"I6", 0.1}}, 10);
    s.tech("F4-1", "1", "F4", 0.8, {{"I4", 0.4}}, 10);
    s.flow("R1-3", "I1-2", 2);
    s.flow("R1-3", "I2-1", 2);
    s.flow("R2-1", "I3-1", 11);
    s.flow("R3-4", "I4-1", 11);
    s.flow("I1-2", "F1-5", 10);
    s.flow("I1-2", "F1-2", 10);
    s.flow("I2-1", "F1-5", 10);
    s.flow("I2-1", "F1-2", 10);
    s.flow("I3-1", "I5-2", 3);
    s.flow("I3-1", "I5-1", 2);
    s.flow("I3-1", "I6-1", 6);
    s.flow("I5-2", "F2-2", 15);
    s.flow("I5-1", "F2-1", 10);
    s.flow("I6-1", "F2-2", 3);
    s.flow("I6-1", "F2-1", 2);
    s.flow("I6-1", "F3-1", 1);
    s.flow("I4-1", "F4-1", 4);
    return s.done();
}

Fixture fig11_non_concave() {
    Spec s;
    s.country("i", 20, 1);
    s.country("j", 50, 1);
    for (const char* g : {"A", "B", "C"}) s.good(g);
    s.good("F", true);
    s.tech("tau1", "j", "A", 1, {}, 10);
    s.tech("tau2", "j", "B", 2, {}, 5);
    s.tech("tau3top", "i", "B", 2, {}, 5);
    s.tech("tau3", "j", "C", 1, {{"A", 0.5}, {"B", 0.5}}, 20);
    s.tech("tau4", "j", "F", 1, {{"C", 1}}, 10);
    s.tech("tau5", "i", "F", 1, {{"C", 1}}, 10);
    s.flow("tau1", "tau3", 10);
    s.flow("tau2", "tau3", 5);
    s.flow("tau3top", "tau3", 5);
    s.flow("tau3", "tau4", 10);
    s.flow("tau3", "tau5", 10);
    return s.done();
}

Fixture fig12(int layout) {
    Spec s;
    s.country("home", 5, 0.2);
    for (int k = 1; k <= 4; ++k) s.good("G" + std::to_string(k));
    if (layout == 2) {
        std::map<std::string, double> shares;
        for (int k = 1; k <= 4; ++k) {
            s.good("F" + std::to_string(k), true);
            shares["F" + std::to_string(k)] = 0.25;
        }
        s.shares(shares);
        for (int k = 1; k <= 4; ++k) {
            const std::string n = std::to_string(k);
            s.tech("tau" + n, "home", "G" + n, 1, {}, 1);
            s.tech("tauF" + n, "home", "F" + n, 0.25, {{"G" + n, 1}}, 1);
            s.flow("tau" + n, "tauF" + n, 1);
        }
        return s.done();
    }
    s.good("F", true);
    if (layout == 0) {  // vertical chain
        s.tech("tau1", "home", "G1", 1, {}, 1);
        for (int k = 2; k <= 4; ++k) {
            const std::string n = std::to_string(k), prev = std::to_string(k - 1);
            s.tech("tau" + n, "home", "G" + n, 1, {{"G" + prev, 1}}, 1);
            s.flow("tau" + prev, "tau" + n, 1);
        }
        s.tech("tauF", "home", "F", 1, {{"G4", 1}}, 1);
        s.flow("tau4", "tauF", 1);
    } else {  // horizontal fan-in
        std::map<std::string, double> inputs;
        for (int k = 1; k <= 4; ++k) {
            const std::string n = std::to_string(k);
            s.tech("tau" + n, "home", "G" + n, 1, {}, 1);
            inputs["G" + n] = 1;
            s.flow("tau" + n, "tauF", 1);
        }
        s.tech("tauF", "home", "F", 1, inputs, 1);
    }
    return s.done();
}

Fixture appendix_b_extended() {
    Spec s;
    s.country("home", 50, 0.2);
    for (const char* g : {"A", "C", "D", "E"}) s.good(g);
    s.good("F", true);
    s.tech("tau1", "home", "A", 1, {}, 6);
    s.tech("tau2", "home", "A", 1, {}, 4);
    s.tech("tau3", "home", "C", 1, {{"A", 1}, {"D", 0.5}}, 8);
    s.tech("tau4", "home", "C", 1, {{"A", 1}, {"D", 0.5}}, 2);
    s.tech("tau5", "home", "E", 1, {{"C", 2.0 / 3.0}}, 5);
    s.tech("tau6", "home", "E", 1, {{"C", 2.0 / 3.0}}, 10);
    s.tech("tau7", "home", "D", 1, {{"E", 1}}, 5);
    s.tech("tau8", "home", "F", 1, {{"E", 1}}, 3);
    s.tech("tau9", "home", "F", 1, {{"E", 1}}, 4);
    s.tech("tau10", "home", "F", 1, {{"E", 1}}, 3);
    s.flow("tau1", "tau3", 6);
    s.flow("tau2", "tau3", 2);
    s.flow("tau2", "tau4", 2);
    s.flow("tau7", "tau3", 4);
    s.flow("tau7", "tau4", 1);
    s.flow("tau3", "tau5", 10.0 / 3.0);
    s.flow("tau3", "tau6", 14.0 / 3.0);
    s.flow("tau4", "tau6", 2);
    s.flow("tau6", "tau7", 5);
    s.flow("tau5", "tau8", 3);
    s.flow("tau5", "tau9", 2);
    s.flow("tau6", "tau10", 3);
    s.flow("tau6", "tau9", 2);
    return s.done();
}

Fixture appendix_b_with_branch() {
    Spec s;
    s.country("home", 15, 1);
    for (const char* g : {"A", "C", "E", "K", "H"}) s.good(g);
    s.good("F", true);
    s.good("F2", true);
    s.tech("tau0", "home", "K", 0.1, {}, 10);
    s.tech("tau1", "home", "A", 0.05, {}, 12.75);
    s.tech("tau2", "home", "A", 0.05, {}, 9.25);
    s.tech("tau3", "home", "C", 0.05, {{"A", 1}}, 17);
    s.tech("tau4", "home", "C", 0.05, {{"A", 1}}, 3);
    s.tech("tau5", "home", "E", 0.1, {{"C", 2}}, 5);
    s.tech("tau6", "home", "E", 0.1, {{"C", 2}}, 5);
    s.tech("tau8", "home", "F", 0.7, {{"E", 1}}, 3);
    s.tech("tau9", "home", "F", 0.7, {{"E", 1}}, 4);
    s.tech("tau10", "home", "F", 0.7, {{"E", 1}}, 3);
    s.tech("tau11", "home", "H", 0.28, {{"K", 2}, {"A", 0.4}}, 5);
    s.tech("tau12", "home", "F2", 0.5, {{"H", 1}}, 5);
    s.flow("tau1", "tau3", 12.75);
    s.flow("tau2", "tau3", 4.25);
    s.flow("tau2", "tau4", 3);
    s.flow("tau2", "tau11", 2);
    s.flow("tau3", "tau5", 10);
    s.flow("tau3", "tau6", 7);
    s.flow("tau4", "tau6", 3);
    s.flow("tau5", "tau8", 3);
    s.flow("tau5", "tau9", 2);
    s.flow("tau6", "tau9", 2);
    s.flow("tau6", "tau10", 3);
    s.flow("tau0", "tau11", 10);
    s.flow("tau11", "tau12", 5);
    return s.done();
}

Fixture chips(bool equal) {
    Spec s;
    s.country("home", 10, 1);
    s.good("R");
    s.good("F1", true);
    s.good("F2", true);
    if (equal) {
        s.shares({{"F1", 0.5}, {"F2", 0.5}});
        s.tech("tau1", "home", "R", 1, {}, 2);
        s.tech("tau2", "home", "F1", 0.8, {{"R", 0.2}}, 5);
        s.tech("tau3", "home", "F2", 0.8, {{"R", 0.2}}, 5);
    } else {
        s.shares({{"F1", 0.1}, {"F2", 0.9}});
        s.tech("tau1", "home", "R", 0.9, {}, 2);
        s.tech("tau2", "home", "F1", 0.1, {{"R", 1}}, 1);
        s.tech("tau3", "home", "F2", 0.9, {{"R", 1.0 / 9.0}}, 9);
    }
    s.flow("tau1", "tau2", 1);
    s.flow("tau1", "tau3", 1);
    return s.done();
}

Fixture flexible_rerouting() {
    Spec s;
    s.country("home", 16, 1);
    s.good("R");
    s.good("I");
    s.good("F", true);
    s.tech("tau1", "home", "R", 1, {}, 4);
    s.tech("tau2", "home", "R", 1, {}, 4);
    s.tech("tau3", "home", "I", 1, {{"R", 1}}, 4);
    s.tech("tau4", "home", "F", 1, {{"I", 1}, {"R", 1}}, 4);
    s.flow("tau1", "tau3", 3);
    s.flow("tau2", "tau3", 1);
    s.flow("tau3", "tau4", 4);
    s.flow("tau1", "tau4", 1);
    s.flow("tau2", "tau4", 3);
    return s.done();
}

Fixture strategic_power_fixture() {
    Spec s;
    s.country("i", 60, 1);
    s.country("j", 70, 1);
    s.good("B");
    s.good("C");
    s.good("F", true);
    s.tech("tau2", "i", "B", 1, {}, 10);
    s.tech("tau3", "j", "C", 1, {{"B", 0.5}}, 20);
    s.tech("tau4", "j", "F", 2.5, {{"C", 0.5}}, 20);
    s.tech("tau5", "i", "F", 2.5, {{"C", 0.5}}, 20);
    s.flow("tau2", "tau3", 10);
    s.flow("tau3", "tau4", 10);
    s.flow("tau3", "tau5", 10);
    return s.done();
}

const std::vector<std::pair<FixtureId, std::string>>& registry() {
    static const std::vector<std::pair<FixtureId, std::string>> names{
        {FixtureId::Fig1Chain, "Fig1Chain"},
        {FixtureId::Fig5PanelA, "Fig5PanelA"},
        {FixtureId::Fig5PanelB, "Fig5PanelB"},
        {FixtureId::Fig7Power, "Fig7Power"},
        {FixtureId::Fig9FiveCountry, "Fig9FiveCountry"},
        {FixtureId::Fig11NonConcave, "Fig11NonConcave"},
        {FixtureId::Fig12Vertical, "Fig12Vertical"},
        {FixtureId::Fig12Horizontal, "Fig12Horizontal"},
        {FixtureId::Fig12Parallel, "Fig12Parallel"},
        {FixtureId::AppendixBExtended, "AppendixBExtended"},
        {FixtureId::AppendixBWithBranch, "AppendixBWithBranch"},
        {FixtureId::ChipsMediumRun, "ChipsMediumRun"},
        {FixtureId::ChipsMediumRunEqual, "ChipsMediumRunEqual"},
        {FixtureId::FlexibleRerouting, "FlexibleRerouting"},
        {FixtureId::StrategicPower, "StrategicPower"},
        {FixtureId::LprFamily, "LprFamily"},
    };
    return names;
}

} // namespace

Fixture build(FixtureId id, int t) {
    switch (id) {
    case FixtureId::Fig1Chain: return fig1_chain();
    case FixtureId::Fig5PanelA: return fig5(false);
    case FixtureId::Fig5PanelB: return fig5(true);
    case FixtureId::Fig7Power: return fig7_power();
    case FixtureId::Fig9FiveCountry: return fig9_five_country();
    case FixtureId::Fig11NonConcave: return fig11_non_concave();
    case FixtureId::Fig12Vertical: return fig12(0);
    case FixtureId::Fig12Horizontal: return fig12(1);
    case FixtureId::Fig12Parallel: return fig12(2);
    case FixtureId::AppendixBExtended: return appendix_b_extended();
    case FixtureId::AppendixBWithBranch: return appendix_b_with_branch();
    case FixtureId::ChipsMediumRun: return chips(false);
    case FixtureId::ChipsMediumRunEqual: return chips(true);
    case FixtureId::FlexibleRerouting: return flexible_rerouting();
    case FixtureId::StrategicPower: return strategic_power_fixture();
    case FixtureId::LprFamily: {
        auto g = generate_lpr_family(t);
        return {std::move(g.economy), std::move(g.state)};
    }
    }
    throw UnknownEntityError("unknown fixture");
}

Fixture build(const std::string& name) {
    std::string base = name;
    int t = 3;
    if (auto colon = name.find(':'); colon != std::string::npos) {
        base = name.substr(0, colon);
        try {
            t = std::stoi(name.substr(colon + 1));
        } catch (const std::exception&) {
            throw UnknownEntityError("bad fixture parameter in '" + name + "'");
        }
        if (base != "LprFamily") throw UnknownEntityError("fixture '" + base + "' takes no parameter");
    }
    for (const auto& [id, n] : registry())
        if (n == base) return build(id, t);
    throw UnknownEntityError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& [id, n] : registry()) out.push_back(n);
    return out;
}

std::string fixture_name(FixtureId id) {
    for (const auto& [fid, n] : registry())
        if (fid == id) return n;
    return "";
}

} // namespace prodnet
