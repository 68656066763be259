#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prodnet/errors.hpp"

namespace prodnet {

using TechId = std::string;
using GoodIdStr = std::string;
using CountryIdStr = std::string;
using EdgeKey = std::pair<std::string, std::string>;

enum class GoodKind { Intermediate, Final };

struct Good {
    std::string id;
    GoodKind kind = GoodKind::Intermediate;
};

struct Country {
    std::string id;
    double labor = 0.0;
};

// A fixed constant-returns recipe: per unit of output it consumes
// `labor_input` units of labor and `inputs[g]` units of each good g
// (quantities received, i.e. after iceberg losses).
struct Technology {
    std::string id;
    std::string country;
    std::string output;
    double labor_input = 0.0;
    std::map<std::string, double> inputs;
};

// Iceberg costs: theta units must be shipped for one unit to arrive.
struct TransportCosts {
    double default_cost = 1.0;
    std::map<EdgeKey, double> good_overrides;   // (source tech, dest tech)
    std::map<EdgeKey, double> labor_overrides;  // (country, dest tech)
};

class Economy {
public:
    Economy(std::vector<Country> countries, std::vector<Good> goods,
            std::vector<Technology> technologies, TransportCosts transport,
            std::optional<std::map<std::string, double>> demand_shares = std::nullopt);

    const std::vector<Country>& countries() const { return countries_; }
    const std::vector<Good>& goods() const { return goods_; }
    const std::vector<Technology>& technologies() const { return technologies_; }
    const TransportCosts& transport() const { return transport_; }
    const std::optional<std::map<std::string, double>>& demand_shares() const {
        return demand_shares_;
    }

    bool has_tech(const std::string& id) const { return tech_index_.count(id) != 0; }
    bool has_good(const std::string& id) const { return good_index_.count(id) != 0; }
    bool has_country(const std::string& id) const { return country_index_.count(id) != 0; }

    std::size_t tech_index(const std::string& id) const;
    std::size_t good_index(const std::string& id) const;
    std::size_t country_index(const std::string& id) const;

    const Technology& tech(const std::string& id) const { return technologies_[tech_index(id)]; }
    const Good& good(const std::string& id) const { return goods_[good_index(id)]; }
    const Country& country(const std::string& id) const { return countries_[country_index(id)]; }

    bool is_final_good(const std::string& good_id) const;
    bool is_final_tech(const std::string& tech_id) const;

    // Technology indices producing a good, in id order.
    const std::vector<std::size_t>& producers(const std::string& good_id) const;

    double good_theta(const std::string& from_tech, const std::string& to_tech) const;
    double labor_theta(const std::string& country, const std::string& to_tech) const;

private:
    std::vector<Country> countries_;
    std::vector<Good> goods_;
    std::vector<Technology> technologies_;
    TransportCosts transport_;
    std::optional<std::map<std::string, double>> demand_shares_;

    std::unordered_map<std::string, std::size_t> tech_index_;
    std::unordered_map<std::string, std::size_t> good_index_;
    std::unordered_map<std::string, std::size_t> country_index_;
    std::vector<std::vector<std::size_t>> producers_;  // by good index
};

// A complete flow assignment. Good flows are in shipped units.
struct FlowState {
    std::map<EdgeKey, double> good_flows;   // (source tech, dest tech)
    std::map<EdgeKey, double> labor_flows;  // (country, dest tech)
    std::map<std::string, double> outputs;
    std::map<std::string, double> prices;
    std::map<std::string, double> wages;

    double output(const std::string& tech) const;
    double good_flow(const std::string& from, const std::string& to) const;
    double labor_flow(const std::string& country, const std::string& to) const;
    std::optional<double> price(const std::string& tech) const;
    std::optional<double> wage(const std::string& country) const;
};

struct ShockSpec {
    std::vector<std::string> shocked;
    double lambda = 1.0;  // fraction of output retained
};

struct DisruptionOutcome {
    FlowState flows;
    double gdp_before = 0.0;
    double gdp_after = 0.0;
    double lost_gdp_total = 0.0;
    std::map<std::string, double> lost_gdp_by_country;
    std::map<std::string, double> idle_labor;

    double loss_fraction() const { return gdp_before > 0.0 ? lost_gdp_total / gdp_before : 0.0; }
};

struct Violation {
    std::string condition;  // zero_profit, inactive_profit, sourcing, feasibility, ...
    std::string entity;
    double residual = 0.0;
};

// Checks the supplied state against the equilibrium conditions: zero profit at
// transport-adjusted input prices, cost-minimizing sourcing, feasible
// production plans, and labor/intermediate/final market clearing.
std::vector<Violation> validate_equilibrium(const Economy& economy, const FlowState& state,
                                            double tolerance = 1e-9);

double gdp(const Economy& economy, const FlowState& state);

struct SourcePrice {
    double price = 0.0;
    std::string source;
};

SourcePrice effective_input_price(const Economy& economy, const FlowState& state,
                                  const std::string& tech, const std::string& good);
SourcePrice effective_labor_price(const Economy& economy, const FlowState& state,
                                  const std::string& tech);

// Validates the ShockSpec against a state; throws InvariantError.
void check_shock(const Economy& economy, const FlowState& state, const ShockSpec& shock);

} // namespace prodnet
