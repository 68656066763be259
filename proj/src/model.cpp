#include "prodnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace prodnet {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void require_cost(double c, const std::string& what) {
    if (!std::isfinite(c) || c < 1.0) {
        throw InvariantError("transport cost " + num(c) + " for " + what +
                             " violates the iceberg convention (must be >= 1)");
    }
}

} // namespace

Economy::Economy(std::vector<Country> countries, std::vector<Good> goods,
                 std::vector<Technology> technologies, TransportCosts transport,
                 std::optional<std::map<std::string, double>> demand_shares)
    : countries_(std::move(countries)),
      goods_(std::move(goods)),
      technologies_(std::move(technologies)),
      transport_(std::move(transport)),
      demand_shares_(std::move(demand_shares)) {
    for (std::size_t i = 0; i < countries_.size(); ++i) {
        const auto& c = countries_[i];
        if (c.id.empty()) throw InvariantError("country with empty id");
        if (!country_index_.emplace(c.id, i).second)
            throw InvariantError("duplicate country id '" + c.id + "'");
        if (!std::isfinite(c.labor) || c.labor <= 0.0)
            throw InvariantError("country '" + c.id + "' has non-positive labor endowment " +
                                 num(c.labor));
    }
    for (std::size_t i = 0; i < goods_.size(); ++i) {
        const auto& g = goods_[i];
        if (g.id.empty()) throw InvariantError("good with empty id");
        if (!good_index_.emplace(g.id, i).second)
            throw InvariantError("duplicate good id '" + g.id + "'");
    }
    producers_.assign(goods_.size(), {});
    for (std::size_t i = 0; i < technologies_.size(); ++i) {
        const auto& t = technologies_[i];
        if (t.id.empty()) throw InvariantError("technology with empty id");
        if (!tech_index_.emplace(t.id, i).second)
            throw InvariantError("duplicate technology id '" + t.id + "'");
        if (!country_index_.count(t.country))
            throw InvariantError("technology '" + t.id + "' references unknown country '" +
                                 t.country + "'");
        if (!good_index_.count(t.output))
            throw InvariantError("technology '" + t.id + "' produces unknown good '" + t.output +
                                 "'");
        if (!std::isfinite(t.labor_input) || t.labor_input <= 0.0)
            throw InvariantError("technology '" + t.id + "' has labor_input " +
                                 num(t.labor_input) + " (must be > 0)");
        for (const auto& [g, q] : t.inputs) {
            if (!good_index_.count(g))
                throw InvariantError("technology '" + t.id + "' uses unknown good '" + g + "'");
            if (g == t.output)
                throw InvariantError("technology '" + t.id + "' uses its own output '" + g +
                                     "' as an input");
            if (goods_[good_index_.at(g)].kind == GoodKind::Final)
                throw InvariantError("technology '" + t.id + "' uses final good '" + g +
                                     "' as an input");
            if (!std::isfinite(q) || q <= 0.0)
                throw InvariantError("technology '" + t.id + "' input '" + g +
                                     "' has non-positive quantity " + num(q));
        }
        producers_[good_index_.at(t.output)].push_back(i);
    }
    for (auto& list : producers_) {
        std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
            return technologies_[a].id < technologies_[b].id;
        });
    }
    for (std::size_t i = 0; i < goods_.size(); ++i) {
        if (goods_[i].kind == GoodKind::Final && producers_[i].empty())
            throw InvariantError("final good '" + goods_[i].id + "' has no producing technology");
    }

    require_cost(transport_.default_cost, "default");
    for (const auto& [key, cost] : transport_.good_overrides) {
        if (!tech_index_.count(key.first))
            throw UnknownEntityError("transport override references unknown technology '" +
                                     key.first + "'");
        if (!tech_index_.count(key.second))
            throw UnknownEntityError("transport override references unknown technology '" +
                                     key.second + "'");
        if (is_final_tech(key.first))
            throw InvariantError("transport override on flow from final-good technology '" +
                                 key.first + "' (final goods ship at no cost)");
        require_cost(cost, key.first + "->" + key.second);
    }
    for (const auto& [key, cost] : transport_.labor_overrides) {
        if (!country_index_.count(key.first))
            throw UnknownEntityError("labor override references unknown country '" + key.first +
                                     "'");
        if (!tech_index_.count(key.second))
            throw UnknownEntityError("labor override references unknown technology '" +
                                     key.second + "'");
        require_cost(cost, key.first + "->" + key.second);
    }

    if (demand_shares_) {
        double total = 0.0;
        std::set<std::string> seen;
        for (const auto& [g, s] : *demand_shares_) {
            if (!good_index_.count(g))
                throw InvariantError("demand share for unknown good '" + g + "'");
            if (goods_[good_index_.at(g)].kind != GoodKind::Final)
                throw InvariantError("demand share for non-final good '" + g + "'");
            if (!(s > 0.0 && s <= 1.0))
                throw InvariantError("demand share for '" + g + "' is " + num(s) +
                                     ", outside (0,1]");
            total += s;
            seen.insert(g);
        }
        for (const auto& g : goods_) {
            if (g.kind == GoodKind::Final && !seen.count(g.id))
                throw InvariantError("demand shares omit final good '" + g.id + "'");
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw InvariantError("demand shares sum to " + num(total) + ", not 1");
    }
}

std::size_t Economy::tech_index(const std::string& id) const {
    auto it = tech_index_.find(id);
    if (it == tech_index_.end()) throw UnknownEntityError("unknown technology '" + id + "'");
    return it->second;
}

std::size_t Economy::good_index(const std::string& id) const {
    auto it = good_index_.find(id);
    if (it == good_index_.end()) throw UnknownEntityError("unknown good '" + id + "'");
    return it->second;
}

std::size_t Economy::country_index(const std::string& id) const {
    auto it = country_index_.find(id);
    if (it == country_index_.end()) throw UnknownEntityError("unknown country '" + id + "'");
    return it->second;
}

bool Economy::is_final_good(const std::string& good_id) const {
    return good(good_id).kind == GoodKind::Final;
}

bool Economy::is_final_tech(const std::string& tech_id) const {
    return is_final_good(tech(tech_id).output);
}

const std::vector<std::size_t>& Economy::producers(const std::string& good_id) const {
    return producers_[good_index(good_id)];
}

double Economy::good_theta(const std::string& from_tech, const std::string& to_tech) const {
    auto it = transport_.good_overrides.find({from_tech, to_tech});
    return it == transport_.good_overrides.end() ? transport_.default_cost : it->second;
}

double Economy::labor_theta(const std::string& country, const std::string& to_tech) const {
    auto it = transport_.labor_overrides.find({country, to_tech});
    return it == transport_.labor_overrides.end() ? transport_.default_cost : it->second;
}

double FlowState::output(const std::string& tech) const {
    auto it = outputs.find(tech);
    return it == outputs.end() ? 0.0 : it->second;
}

double FlowState::good_flow(const std::string& from, const std::string& to) const {
    auto it = good_flows.find({from, to});
    return it == good_flows.end() ? 0.0 : it->second;
}

double FlowState::labor_flow(const std::string& country, const std::string& to) const {
    auto it = labor_flows.find({country, to});
    return it == labor_flows.end() ? 0.0 : it->second;
}

std::optional<double> FlowState::price(const std::string& tech) const {
    auto it = prices.find(tech);
    if (it == prices.end()) return std::nullopt;
    return it->second;
}

std::optional<double> FlowState::wage(const std::string& country) const {
    auto it = wages.find(country);
    if (it == wages.end()) return std::nullopt;
    return it->second;
}

double gdp(const Economy& economy, const FlowState& state) {
    double total = 0.0;
    for (const auto& t : economy.technologies()) {
        if (!economy.is_final_good(t.output)) continue;
        double y = state.output(t.id);
        if (y == 0.0) continue;
        auto p = state.price(t.id);
        if (!p) throw MissingPriceError("no price for active final-good technology '" + t.id + "'");
        total += *p * y;
    }
    return total;
}

SourcePrice effective_input_price(const Economy& economy, const FlowState& state,
                                  const std::string& tech, const std::string& good) {
    economy.tech(tech);
    const auto& producers = economy.producers(good);
    SourcePrice best;
    bool found = false;
    for (std::size_t idx : producers) {  // id order, so strict < keeps the lexicographic winner
        const auto& src = economy.technologies()[idx];
        auto p = state.price(src.id);
        if (!p) continue;
        double cost = economy.good_theta(src.id, tech) * *p;
        if (!found || cost < best.price) {
            best = {cost, src.id};
            found = true;
        }
    }
    if (!found) throw NoProducerError("no priced producer of good '" + good + "'");
    return best;
}

SourcePrice effective_labor_price(const Economy& economy, const FlowState& state,
                                  const std::string& tech) {
    economy.tech(tech);
    std::vector<std::string> ids;
    for (const auto& c : economy.countries()) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    SourcePrice best;
    bool found = false;
    for (const auto& c : ids) {
        auto w = state.wage(c);
        if (!w) continue;
        double cost = economy.labor_theta(c, tech) * *w;
        if (!found || cost < best.price) {
            best = {cost, c};
            found = true;
        }
    }
    if (!found) throw MissingPriceError("no wages supplied");
    return best;
}

namespace {

// Keeps the worst residual per (condition, entity) so each broken condition is
// reported once per entity.
class Report {
public:
    explicit Report(double tol) : tol_(tol) {}

    void check(const std::string& condition, const std::string& entity, double residual) {
        if (!(std::abs(residual) > tol_) && std::isfinite(residual)) return;
        auto key = std::make_pair(condition, entity);
        auto it = worst_.find(key);
        if (it == worst_.end()) {
            order_.push_back(key);
            worst_[key] = residual;
        } else if (std::abs(residual) > std::abs(it->second)) {
            it->second = residual;
        }
    }

    std::vector<Violation> take() const {
        std::vector<Violation> out;
        for (const auto& key : order_) out.push_back({key.first, key.second, worst_.at(key)});
        return out;
    }

private:
    double tol_;
    std::vector<std::pair<std::string, std::string>> order_;
    std::map<std::pair<std::string, std::string>, double> worst_;
};

} // namespace

std::vector<Violation> validate_equilibrium(const Economy& economy, const FlowState& state,
                                            double tolerance) {
    Report report(tolerance);
    const auto& techs = economy.technologies();

    std::map<std::string, std::vector<std::pair<std::string, double>>> inflows;  // dest -> (src, x)
    std::map<std::string, double> outflow_total;
    for (const auto& [key, x] : state.good_flows) {
        if (x == 0.0) continue;
        inflows[key.second].push_back({key.first, x});
        outflow_total[key.first] += x;
    }
    std::map<std::string, std::vector<std::pair<std::string, double>>> labor_in;
    std::map<std::string, double> labor_out;
    for (const auto& [key, x] : state.labor_flows) {
        if (x == 0.0) continue;
        labor_in[key.second].push_back({key.first, x});
        labor_out[key.first] += x;
    }

    // Reference market price of each good: cheapest active producer.
    std::map<std::string, double> market_price;
    for (const auto& t : techs) {
        if (state.output(t.id) <= 0.0) continue;
        auto p = state.price(t.id);
        if (!p) continue;
        auto it = market_price.find(t.output);
        if (it == market_price.end() || *p < it->second) market_price[t.output] = *p;
    }

    for (const auto& t : techs) {
        const double y = state.output(t.id);
        const bool active = y > 0.0;
        auto p = state.price(t.id);

        // Unit cost at transport-adjusted prices.
        double cost = 0.0;
        bool costable = true;
        try {
            cost += t.labor_input * effective_labor_price(economy, state, t.id).price;
            for (const auto& [g, q] : t.inputs)
                cost += q * effective_input_price(economy, state, t.id, g).price;
        } catch (const Error&) {
            costable = false;
        }

        if (active) {
            if (!p) {
                report.check("missing_price", t.id, std::numeric_limits<double>::infinity());
            } else if (!costable) {
                report.check("zero_profit", t.id, std::numeric_limits<double>::infinity());
            } else {
                report.check("zero_profit", t.id, *p - cost);
            }
        } else if (costable) {
            auto mp = market_price.find(t.output);
            if (mp != market_price.end()) {
                double profit = mp->second - cost;
                if (profit > 0.0) report.check("inactive_profit", t.id, profit);
            }
        }

        if (!active) {
            double stray = 0.0;
            for (const auto& [src, x] : inflows[t.id]) stray += x;
            for (const auto& [c, x] : labor_in[t.id]) stray += x;
            stray += outflow_total[t.id];
            report.check("feasibility", t.id, stray);
            continue;
        }

        // Sourcing: every used supplier must be a cheapest delivered source.
        if (costable) {
            for (const auto& [src, x] : inflows[t.id]) {
                if (!economy.has_tech(src)) continue;
                const auto& g = economy.tech(src).output;
                if (!t.inputs.count(g)) continue;
                auto ps = state.price(src);
                if (!ps) continue;
                double best = effective_input_price(economy, state, t.id, g).price;
                double excess = economy.good_theta(src, t.id) * *ps - best;
                if (excess > 0.0) report.check("sourcing", t.id + "<-" + src, excess);
            }
            double best_labor = effective_labor_price(economy, state, t.id).price;
            for (const auto& [c, x] : labor_in[t.id]) {
                auto w = state.wage(c);
                if (!w) continue;
                double excess = economy.labor_theta(c, t.id) * *w - best_labor;
                if (excess > 0.0) report.check("sourcing", t.id + "<-" + c, excess);
            }
        }

        // Feasibility: received inputs equal recipe times output.
        std::map<std::string, double> received;
        for (const auto& [src, x] : inflows[t.id]) {
            received[economy.tech(src).output] += x / economy.good_theta(src, t.id);
        }
        for (const auto& [g, r] : received) {
            if (!t.inputs.count(g)) report.check("feasibility", t.id, r);
        }
        for (const auto& [g, q] : t.inputs) report.check("feasibility", t.id, received[g] - q * y);
        double labor_received = 0.0;
        for (const auto& [c, x] : labor_in[t.id]) labor_received += x / economy.labor_theta(c, t.id);
        report.check("feasibility", t.id, labor_received - t.labor_input * y);

        // Market clearing for the output.
        if (economy.is_final_good(t.output)) {
            report.check("final_clearing", t.id, outflow_total[t.id]);
            auto mp = market_price.find(t.output);
            if (p && mp != market_price.end()) report.check("world_price", t.id, *p - mp->second);
        } else {
            report.check("intermediate_clearing", t.id, outflow_total[t.id] - y);
        }
    }

    for (const auto& c : economy.countries()) {
        report.check("labor_clearing", c.id, labor_out[c.id] - c.labor);
    }
    return report.take();
}

void check_shock(const Economy& economy, const FlowState& state, const ShockSpec& shock) {
    if (!std::isfinite(shock.lambda) || shock.lambda < 0.0)
        throw InvariantError("shock lambda " + num(shock.lambda) + " must be a finite value >= 0");
    for (const auto& id : shock.shocked) {
        economy.tech(id);
        if (state.output(id) <= 0.0)
            throw InvariantError("shocked technology '" + id + "' is not active");
    }
}

} // namespace prodnet
