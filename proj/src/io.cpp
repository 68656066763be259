#include "prodnet/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace prodnet {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + " is missing field '" + key + "'");
    return *it;
}

std::string str_field(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_string()) throw SchemaError(where + " field '" + key + "' must be a string");
    return v.get<std::string>();
}

double num_value(const json& v, const std::string& where) {
    if (!v.is_number()) throw SchemaError(where + " must be a number");
    return v.get<double>();
}

double num_field(const json& obj, const char* key, const std::string& where) {
    return num_value(field(obj, key, where), where + " field '" + key + "'");
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_array()) throw SchemaError(where + " field '" + key + "' must be an array");
    return v;
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void write_file(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

void check_amount(double v, const std::string& what) {
    if (!std::isfinite(v)) throw NegativeFlowError(what + " is not finite");
    if (v < 0.0) throw NegativeFlowError(what + " is negative");
}

} // namespace

Economy economy_from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("economy document must be an object");

    std::vector<Country> countries;
    for (const auto& c : array_field(doc, "countries", "economy")) {
        Country country;
        country.id = str_field(c, "id", "country");
        country.labor = num_field(c, "labor", "country '" + country.id + "'");
        countries.push_back(std::move(country));
    }
    if (countries.empty()) throw SchemaError("economy has no countries");

    std::vector<Good> goods;
    for (const auto& g : array_field(doc, "goods", "economy")) {
        Good good;
        good.id = str_field(g, "id", "good");
        std::string kind = str_field(g, "kind", "good '" + good.id + "'");
        if (kind == "intermediate") {
            good.kind = GoodKind::Intermediate;
        } else if (kind == "final") {
            good.kind = GoodKind::Final;
        } else {
            throw SchemaError("good '" + good.id + "' has unknown kind '" + kind + "'");
        }
        goods.push_back(std::move(good));
    }

    std::vector<Technology> techs;
    for (const auto& t : array_field(doc, "technologies", "economy")) {
        Technology tech;
        tech.id = str_field(t, "id", "technology");
        const std::string where = "technology '" + tech.id + "'";
        tech.country = str_field(t, "country", where);
        tech.output = str_field(t, "output", where);
        tech.labor_input = num_field(t, "labor_input", where);
        const json& inputs = field(t, "inputs", where);
        if (!inputs.is_object()) throw SchemaError(where + " field 'inputs' must be an object");
        for (auto it = inputs.begin(); it != inputs.end(); ++it) {
            tech.inputs[it.key()] = num_value(it.value(), where + " input '" + it.key() + "'");
        }
        techs.push_back(std::move(tech));
    }
    if (techs.empty()) throw SchemaError("economy has no technologies");

    TransportCosts transport;
    const json& tr = field(doc, "transport", "economy");
    transport.default_cost = num_field(tr, "default", "transport");
    if (tr.contains("good_overrides")) {
        for (const auto& o : array_field(tr, "good_overrides", "transport")) {
            EdgeKey key{str_field(o, "from", "good override"), str_field(o, "to", "good override")};
            transport.good_overrides[key] = num_field(o, "cost", "good override");
        }
    }
    if (tr.contains("labor_overrides")) {
        for (const auto& o : array_field(tr, "labor_overrides", "transport")) {
            EdgeKey key{str_field(o, "country", "labor override"),
                        str_field(o, "to", "labor override")};
            transport.labor_overrides[key] = num_field(o, "cost", "labor override");
        }
    }

    std::optional<std::map<std::string, double>> shares;
    if (doc.contains("demand_shares") && !doc.at("demand_shares").is_null()) {
        const json& ds = doc.at("demand_shares");
        if (!ds.is_object()) throw SchemaError("demand_shares must be an object");
        shares.emplace();
        for (auto it = ds.begin(); it != ds.end(); ++it) {
            (*shares)[it.key()] = num_value(it.value(), "demand share '" + it.key() + "'");
        }
    }

    return Economy(std::move(countries), std::move(goods), std::move(techs), std::move(transport),
                   std::move(shares));
}

json economy_to_json(const Economy& economy) {
    json doc;
    doc["countries"] = json::array();
    for (const auto& c : economy.countries())
        doc["countries"].push_back({{"id", c.id}, {"labor", c.labor}});
    doc["goods"] = json::array();
    for (const auto& g : economy.goods())
        doc["goods"].push_back(
            {{"id", g.id}, {"kind", g.kind == GoodKind::Final ? "final" : "intermediate"}});
    doc["technologies"] = json::array();
    for (const auto& t : economy.technologies()) {
        json inputs = json::object();
        for (const auto& [g, q] : t.inputs) inputs[g] = q;
        doc["technologies"].push_back({{"id", t.id},
                                       {"country", t.country},
                                       {"output", t.output},
                                       {"labor_input", t.labor_input},
                                       {"inputs", inputs}});
    }
    json tr;
    tr["default"] = economy.transport().default_cost;
    tr["good_overrides"] = json::array();
    for (const auto& [key, cost] : economy.transport().good_overrides)
        tr["good_overrides"].push_back({{"from", key.first}, {"to", key.second}, {"cost", cost}});
    tr["labor_overrides"] = json::array();
    for (const auto& [key, cost] : economy.transport().labor_overrides)
        tr["labor_overrides"].push_back(
            {{"country", key.first}, {"to", key.second}, {"cost", cost}});
    doc["transport"] = tr;
    if (economy.demand_shares()) {
        json ds = json::object();
        for (const auto& [g, s] : *economy.demand_shares()) ds[g] = s;
        doc["demand_shares"] = ds;
    }
    return doc;
}

FlowState flow_state_from_json(const json& doc, const Economy& economy) {
    if (!doc.is_object()) throw SchemaError("flow document must be an object");
    FlowState state;
    auto need_tech = [&](const std::string& id) {
        if (!economy.has_tech(id)) throw UnknownEntityError("unknown technology '" + id + "'");
    };
    auto need_country = [&](const std::string& id) {
        if (!economy.has_country(id)) throw UnknownEntityError("unknown country '" + id + "'");
    };

    for (const auto& f : array_field(doc, "good_flows", "flows")) {
        std::string from = str_field(f, "from", "good flow");
        std::string to = str_field(f, "to", "good flow");
        need_tech(from);
        need_tech(to);
        double amount = num_field(f, "amount", "good flow " + from + "->" + to);
        check_amount(amount, "good flow " + from + "->" + to);
        state.good_flows[{from, to}] += amount;
    }
    for (const auto& f : array_field(doc, "labor_flows", "flows")) {
        std::string country = str_field(f, "country", "labor flow");
        std::string to = str_field(f, "to", "labor flow");
        need_country(country);
        need_tech(to);
        double amount = num_field(f, "amount", "labor flow " + country + "->" + to);
        check_amount(amount, "labor flow " + country + "->" + to);
        state.labor_flows[{country, to}] += amount;
    }
    auto read_map = [&](const char* key, bool techs, std::map<std::string, double>& out) {
        const json& m = field(doc, key, "flows");
        if (!m.is_object()) throw SchemaError(std::string("flows field '") + key + "' must be an object");
        for (auto it = m.begin(); it != m.end(); ++it) {
            if (techs) need_tech(it.key()); else need_country(it.key());
            double v = num_value(it.value(), std::string(key) + " '" + it.key() + "'");
            check_amount(v, std::string(key) + " '" + it.key() + "'");
            out[it.key()] = v;
        }
    };
    read_map("outputs", true, state.outputs);
    read_map("prices", true, state.prices);
    read_map("wages", false, state.wages);
    return state;
}

json flow_state_to_json(const FlowState& state) {
    json doc;
    doc["good_flows"] = json::array();
    for (const auto& [key, x] : state.good_flows)
        doc["good_flows"].push_back({{"from", key.first}, {"to", key.second}, {"amount", x}});
    doc["labor_flows"] = json::array();
    for (const auto& [key, x] : state.labor_flows)
        doc["labor_flows"].push_back({{"country", key.first}, {"to", key.second}, {"amount", x}});
    auto dump_map = [](const std::map<std::string, double>& m) {
        json o = json::object();
        for (const auto& [k, v] : m) o[k] = v;
        return o;
    };
    doc["outputs"] = dump_map(state.outputs);
    doc["prices"] = dump_map(state.prices);
    doc["wages"] = dump_map(state.wages);
    return doc;
}

Economy load_economy(const std::string& path) { return economy_from_json(parse_file(path)); }

FlowState load_flow_state(const std::string& path, const Economy& economy) {
    return flow_state_from_json(parse_file(path), economy);
}

void save_economy(const Economy& economy, const std::string& path) {
    write_file(economy_to_json(economy), path);
}

void save_flow_state(const FlowState& state, const std::string& path) {
    write_file(flow_state_to_json(state), path);
}

} // namespace prodnet
