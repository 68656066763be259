#include "prodnet/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prodnet/centrality.hpp"
#include "prodnet/fixtures.hpp"
#include "prodnet/fragility.hpp"
#include "prodnet/hulten.hpp"
#include "prodnet/io.hpp"
#include "prodnet/medium_run.hpp"
#include "prodnet/model.hpp"
#include "prodnet/power.hpp"
#include "prodnet/propagation.hpp"

namespace prodnet::cli {

namespace {

// Bad flag combinations detected after parsing; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Cell {
    enum class Kind { Text, Number, Bool } kind = Kind::Text;
    std::string text;
    double number = 0.0;

    Cell(const char* s) : text(s) {}
    Cell(std::string s) : text(std::move(s)) {}
    Cell(double v) : kind(Kind::Number), text(num(v)), number(v) {}
    Cell(int v) : Cell(static_cast<double>(v)) {}
    Cell(std::size_t v) : Cell(static_cast<double>(v)) {}
    Cell(bool b) : kind(Kind::Bool), text(b ? "true" : "false"), number(b ? 1.0 : 0.0) {}
};

struct Section {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::vector<Section> sections;

    Section& section(std::string name, std::vector<std::string> columns) {
        sections.push_back({std::move(name), std::move(columns), {}});
        return sections.back();
    }
    Section& summary() { return section("summary", {"key", "value"}); }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void render_table(const Report& r, std::ostream& os) {
    bool first = true;
    for (const auto& s : r.sections) {
        if (!first) os << '\n';
        first = false;
        os << "[" << s.name << "]\n";
        std::vector<std::size_t> width(s.columns.size());
        for (std::size_t c = 0; c < s.columns.size(); ++c) width[c] = s.columns[c].size();
        for (const auto& row : s.rows)
            for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
                width[c] = std::max(width[c], row[c].text.size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string text;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) text += "  ";
                text += cells[c];
                if (c + 1 < cells.size()) text.append(width[c] - cells[c].size(), ' ');
            }
            os << text << '\n';
        };
        line(s.columns);
        for (const auto& row : s.rows) {
            std::vector<std::string> cells;
            for (const auto& cell : row) cells.push_back(cell.text);
            line(cells);
        }
    }
}

void render_csv(const Report& r, std::ostream& os) {
    os << "# prodnet-csv v1\n";
    for (const auto& s : r.sections) {
        os << "# " << s.name << '\n';
        for (std::size_t c = 0; c < s.columns.size(); ++c) os << (c ? "," : "") << s.columns[c];
        os << '\n';
        for (const auto& row : s.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(row[c].text);
            os << '\n';
        }
    }
}

void render_json(const Report& r, std::ostream& os) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& s : r.sections) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : s.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < row.size() && c < s.columns.size(); ++c) {
                const Cell& cell = row[c];
                if (cell.kind == Cell::Kind::Bool)
                    obj[s.columns[c]] = cell.number != 0.0;
                else if (cell.kind == Cell::Kind::Number && std::isfinite(cell.number))
                    obj[s.columns[c]] = cell.number;
                else
                    obj[s.columns[c]] = cell.text;
            }
            rows.push_back(std::move(obj));
        }
        doc[s.name] = std::move(rows);
    }
    os << doc.dump(2) << '\n';
}

// Flags shared by the analysis subcommands.
struct Common {
    std::string economy;
    std::string flows;
    std::string demo;
    std::string out;
    std::string format = "table";
    std::string csv_path;
    std::vector<CLI::Option*> csv;  // one per subcommand
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Common& c, bool input = true) {
    if (input) {
        sub->add_option("--economy", c.economy, "Economy file (JSON)");
        sub->add_option("--flows", c.flows, "Equilibrium flow file (JSON)");
        sub->add_option("--demo", c.demo, "Use a built-in fixture instead of files");
        sub->add_option("--tolerance", c.tolerance, "Equilibrium validation tolerance");
    }
    sub->add_option("--out", c.out, "Write output to this path");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    c.csv.push_back(sub->add_option("--csv", c.csv_path, "CSV output, optionally to PATH")->expected(0, 1));
    sub->add_option("--seed", c.seed, "Random seed");
}

Fixture load(const Common& c) {
    if (!c.demo.empty()) {
        if (!c.economy.empty() || !c.flows.empty())
            throw UsageError("--demo cannot be combined with --economy/--flows");
        return build(c.demo);
    }
    if (c.economy.empty()) throw UsageError("missing required flag --economy (or --demo)");
    if (c.flows.empty()) throw UsageError("missing required flag --flows (or --demo)");
    Economy economy = load_economy(c.economy);
    FlowState state = load_flow_state(c.flows, economy);
    return {std::move(economy), std::move(state)};
}

void emit(const Report& r, Common& c, std::ostream& out) {
    bool csv = false;
    for (const auto* opt : c.csv) csv = csv || opt->count() > 0;
    if (csv) {
        c.format = "csv";
        if (!c.csv_path.empty()) {
            if (!c.out.empty() && c.out != c.csv_path)
                throw UsageError("--csv PATH conflicts with --out");
            c.out = c.csv_path;
        }
    }
    std::ostringstream buf;
    if (c.format == "csv")
        render_csv(r, buf);
    else if (c.format == "json")
        render_json(r, buf);
    else
        render_table(r, buf);
    if (c.out.empty()) {
        out << buf.str();
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw IoError("cannot open '" + c.out + "' for writing");
    f << buf.str();
    if (!f) throw IoError("failed writing '" + c.out + "'");
}

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + items[i];
    return s;
}

struct ShockFlags {
    std::vector<std::string> shocked;
    double lambda = 0.9;

    void add(CLI::App* sub) {
        sub->add_option("--shocked", shocked, "Shocked technologies (comma separated)")
            ->delimiter(',')
            ->required();
        sub->add_option("--lambda", lambda, "Fraction of output retained by shocked techs");
    }
    ShockSpec spec() const { return {shocked, lambda}; }
};

void country_losses(Report& r, const Economy& eco, const DisruptionOutcome& o) {
    auto& s = r.section("countries", {"country", "lost_gdp", "idle_labor"});
    for (const auto& c : eco.countries()) {
        auto lost = o.lost_gdp_by_country.find(c.id);
        auto idle = o.idle_labor.find(c.id);
        s.add({c.id, lost == o.lost_gdp_by_country.end() ? 0.0 : lost->second,
               idle == o.idle_labor.end() ? 0.0 : idle->second});
    }
}

void make_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Production network disruption analysis", "prodnet"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    Common c;
    ShockFlags sf;
    // The selected subcommand's action; returns the exit code.
    std::function<int()> action;

    // validate
    auto* validate = app.add_subcommand("validate", "Check the equilibrium conditions");
    add_common(validate, c);
    validate->callback([&] {
        action = [&] {
            auto f = load(c);
            auto violations = validate_equilibrium(f.economy, f.state, c.tolerance);
            Report r;
            auto& v = r.section("violations", {"condition", "entity", "residual"});
            for (const auto& x : violations) v.add({x.condition, x.entity, x.residual});
            auto& s = r.summary();
            s.add({"valid", violations.empty()});
            s.add({"violations", violations.size()});
            emit(r, c, out);
            if (violations.empty()) return 0;
            err << "NotEquilibriumError: " << violations.size()
                << " equilibrium condition(s) violated\n";
            return 1;
        };
    });

    // gdp
    auto* gdp_cmd = app.add_subcommand("gdp", "GDP and wage income by country");
    add_common(gdp_cmd, c);
    gdp_cmd->callback([&] {
        action = [&] {
            auto f = load(c);
            Report r;
            auto& s = r.section("countries", {"country", "labor", "wage", "income"});
            for (const auto& country : f.economy.countries()) {
                double w = f.state.wage(country.id).value_or(0.0);
                s.add({country.id, country.labor, w, w * country.labor});
            }
            r.summary().add({"gdp", gdp(f.economy, f.state)});
            emit(r, c, out);
            return 0;
        };
    });

    // hulten
    std::string tech;
    double shock_size = 0.1;
    auto* hulten = app.add_subcommand("hulten", "First-order long-run loss of a productivity shock");
    add_common(hulten, c);
    hulten->add_option("--tech", tech, "Technology")->required();
    hulten->add_option("--shock", shock_size, "Shock size (fraction of productivity lost)");
    hulten->callback([&] {
        action = [&] {
            auto f = load(c);
            auto h = hulten_marginal(f.economy, f.state, tech, shock_size);
            Report r;
            r.section("hulten", {"tech", "expenditure", "gdp", "share", "loss"})
                .add({h.tech, h.expenditure, h.gdp, h.marginal_share, h.extrapolated_loss});
            emit(r, c, out);
            return 0;
        };
    });

    // longrun
    auto* longrun = app.add_subcommand("longrun", "Exact long-run re-equilibration");
    add_common(longrun, c);
    sf.add(longrun);
    longrun->callback([&] {
        action = [&] {
            auto f = load(c);
            auto o = long_run_reequilibrate(f.economy, f.state, sf.spec());
            Report r;
            auto& t = r.section("techs", {"tech", "output_before", "output_after", "price_before",
                                          "price_after"});
            for (const auto& tt : f.economy.technologies())
                t.add({tt.id, f.state.output(tt.id), o.flows.output(tt.id),
                       f.state.price(tt.id).value_or(0.0), o.flows.price(tt.id).value_or(0.0)});
            auto& fl = r.section("flows", {"from", "to", "amount_before", "amount_after"});
            std::set<EdgeKey> keys;
            for (const auto& [k, v] : f.state.good_flows) keys.insert(k);
            for (const auto& [k, v] : o.flows.good_flows) keys.insert(k);
            for (const auto& k : keys)
                fl.add({k.first, k.second, f.state.good_flow(k.first, k.second),
                        o.flows.good_flow(k.first, k.second)});
            auto& w = r.section("wages", {"country", "wage_before", "wage_after"});
            for (const auto& country : f.economy.countries())
                w.add({country.id, f.state.wage(country.id).value_or(0.0),
                       o.flows.wage(country.id).value_or(0.0)});
            auto& s = r.summary();
            s.add({"gdp_before", o.gdp_before});
            s.add({"gdp_after", o.gdp_after});
            s.add({"lost_gdp", o.lost_gdp_total});
            s.add({"loss_fraction", o.loss_fraction()});
            emit(r, c, out);
            return 0;
        };
    });

    // shock
    double delta = 0.0;
    std::size_t max_sweeps = 10000;
    auto* shock = app.add_subcommand("shock", "Short-run propagation of a shock");
    add_common(shock, c);
    sf.add(shock);
    shock->add_option("--delta", delta, "Convergence threshold on output fractions");
    shock->add_option("--max-sweeps", max_sweeps, "Sweep limit");
    shock->callback([&] {
        action = [&] {
            auto f = load(c);
            const Propagator prop(f.economy, f.state, c.tolerance);
            PropagationConfig cfg;
            cfg.delta = delta;
            cfg.max_sweeps = max_sweeps;
            std::size_t sweeps = 0;
            auto phi = prop.fractions(sf.spec(), cfg, &sweeps);
            auto o = prop.outcome(phi);
            auto bound = shock_bound(f.economy, f.state, sf.spec());
            auto cut = check_cut_condition(f.economy, f.state, sf.spec());
            bool industry = check_industry_shock_condition(f.economy, f.state, sf.spec());
            Report r;
            auto& t = r.section("techs", {"tech", "country", "output_before", "output_after", "fraction"});
            const auto& techs = f.economy.technologies();
            for (std::size_t k = 0; k < techs.size(); ++k)
                t.add({techs[k].id, techs[k].country, f.state.output(techs[k].id),
                       o.flows.output(techs[k].id), phi[k]});
            country_losses(r, f.economy, o);
            auto& s = r.summary();
            s.add({"gdp_before", o.gdp_before});
            s.add({"gdp_after", o.gdp_after});
            s.add({"lost_gdp", o.lost_gdp_total});
            s.add({"loss_fraction", o.loss_fraction()});
            s.add({"sweeps", sweeps});
            s.add({"affected_finals", join(bound.affected_finals)});
            s.add({"bound_fraction", bound.bound_fraction});
            s.add({"bound_tight", bound.tight});
            s.add({"industry_shock_condition", industry});
            s.add({"cut_condition", cut.holds});
            if (!cut.holds) {
                s.add({"cut_condition_reason", cut.reason});
                s.add({"cut_condition_certificate", join(cut.certificate, "->")});
            }
            emit(r, c, out);
            return 0;
        };
    });

    // mediumrun
    auto* medium = app.add_subcommand("mediumrun", "Value-maximizing reallocation with fixed labor");
    add_common(medium, c);
    sf.add(medium);
    medium->callback([&] {
        action = [&] {
            auto f = load(c);
            auto m = medium_run_optimize(f.economy, f.state, sf.spec());
            Report r;
            auto& t = r.section("techs", {"tech", "output_before", "output_after"});
            for (const auto& tt : f.economy.technologies())
                t.add({tt.id, f.state.output(tt.id), m.flows.output(tt.id)});
            auto& rr = r.section("reroutes", {"from", "to", "amount"});
            for (const auto& x : m.reroutes) rr.add({x.from, x.to, x.amount});
            auto& s = r.summary();
            s.add({"gdp_before", m.gdp_before});
            s.add({"lost_gdp", m.lost_gdp});
            s.add({"loss_fraction", m.loss_fraction()});
            emit(r, c, out);
            return 0;
        };
    });

    // lpr
    auto* lpr_cmd = app.add_subcommand("lpr", "Loss to price rigidity");
    add_common(lpr_cmd, c);
    sf.add(lpr_cmd);
    lpr_cmd->callback([&] {
        action = [&] {
            auto f = load(c);
            auto l = lpr(f.economy, f.state, sf.spec());
            Report r;
            auto& s = r.summary();
            s.add({"short_run_loss", l.short_run_loss});
            s.add({"medium_run_loss", l.medium_run_loss});
            s.add({"lpr", l.lpr});
            emit(r, c, out);
            return 0;
        };
    });

    // gen-lpr
    int family_t = 3;
    auto* gen = app.add_subcommand("gen-lpr", "Write the t-country price-rigidity economy");
    add_common(gen, c, false);
    gen->add_option("--t", family_t, "Number of countries")->required();
    gen->callback([&] {
        action = [&] {
            if (c.out.empty()) throw UsageError("missing required flag --out (directory)");
            auto g = generate_lpr_family(family_t);
            make_dir(c.out);
            const std::string eco_path = (std::filesystem::path(c.out) / "economy.json").string();
            const std::string flow_path = (std::filesystem::path(c.out) / "flows.json").string();
            save_economy(g.economy, eco_path);
            save_flow_state(g.state, flow_path);
            Report r;
            auto& s = r.summary();
            s.add({"economy", eco_path});
            s.add({"flows", flow_path});
            s.add({"gdp", gdp(g.economy, g.state)});
            c.out.clear();
            emit(r, c, out);
            return 0;
        };
    });

    // centrality
    bool all = false;
    auto* centrality = app.add_subcommand("centrality", "Disruption centrality");
    add_common(centrality, c);
    auto* tech_opt = centrality->add_option("--tech", tech, "Technology");
    centrality->add_flag("--all", all, "Rank every active technology")->excludes(tech_opt);
    centrality->callback([&] {
        action = [&] {
            auto f = load(c);
            Report r;
            if (!tech.empty()) {
                auto rep = disruption_centrality(f.economy, f.state, tech);
                r.section("centrality", {"tech", "dc"}).add({rep.tech, rep.dc});
                auto& d = r.section("d_values", {"final_good", "tech", "d"});
                for (const auto& [k, v] : rep.d_values) d.add({k.first, k.second, v});
            } else {
                auto& s = r.section("centrality", {"tech", "dc"});
                for (const auto& rep : all_centralities(f.economy, f.state)) s.add({rep.tech, rep.dc});
            }
            emit(r, c, out);
            return 0;
        };
    });

    // power
    std::string aggressor, target;
    bool strategic = false, exhaustive = false, candidates = false;
    auto* power_cmd = app.add_subcommand("power", "Power of one country over another");
    add_common(power_cmd, c);
    power_cmd->add_option("--aggressor", aggressor, "Disrupting country")->required();
    power_cmd->add_option("--target", target, "Target country")->required();
    power_cmd->add_flag("--strategic", strategic, "Let the target route its cuts");
    power_cmd->add_flag("--exhaustive", exhaustive, "Consider every aggressor technology");
    power_cmd->add_flag("--candidates", candidates, "List every evaluated disruption");
    power_cmd->callback([&] {
        action = [&] {
            auto f = load(c);
            PowerOptions opt;
            opt.exhaustive = exhaustive;
            auto p = strategic ? strategic_power(f.economy, f.state, aggressor, target, opt)
                               : power(f.economy, f.state, aggressor, target, opt);
            Report r;
            if (candidates) {
                auto& s = r.section("candidates", {"tech", "routing", "aggressor_loss", "target_loss",
                                                   "power_pct", "power_abs"});
                for (const auto& k : power_candidates(f.economy, f.state, aggressor, target, opt))
                    s.add({k.tech, k.routing.describe(), k.aggressor_loss, k.target_loss, k.power_pct,
                           k.power_abs});
            }
            auto& s = r.summary();
            s.add({"aggressor", p.aggressor});
            s.add({"target", p.target});
            s.add({"strategic", strategic});
            s.add({"best_tech", p.best_tech});
            s.add({"routing", p.best_routing.describe()});
            s.add({"power_pct", p.power_pct});
            s.add({"power_abs", p.power_abs});
            s.add({"aggressor_loss", p.aggressor_loss});
            s.add({"target_loss", p.target_loss});
            s.add({"no_leverage", p.no_leverage});
            s.add({"unbounded", p.unbounded});
            emit(r, c, out);
            return 0;
        };
    });

    // frontier
    FrontierOptions fopt;
    auto* frontier_cmd = app.add_subcommand("frontier", "Disruption possibility frontier");
    add_common(frontier_cmd, c);
    frontier_cmd->add_option("--aggressor", aggressor, "Disrupting country")->required();
    frontier_cmd->add_option("--target", target, "Target country")->required();
    frontier_cmd->add_option("--resolution", fopt.resolution, "Maximum number of zero-out steps");
    frontier_cmd->add_option("--budget", fopt.budget, "Maximum number of step evaluations");
    frontier_cmd->callback([&] {
        action = [&] {
            auto f = load(c);
            auto fr = frontier(f.economy, f.state, aggressor, target, fopt);
            Report r;
            auto& s = r.section("frontier", {"own_loss_pct", "target_loss_pct"});
            for (const auto& [x, y] : fr.points) s.add({x, y});
            emit(r, c, out);
            return 0;
        };
    });

    // fragility
    double pi = 0.01, frag_lambda = 0.9;
    std::uint64_t trials = 10000;
    bool compare = false;
    auto* fragility = app.add_subcommand("fragility", "Expected losses under random shocks");
    add_common(fragility, c);
    fragility->add_option("--pi", pi, "Shock probability per intermediate technology");
    fragility->add_option("--lambda", frag_lambda, "Fraction of output retained when shocked");
    fragility->add_option("--trials", trials, "Monte Carlo trials");
    fragility->add_flag("--compare-formula", compare, "Also report the closed-form approximations");
    fragility->callback([&] {
        action = [&] {
            auto f = load(c);
            auto st = complexity_stats(f.economy, f.state);
            auto mc = expected_loss_mc(f.economy, f.state, pi, frag_lambda, trials, c.seed);
            Report r;
            auto& s = r.summary();
            s.add({"S", st.S});
            s.add({"q", st.q});
            s.add({"m", st.m});
            s.add({"intermediate_techs", st.M_count});
            s.add({"final_goods", st.F_count});
            s.add({"pi", pi});
            s.add({"lambda", frag_lambda});
            s.add({"trials", static_cast<double>(mc.trials)});
            s.add({"seed", std::to_string(c.seed)});
            s.add({"short_run_mean", mc.short_run_mean});
            s.add({"short_run_se", mc.short_run_se});
            s.add({"long_run_mean", mc.long_run_mean});
            s.add({"long_run_se", mc.long_run_se});
            if (compare) {
                auto fl = expected_loss_formulas(st, pi, frag_lambda);
                s.add({"short_run_formula", fl.short_run});
                s.add({"long_run_formula", fl.long_run});
                auto z = [](double mean, double se, double target) {
                    if (se > 0.0) return (mean - target) / se;
                    return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
                };
                s.add({"short_run_z", z(mc.short_run_mean, mc.short_run_se, fl.short_run)});
                s.add({"long_run_z", z(mc.long_run_mean, mc.long_run_se, fl.long_run)});
            }
            emit(r, c, out);
            return 0;
        };
    });

    // fixtures
    bool list = false;
    std::string emit_name;
    auto* fixtures = app.add_subcommand("fixtures", "List or write the built-in example economies");
    add_common(fixtures, c, false);
    auto* list_opt = fixtures->add_flag("--list", list, "List fixture names");
    fixtures->add_option("--emit", emit_name, "Fixture to write (LprFamily:<t> selects t)")
        ->excludes(list_opt);
    fixtures->callback([&] {
        action = [&] {
            Report r;
            if (!emit_name.empty()) {
                if (c.out.empty()) throw UsageError("--emit requires --out (directory)");
                auto f = build(emit_name);
                make_dir(c.out);
                const std::string eco_path = (std::filesystem::path(c.out) / "economy.json").string();
                const std::string flow_path = (std::filesystem::path(c.out) / "flows.json").string();
                save_economy(f.economy, eco_path);
                save_flow_state(f.state, flow_path);
                auto& s = r.summary();
                s.add({"fixture", emit_name});
                s.add({"economy", eco_path});
                s.add({"flows", flow_path});
                c.out.clear();
            } else {
                auto& s = r.section("fixtures", {"name"});
                for (const auto& n : fixture_names()) s.add({n});
            }
            emit(r, c, out);
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "Error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace prodnet::cli
