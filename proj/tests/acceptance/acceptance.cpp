// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prodnet/centrality.hpp"
#include "prodnet/fixtures.hpp"
#include "prodnet/fragility.hpp"
#include "prodnet/hulten.hpp"
#include "prodnet/medium_run.hpp"
#include "prodnet/power.hpp"
#include "prodnet/propagation.hpp"
#include "support/random_economy.hpp"

using namespace prodnet;

namespace {

// Tolerances pinned per criterion.
constexpr double kTolHulten = 1e-12;
constexpr double kTolLongRunGdp = 1e-3;
constexpr double kTolLongRunFlow = 5e-3;
constexpr double kTolShortRun = 1e-9;
constexpr double kTolFixedPoint = 1e-6;
constexpr double kTolOracle = 1e-9;
constexpr double kTolBound = 1e-9;
constexpr double kTolCentrality = 1e-9;
constexpr double kTolMediumRun = 1e-9;
constexpr double kTolPower = 1e-9;
constexpr double kTolFrontier = 1e-6;
constexpr double kTolStrategic = 1e-9;
constexpr double kStandardErrors = 3.0;
constexpr double kTolProperty = 1e-9;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void near(const char* what, double actual, double expected, double tol) {
        const bool good = std::abs(actual - expected) <= tol;
        ok = ok && good;
        note(what, actual, good ? "" : " !");
        detail.precision(12);
    }
    void require(const char* what, bool cond) {
        ok = ok && cond;
        if (!detail.str().empty()) detail << "; ";
        detail << what << (cond ? " yes" : " NO");
    }
    void note(const char* what, double v, const char* mark = "") {
        if (!detail.str().empty()) detail << "; ";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        detail << what << "=" << buf << mark;
    }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Check&)>& body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        if (!c.detail.str().empty()) c.detail << "; ";
        c.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!c.ok) ++failures;
    std::printf("%s %2d %s [%s] (%.2fs)\n", c.ok ? "PASS" : "FAIL", id, title, c.detail.str().c_str(),
                secs);
    std::fflush(stdout);
}

double final_output(const Economy& e, const FlowState& s, const std::string& good) {
    double y = 0.0;
    for (const auto& t : e.technologies())
        if (t.output == good) y += s.output(t.id);
    return y;
}

// Wage income of a country at full employment.
double country_gdp(const Fixture& f, const std::string& country) {
    return *f.state.wage(country) * f.economy.country(country).labor;
}

double power_pct(const Fixture& f, const char* a, const char* b) {
    return power(f.economy, f.state, a, b).power_pct;
}

} // namespace

int main() {
    criterion(1, "Hulten marginal share of the chain's resource", [](Check& c) {
        Fixture f = build(FixtureId::Fig1Chain);
        auto h = hulten_marginal(f.economy, f.state, "tauR", 0.1);
        c.near("share", h.marginal_share, 0.2, kTolHulten);
        c.near("loss", h.extrapolated_loss, 0.02, kTolHulten);
    });

    criterion(2, "Long-run re-equilibration of the chain", [](Check& c) {
        Fixture f = build(FixtureId::Fig1Chain);
        auto o = long_run_reequilibrate(f.economy, f.state, {{"tauR"}, 0.9});
        c.near("gdp", o.gdp_after, 0.978, kTolLongRunGdp);
        c.near("y_R", o.flows.output("tauR"), 1.96, kTolLongRunFlow);
        c.near("labor_R", o.flows.labor_flow("home", "tauR"), 2.17, kTolLongRunFlow);
        c.near("labor_I", o.flows.labor_flow("home", "tauI"), 6.85, kTolLongRunFlow);
        c.near("R->I", o.flows.good_flow("tauR", "tauI"), 0.98, kTolLongRunFlow);
        c.near("R->F", o.flows.good_flow("tauR", "tauF"), 0.98, kTolLongRunFlow);
        c.near("I->F", o.flows.good_flow("tauI", "tauF"), 0.98, kTolLongRunFlow);
    });

    criterion(3, "Short-run propagation on the chain", [](Check& c) {
        Fixture f = build(FixtureId::Fig1Chain);
        auto o = propagate(f.economy, f.state, {{"tauR"}, 0.9});
        c.near("loss", o.loss_fraction(), 0.1, kTolShortRun);
        auto h = hulten_marginal(f.economy, f.state, "tauR", 0.1);
        c.near("ratio_to_long_run", o.loss_fraction() / h.extrapolated_loss, 5.0, kTolShortRun * 50);
    });

    criterion(4, "Fixed point with cycles and oracle equivalence", [](Check& c) {
        Fixture f = build(FixtureId::AppendixBExtended);
        PropagationConfig cfg;
        cfg.delta = 1e-12;
        const ShockSpec s{{"tau2"}, 0.9};
        auto o = propagate(f.economy, f.state, s, cfg);
        const std::vector<std::pair<const char*, double>> expect{
            {"tau3", 7.2}, {"tau7", 4.5}, {"tau5", 4.5}, {"tau6", 9},
            {"tau8", 2.7}, {"tau9", 3.6}, {"tau10", 2.7}};
        for (const auto& [t, y] : expect) c.near(t, o.flows.output(t), y, kTolFixedPoint);
        auto oracle = minimum_disruption_oracle(f.economy, f.state, s);
        double gap = 0.0;
        for (const auto& t : f.economy.technologies())
            gap = std::max(gap, std::abs(o.flows.output(t.id) - oracle.flows.output(t.id)));
        c.near("oracle_gap", gap, 0.0, kTolOracle);
    });

    criterion(5, "Network dependence of the short run", [](Check& c) {
        Fixture a = build(FixtureId::Fig5PanelA);
        Fixture b = build(FixtureId::Fig5PanelB);
        c.near("loss_a", propagate(a.economy, a.state, {{"tau1"}, 0.9}).loss_fraction(), 1.0 / 20.0,
               kTolShortRun);
        c.near("loss_b", propagate(b.economy, b.state, {{"tau1"}, 0.9}).loss_fraction(), 1.0 / 10.0,
               kTolShortRun);
        c.near("long_run_a", hulten_marginal(a.economy, a.state, "tau1", 0.1).extrapolated_loss, 0.01,
               kTolHulten);
        c.near("long_run_b", hulten_marginal(b.economy, b.state, "tau1", 0.1).extrapolated_loss, 0.01,
               kTolHulten);
    });

    criterion(6, "Bound, strict slack under sourcing diversity, and tightness", [](Check& c) {
        Fixture f = build(FixtureId::AppendixBExtended);
        auto one = shock_bound(f.economy, f.state, {{"tau2"}, 0.9});
        c.near("bound", one.bound_fraction, 0.1, kTolBound);
        c.note("actual", one.actual_fraction);
        // Strict slack must exceed the comparison tolerance, not fixed-point residue.
        c.require("actual<bound", one.actual_fraction < one.bound_fraction - kTolBound);
        const ShockSpec both{{"tau1", "tau2"}, 0.9};
        c.require("industry_shock", check_industry_shock_condition(f.economy, f.state, both));
        auto two = shock_bound(f.economy, f.state, both);
        c.near("attained_gap", two.bound_fraction - two.actual_fraction, 0.0, kTolBound);
    });

    criterion(7, "Disruption centrality", [](Check& c) {
        Fixture f = build(FixtureId::AppendixBWithBranch);
        bool unit_prices = true;
        for (const auto& t : f.economy.technologies())
            if (f.economy.is_final_good(t.output) && f.state.output(t.id) > 0.0)
                unit_prices = unit_prices && std::abs(*f.state.price(t.id) - 1.0) <= 1e-12;
        c.require("unit_final_prices", unit_prices);
        c.near("dc_tau2", disruption_centrality(f.economy, f.state, "tau2").dc, 0.575, kTolCentrality);
    });

    criterion(8, "Medium run with flexible prices and rerouting", [](Check& c) {
        Fixture chips = build(FixtureId::ChipsMediumRun);
        const ShockSpec s{{"tau1"}, 0.9};
        c.near("medium", medium_run_optimize(chips.economy, chips.state, s).loss_fraction(), 0.02,
               kTolMediumRun);
        c.near("short", propagate(chips.economy, chips.state, s).loss_fraction(), 0.10, kTolMediumRun);
        Fixture flex = build(FixtureId::FlexibleRerouting);
        const ShockSpec t{{"tau1"}, 0.5};
        c.near("flex_medium", final_output(flex.economy, medium_run_optimize(flex.economy, flex.state, t).flows, "F"),
               3.0, kTolMediumRun);
        c.near("flex_short", final_output(flex.economy, propagate(flex.economy, flex.state, t).flows, "F"), 2.5,
               kTolMediumRun);
    });

    criterion(9, "Loss to price rigidity family (exact arithmetic)", [](Check& c) {
        MediumRunOptions exact;
        exact.exact = true;
        for (int t = 2; t <= 6; ++t) {
            auto g = generate_lpr_family(t);
            const double one = lpr(g.economy, g.state, {{"01"}, 0.5}, exact).lpr;
            const double both = lpr(g.economy, g.state, {{"01", "02"}, 0.5}, exact).lpr;
            const std::string k1 = "lpr_t" + std::to_string(t), k2 = "lpr2_t" + std::to_string(t);
            c.near(k1.c_str(), one, static_cast<double>(t), 0.0);
            c.near(k2.c_str(), both, 1.0, 0.0);
        }
    });

    criterion(10, "Power of one country over another", [](Check& c) {
        Fixture f7 = build(FixtureId::Fig7Power);
        auto p = power(f7.economy, f7.state, "i", "j");
        c.near("fig7_pct", p.power_pct, 7.0, kTolPower);
        c.near("fig7_abs", p.power_abs, 5.0, kTolPower);
        Fixture f9 = build(FixtureId::Fig9FiveCountry);
        c.near("P12", power_pct(f9, "1", "2"), 4.5, kTolPower);
        c.near("P25", power_pct(f9, "2", "5"), 10.0, kTolPower);
        c.near("P23", power_pct(f9, "2", "3"), 2.5, kTolPower);
        c.near("P21", power_pct(f9, "2", "1"), 1.0, kTolPower);
        c.near("P24", power_pct(f9, "2", "4"), 0.0, kTolPower);
    });

    criterion(11, "Disruption possibility frontier", [](Check& c) {
        Fixture f = build(FixtureId::Fig9FiveCountry);
        auto fr = frontier(f.economy, f.state, "1", "2");
        const std::vector<std::pair<double, double>> expect{{0, 0}, {10, 45}, {25, 90}, {35, 100}};
        c.require("breakpoint_count", fr.points.size() == expect.size());
        for (std::size_t k = 0; k < std::min(expect.size(), fr.points.size()); ++k) {
            const std::string a = "own" + std::to_string(k), b = "target" + std::to_string(k);
            c.near(a.c_str(), fr.points[k].first, expect[k].first, kTolFrontier);
            c.near(b.c_str(), fr.points[k].second, expect[k].second, kTolFrontier);
        }
        if (fr.points.size() >= 2) {
            auto p = power(f.economy, f.state, "1", "2");
            const double slope = fr.points[1].second / fr.points[1].first;
            c.near("slope_vs_pct", slope, p.power_pct, kTolPower);
            c.near("slope_vs_abs", slope,
                   p.power_abs * country_gdp(f, "1") / country_gdp(f, "2"), kTolPower);
        }
    });

    criterion(12, "Non-concavity of combined zero-outs", [](Check& c) {
        Fixture f = build(FixtureId::Fig11NonConcave);
        auto first = full_steps(f.economy, f.state, "i", "j");
        c.require("two_marginal_disruptions", first.size() >= 2);
        if (first.size() < 2) return;
        double best_ratio = 0.0;
        for (const auto& s : first) best_ratio = std::max(best_ratio, s.target_loss / s.aggressor_loss);
        // Best two-step combination: zero out one candidate, then another.
        double own = 0.0, hit = 0.0;
        for (const auto& s : first) {
            for (const auto& t : full_steps(f.economy, s.after, "i", "j")) {
                if (s.target_loss + t.target_loss > hit) {
                    hit = s.target_loss + t.target_loss;
                    own = s.aggressor_loss + t.aggressor_loss;
                }
            }
        }
        c.note("combined_own", own);
        c.note("combined_target", hit);
        c.note("marginal_ratio", best_ratio);
        c.require("ratio_above_each_marginal", own > 0.0 && hit / own > best_ratio + kTolProperty);
        c.require("above_marginal_extension", hit > best_ratio * own + kTolProperty);
    });

    criterion(13, "Strategic power", [](Check& c) {
        Fixture f = build(FixtureId::StrategicPower);
        c.near("plain", power(f.economy, f.state, "i", "j").power_abs, 7.0 / 6.0, kTolStrategic);
        c.near("strategic", strategic_power(f.economy, f.state, "i", "j").power_abs, 2.0 / 11.0, kTolStrategic);
    });

    criterion(14, "Fragility Monte Carlo against closed forms", [](Check& c) {
        const double pi = 0.01, lambda = 0.9, base = (1.0 - lambda) * pi;
        struct Config {
            FixtureId id;
            const char* name;
            double short_run, long_run;
        };
        for (const auto& cfg : {Config{FixtureId::Fig12Vertical, "vertical", 4 * base, 2 * base},
                                Config{FixtureId::Fig12Horizontal, "horizontal", 4 * base, 0.8 * base},
                                Config{FixtureId::Fig12Parallel, "parallel", base, 0.8 * base}}) {
            Fixture f = build(cfg.id);
            auto mc = expected_loss_mc(f.economy, f.state, pi, lambda, 200000, 20240601);
            const double zs = (mc.short_run_mean - cfg.short_run) / mc.short_run_se;
            const double zl = (mc.long_run_mean - cfg.long_run) / mc.long_run_se;
            const std::string a = std::string(cfg.name) + "_z_short", b = std::string(cfg.name) + "_z_long";
            c.near(a.c_str(), zs, 0.0, kStandardErrors);
            c.near(b.c_str(), zl, 0.0, kStandardErrors);
        }
    });

    criterion(15, "Property suites", [](Check& c) {
        std::mt19937_64 rng(15);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int monotone = 0, dominance = 0;
        for (int i = 0; i < 100; ++i) {
            Fixture f = testing::random_acyclic_economy(rng);
            const auto& techs = f.economy.technologies();
            ShockSpec s;
            s.lambda = 0.1 + 0.8 * u(rng);
            s.shocked.push_back(techs[static_cast<std::size_t>(u(rng) * static_cast<double>(techs.size()))].id);
            std::vector<double> prev(techs.size(), 1.0);
            bool mono = true;
            PropagationConfig cfg;
            cfg.observer = [&](std::size_t, const std::vector<double>& phi) {
                for (std::size_t k = 0; k < phi.size(); ++k) mono = mono && phi[k] <= prev[k];
                prev = phi;
            };
            auto sr = propagate(f.economy, f.state, s, cfg);
            monotone += mono;
            auto m = medium_run_optimize(f.economy, f.state, s);
            dominance += m.lost_gdp <= sr.lost_gdp_total + kTolProperty;
        }
        c.note("monotone", monotone);
        c.note("dominance", dominance);
        c.require("monotone_all_100", monotone == 100);
        c.require("dominance_all_100", dominance == 100);

        // Pools of active technologies owned by one country, drawn from every
        // power fixture; each pair picks a pool, then two cuts inside it.
        struct Pool {
            std::size_t fixture;
            std::string country;
            std::vector<std::string> techs;
        };
        std::vector<Fixture> fixtures;
        std::vector<Pool> pools;
        for (auto id : {FixtureId::Fig7Power, FixtureId::Fig9FiveCountry, FixtureId::Fig11NonConcave,
                        FixtureId::StrategicPower}) {
            fixtures.push_back(build(id));
            const Fixture& f = fixtures.back();
            for (const auto& country : f.economy.countries()) {
                Pool pool{fixtures.size() - 1, country.id, {}};
                for (const auto& t : f.economy.technologies())
                    if (t.country == country.id && f.state.output(t.id) > 0.0) pool.techs.push_back(t.id);
                if (pool.techs.size() >= 2) pools.push_back(std::move(pool));
            }
        }
        auto pick = [&](std::size_t n) {
            return std::min(n - 1, static_cast<std::size_t>(u(rng) * static_cast<double>(n)));
        };
        int pairs = 0, invariant = 0;
        for (; pairs < 50; ++pairs) {
            const Pool& pool = pools[pick(pools.size())];
            const Fixture& f = fixtures[pool.fixture];
            const std::string& a = pool.techs[pick(pool.techs.size())];
            const std::string& b = pool.techs[pick(pool.techs.size())];
            const double sa = 0.3 * u(rng) * max_partial_scale(f.economy, f.state, pool.country, a);
            const double sb = 0.3 * u(rng) * max_partial_scale(f.economy, f.state, pool.country, b);
            auto ab = compose_disruptions(f.economy, f.state, pool.country, {{a, sa, {}}, {b, sb, {}}});
            auto ba = compose_disruptions(f.economy, f.state, pool.country, {{b, sb, {}}, {a, sa, {}}});
            double gap = 0.0;
            for (const auto& [k, x] : ab.flows.good_flows)
                gap = std::max(gap, std::abs(x - ba.flows.good_flow(k.first, k.second)));
            for (const auto& [k, x] : ab.idle_labor) gap = std::max(gap, std::abs(x - ba.idle_labor.at(k)));
            invariant += gap <= kTolProperty;
        }
        c.note("order_pairs", pairs);
        c.require("order_invariant_50", pairs == 50 && invariant == 50);

        int agree = 0, total = 0;
        for (auto id : {FixtureId::Fig7Power, FixtureId::Fig9FiveCountry, FixtureId::Fig11NonConcave,
                        FixtureId::StrategicPower}) {
            Fixture f = build(id);
            for (const auto& a : f.economy.countries()) {
                for (const auto& b : f.economy.countries()) {
                    if (a.id == b.id) continue;
                    auto cands = power_candidates(f.economy, f.state, a.id, b.id);
                    if (cands.empty()) continue;
                    ++total;
                    std::size_t by_pct = 0, by_abs = 0;
                    for (std::size_t k = 1; k < cands.size(); ++k) {
                        if (cands[k].power_pct > cands[by_pct].power_pct) by_pct = k;
                        if (cands[k].power_abs > cands[by_abs].power_abs) by_abs = k;
                    }
                    agree += std::abs(cands[by_pct].power_pct - cands[by_abs].power_pct) <=
                             kTolProperty * std::max(1.0, cands[by_pct].power_pct);
                }
            }
        }
        c.note("argmax_pairs", total);
        c.require("argmax_agree_all", total > 0 && agree == total);
    });

    std::printf("%d of 15 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
