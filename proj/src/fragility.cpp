#include "prodnet/fragility.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>
#include <vector>

#include "prodnet/network.hpp"
#include "prodnet/propagation.hpp"

namespace prodnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t item) {
    std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ item);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Compensated (Neumaier) running sum.
struct Sum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

struct Moments {
    Sum sr, sr2, lr, lr2;
};

constexpr std::uint64_t kChunk = 4096;

} // namespace

unsigned worker_threads() {
    unsigned n = 0;
    if (const char* env = std::getenv("PRODNET_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

ComplexityStats complexity_stats(const Economy& economy, const FlowState& state) {
    Network net(economy, state);
    const auto& techs = economy.technologies();
    ComplexityStats st;
    std::map<std::string, std::vector<std::size_t>> finals;
    std::vector<std::size_t> intermediates;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!net.active(t)) continue;
        if (economy.is_final_good(techs[t].output))
            finals[techs[t].output].push_back(t);
        else
            intermediates.push_back(t);
    }
    st.F_count = finals.size();
    st.M_count = intermediates.size();

    double upstream_total = 0.0;
    double final_value = 0.0;
    for (const auto& [good, producers] : finals) {
        auto up = net.upstream(producers);
        for (std::size_t t = 0; t < techs.size(); ++t)
            if (up[t] && net.active(t) && !economy.is_final_good(techs[t].output)) upstream_total += 1.0;
        for (std::size_t t : producers) final_value += *state.price(techs[t].id) * state.output(techs[t].id);
    }
    double downstream_total = 0.0;
    double intermediate_value = 0.0;
    for (std::size_t t : intermediates) {
        auto down = net.downstream({t});
        std::set<std::string> goods;
        for (std::size_t u = 0; u < techs.size(); ++u)
            if (down[u] && net.active(u) && economy.is_final_good(techs[u].output)) goods.insert(techs[u].output);
        downstream_total += static_cast<double>(goods.size());
        intermediate_value += *state.price(techs[t].id) * state.output(techs[t].id);
    }
    if (st.F_count > 0) st.S = upstream_total / static_cast<double>(st.F_count);
    if (st.M_count > 0) st.m = downstream_total / static_cast<double>(st.M_count);
    if (st.M_count > 0 && st.F_count > 0 && final_value > 0.0)
        st.q = (intermediate_value / static_cast<double>(st.M_count)) /
               (final_value / static_cast<double>(st.F_count));
    return st;
}

ExpectedLoss expected_loss_formulas(const ComplexityStats& stats, double pi, double lambda) {
    ExpectedLoss out;
    out.short_run = (1.0 - lambda) * pi * stats.S;
    out.long_run = stats.m > 0.0 ? out.short_run * stats.q / stats.m : 0.0;
    return out;
}

MonteCarloResult expected_loss_mc(const Economy& economy, const FlowState& state, double pi,
                                  double lambda, std::uint64_t trials, std::uint64_t seed) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw InvariantError("pi must lie in [0, 1]");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvariantError("lambda must lie in [0, 1]");
    if (trials < 2) throw InvariantError("at least two trials are required");
    const Propagator prop(economy, state);
    const auto& techs = economy.technologies();
    const double total = prop.base_gdp();

    std::vector<std::size_t> items;
    std::vector<double> hulten;
    for (std::size_t t = 0; t < techs.size(); ++t) {
        if (!prop.network().active(t) || economy.is_final_good(techs[t].output)) continue;
        items.push_back(t);
        hulten.push_back((1.0 - lambda) * *state.price(techs[t].id) *
                         state.output(techs[t].id) / total);
    }

    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<Moments> partial(chunks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        std::map<std::vector<bool>, double> memo;
        std::vector<bool> mask(items.size());
        while (true) {
            const std::uint64_t chunk = next.fetch_add(1);
            if (chunk >= chunks) break;
            Moments& mom = partial[chunk];
            const std::uint64_t end = std::min(trials, (chunk + 1) * kChunk);
            for (std::uint64_t k = chunk * kChunk; k < end; ++k) {
                double lr = 0.0;
                bool any = false;
                for (std::size_t j = 0; j < items.size(); ++j) {
                    mask[j] = uniform(seed, k, j) < pi;
                    if (mask[j]) {
                        lr += hulten[j];
                        any = true;
                    }
                }
                double sr = 0.0;
                if (any) {
                    auto it = memo.find(mask);
                    if (it == memo.end()) {
                        ShockSpec shock;
                        shock.lambda = lambda;
                        for (std::size_t j = 0; j < items.size(); ++j)
                            if (mask[j]) shock.shocked.push_back(techs[items[j]].id);
                        it = memo.emplace(mask, prop.run(shock).loss_fraction()).first;
                    }
                    sr = it->second;
                }
                mom.sr.add(sr);
                mom.sr2.add(sr * sr);
                mom.lr.add(lr);
                mom.lr2.add(lr * lr);
            }
        }
    };

    const unsigned n_threads = static_cast<unsigned>(
        std::min<std::uint64_t>(worker_threads(), chunks));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    Sum sr, sr2, lr, lr2;
    for (const auto& m : partial) {
        sr.add(m.sr.value());
        sr2.add(m.sr2.value());
        lr.add(m.lr.value());
        lr2.add(m.lr2.value());
    }
    const double n = static_cast<double>(trials);
    MonteCarloResult r;
    r.trials = trials;
    r.short_run_mean = sr.value() / n;
    r.long_run_mean = lr.value() / n;
    auto se = [n](double sum, double sum_sq) {
        double mean = sum / n;
        double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
        return std::sqrt(var / n);
    };
    r.short_run_se = se(sr.value(), sr2.value());
    r.long_run_se = se(lr.value(), lr2.value());
    return r;
}

namespace {

struct FinalProducer {
    std::string tech;
    std::set<std::string> upstream;
    double value = 0.0;
    double output = 0.0;
};

FinalProducer final_producer(const Economy& economy, const FlowState& state,
                             const std::string& final_good, const char* which) {
    if (!economy.has_good(final_good) || !economy.is_final_good(final_good))
        throw PreconditionError(std::string(which) + ": '" + final_good + "' is not a final good");
    Network net(economy, state);
    const auto& techs = economy.technologies();
    std::vector<std::size_t> producers;
    for (std::size_t t : economy.producers(final_good))
        if (net.active(t)) producers.push_back(t);
    if (producers.size() != 1)
        throw PreconditionError(std::string(which) + ": final good '" + final_good +
                                "' must have exactly one active producer");
    FinalProducer fp;
    fp.tech = techs[producers[0]].id;
    fp.output = state.output(fp.tech);
    fp.value = *state.price(fp.tech) * fp.output;
    auto up = net.upstream(producers);
    for (std::size_t t = 0; t < techs.size(); ++t)
        if (up[t] && net.active(t) && !economy.is_final_good(techs[t].output)) fp.upstream.insert(techs[t].id);
    return fp;
}

} // namespace

ConsolidationReport consolidation_compare(const Economy& economy1, const FlowState& state1,
                                          const Economy& economy2, const FlowState& state2,
                                          const std::string& final_good, double pi,
                                          double lambda) {
    auto a = final_producer(economy1, state1, final_good, "economy 1");
    auto b = final_producer(economy2, state2, final_good, "economy 2");
    bool subset = std::includes(a.upstream.begin(), a.upstream.end(), b.upstream.begin(),
                                b.upstream.end());
    if (!subset || b.upstream.size() >= a.upstream.size())
        throw PreconditionError("upstream technologies of economy 2 are not a strict subset of "
                                "those of economy 1");
    if (!(b.output > a.output))
        throw PreconditionError("economy 2 does not produce more of '" + final_good + "'");
    ConsolidationReport r;
    r.upstream1 = a.upstream.size();
    r.upstream2 = b.upstream.size();
    r.prob1 = 1.0 - std::pow(1.0 - pi, static_cast<double>(r.upstream1));
    r.prob2 = 1.0 - std::pow(1.0 - pi, static_cast<double>(r.upstream2));
    r.size1 = (1.0 - lambda) * a.value;
    r.size2 = (1.0 - lambda) * b.value;
    return r;
}

} // namespace prodnet
