#include "prodnet/network.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

namespace prodnet {

Network::Network(const Economy& economy, const FlowState& state) {
    const auto& techs = economy.technologies();
    const std::size_t n = techs.size();
    active_.assign(n, false);
    out_.assign(n, {});
    in_.assign(n, {});
    for (std::size_t t = 0; t < n; ++t) active_[t] = state.output(techs[t].id) > 0.0;
    for (const auto& [key, x] : state.good_flows) {
        if (!(x > 0.0)) continue;
        Edge e;
        e.from = economy.tech_index(key.first);
        e.to = economy.tech_index(key.second);
        e.amount = x;
        e.theta = economy.good_theta(key.first, key.second);
        out_[e.from].push_back(edges_.size());
        in_[e.to].push_back(edges_.size());
        edges_.push_back(e);
    }
}

std::vector<bool> Network::downstream(const std::vector<std::size_t>& seeds) const {
    std::vector<bool> seen(size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t s : seeds) {
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : out_[u]) {
            std::size_t v = edges_[e].to;
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    return seen;
}

std::vector<bool> Network::upstream(const std::vector<std::size_t>& seeds) const {
    std::vector<bool> seen(size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t s : seeds) {
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : in_[u]) {
            std::size_t v = edges_[e].from;
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    return seen;
}

std::optional<std::vector<std::size_t>> Network::topo_order(const std::vector<bool>& subset,
                                                            TieBreak tie) const {
    auto in_set = [&](std::size_t t) { return active_[t] && (subset.empty() || subset[t]); };
    std::vector<std::size_t> indegree(size(), 0);
    std::size_t members = 0;
    for (std::size_t t = 0; t < size(); ++t) {
        if (!in_set(t)) continue;
        ++members;
        for (std::size_t e : in_[t])
            if (in_set(edges_[e].from)) ++indegree[t];
    }
    std::function<bool(std::size_t, std::size_t)> cmp;
    if (tie == TieBreak::Ascending)
        cmp = std::greater<std::size_t>();
    else
        cmp = std::less<std::size_t>();
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
    for (std::size_t t = 0; t < size(); ++t)
        if (in_set(t) && indegree[t] == 0) ready.push(t);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        std::size_t u = ready.top();
        ready.pop();
        order.push_back(u);
        for (std::size_t e : out_[u]) {
            std::size_t v = edges_[e].to;
            if (in_set(v) && --indegree[v] == 0) ready.push(v);
        }
    }
    if (order.size() != members) return std::nullopt;
    return order;
}

std::vector<std::size_t> Network::find_cycle(const std::vector<bool>& subset) const {
    auto in_set = [&](std::size_t t) { return active_[t] && (subset.empty() || subset[t]); };
    enum : int { White, Grey, Black };
    std::vector<int> colour(size(), White);
    std::vector<std::size_t> parent(size(), size());
    for (std::size_t root = 0; root < size(); ++root) {
        if (!in_set(root) || colour[root] != White) continue;
        // Iterative DFS: stack of (node, next out-edge position).
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = Grey;
        while (!stack.empty()) {
            auto& [u, pos] = stack.back();
            if (pos == out_[u].size()) {
                colour[u] = Black;
                stack.pop_back();
                continue;
            }
            std::size_t v = edges_[out_[u][pos++]].to;
            if (!in_set(v)) continue;
            if (colour[v] == Grey) {
                std::vector<std::size_t> cycle{v};
                for (std::size_t w = u; w != v; w = parent[w]) cycle.push_back(w);
                std::reverse(cycle.begin() + 1, cycle.end());
                cycle.push_back(v);
                return cycle;
            }
            if (colour[v] == White) {
                colour[v] = Grey;
                parent[v] = u;
                stack.push_back({v, 0});
            }
        }
    }
    return {};
}

std::string render_path(const Economy& economy, const std::vector<std::size_t>& nodes) {
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += " -> ";
        out += economy.technologies()[nodes[i]].id;
    }
    return out;
}

} // namespace prodnet
