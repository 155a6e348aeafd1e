#include "matchkit/flow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>

namespace matchkit {

VectorCostFlow::VectorCostFlow(int nodes, int dim) : dim_(dim), out_(nodes) {}

int VectorCostFlow::add_arc(int from, int to, int capacity, std::vector<long> cost)
{
    if (static_cast<int>(cost.size()) != dim_)
        throw std::invalid_argument("cost vector has the wrong dimension");
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, id + 1});
    arcs_.push_back({from, 0, id});
    out_[from].push_back(id);
    out_[to].push_back(id + 1);
    costs_.insert(costs_.end(), cost.begin(), cost.end());
    for (long& c : cost)
        c = -c;
    costs_.insert(costs_.end(), cost.begin(), cost.end());
    original_cap_.push_back(capacity);
    original_cap_.push_back(0);
    return id;
}

int VectorCostFlow::flow(int arc) const { return original_cap_[arc] - arcs_[arc].cap; }

int VectorCostFlow::run(int s, int t)
{
    const int n = static_cast<int>(out_.size());
    std::vector<long> dist(static_cast<std::size_t>(n) * dim_);
    std::vector<char> reached(n), queued(n);
    std::vector<int> via(n);
    std::vector<long> candidate(dim_);
    int total = 0;

    auto less = [&](const long* a, const long* b) {
        return std::lexicographical_compare(a, a + dim_, b, b + dim_);
    };

    while (true) {
        std::fill(reached.begin(), reached.end(), 0);
        std::fill(dist.begin() + static_cast<long>(s) * dim_, dist.begin() + static_cast<long>(s + 1) * dim_, 0);
        reached[s] = 1;
        std::deque<int> queue{s};
        queued.assign(n, 0);
        queued[s] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            queued[u] = 0;
            const long* du = &dist[static_cast<std::size_t>(u) * dim_];
            for (int id : out_[u]) {
                const Arc& arc = arcs_[id];
                if (arc.cap <= 0)
                    continue;
                const long* c = cost_of(id);
                for (int k = 0; k < dim_; ++k)
                    candidate[k] = du[k] + c[k];
                long* dv = &dist[static_cast<std::size_t>(arc.to) * dim_];
                if (!reached[arc.to] || less(candidate.data(), dv)) {
                    std::copy(candidate.begin(), candidate.end(), dv);
                    reached[arc.to] = 1;
                    via[arc.to] = id;
                    if (!queued[arc.to]) {
                        queued[arc.to] = 1;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        if (!reached[t])
            break;
        const long* dt = &dist[static_cast<std::size_t>(t) * dim_];
        const std::vector<long> zero(dim_, 0);
        if (!less(dt, zero.data()))
            break;
        int push = 1 << 30;
        for (int v = t; v != s; v = arcs_[arcs_[via[v]].rev].to)
            push = std::min(push, arcs_[via[v]].cap);
        for (int v = t; v != s; v = arcs_[arcs_[via[v]].rev].to) {
            arcs_[via[v]].cap -= push;
            arcs_[arcs_[via[v]].rev].cap += push;
        }
        total += push;
    }
    return total;
}

std::vector<int> max_bipartite_matching(const BipartiteGraph& g, std::vector<int> initial)
{
    const int right = static_cast<int>(g.capacity.size());
    std::vector<int> match = initial.empty() ? std::vector<int>(g.left, -1) : std::move(initial);
    std::vector<std::vector<int>> holders(right);
    for (int u = 0; u < g.left; ++u)
        if (match[u] != -1)
            holders[match[u]].push_back(u);
    std::vector<int> seen(right, -1);
    int stamp = 0;

    std::function<bool(int)> augment = [&](int u) {
        for (int v : g.adj[u]) {
            if (seen[v] == stamp)
                continue;
            seen[v] = stamp;
            if (static_cast<int>(holders[v].size()) < g.capacity[v]) {
                holders[v].push_back(u);
                match[u] = v;
                return true;
            }
            for (int& w : holders[v]) {
                if (augment(w)) {
                    w = u;
                    match[u] = v;
                    return true;
                }
            }
        }
        return false;
    };

    for (int u = 0; u < g.left; ++u) {
        if (match[u] != -1)
            continue;
        ++stamp;
        augment(u);
    }
    return match;
}

}  // namespace matchkit

namespace matchkit {

namespace {

class Dinic {
public:
    explicit Dinic(int n) : out_(n), level_(n), it_(n) {}

    void add(int u, int v, long cap)
    {
        out_[u].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({v, cap});
        out_[v].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({u, 0});
    }

    long run(int s, int t)
    {
        long total = 0;
        while (bfs(s, t)) {
            std::fill(it_.begin(), it_.end(), 0);
            while (long f = dfs(s, t, std::numeric_limits<long>::max()))
                total += f;
        }
        return total;
    }

    /// Nodes reachable from s in the residual graph.
    std::vector<bool> source_side(int s) const
    {
        std::vector<bool> seen(out_.size(), false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int id : out_[u])
                if (arcs_[id].cap > 0 && !seen[arcs_[id].to]) {
                    seen[arcs_[id].to] = true;
                    stack.push_back(arcs_[id].to);
                }
        }
        return seen;
    }

private:
    struct Arc {
        int to;
        long cap;
    };

    bool bfs(int s, int t)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::deque<int> q{s};
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int id : out_[u])
                if (arcs_[id].cap > 0 && level_[arcs_[id].to] < 0) {
                    level_[arcs_[id].to] = level_[u] + 1;
                    q.push_back(arcs_[id].to);
                }
        }
        return level_[t] >= 0;
    }

    long dfs(int u, int t, long pushed)
    {
        if (u == t)
            return pushed;
        for (int& i = it_[u]; i < static_cast<int>(out_[u].size()); ++i) {
            const int id = out_[u][i];
            Arc& a = arcs_[id];
            if (a.cap <= 0 || level_[a.to] != level_[u] + 1)
                continue;
            if (long f = dfs(a.to, t, std::min(pushed, a.cap))) {
                a.cap -= f;
                arcs_[id ^ 1].cap += f;
                return f;
            }
        }
        return 0;
    }

    std::vector<std::vector<int>> out_;
    std::vector<Arc> arcs_;
    std::vector<int> level_, it_;
};

}  // namespace

std::vector<bool> max_weight_closure(const std::vector<long>& weight, const std::vector<std::pair<int, int>>& implies)
{
    const int n = static_cast<int>(weight.size());
    const int s = n, t = n + 1;
    Dinic d(n + 2);
    long infinity = 1;
    for (long w : weight)
        infinity += w > 0 ? w : -w;
    for (int v = 0; v < n; ++v) {
        if (weight[v] > 0)
            d.add(s, v, weight[v]);
        else if (weight[v] < 0)
            d.add(v, t, -weight[v]);
    }
    for (auto [a, b] : implies)
        d.add(a, b, infinity);
    d.run(s, t);
    auto side = d.source_side(s);
    side.resize(n);
    return side;
}

}  // namespace matchkit
