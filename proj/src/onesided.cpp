#include "matchkit/onesided.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "matchkit/flow.hpp"
#include "matchkit/random.hpp"

namespace matchkit {

namespace {

void require_one_sided(const Instance& inst)
{
    if (!is_house_allocation(inst.problem_class()) && !is_spa(inst.problem_class()))
        throw InapplicableError("algorithm needs a house allocation or student-project instance");
}

void require_houses(const Instance& inst)
{
    if (!is_house_allocation(inst.problem_class()))
        throw InapplicableError("algorithm needs a house allocation instance");
}

}  // namespace

Matching serial_dictatorship(const Instance& inst, const std::vector<int>& order)
{
    require_houses(inst);
    Matching m(inst);
    std::vector<int> load(inst.second().size(), 0);
    for (int a : order) {
        for (const auto& group : inst.first().prefs[a].groups()) {
            int pick = -1;
            for (int h : group)
                if (load[h] < inst.second().capacity[h] && (pick == -1 || h < pick))
                    pick = h;
            if (pick != -1) {
                m.add(a, pick);
                ++load[pick];
                break;
            }
        }
    }
    return m;
}

Matching random_serial_dictatorship(const Instance& inst, std::uint64_t seed)
{
    std::vector<int> order(inst.first().size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    return serial_dictatorship(inst, order);
}

Matching profile_optimal(const Instance& inst, ProfileObjective objective)
{
    require_one_sided(inst);
    const int n1 = inst.first().size(), n2 = inst.second().size();
    const bool spa = is_spa(inst.problem_class());
    const int n3 = spa ? inst.third().size() : 0;
    const int R = std::max(1, inst.max_rank(Side::first));

    int dim = 0;
    switch (objective) {
    case ProfileObjective::min_cost: dim = 2; break;
    case ProfileObjective::rank_maximal: dim = R; break;
    case ProfileObjective::greedy:
    case ProfileObjective::generous: dim = 1 + R; break;
    case ProfileObjective::greedy_generous: dim = 1 + R; break;
    }
    auto cost = [&](int r) {
        std::vector<long> c(dim, 0);
        switch (objective) {
        case ProfileObjective::min_cost:
            c = {-1, r};
            break;
        case ProfileObjective::rank_maximal:
            c[r - 1] = -1;
            break;
        case ProfileObjective::greedy:
            c[0] = -1;
            c[r] = -1;
            break;
        case ProfileObjective::generous:
            c[0] = -1;
            c[1 + (R - r)] = 1;
            break;
        case ProfileObjective::greedy_generous:
            // size, first choices, then worst ranks upwards to rank 2
            c[0] = -1;
            if (r == 1)
                c[1] = -1;
            else
                c[2 + (R - r)] = 1;
            break;
        }
        return c;
    };

    const int source = 0, first0 = 1, second0 = 1 + n1, third0 = 1 + n1 + n2, sink = 1 + n1 + n2 + n3;
    VectorCostFlow flow(sink + 1, dim);
    const std::vector<long> zero(dim, 0);
    for (int a = 0; a < n1; ++a)
        flow.add_arc(source, first0 + a, 1, zero);
    std::vector<std::pair<std::pair<int, int>, int>> arcs;
    for (int a = 0; a < n1; ++a) {
        const auto& groups = inst.first().prefs[a].groups();
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (int b : groups[g])
                if (inst.acceptable(a, b))
                    arcs.push_back({{a, b}, flow.add_arc(first0 + a, second0 + b, 1, cost(static_cast<int>(g) + 1))});
    }
    for (int b = 0; b < n2; ++b) {
        const int to = spa ? third0 + inst.owner(b) : sink;
        flow.add_arc(second0 + b, to, inst.second().capacity[b], zero);
    }
    for (int l = 0; l < n3; ++l)
        flow.add_arc(third0 + l, sink, inst.third().capacity[l], zero);
    flow.run(source, sink);

    Matching m(inst);
    for (const auto& [pair, arc] : arcs)
        if (flow.flow(arc) > 0)
            m.add(pair.first, pair.second);
    return m;
}

Matching max_pareto_optimal(const Instance& inst)
{
    require_houses(inst);
    const int n1 = inst.first().size(), n2 = inst.second().size();
    std::vector<int> order(n1);
    std::iota(order.begin(), order.end(), 0);
    const Matching sd = serial_dictatorship(inst, order);

    BipartiteGraph g;
    g.left = n1;
    g.capacity = inst.second().capacity;
    for (int a = 0; a < n1; ++a)
        g.adj.push_back(inst.first().prefs[a].flattened());
    std::vector<int> initial(n1);
    for (int a = 0; a < n1; ++a)
        initial[a] = sd.partner(a);
    std::vector<int> cur = max_bipartite_matching(g, initial);
    std::vector<int> load(n2, 0);
    for (int h : cur)
        if (h != -1)
            ++load[h];

    struct Arc {
        int applicant, from, to;
        bool strict;
    };
    // Reassign matched applicants along cycles or paths into spare capacity
    // until no applicant can improve without harming another.
    while (true) {
        std::vector<std::vector<Arc>> out(n2);
        std::vector<Arc> strict_arcs;
        for (int a = 0; a < n1; ++a) {
            if (cur[a] == -1)
                continue;
            const int r = inst.rank(Side::first, a, cur[a]);
            for (int h : inst.first().prefs[a].flattened()) {
                const int rh = inst.rank(Side::first, a, h);
                if (h == cur[a] || rh > r)
                    continue;
                Arc arc{a, cur[a], h, rh < r};
                out[cur[a]].push_back(arc);
                if (arc.strict)
                    strict_arcs.push_back(arc);
            }
        }
        bool improved = false;
        for (const Arc& start : strict_arcs) {
            std::vector<int> via(n2, -2);
            std::vector<Arc> used;
            std::deque<int> queue{start.to};
            via[start.to] = -1;
            int end = -1;
            while (!queue.empty() && end == -1) {
                const int v = queue.front();
                queue.pop_front();
                if (v == start.from || (load[v] < inst.second().capacity[v])) {
                    end = v;
                    break;
                }
                for (const Arc& arc : out[v]) {
                    if (via[arc.to] != -2)
                        continue;
                    via[arc.to] = static_cast<int>(used.size());
                    used.push_back(arc);
                    queue.push_back(arc.to);
                }
            }
            if (end == -1)
                continue;
            std::vector<Arc> moves{start};
            for (int v = end; via[v] >= 0; v = used[via[v]].from)
                moves.push_back(used[via[v]]);
            for (const Arc& mv : moves)
                cur[mv.applicant] = mv.to;
            if (end != start.from) {
                --load[start.from];
                ++load[end];
            }
            improved = true;
            break;
        }
        if (!improved)
            break;
    }
    Matching m(inst);
    for (int a = 0; a < n1; ++a)
        if (cur[a] != -1)
            m.add(a, cur[a]);
    return m;
}

std::optional<Matching> find_popular(const Instance& inst)
{
    require_houses(inst);
    const int n1 = inst.first().size(), n2 = inst.second().size();
    // Unit-capacity clones of every house, then one last resort per applicant.
    std::vector<int> clone_house, first_clone(n2);
    for (int h = 0; h < n2; ++h) {
        first_clone[h] = static_cast<int>(clone_house.size());
        for (int k = 0; k < inst.second().capacity[h]; ++k)
            clone_house.push_back(h);
    }
    const int clones = static_cast<int>(clone_house.size());
    const int posts = clones + n1;
    auto last_resort = [&](int a) { return clones + a; };

    std::vector<std::vector<std::vector<int>>> groups(n1);
    for (int a = 0; a < n1; ++a) {
        for (const auto& g : inst.first().prefs[a].groups()) {
            std::vector<int> expanded;
            for (int h : g)
                for (int k = 0; k < inst.second().capacity[h]; ++k)
                    expanded.push_back(first_clone[h] + k);
            std::sort(expanded.begin(), expanded.end());
            groups[a].push_back(expanded);
        }
        groups[a].push_back({last_resort(a)});
    }

    BipartiteGraph g1;
    g1.left = n1;
    g1.capacity.assign(posts, 1);
    for (int a = 0; a < n1; ++a)
        g1.adj.push_back(groups[a][0]);
    std::vector<int> m1 = max_bipartite_matching(g1);

    // Even / odd labels by alternating search from exposed vertices of G1.
    enum Label { unreachable, even, odd };
    std::vector<Label> la(n1, unreachable), lh(posts, unreachable);
    std::vector<int> holder(posts, -1);
    for (int a = 0; a < n1; ++a)
        if (m1[a] != -1)
            holder[m1[a]] = a;
    std::vector<std::vector<int>> house_adj(posts);
    for (int a = 0; a < n1; ++a)
        for (int h : g1.adj[a])
            house_adj[h].push_back(a);
    std::deque<std::pair<bool, int>> queue;  // (is_applicant, index)
    for (int a = 0; a < n1; ++a)
        if (m1[a] == -1) {
            la[a] = even;
            queue.push_back({true, a});
        }
    for (int h = 0; h < posts; ++h)
        if (holder[h] == -1) {
            lh[h] = even;
            queue.push_back({false, h});
        }
    while (!queue.empty()) {
        auto [is_applicant, v] = queue.front();
        queue.pop_front();
        if (is_applicant) {
            if (la[v] == even) {
                for (int h : g1.adj[v])
                    if (h != m1[v] && lh[h] == unreachable) {
                        lh[h] = odd;
                        queue.push_back({false, h});
                    }
            } else if (m1[v] != -1 && lh[m1[v]] == unreachable) {
                lh[m1[v]] = even;
                queue.push_back({false, m1[v]});
            }
        } else {
            if (lh[v] == even) {
                for (int a : house_adj[v])
                    if (a != holder[v] && la[a] == unreachable) {
                        la[a] = odd;
                        queue.push_back({true, a});
                    }
            } else if (holder[v] != -1 && la[holder[v]] == unreachable) {
                la[holder[v]] = even;
                queue.push_back({true, holder[v]});
            }
        }
    }

    BipartiteGraph g2;
    g2.left = n1;
    g2.capacity.assign(posts, 1);
    for (int a = 0; a < n1; ++a) {
        std::vector<int> adj;
        for (int h : groups[a][0]) {
            const bool drop = (la[a] == odd && lh[h] != even) || (lh[h] == odd && la[a] != even);
            if (!drop)
                adj.push_back(h);
        }
        if (la[a] == even) {
            for (const auto& g : groups[a]) {
                std::vector<int> evens;
                for (int h : g)
                    if (lh[h] == even)
                        evens.push_back(h);
                if (!evens.empty()) {
                    for (int h : evens)
                        if (std::find(adj.begin(), adj.end(), h) == adj.end())
                            adj.push_back(h);
                    break;
                }
            }
        }
        g2.adj.push_back(adj);
    }
    std::vector<int> m = max_bipartite_matching(g2, m1);
    if (std::find(m.begin(), m.end(), -1) != m.end())
        return std::nullopt;
    Matching result(inst);
    for (int a = 0; a < n1; ++a)
        if (m[a] < clones)
            result.add(a, clone_house[m[a]]);
    return result;
}

// ---------------------------------------------------------------------------

std::optional<PopularStructure> PopularStructure::build(const Instance& inst)
{
    require_houses(inst);
    const int n1 = inst.first().size(), n2 = inst.second().size();
    for (const auto& l : inst.first().prefs)
        if (l.has_ties())
            throw InapplicableError("switching structures need strict preference lists");
    auto found = find_popular(inst);
    if (!found)
        return std::nullopt;

    PopularStructure ps;
    ps.inst_ = inst;
    ps.base_ = *found;
    auto last_resort = [](int a) { return -1 - a; };

    std::vector<int> f(n1), s(n1), fcount(n2, 0);
    for (int a = 0; a < n1; ++a) {
        const auto list = inst.first().prefs[a].flattened();
        f[a] = list.empty() ? last_resort(a) : list[0];
        if (f[a] >= 0)
            ++fcount[f[a]];
    }
    for (int a = 0; a < n1; ++a) {
        s[a] = last_resort(a);
        for (int h : inst.first().prefs[a].flattened())
            if (h != f[a] && fcount[h] < inst.second().capacity[h]) {
                s[a] = h;
                break;
            }
    }
    ps.post_.resize(n1);
    for (int a = 0; a < n1; ++a) {
        const int p = ps.base_.partner(a);
        ps.post_[a] = p == -1 ? last_resort(a) : p;
    }
    auto other = [&](int a) { return ps.post_[a] == f[a] ? s[a] : f[a]; };

    // Vertices: houses 0..n2-1, then last resorts n2 + a.
    auto vertex = [&](int post) { return post >= 0 ? post : n2 + (-1 - post); };
    auto post_of = [&](int v) { return v < n2 ? v : -1 - (v - n2); };
    const int nv = n2 + n1;
    std::vector<int> usage(nv, 0);
    for (int a = 0; a < n1; ++a)
        ++usage[vertex(ps.post_[a])];

    auto& g = ps.graph_;
    g.name = "switching graph";
    g.directed = true;
    for (int h = 0; h < n2; ++h)
        g.add_node("h" + std::to_string(h + 1), "h" + std::to_string(h + 1),
                   {{"capacity", std::to_string(inst.second().capacity[h])}, {"usage", std::to_string(usage[h])}});
    for (int a = 0; a < n1; ++a)
        g.add_node("l" + std::to_string(a + 1), "last resort of a" + std::to_string(a + 1),
                   {{"capacity", "1"}, {"usage", std::to_string(usage[n2 + a])}});
    for (int a = 0; a < n1; ++a) {
        auto name = [&](int post) {
            return post >= 0 ? "h" + std::to_string(post + 1) : "l" + std::to_string(-post);
        };
        g.add_edge(name(ps.post_[a]), name(other(a)), "a" + std::to_string(a + 1));
    }

    bool unit = true;
    for (int c : inst.second().capacity)
        unit = unit && c == 1;
    if (!unit)
        return ps;  // components are only defined for unit capacities

    std::vector<int> occupant(nv, -1), succ(nv, -1);
    for (int a = 0; a < n1; ++a) {
        occupant[vertex(ps.post_[a])] = a;
        succ[vertex(ps.post_[a])] = vertex(other(a));
    }
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int v = 0; v < nv; ++v)
        if (succ[v] != -1)
            parent[find(v)] = find(succ[v]);
    std::vector<std::vector<int>> members(nv);
    for (int v = 0; v < nv; ++v)
        members[find(v)].push_back(v);

    auto walk = [&](int from, int stop) {
        Option o;
        for (int v = from; v != stop && occupant[v] != -1; v = succ[v]) {
            o.moves.push_back({occupant[v], post_of(succ[v])});
            if (succ[v] == from)
                break;
        }
        return o;
    };
    for (int root = 0; root < nv; ++root) {
        const auto& vs = members[root];
        if (vs.size() < 2)
            continue;
        Component c;
        c.options.push_back({});
        int sink = -1;
        for (int v : vs)
            if (occupant[v] == -1)
                sink = v;
        if (sink == -1) {
            // Find the unique cycle by following successors.
            std::vector<char> seen(nv, 0);
            int v = vs.front();
            while (!seen[v]) {
                seen[v] = 1;
                v = succ[v];
            }
            c.options.push_back(walk(v, -1));
        } else {
            for (int v : vs) {
                const int a = occupant[v];
                if (a != -1 && ps.post_[a] == s[a])
                    c.options.push_back(walk(v, sink));
            }
        }
        if (c.options.size() > 1)
            ps.components_.push_back(std::move(c));
    }
    return ps;
}

std::int64_t PopularStructure::count() const
{
    std::int64_t total = 1;
    for (const auto& c : components_) {
        const auto k = static_cast<std::int64_t>(c.options.size());
        if (total > std::numeric_limits<std::int64_t>::max() / k)
            return std::numeric_limits<std::int64_t>::max();
        total *= k;
    }
    return total;
}

Matching PopularStructure::apply(const std::vector<int>& choice) const
{
    std::vector<int> post = post_;
    for (std::size_t i = 0; i < components_.size(); ++i)
        for (auto [a, p] : components_[i].options[choice[i]].moves)
            post[a] = p;
    Matching m(inst_);
    for (std::size_t a = 0; a < post.size(); ++a)
        if (post[a] >= 0)
            m.add(static_cast<int>(a), post[a]);
    return m;
}

std::vector<std::pair<int, int>> PopularStructure::popular_pairs() const
{
    std::vector<std::pair<int, int>> out = base_.pairs();
    for (const auto& c : components_)
        for (const auto& o : c.options)
            for (auto [a, p] : o.moves)
                if (p >= 0)
                    out.emplace_back(a, p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Matching> PopularStructure::enumerate(std::size_t cap, bool* truncated) const
{
    std::vector<Matching> out;
    std::vector<int> choice(components_.size(), 0);
    if (truncated)
        *truncated = false;
    while (true) {
        if (out.size() == cap) {
            if (truncated)
                *truncated = true;
            break;
        }
        out.push_back(apply(choice));
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
            if (++choice[i] < static_cast<int>(components_[i].options.size()))
                break;
            choice[i] = 0;
        }
        if (i == choice.size())
            break;
    }
    return out;
}

Matching PopularStructure::uniform(std::uint64_t seed) const
{
    Rng rng(seed);
    std::vector<int> choice;
    for (const auto& c : components_)
        choice.push_back(static_cast<int>(rng.range(0, static_cast<std::int64_t>(c.options.size()) - 1)));
    return apply(choice);
}

Matching PopularStructure::best(int objective) const
{
    const int R = std::max(1, inst_.max_rank(Side::first));
    std::vector<int> choice;
    for (const auto& c : components_) {
        // Applicants touched by any option of this component.
        std::vector<int> touched;
        for (const auto& o : c.options)
            for (auto [a, p] : o.moves)
                touched.push_back(a);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

        std::vector<long> best_key;
        int best_index = 0;
        for (std::size_t i = 0; i < c.options.size(); ++i) {
            std::vector<int> post(touched.size());
            for (std::size_t t = 0; t < touched.size(); ++t)
                post[t] = post_[touched[t]];
            for (auto [a, p] : c.options[i].moves)
                post[std::lower_bound(touched.begin(), touched.end(), a) - touched.begin()] = p;
            std::vector<long> profile(R, 0);
            long size = 0, cost = 0;
            for (std::size_t t = 0; t < touched.size(); ++t) {
                if (post[t] < 0)
                    continue;
                const int r = inst_.rank(Side::first, touched[t], post[t]);
                ++profile[r - 1];
                ++size;
                cost += r;
            }
            std::vector<long> key;
            if (objective == 0) {
                key = profile;
            } else if (objective == 1) {
                key = {size};
                for (int r = R; r >= 1; --r)
                    key.push_back(-profile[r - 1]);
            } else {
                key = {size, -cost};
            }
            if (i == 0 || key > best_key) {
                best_key = key;
                best_index = static_cast<int>(i);
            }
        }
        choice.push_back(best_index);
    }
    return apply(choice);
}

Matching PopularStructure::rank_maximal() const { return best(0); }
Matching PopularStructure::generous_max_cardinality() const { return best(1); }
Matching PopularStructure::min_cost_max_cardinality() const { return best(2); }

}  // namespace matchkit
