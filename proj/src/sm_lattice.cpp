// Stable-marriage lattice: rotations, optimal stable matchings and the two
// enumeration strategies.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "matchkit/flow.hpp"
#include "matchkit/twosided.hpp"
#include "matchkit/twosided_detail.hpp"

namespace matchkit {

using namespace detail;

namespace {

void require_strict_sm(const Instance& inst, const char* what)
{
    require_two_sided(inst, what);
    if (!sm_shaped(inst))
        throw InapplicableError(std::string(what) + " requires an SM instance");
    if (any_ties(inst.first()) || any_ties(inst.second()))
        throw InapplicableError(std::string(what) + " requires strict preference lists");
}

struct Partners {
    std::vector<int> man, woman;

    Partners(const Instance& inst, const Matching& m)
        : man(inst.first().size(), -1), woman(inst.second().size(), -1)
    {
        for (auto [a, b] : m.pairs()) {
            man[a] = b;
            woman[b] = a;
        }
    }

    void eliminate(const Rotation& rho)
    {
        const std::size_t k = rho.men.size();
        for (std::size_t i = 0; i < k; ++i) {
            const int w = rho.women[(i + 1) % k];
            man[rho.men[i]] = w;
            woman[w] = rho.men[i];
        }
    }

    Matching to_matching(const Instance& inst) const
    {
        Matching m(inst);
        for (int a = 0; a < static_cast<int>(man.size()); ++a)
            if (man[a] != -1)
                m.add(a, man[a]);
        return m;
    }
};

long men_cost(const Instance& inst, const Matching& m)
{
    long total = 0;
    for (auto [a, b] : m.pairs())
        total += inst.rank(Side::first, a, b);
    return total;
}

}  // namespace

Matching RotationStructure::apply(const Instance& inst, const std::vector<int>& closed_set) const
{
    std::vector<int> order = closed_set;
    std::sort(order.begin(), order.end());
    Partners p(inst, man_optimal);
    for (int r : order)
        p.eliminate(rotations.at(r));
    return p.to_matching(inst);
}

RotationStructure sm_rotations(const Instance& inst)
{
    require_strict_sm(inst, "rotation structure");
    const Lists lists = acceptable_lists(inst);
    const int n = inst.first().size();
    std::vector<std::vector<int>> order(n);
    for (int m = 0; m < n; ++m)
        order[m] = flat(lists.resident[m]);
    auto rr = [&](int m, int w) { return inst.rank(Side::first, m, w); };
    auto wr = [&](int w, int m) { return inst.rank(Side::second, w, m); };

    RotationStructure rs;
    rs.man_optimal = gale_shapley(inst, Proposers::residents);
    rs.woman_optimal = gale_shapley(inst, Proposers::hospitals);
    Partners p(inst, rs.man_optimal);

    // Elimination sequence: repeatedly eliminate the exposed rotation that
    // contains the lowest-indexed man.
    while (true) {
        std::vector<int> next(n, -1);
        for (int m = 0; m < n; ++m) {
            if (p.man[m] == -1)
                continue;
            bool past = false;
            for (int w : order[m]) {
                if (w == p.man[m]) {
                    past = true;
                    continue;
                }
                if (past && (p.woman[w] == -1 || wr(w, m) < wr(w, p.woman[w]))) {
                    next[m] = p.woman[w];
                    break;
                }
            }
        }
        std::vector<int> state(n, 0);  // 0 new, 1 on current walk, 2 done
        Rotation found;
        for (int start = 0; start < n && found.men.empty(); ++start) {
            std::vector<int> walk;
            int v = start;
            while (v != -1 && state[v] == 0) {
                state[v] = 1;
                walk.push_back(v);
                v = next[v];
            }
            if (v != -1 && state[v] == 1) {
                auto it = std::find(walk.begin(), walk.end(), v);
                std::vector<int> cycle(it, walk.end());
                std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
                for (int m : cycle) {
                    found.men.push_back(m);
                    found.women.push_back(p.man[m]);
                }
            }
            for (int x : walk)
                state[x] = 2;
        }
        if (found.men.empty())
            break;
        p.eliminate(found);
        rs.rotations.push_back(std::move(found));
    }

    const int k = static_cast<int>(rs.rotations.size());
    std::set<std::pair<int, int>> arcs;
    // Consecutive rotations moving the same man.
    std::vector<int> last_of_man(n, -1);
    for (int r = 0; r < k; ++r)
        for (int m : rs.rotations[r].men) {
            if (last_of_man[m] != -1)
                arcs.insert({last_of_man[m], r});
            last_of_man[m] = r;
        }
    // For a woman w skipped by man m in rotation r, the rotation that lifts
    // w's partner from below m to above m must come first.
    std::vector<std::vector<std::pair<int, int>>> moves(n);  // woman -> (rotation, new partner)
    for (int r = 0; r < k; ++r) {
        const auto& rho = rs.rotations[r];
        const std::size_t len = rho.men.size();
        for (std::size_t i = 0; i < len; ++i)
            moves[rho.women[(i + 1) % len]].push_back({r, rho.men[i]});
    }
    const Partners start(inst, rs.man_optimal);
    for (int r = 0; r < k; ++r) {
        const auto& rho = rs.rotations[r];
        const std::size_t len = rho.men.size();
        for (std::size_t i = 0; i < len; ++i) {
            const int m = rho.men[i];
            const int lo = rr(m, rho.women[i]), hi = rr(m, rho.women[(i + 1) % len]);
            for (int w : order[m]) {
                if (rr(m, w) <= lo || rr(m, w) >= hi)
                    continue;
                int before = start.woman[w];
                for (auto [pi, after] : moves[w]) {
                    if (before != -1 && wr(w, before) > wr(w, m) && wr(w, after) < wr(w, m)) {
                        if (pi != r)
                            arcs.insert({pi, r});
                        break;
                    }
                    before = after;
                }
            }
        }
    }
    rs.digraph.assign(arcs.begin(), arcs.end());

    std::vector<std::vector<int>> into(k);
    for (auto [a, b] : rs.digraph)
        into[b].push_back(a);
    std::vector<std::vector<char>> below(k, std::vector<char>(k, 0));
    for (int b = 0; b < k; ++b) {
        std::vector<int> stack = into[b];
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            if (below[b][a])
                continue;
            below[b][a] = 1;
            stack.insert(stack.end(), into[a].begin(), into[a].end());
        }
    }
    rs.predecessors.assign(k, {});
    for (int b = 0; b < k; ++b)
        for (int a = 0; a < k; ++a)
            if (below[b][a])
                rs.predecessors[b].push_back(a);
    for (int b = 0; b < k; ++b)
        for (int a : rs.predecessors[b]) {
            bool covered = true;
            for (int c : rs.predecessors[b])
                if (below[c][a]) {
                    covered = false;
                    break;
                }
            if (covered)
                rs.poset.push_back({a, b});
        }
    std::sort(rs.poset.begin(), rs.poset.end());
    return rs;
}

Matching optimal_stable_sm(const Instance& inst, StableObjective objective)
{
    require_strict_sm(inst, "optimal stable matching");
    if (!complete_lists(inst))
        throw InapplicableError("optimal stable matching requires complete preference lists");
    const RotationStructure rs = sm_rotations(inst);
    const int k = static_cast<int>(rs.rotations.size());
    auto rr = [&](int m, int w) { return inst.rank(Side::first, m, w); };
    auto wr = [&](int w, int m) { return inst.rank(Side::second, w, m); };

    switch (objective) {
    case StableObjective::min_regret_men:
        return rs.man_optimal;
    case StableObjective::min_regret_women:
        return rs.woman_optimal;
    case StableObjective::egalitarian: {
        std::vector<long> gain(k, 0);
        for (int r = 0; r < k; ++r) {
            const auto& rho = rs.rotations[r];
            const std::size_t len = rho.men.size();
            for (std::size_t i = 0; i < len; ++i) {
                const int m = rho.men[i], w = rho.women[i], w2 = rho.women[(i + 1) % len];
                gain[r] += rr(m, w) - rr(m, w2);
                gain[r] += wr(w2, rho.men[(i + 1) % len]) - wr(w2, m);
            }
        }
        std::vector<std::pair<int, int>> implies;
        for (auto [a, b] : rs.digraph)
            implies.push_back({b, a});
        const auto chosen = max_weight_closure(gain, implies);
        std::vector<int> set;
        for (int r = 0; r < k; ++r)
            if (chosen[r])
                set.push_back(r);
        return rs.apply(inst, set);
    }
    case StableObjective::min_regret:
        break;
    }

    const int n = inst.first().size();
    const Partners start(inst, rs.man_optimal);
    for (int bound = 1; bound <= n; ++bound) {
        bool ok = true;
        std::vector<char> excluded(k, 0), included(k, 0);
        for (int m = 0; m < n; ++m)
            if (rr(m, start.man[m]) > bound)
                ok = false;
        for (int r = 0; r < k; ++r) {
            const auto& rho = rs.rotations[r];
            const std::size_t len = rho.men.size();
            for (std::size_t i = 0; i < len; ++i)
                if (rr(rho.men[i], rho.women[(i + 1) % len]) > bound)
                    excluded[r] = 1;
        }
        for (int w = 0; w < n && ok; ++w) {
            if (wr(w, start.woman[w]) <= bound)
                continue;
            int lift = -1;
            for (int r = 0; r < k && lift == -1; ++r) {
                const auto& rho = rs.rotations[r];
                const std::size_t len = rho.men.size();
                for (std::size_t i = 0; i < len; ++i)
                    if (rho.women[(i + 1) % len] == w && wr(w, rho.men[i]) <= bound) {
                        lift = r;
                        break;
                    }
            }
            if (lift == -1) {
                ok = false;
                break;
            }
            included[lift] = 1;
            for (int a : rs.predecessors[lift])
                included[a] = 1;
        }
        for (int r = 0; r < k && ok; ++r)
            if (included[r] && excluded[r])
                ok = false;
        if (!ok)
            continue;
        std::vector<int> set;
        for (int r = 0; r < k; ++r)
            if (included[r])
                set.push_back(r);
        return rs.apply(inst, set);
    }
    return rs.woman_optimal;
}

std::vector<std::pair<int, int>> all_stable_pairs_sm(const Instance& inst)
{
    const RotationStructure rs = sm_rotations(inst);
    std::set<std::pair<int, int>> pairs(rs.man_optimal.pairs().begin(), rs.man_optimal.pairs().end());
    for (const auto& rho : rs.rotations) {
        const std::size_t len = rho.men.size();
        for (std::size_t i = 0; i < len; ++i)
            pairs.insert({rho.men[i], rho.women[(i + 1) % len]});
    }
    return {pairs.begin(), pairs.end()};
}

namespace {

std::vector<Matching> by_rotations(const Instance& inst, std::size_t cap, bool& truncated)
{
    const RotationStructure rs = sm_rotations(inst);
    const int k = static_cast<int>(rs.rotations.size());
    std::vector<Matching> out;
    std::vector<char> in(k, 0);
    // Decide rotations in elimination order; a rotation may be included only
    // when all of its predecessors are, so every leaf is a distinct downset.
    std::function<void(int)> visit = [&](int r) {
        if (truncated)
            return;
        if (r == k) {
            if (out.size() == cap) {
                truncated = true;
                return;
            }
            std::vector<int> set;
            for (int i = 0; i < k; ++i)
                if (in[i])
                    set.push_back(i);
            out.push_back(rs.apply(inst, set));
            return;
        }
        visit(r + 1);
        const auto& pre = rs.predecessors[r];
        if (std::all_of(pre.begin(), pre.end(), [&](int a) { return in[a]; })) {
            in[r] = 1;
            visit(r + 1);
            in[r] = 0;
        }
    };
    visit(0);
    return out;
}

std::vector<Matching> by_breaking(const Instance& inst, std::size_t cap, bool& truncated)
{
    const Lists lists = acceptable_lists(inst);
    const int n = inst.first().size();
    std::vector<std::vector<int>> order(n);
    for (int m = 0; m < n; ++m)
        order[m] = flat(lists.resident[m]);
    auto wr = [&](int w, int m) { return inst.rank(Side::second, w, m); };
    std::vector<Matching> out;

    // Breaks j's marriage and lets proposals run until the abandoned woman
    // receives someone she prefers to j. Fails when a man below j would be
    // displaced, a man runs out of women, or an unmatched woman is reached.
    auto break_marriage = [&](Partners p, int j) -> std::optional<Partners> {
        const int w = p.man[j];
        p.woman[w] = -1;
        int proposer = j;
        std::size_t pos = std::find(order[j].begin(), order[j].end(), w) - order[j].begin() + 1;
        while (true) {
            if (pos >= order[proposer].size())
                return std::nullopt;
            const int x = order[proposer][pos++];
            if (x == w) {
                if (wr(w, proposer) < wr(w, j)) {
                    p.woman[w] = proposer;
                    p.man[proposer] = w;
                    return p;
                }
                continue;
            }
            const int q = p.woman[x];
            if (q == -1)
                return std::nullopt;
            if (wr(x, proposer) >= wr(x, q))
                continue;
            if (q < j)
                return std::nullopt;
            p.woman[x] = proposer;
            p.man[proposer] = x;
            proposer = q;
            pos = std::find(order[q].begin(), order[q].end(), x) - order[q].begin() + 1;
        }
    };

    std::function<void(const Partners&, int)> visit = [&](const Partners& p, int i) {
        if (truncated)
            return;
        if (out.size() == cap) {
            truncated = true;
            return;
        }
        out.push_back(p.to_matching(inst));
        for (int j = i; j < n; ++j) {
            if (p.man[j] == -1)
                continue;
            if (auto next = break_marriage(p, j))
                visit(*next, j);
        }
    };
    visit(Partners(inst, gale_shapley(inst, Proposers::residents)), 0);
    return out;
}

}  // namespace

std::vector<Matching> enumerate_stable_sm(const Instance& inst, EnumerationMethod method, std::size_t cap,
                                          bool* truncated)
{
    require_strict_sm(inst, "stable matching enumeration");
    bool cut = false;
    auto out = method == EnumerationMethod::rotation_elimination ? by_rotations(inst, cap, cut)
                                                                 : by_breaking(inst, cap, cut);
    std::vector<std::pair<long, std::size_t>> keys;
    for (std::size_t i = 0; i < out.size(); ++i)
        keys.push_back({men_cost(inst, out[i]), i});
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : out[a.second] < out[b.second];
    });
    std::vector<Matching> sorted;
    for (const auto& [cost, i] : keys)
        sorted.push_back(out[i]);
    if (truncated)
        *truncated = cut;
    return sorted;
}

}  // namespace matchkit
