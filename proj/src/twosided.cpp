#include "matchkit/twosided.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "matchkit/flow.hpp"
#include "matchkit/twosided_detail.hpp"

namespace matchkit {

namespace detail {

void require_two_sided(const Instance& inst, const char* what)
{
    if (!is_two_sided(inst.problem_class()))
        throw InapplicableError(std::string(what) + " requires an HR or SM instance");
}

bool any_ties(const AgentGroup& g)
{
    return std::any_of(g.prefs.begin(), g.prefs.end(), [](const PreferenceList& p) { return p.has_ties(); });
}

Lists acceptable_lists(const Instance& inst)
{
    Lists out;
    const int nr = inst.first().size(), nh = inst.second().size();
    out.resident.resize(nr);
    out.hospital.resize(nh);
    for (int r = 0; r < nr; ++r)
        for (const auto& g : inst.first().prefs[r].groups()) {
            TieGroup kept;
            for (int h : g)
                if (inst.acceptable(r, h))
                    kept.push_back(h);
            if (!kept.empty())
                out.resident[r].push_back(kept);
        }
    for (int h = 0; h < nh; ++h)
        for (const auto& g : inst.second().prefs[h].groups()) {
            TieGroup kept;
            for (int r : g)
                if (inst.acceptable(r, h))
                    kept.push_back(r);
            if (!kept.empty())
                out.hospital[h].push_back(kept);
        }
    return out;
}

std::vector<int> flat(const std::vector<TieGroup>& groups)
{
    std::vector<int> out;
    for (const auto& g : groups)
        out.insert(out.end(), g.begin(), g.end());
    return out;
}

bool complete_lists(const Instance& inst)
{
    const int nr = inst.first().size(), nh = inst.second().size();
    for (int r = 0; r < nr; ++r)
        for (int h = 0; h < nh; ++h)
            if (!inst.acceptable(r, h))
                return false;
    return true;
}

}  // namespace detail

using namespace detail;

bool sm_shaped(const Instance& inst)
{
    if (inst.problem_class() == ProblemClass::SM)
        return true;
    if (inst.problem_class() != ProblemClass::HR || inst.first().size() != inst.second().size())
        return false;
    const auto& caps = inst.second().capacity;
    return std::all_of(caps.begin(), caps.end(), [](int c) { return c == 1; });
}

Matching gale_shapley(const Instance& inst, Proposers proposers)
{
    require_two_sided(inst, "Gale-Shapley");
    if (any_ties(inst.first()) || any_ties(inst.second()))
        throw InapplicableError("Gale-Shapley requires strict preference lists");
    const Lists lists = acceptable_lists(inst);
    const int nr = inst.first().size(), nh = inst.second().size();
    const auto& cap = inst.second().capacity;
    Matching m(inst);

    if (proposers == Proposers::residents) {
        std::vector<std::vector<int>> order(nr);
        for (int r = 0; r < nr; ++r)
            order[r] = flat(lists.resident[r]);
        std::vector<std::size_t> next(nr, 0);
        std::vector<std::vector<int>> held(nh);
        std::set<int> free;
        for (int r = 0; r < nr; ++r)
            free.insert(r);
        while (!free.empty()) {
            const int r = *free.begin();
            if (next[r] == order[r].size()) {
                free.erase(free.begin());
                continue;
            }
            const int h = order[r][next[r]++];
            auto& hs = held[h];
            if (static_cast<int>(hs.size()) < cap[h]) {
                hs.push_back(r);
                free.erase(r);
                continue;
            }
            auto worst = std::max_element(hs.begin(), hs.end(), [&](int a, int b) {
                return inst.rank(Side::second, h, a) < inst.rank(Side::second, h, b);
            });
            if (inst.rank(Side::second, h, r) < inst.rank(Side::second, h, *worst)) {
                free.insert(*worst);
                *worst = r;
                free.erase(r);
            }
        }
        for (int h = 0; h < nh; ++h)
            for (int r : held[h])
                m.add(r, h);
        return m;
    }

    std::vector<std::vector<int>> order(nh);
    for (int h = 0; h < nh; ++h)
        order[h] = flat(lists.hospital[h]);
    std::vector<std::size_t> next(nh, 0);
    std::vector<int> partner(nr, -1), count(nh, 0);
    std::set<int> open;
    for (int h = 0; h < nh; ++h)
        open.insert(h);
    while (!open.empty()) {
        const int h = *open.begin();
        if (count[h] == cap[h] || next[h] == order[h].size()) {
            open.erase(open.begin());
            continue;
        }
        const int r = order[h][next[h]++];
        if (partner[r] == -1) {
            partner[r] = h;
            ++count[h];
        } else if (inst.rank(Side::first, r, h) < inst.rank(Side::first, r, partner[r])) {
            --count[partner[r]];
            open.insert(partner[r]);
            partner[r] = h;
            ++count[h];
        }
    }
    for (int r = 0; r < nr; ++r)
        if (partner[r] != -1)
            m.add(r, partner[r]);
    return m;
}

namespace {

/// Mutable acceptability relation with provisional assignments on both sides.
struct Reduction {
    const Instance& inst;
    std::vector<std::vector<char>> alive;
    std::vector<std::set<int>> of_r, of_h;

    explicit Reduction(const Instance& i)
        : inst(i),
          alive(i.first().size(), std::vector<char>(i.second().size(), 0)),
          of_r(i.first().size()),
          of_h(i.second().size())
    {
        for (int r = 0; r < i.first().size(); ++r)
            for (int h = 0; h < i.second().size(); ++h)
                alive[r][h] = i.acceptable(r, h);
    }

    int rr(int r, int h) const { return inst.rank(Side::first, r, h); }
    int hr(int h, int r) const { return inst.rank(Side::second, h, r); }

    void assign(int r, int h)
    {
        of_r[r].insert(h);
        of_h[h].insert(r);
    }

    void remove(int r, int h)
    {
        alive[r][h] = 0;
        of_r[r].erase(h);
        of_h[h].erase(r);
    }

    /// Lowest resident with no assignment and a nonempty list, or -1.
    int next_free() const
    {
        for (int r = 0; r < static_cast<int>(alive.size()); ++r)
            if (of_r[r].empty() && std::find(alive[r].begin(), alive[r].end(), 1) != alive[r].end())
                return r;
        return -1;
    }

    std::vector<int> head(int r) const
    {
        int best = 0;
        for (int h = 0; h < static_cast<int>(alive[r].size()); ++h)
            if (alive[r][h] && (best == 0 || rr(r, h) < best))
                best = rr(r, h);
        std::vector<int> out;
        for (int h = 0; h < static_cast<int>(alive[r].size()); ++h)
            if (alive[r][h] && rr(r, h) == best)
                out.push_back(h);
        return out;
    }

    /// Residents in the last tie group of h's current list.
    std::vector<int> tail(int h) const
    {
        int worst = 0;
        for (int r = 0; r < static_cast<int>(alive.size()); ++r)
            if (alive[r][h])
                worst = std::max(worst, hr(h, r));
        std::vector<int> out;
        for (int r = 0; r < static_cast<int>(alive.size()); ++r)
            if (alive[r][h] && hr(h, r) == worst)
                out.push_back(r);
        return out;
    }

    /// Removes every resident that h ranks strictly below rank `bound`.
    void remove_successors(int h, int bound)
    {
        for (int r = 0; r < static_cast<int>(alive.size()); ++r)
            if (alive[r][h] && hr(h, r) > bound)
                remove(r, h);
    }
};

}  // namespace

std::optional<Matching> super_stable(const Instance& inst)
{
    require_two_sided(inst, "super-stable matching");
    const int nh = inst.second().size();
    const auto& cap = inst.second().capacity;
    Reduction red(inst);
    std::vector<char> ever_full(nh, 0);

    for (int r = red.next_free(); r != -1; r = red.next_free()) {
        for (int h : red.head(r)) {
            if (!red.alive[r][h])
                continue;
            red.assign(r, h);
            if (static_cast<int>(red.of_h[h].size()) > cap[h])
                for (int t : red.tail(h))
                    red.remove(t, h);
            if (static_cast<int>(red.of_h[h].size()) == cap[h]) {
                ever_full[h] = 1;
                int worst = 0;
                for (int x : red.of_h[h])
                    worst = std::max(worst, red.hr(h, x));
                red.remove_successors(h, worst);
            }
        }
    }

    Matching m(inst);
    for (int r = 0; r < inst.first().size(); ++r) {
        if (red.of_r[r].size() > 1)
            return std::nullopt;
        if (!red.of_r[r].empty())
            m.add(r, *red.of_r[r].begin());
    }
    for (int h = 0; h < nh; ++h)
        if (ever_full[h] && static_cast<int>(red.of_h[h].size()) < cap[h])
            return std::nullopt;
    return m;
}

std::optional<Matching> strongly_stable(const Instance& inst)
{
    require_two_sided(inst, "strongly stable matching");
    if (!sm_shaped(inst))
        throw InapplicableError("strongly stable matching requires an SM instance");
    const int n = inst.first().size();
    Reduction red(inst);
    std::vector<char> ever_engaged(n, 0);

    auto engagement_matching = [&] {
        BipartiteGraph g;
        g.left = n;
        g.adj.resize(n);
        g.capacity.assign(n, 1);
        for (int m = 0; m < n; ++m)
            g.adj[m].assign(red.of_r[m].begin(), red.of_r[m].end());
        return max_bipartite_matching(g);
    };

    while (true) {
        for (int m = red.next_free(); m != -1; m = red.next_free()) {
            for (int w : red.head(m)) {
                if (!red.alive[m][w])
                    continue;
                red.assign(m, w);
                ever_engaged[w] = 1;
                red.remove_successors(w, red.hr(w, m));
            }
        }
        // Critical set: men reachable by alternating paths from men left
        // unmatched by a maximum matching of the engagement graph.
        const auto match = engagement_matching();
        std::vector<int> holder(n, -1);
        for (int m = 0; m < n; ++m)
            if (match[m] != -1)
                holder[match[m]] = m;
        std::vector<char> in_z(n, 0);
        std::deque<int> queue;
        for (int m = 0; m < n; ++m)
            if (!red.of_r[m].empty() && match[m] == -1) {
                in_z[m] = 1;
                queue.push_back(m);
            }
        std::set<int> neighbours;
        while (!queue.empty()) {
            const int m = queue.front();
            queue.pop_front();
            for (int w : red.of_r[m]) {
                neighbours.insert(w);
                const int next = holder[w];
                if (next != -1 && !in_z[next]) {
                    in_z[next] = 1;
                    queue.push_back(next);
                }
            }
        }
        if (neighbours.empty())
            break;
        for (int w : neighbours)
            for (int t : red.tail(w))
                red.remove(t, w);
    }

    const auto match = engagement_matching();
    Matching out(inst);
    std::vector<char> covered(n, 0);
    for (int m = 0; m < n; ++m) {
        if (match[m] == -1) {
            if (!red.of_r[m].empty())
                return std::nullopt;
            continue;
        }
        covered[match[m]] = 1;
        out.add(m, match[m]);
    }
    for (int w = 0; w < n; ++w)
        if (ever_engaged[w] && !covered[w])
            return std::nullopt;
    return out;
}

namespace {

// Proposal algorithm with one promotion per resident. Hospitals break ties in
// favour of promoted residents and against uncertain ones: a resident is
// uncertain while his current tie still offers another hospital he has not
// been turned away from. An uncertain resident may be displaced softly, even by
// a worse proposer with no such alternative; he then tries the rest of the tie
// and returns, now certain, if it runs out. floor[h] is the best rank h has
// rejected for good, and a soft displacement never leaves h holding worse.
Matching kiraly(const Instance& inst)
{
    const Lists lists = acceptable_lists(inst);
    const int nr = inst.first().size(), nh = inst.second().size();
    const auto& cap = inst.second().capacity;
    std::vector<std::vector<char>> removed(nr, std::vector<char>(nh, 0)), bumped = removed;
    std::vector<char> promoted(nr, 0);
    // Tie in which the resident has already retried every soft refusal.
    std::vector<const TieGroup*> settled(nr, nullptr);
    std::vector<int> at(nr, -1);
    std::vector<std::vector<int>> held(nh);
    std::vector<int> floor(nh, std::numeric_limits<int>::max());

    auto group_of = [&](int r) -> const TieGroup* {
        for (const auto& g : lists.resident[r])
            for (int h : g)
                if (!removed[r][h])
                    return &g;
        return nullptr;
    };
    // Whether r's current tie offers an untried hospital other than `except`.
    auto has_alternative = [&](int r, int except) {
        const TieGroup* g = group_of(r);
        return g && g != settled[r] && std::any_of(g->begin(), g->end(),
                                [&](int h) { return h != except && !removed[r][h] && !bumped[r][h]; });
    };
    auto hr = [&](int h, int r) { return inst.rank(Side::second, h, r); };
    auto turn_away = [&](int r, int h, bool soft) {
        if (soft) {
            bumped[r][h] = 1;
        } else {
            removed[r][h] = 1;
            floor[h] = std::min(floor[h], hr(h, r));
        }
    };

    std::set<int> pending;
    for (int r = 0; r < nr; ++r)
        pending.insert(r);
    while (!pending.empty()) {
        const int r = *pending.begin();
        const TieGroup* g = group_of(r);
        if (!g) {
            if (promoted[r]) {
                pending.erase(pending.begin());
            } else {
                promoted[r] = 1;
                settled[r] = nullptr;
                std::fill(removed[r].begin(), removed[r].end(), 0);
                std::fill(bumped[r].begin(), bumped[r].end(), 0);
            }
            continue;
        }
        if (std::none_of(g->begin(), g->end(), [&](int x) { return !removed[r][x] && !bumped[r][x]; })) {
            for (int x : *g)
                bumped[r][x] = 0;
            settled[r] = g;
        }
        int h = -1;
        for (int x : *g)
            if (!removed[r][x] && !bumped[r][x] && (h == -1 || (static_cast<int>(held[x].size()) < cap[x] &&
                                                                 static_cast<int>(held[h].size()) >= cap[h])))
                h = x;

        auto& hs = held[h];
        if (static_cast<int>(hs.size()) >= cap[h]) {
            const bool unsure = has_alternative(r, h);
            int victim = -1;
            bool soft = false;
            for (int x : hs) {
                const bool x_unsure = has_alternative(x, h);
                const bool yields = hr(h, r) < hr(h, x) ||
                                    (hr(h, r) == hr(h, x) &&
                                     ((promoted[r] && !promoted[x]) || (x_unsure && (promoted[r] || !promoted[x]))));
                const bool displaced = yields || (x_unsure && !unsure && hr(h, r) <= floor[h]);
                if (!displaced)
                    continue;
                if (victim == -1 || hr(h, x) > hr(h, victim) ||
                    (hr(h, x) == hr(h, victim) && promoted[victim] && !promoted[x])) {
                    victim = x;
                    soft = x_unsure;
                }
            }
            if (victim == -1) {
                turn_away(r, h, unsure);
                continue;
            }
            hs.erase(std::find(hs.begin(), hs.end(), victim));
            at[victim] = -1;
            turn_away(victim, h, soft);
            pending.insert(victim);
        }
        hs.push_back(r);
        at[r] = h;
        pending.erase(r);
    }

    Matching m(inst);
    for (int r = 0; r < nr; ++r)
        if (at[r] != -1)
            m.add(r, at[r]);
    return m;
}

}  // namespace

Matching kiraly_one_sided(const Instance& inst)
{
    require_two_sided(inst, "Kiraly approximation");
    if (any_ties(inst.first()))
        throw InapplicableError("one-sided Kiraly approximation requires strict resident lists");
    return kiraly(inst);
}

Matching kiraly_two_sided(const Instance& inst)
{
    require_two_sided(inst, "Kiraly approximation");
    return kiraly(inst);
}

Matching max_popular_sm(const Instance& inst)
{
    require_two_sided(inst, "maximum popular matching");
    if (!sm_shaped(inst))
        throw InapplicableError("maximum popular matching requires an SM instance");
    if (any_ties(inst.first()) || any_ties(inst.second()))
        throw InapplicableError("maximum popular matching requires strict preference lists");
    const Lists lists = acceptable_lists(inst);
    const int n = inst.first().size();
    std::vector<std::vector<int>> order(n);
    for (int m = 0; m < n; ++m)
        order[m] = flat(lists.resident[m]);
    std::vector<std::size_t> next(n, 0);
    std::vector<int> level(n, 0), partner(n, -1);
    std::set<int> free;
    for (int m = 0; m < n; ++m)
        free.insert(m);

    // Level-1 men (those rejected by their whole list once) beat every
    // level-0 man; within a level women use their own order.
    while (!free.empty()) {
        const int m = *free.begin();
        if (next[m] == order[m].size()) {
            if (level[m] == 0) {
                level[m] = 1;
                next[m] = 0;
            } else {
                free.erase(free.begin());
            }
            continue;
        }
        const int w = order[m][next[m]++];
        const int q = partner[w];
        if (q == -1) {
            partner[w] = m;
            free.erase(m);
        } else if (level[m] > level[q] ||
                   (level[m] == level[q] && inst.rank(Side::second, w, m) < inst.rank(Side::second, w, q))) {
            partner[w] = m;
            free.erase(m);
            free.insert(q);
        }
    }
    Matching out(inst);
    for (int w = 0; w < n; ++w)
        if (partner[w] != -1)
            out.add(partner[w], w);
    return out;
}

}  // namespace matchkit
