#include "matchkit/roommates.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "matchkit/metrics.hpp"

namespace matchkit {

int StablePartition::odd_cycles() const
{
    return static_cast<int>(std::count_if(cycles.begin(), cycles.end(), [](const auto& c) { return c.size() % 2; }));
}

int StablePartition::odd_parties() const
{
    return static_cast<int>(
        std::count_if(cycles.begin(), cycles.end(), [](const auto& c) { return c.size() % 2 && c.size() >= 3; }));
}

bool StablePartition::reduced() const
{
    return std::none_of(cycles.begin(), cycles.end(), [](const auto& c) { return c.size() % 2 == 0 && c.size() >= 4; });
}

std::vector<int> StablePartition::successors(int n) const
{
    std::vector<int> succ(n, -1);
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            succ.at(c[i]) = c[(i + 1) % c.size()];
    return succ;
}

bool is_stable_partition(const Instance& inst, const StablePartition& p)
{
    const int n = inst.first().size();
    const auto succ = p.successors(n);
    if (std::count(succ.begin(), succ.end(), -1))
        return false;
    std::vector<int> pred(n, -1);
    for (int a = 0; a < n; ++a) {
        if (pred[succ[a]] != -1)
            return false;
        pred[succ[a]] = a;
    }
    // Does a strictly prefer b to c? Being alone (c == a) is worst.
    auto prefers = [&](int a, int b, int c) {
        if (b == a || !inst.acceptable(a, b))
            return false;
        return c == a || inst.rank(Side::first, a, b) < inst.rank(Side::first, a, c);
    };
    for (int a = 0; a < n; ++a) {
        if (succ[a] != a && !inst.acceptable(a, succ[a]))
            return false;
        if (prefers(a, pred[a], succ[a]))
            return false;
        for (int b = 0; b < n; ++b)
            if (b != a && prefers(a, b, pred[a]) && prefers(b, a, pred[b]))
                return false;
    }
    return true;
}

namespace {

void require_strict(const Instance& inst, const char* what)
{
    if (inst.problem_class() != ProblemClass::SR)
        throw InapplicableError(std::string(what) + " requires an SR instance");
    for (const auto& p : inst.first().prefs)
        if (p.has_ties())
            throw InapplicableError(std::string(what) + " requires strict preference lists");
}

/// Mutually acceptable entries in list order, ties broken towards the lower
/// index, with positions for constant-time comparison.
struct Orders {
    std::vector<std::vector<int>> list;
    std::vector<std::vector<int>> pos;

    explicit Orders(const Instance& inst)
    {
        const int n = inst.first().size();
        list.resize(n);
        pos.assign(n, std::vector<int>(n, -1));
        for (int a = 0; a < n; ++a) {
            for (auto g : inst.first().prefs[a].groups()) {
                std::sort(g.begin(), g.end());
                for (int b : g)
                    if (b != a && inst.acceptable(a, b)) {
                        pos[a][b] = static_cast<int>(list[a].size());
                        list[a].push_back(b);
                    }
            }
        }
    }
};

/// Phase-1 and phase-2 preference table.
struct Table {
    const Orders* o;
    std::vector<std::vector<char>> alive;

    explicit Table(const Orders& orders) : o(&orders), alive(orders.list.size())
    {
        const int n = static_cast<int>(orders.list.size());
        for (int a = 0; a < n; ++a) {
            alive[a].assign(n, 0);
            for (int b : orders.list[a])
                alive[a][b] = 1;
        }
    }

    int n() const { return static_cast<int>(alive.size()); }

    void remove(int a, int b) { alive[a][b] = alive[b][a] = 0; }

    int nth(int a, int k) const
    {
        for (int b : o->list[a])
            if (alive[a][b] && k-- == 0)
                return b;
        return -1;
    }
    int first(int a) const { return nth(a, 0); }
    int second(int a) const { return nth(a, 1); }
    int last(int a) const
    {
        for (auto it = o->list[a].rbegin(); it != o->list[a].rend(); ++it)
            if (alive[a][*it])
                return *it;
        return -1;
    }
    int size(int a) const
    {
        int k = 0;
        for (int b : o->list[a])
            k += alive[a][b];
        return k;
    }

    /// Removes every entry that b ranks below a.
    void truncate_after(int b, int a)
    {
        for (int x : o->list[b])
            if (alive[b][x] && o->pos[b][x] > o->pos[b][a])
                remove(b, x);
    }

    std::string key() const
    {
        std::string k;
        for (const auto& row : alive)
            k.append(row.begin(), row.end());
        return k;
    }

    void phase_one()
    {
        std::vector<int> held(n(), -1);
        std::set<int> free;
        for (int a = 0; a < n(); ++a)
            free.insert(a);
        while (!free.empty()) {
            const int a = *free.begin();
            free.erase(free.begin());
            const int b = first(a);
            if (b == -1)
                continue;
            const int previous = held[b];
            held[b] = a;
            if (previous != -1 && previous != a)
                free.insert(previous);
            truncate_after(b, a);
        }
    }

    /// Rotation reached by following second/last links from x.
    Rotation rotation_from(int x) const
    {
        std::vector<int> xs;
        std::map<int, std::size_t> seen;
        while (!seen.count(x)) {
            seen[x] = xs.size();
            xs.push_back(x);
            x = last(second(x));
        }
        std::vector<int> cycle(xs.begin() + static_cast<long>(seen[x]), xs.end());
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        Rotation r;
        for (int p : cycle) {
            r.men.push_back(p);
            r.women.push_back(first(p));
        }
        return r;
    }

    std::vector<Rotation> exposed() const
    {
        std::vector<Rotation> out;
        std::set<std::vector<int>> keys;
        for (int x = 0; x < n(); ++x) {
            if (size(x) < 2)
                continue;
            Rotation r = rotation_from(x);
            std::vector<int> k = r.men;
            k.insert(k.end(), r.women.begin(), r.women.end());
            if (keys.insert(k).second)
                out.push_back(std::move(r));
        }
        return out;
    }

    /// Returns false when some list that was nonempty becomes empty.
    bool eliminate(const Rotation& r)
    {
        const std::size_t k = r.men.size();
        std::vector<int> before(n());
        for (int a = 0; a < n(); ++a)
            before[a] = size(a);
        for (std::size_t i = 0; i < k; ++i)
            truncate_after(r.women[(i + 1) % k], r.men[i]);
        for (int a = 0; a < n(); ++a)
            if (before[a] > 0 && size(a) == 0)
                return false;
        return true;
    }

    bool terminal() const
    {
        for (int a = 0; a < n(); ++a)
            if (size(a) > 1)
                return false;
        return true;
    }

    Matching matching(const Instance& inst) const
    {
        Matching m(inst);
        for (int a = 0; a < n(); ++a) {
            const int b = first(a);
            if (b > a)
                m.add(a, b);
        }
        return m;
    }
};

std::vector<int> rotation_key(const Rotation& r)
{
    std::vector<int> k = r.men;
    k.insert(k.end(), r.women.begin(), r.women.end());
    return k;
}

}  // namespace

std::optional<Matching> irving_stable(const Instance& inst)
{
    require_strict(inst, "Irving's algorithm");
    const Orders orders(inst);
    Table t(orders);
    t.phase_one();
    while (true) {
        int x = -1;
        for (int a = 0; a < t.n() && x == -1; ++a)
            if (t.size(a) >= 2)
                x = a;
        if (x == -1)
            break;
        if (!t.eliminate(t.rotation_from(x)))
            return std::nullopt;
    }
    return t.matching(inst);
}

StablePartition tan_hsueh(const Instance& inst)
{
    if (inst.problem_class() != ProblemClass::SR)
        throw InapplicableError("stable partitions require an SR instance");
    const Orders orders(inst);
    const int n = inst.first().size();
    // Eliminate exposed rotations while some elimination keeps every list
    // nonempty. When only odd parties (rotations whose proposers and
    // receivers coincide) remain, freeze one as an odd cycle; its agents'
    // lists no longer touch anyone else.
    Table t(orders);
    t.phase_one();
    std::vector<char> frozen(n, 0);
    while (true) {
        std::vector<Rotation> open;
        for (auto& r : t.exposed())
            if (!frozen[r.men.front()])
                open.push_back(std::move(r));
        if (open.empty())
            break;
        std::sort(open.begin(), open.end(), [](const Rotation& a, const Rotation& b) { return a.men < b.men; });
        bool moved = false;
        for (const auto& r : open) {
            Table next = t;
            if (next.eliminate(r)) {
                t = std::move(next);
                moved = true;
                break;
            }
        }
        if (moved)
            continue;
        const Rotation& party = open.front();
        std::vector<int> xs = party.men, ys = party.women;
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        if (xs != ys)
            throw std::logic_error("exposed rotation empties a list without being an odd party");
        for (int a : xs)
            frozen[a] = 1;
    }

    std::vector<int> proposes(n, -1);
    for (int a = 0; a < n; ++a)
        proposes[a] = t.first(a);
    std::vector<int> succ(n);
    for (int a = 0; a < n; ++a)
        succ[a] = proposes[a] == -1 ? a : proposes[a];
    StablePartition p;
    std::vector<char> seen(n, 0);
    for (int a = 0; a < n; ++a) {
        if (seen[a])
            continue;
        std::vector<int> cycle;
        for (int v = a; !seen[v]; v = succ[v]) {
            seen[v] = 1;
            cycle.push_back(v);
        }
        if (succ[cycle.back()] != a)
            throw std::logic_error("proposal structure is not a permutation");
        if (cycle.size() % 2 == 0 && cycle.size() >= 4) {
            for (std::size_t i = 0; i < cycle.size(); i += 2)
                p.cycles.push_back({cycle[i], cycle[i + 1]});
        } else {
            p.cycles.push_back(std::move(cycle));
        }
    }
    std::sort(p.cycles.begin(), p.cycles.end());
    return p;
}

Matching max_stable_sr(const Instance& inst)
{
    require_strict(inst, "maximum stable matching");
    const StablePartition p = tan_hsueh(inst);
    const int n = inst.first().size();
    std::vector<char> deleted(n, 0);
    for (const auto& c : p.cycles)
        if (c.size() >= 3 && c.size() % 2)
            deleted[*std::min_element(c.begin(), c.end())] = 1;
    std::vector<PreferenceList> prefs;
    for (int a = 0; a < n; ++a) {
        std::vector<int> kept;
        if (!deleted[a])
            for (int b : inst.first().prefs[a].flattened())
                if (!deleted[b])
                    kept.push_back(b);
        prefs.push_back(PreferenceList::strict(kept));
    }
    const Instance residual = Instance::roommates(std::move(prefs));
    const auto m = irving_stable(residual);
    if (!m)
        throw std::logic_error("residual roommates instance is unsolvable");
    return Matching(inst, m->pairs());
}

std::vector<Matching> enumerate_stable_sr(const Instance& inst, std::size_t cap, bool* truncated)
{
    require_strict(inst, "stable matching enumeration");
    const Orders orders(inst);
    Table start(orders);
    start.phase_one();
    std::set<std::string> visited;
    std::set<Matching> found;
    bool cut = false;
    std::function<void(const Table&)> visit = [&](const Table& t) {
        if (cut || !visited.insert(t.key()).second)
            return;
        if (t.terminal()) {
            if (found.size() == cap) {
                cut = true;
                return;
            }
            found.insert(t.matching(inst));
            return;
        }
        for (const auto& r : t.exposed()) {
            Table child = t;
            if (child.eliminate(r))
                visit(child);
        }
    };
    visit(start);
    if (truncated)
        *truncated = cut;
    return {found.begin(), found.end()};
}

std::optional<Matching> optimal_stable_sr(const Instance& inst, SrObjective objective, std::size_t cap)
{
    bool cut = false;
    const auto all = enumerate_stable_sr(inst, cap, &cut);
    if (cut)
        throw BudgetError("too many stable matchings to optimise over");
    std::optional<Matching> best;
    long best_value = 0;
    for (const auto& m : all) {
        const auto st = compute_stats(inst, m);
        const long value = objective == SrObjective::egalitarian ? st.total_cost : st.total_regret;
        if (!best || value < best_value) {
            best = m;
            best_value = value;
        }
    }
    return best;
}

std::vector<std::pair<int, int>> all_stable_pairs_sr(const Instance& inst, std::size_t cap)
{
    bool cut = false;
    const auto all = enumerate_stable_sr(inst, cap, &cut);
    if (cut)
        throw BudgetError("too many stable matchings to collect pairs from");
    std::set<std::pair<int, int>> pairs;
    for (const auto& m : all)
        pairs.insert(m.pairs().begin(), m.pairs().end());
    return {pairs.begin(), pairs.end()};
}

SrRotationPoset sr_rotation_poset(const Instance& inst, std::size_t cap)
{
    require_strict(inst, "roommates rotation poset");
    if (!irving_stable(inst))
        throw DomainError("instance admits no stable matching");
    const Orders orders(inst);
    Table start(orders);
    start.phase_one();

    SrRotationPoset out;
    std::map<std::vector<int>, int> ids;
    // For every table: the rotations eliminated so far and those exposed.
    std::vector<std::pair<std::set<int>, std::vector<int>>> states;
    std::unordered_map<std::string, bool> visited;
    std::function<void(const Table&, const std::set<int>&)> visit = [&](const Table& t, const std::set<int>& done) {
        if (!visited.emplace(t.key(), true).second)
            return;
        if (visited.size() > cap)
            throw BudgetError("rotation poset exploration exceeded its budget");
        std::vector<int> exposed;
        std::vector<std::pair<Table, int>> children;
        for (const auto& r : t.exposed()) {
            Table child = t;
            if (!child.eliminate(r))
                continue;
            auto [it, fresh] = ids.emplace(rotation_key(r), static_cast<int>(out.rotations.size()));
            if (fresh)
                out.rotations.push_back(r);
            exposed.push_back(it->second);
            children.emplace_back(std::move(child), it->second);
        }
        states.emplace_back(done, exposed);
        for (auto& [child, id] : children) {
            auto next = done;
            next.insert(id);
            visit(child, next);
        }
    };
    visit(start, {});

    const int k = static_cast<int>(out.rotations.size());
    std::vector<std::vector<char>> before(k, std::vector<char>(k, 1));
    for (const auto& [done, exposed] : states)
        for (int r : exposed)
            for (int q = 0; q < k; ++q)
                if (!done.count(q))
                    before[r][q] = 0;
    out.predecessors.assign(k, {});
    for (int r = 0; r < k; ++r)
        for (int q = 0; q < k; ++q)
            if (q != r && before[r][q])
                out.predecessors[r].push_back(q);
    for (int r = 0; r < k; ++r)
        for (int q : out.predecessors[r]) {
            bool cover = true;
            for (int c : out.predecessors[r])
                if (c != q && before[c][q])
                    cover = false;
            if (cover)
                out.poset.push_back({q, r});
        }
    std::sort(out.poset.begin(), out.poset.end());

    // The dual of {(x_i, y_i)} is {(y_{i+1}, x_i)}; compared as pair sets.
    auto pair_set = [](const Rotation& rho, bool dual) {
        const std::size_t len = rho.men.size();
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 0; i < len; ++i)
            pairs.push_back(dual ? std::make_pair(rho.women[(i + 1) % len], rho.men[i])
                                 : std::make_pair(rho.men[i], rho.women[i]));
        std::sort(pairs.begin(), pairs.end());
        return pairs;
    };
    std::map<std::vector<std::pair<int, int>>, int> by_pairs;
    for (int r = 0; r < k; ++r)
        by_pairs[pair_set(out.rotations[r], false)] = r;
    out.dual.assign(k, -1);
    for (int r = 0; r < k; ++r)
        if (auto it = by_pairs.find(pair_set(out.rotations[r], true)); it != by_pairs.end())
            out.dual[r] = it->second;
    return out;
}

}  // namespace matchkit
