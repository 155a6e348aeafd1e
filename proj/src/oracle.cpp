#include "matchkit/oracle.hpp"

#include <algorithm>

#include "matchkit/metrics.hpp"

namespace matchkit {

namespace {

class Enumerator {
public:
    Enumerator(const Instance& inst, const std::function<void(const Matching&)>& visit, OracleBudget budget)
        : inst_(inst), visit_(visit), budget_(budget), m_(inst)
    {
        if (!inst.roommates()) {
            load_.assign(inst.second().size(), 0);
            lecturer_load_.assign(inst.third().size(), 0);
        }
    }

    void run() { step(0); }

private:
    void emit()
    {
        if (++count_ > budget_.max_matchings)
            throw BudgetError("more than " + std::to_string(budget_.max_matchings) + " matchings");
        visit_(m_);
    }

    void step(int a)
    {
        const int n = inst_.first().size();
        if (a == n) {
            emit();
            return;
        }
        if (inst_.roommates()) {
            if (m_.partner(a) != -1) {
                step(a + 1);
                return;
            }
            step(a + 1);
            for (int b : inst_.first().prefs[a].flattened()) {
                if (b < a || m_.partner(b) != -1 || !inst_.acceptable(a, b))
                    continue;
                m_.add(a, b);
                step(a + 1);
                m_.remove(a, b);
            }
            return;
        }
        step(a + 1);
        const bool spa = is_spa(inst_.problem_class());
        for (int b : inst_.first().prefs[a].flattened()) {
            if (!inst_.acceptable(a, b) || load_[b] >= inst_.second().capacity[b])
                continue;
            const int l = spa ? inst_.owner(b) : -1;
            if (spa && lecturer_load_[l] >= inst_.third().capacity[l])
                continue;
            ++load_[b];
            if (spa)
                ++lecturer_load_[l];
            m_.add(a, b);
            step(a + 1);
            m_.remove(a, b);
            --load_[b];
            if (spa)
                --lecturer_load_[l];
        }
    }

    const Instance& inst_;
    const std::function<void(const Matching&)>& visit_;
    OracleBudget budget_;
    Matching m_;
    std::vector<int> load_, lecturer_load_;
    long count_ = 0;
};

void check_size(const Instance& inst, OracleBudget budget)
{
    for (Side s : {Side::first, Side::second, Side::third})
        if (inst.size(s) > budget.max_agents)
            throw BudgetError("instance exceeds " + std::to_string(budget.max_agents) + " agents per role");
}

/// Rank for comparisons: smaller is better, unmatched is worst.
int effective(int rank) { return rank == 0 ? 1 << 29 : rank; }

int first_rank(const Instance& inst, const Matching& m, int a)
{
    const int b = m.partner(a);
    return b == -1 ? 0 : inst.rank(Side::first, a, b);
}

}  // namespace

void enumerate_matchings(const Instance& inst, const std::function<void(const Matching&)>& visit,
                         OracleBudget budget)
{
    check_size(inst, budget);
    Enumerator(inst, visit, budget).run();
}

std::vector<Matching> all_matchings(const Instance& inst, OracleBudget budget)
{
    std::vector<Matching> out;
    enumerate_matchings(inst, [&](const Matching& m) { out.push_back(m); }, budget);
    return out;
}

std::vector<Matching> stable_matchings(const Instance& inst, Criterion c, OracleBudget budget)
{
    std::vector<Matching> out;
    enumerate_matchings(
        inst,
        [&](const Matching& m) {
            if (is_stable(inst, m, c))
                out.push_back(m);
        },
        budget);
    return out;
}

Vote more_popular(const Instance& inst, const Matching& m1, const Matching& m2)
{
    int v1 = 0, v2 = 0;
    auto tally = [&](int r1, int r2) {
        if (effective(r1) < effective(r2))
            ++v1;
        else if (effective(r2) < effective(r1))
            ++v2;
    };
    for (int a = 0; a < inst.first().size(); ++a)
        tally(first_rank(inst, m1, a), first_rank(inst, m2, a));
    if (is_two_sided(inst.problem_class())) {
        for (int h = 0; h < inst.second().size(); ++h) {
            if (inst.second().capacity[h] != 1)
                continue;
            auto r = [&](const Matching& m) {
                const auto& as = m.assignees(h);
                return as.empty() ? 0 : inst.rank(Side::second, h, as[0]);
            };
            tally(r(m1), r(m2));
        }
    }
    if (v1 > v2)
        return Vote::first;
    if (v2 > v1)
        return Vote::second;
    return Vote::tie;
}

std::vector<Matching> popular_matchings(const Instance& inst, OracleBudget budget)
{
    const auto all = all_matchings(inst, budget);
    std::vector<Matching> out;
    for (const auto& p : all)
        if (std::none_of(all.begin(), all.end(),
                         [&](const Matching& q) { return more_popular(inst, p, q) == Vote::second; }))
            out.push_back(p);
    return out;
}

bool is_popular(const Instance& inst, const Matching& m, OracleBudget budget)
{
    bool popular = true;
    enumerate_matchings(
        inst,
        [&](const Matching& q) {
            if (popular && more_popular(inst, m, q) == Vote::second)
                popular = false;
        },
        budget);
    return popular;
}

bool is_pareto_optimal(const Instance& inst, const Matching& m, OracleBudget budget)
{
    const int n = inst.first().size();
    bool optimal = true;
    enumerate_matchings(
        inst,
        [&](const Matching& q) {
            if (!optimal)
                return;
            bool strict = false;
            for (int a = 0; a < n; ++a) {
                const int rq = effective(first_rank(inst, q, a));
                const int rm = effective(first_rank(inst, m, a));
                if (rq > rm)
                    return;
                strict = strict || rq < rm;
            }
            if (strict)
                optimal = false;
        },
        budget);
    return optimal;
}

std::vector<long> objective_value(const Instance& inst, const Matching& m, Objective objective)
{
    const auto st = compute_stats(inst, m);
    const auto& first = st.groups[0];
    const std::vector<int>& p = first.profile.counts;
    std::vector<long> key;
    switch (objective) {
    case Objective::max_size:
    case Objective::max_size_stable:
    case Objective::max_size_popular:
    case Objective::pareto_max_size:
        return {st.size};
    case Objective::min_cost_max:
        return {st.size, -first.cost};
    case Objective::rank_maximal:
        return {p.begin(), p.end()};
    case Objective::greedy:
        key = {st.size};
        key.insert(key.end(), p.begin(), p.end());
        return key;
    case Objective::generous:
        key = {st.size};
        for (auto it = p.rbegin(); it != p.rend(); ++it)
            key.push_back(-*it);
        return key;
    case Objective::greedy_generous:
        key = {st.size, p.empty() ? 0 : p[0]};
        for (std::size_t i = p.size(); i > 1; --i)
            key.push_back(-p[i - 1]);
        return key;
    case Objective::egalitarian_stable:
        return {-st.total_cost};
    case Objective::min_regret_stable:
        return {-st.total_regret};
    case Objective::min_regret_first_stable:
        return {-first.regret};
    case Objective::min_regret_second_stable:
        return {-static_cast<long>(st.groups.size() > 1 ? st.groups[1].regret : 0)};
    }
    return key;
}

OracleResult oracle_optimum(const Instance& inst, Objective objective, Criterion c, OracleBudget budget)
{
    std::vector<Matching> candidates;
    switch (objective) {
    case Objective::egalitarian_stable:
    case Objective::min_regret_stable:
    case Objective::min_regret_first_stable:
    case Objective::min_regret_second_stable:
    case Objective::max_size_stable:
        candidates = stable_matchings(inst, c, budget);
        break;
    case Objective::max_size_popular:
        candidates = popular_matchings(inst, budget);
        break;
    case Objective::pareto_max_size:
        for (const auto& m : all_matchings(inst, budget))
            if (is_pareto_optimal(inst, m, budget))
                candidates.push_back(m);
        break;
    default:
        candidates = all_matchings(inst, budget);
        break;
    }
    OracleResult r;
    for (const auto& m : candidates) {
        auto v = objective_value(inst, m, objective);
        if (!r.feasible || v > r.value) {
            r.feasible = true;
            r.value = std::move(v);
            r.optima = {m};
        } else if (v == r.value) {
            r.optima.push_back(m);
        }
    }
    return r;
}

}  // namespace matchkit
