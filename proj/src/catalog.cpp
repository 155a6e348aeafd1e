#include "matchkit/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace matchkit {

namespace {

using A = AlgorithmId;

const std::vector<AlgorithmInfo> kCatalog = {
    {A::naive, "Naive", "Find a matching by random serial dictatorship"},
    {A::minimum_cost, "Minimum Cost", "Find a maximum matching of minimum cost"},
    {A::rank_maximal, "Rank-Maximal", "Find a rank-maximal matching"},
    {A::greedy, "Greedy", "Find a greedy maximum matching"},
    {A::generous, "Generous", "Find a generous maximum matching"},
    {A::greedy_generous, "Greedy-Generous", "Find a greedy-generous maximum matching"},
    {A::max_pareto, "Maximum Cardinality Pareto Optimal", "Find a Pareto optimal matching of maximum size"},
    {A::popular, "Popular", "Find a popular matching or report that none exists"},
    {A::switching_graph, "Switching Graph", "Build the switching graph of a popular matching"},
    {A::rank_maximal_popular, "Rank-Maximal Popular", "Find a rank-maximal popular matching or report that none exists"},
    {A::popular_uniform, "Popular Uniform at Random", "Sample a popular matching uniformly or report that none exists"},
    {A::generous_max_popular, "Generous Maximum Cardinality Popular",
     "Find a maximum popular matching with a generous profile"},
    {A::min_cost_max_popular, "Minimum Cost Maximum Cardinality Popular",
     "Find a maximum popular matching of minimum cost"},
    {A::popular_pairs, "Popular Pairs", "List every pair that occurs in some popular matching"},
    {A::popular_count, "Number of Popular Matchings", "Count the popular matchings"},
    {A::all_popular, "All Popular Matchings", "List every popular matching"},

    {A::no_ties_stable, "No-Ties Stable", "Find the resident-optimal stable matching"},
    {A::super_stable, "Super Stable", "Find a super-stable matching or report that none exists"},
    {A::kiraly_one_sided, "Kiraly One-Sided Ties", "Approximate a maximum stable matching with ties on the hospital side"},
    {A::kiraly_two_sided, "Kiraly Two-Sided Ties", "Approximate a maximum stable matching with ties on both sides"},
    {A::max_popular, "Maximum Popular", "Find a popular matching of maximum size"},
    {A::strongly_stable, "Strongly Stable", "Find a strongly stable matching or report that none exists"},
    {A::egalitarian_sm, "Egalitarian Stable", "Find a stable matching of minimum total cost"},
    {A::min_regret_sm, "Minimum Regret Stable", "Find a stable matching of minimum regret"},
    {A::min_regret_men, "Minimum M-Regret Stable", "Find a stable matching of minimum regret over the residents"},
    {A::min_regret_women, "Minimum W-Regret Stable", "Find a stable matching of minimum regret over the hospitals"},
    {A::stable_pairs_sm, "All Stable Pairs", "List every stable pair"},
    {A::all_stable_sm, "All Stable Matchings", "List every stable matching"},

    {A::min_regret_sr, "Minimum Regret Matching", "Find a minimum regret stable matching or report that none exists"},
    {A::tan_hsueh, "Tan-Hsueh", "Find a reduced stable partition"},
    {A::irving, "Default Stable (No Ties)", "Find a stable matching or report that none exists"},
    {A::max_stable_sr, "Maximum Stable", "Find a maximum stable matching from a reduced stable partition"},
    {A::stable_pairs_sr, "All Stable Pairs", "List every stable pair"},
    {A::all_stable_sr, "All Stable Matchings", "List every stable matching"},
    {A::egalitarian_sr, "Egalitarian Stable Matching", "Find an egalitarian stable matching or report that none exists"},

    {A::spa_min_cost, "Cost-Optimal One-Sided", "Find a maximum matching of minimum student cost"},
    {A::spa_greedy, "Greedy One-Sided", "Find a greedy maximum matching over student preferences"},
    {A::spa_generous, "Generous One-Sided", "Find a generous maximum matching over student preferences"},
    {A::spa_student_optimal, "Student-Optimal Stable", "Find the student-optimal stable matching"},
    {A::spa_lecturer_optimal, "Lecturer-Optimal Stable", "Find the lecturer-optimal stable matching"},
};

bool in_range(A id, A lo, A hi) { return id >= lo && id <= hi; }

bool house_allocation_alg(A id) { return in_range(id, A::naive, A::all_popular); }
bool two_sided_alg(A id) { return in_range(id, A::no_ties_stable, A::all_stable_sm); }
bool roommates_alg(A id) { return in_range(id, A::tan_hsueh, A::all_stable_sr); }
bool spa_alg(A id) { return in_range(id, A::spa_min_cost, A::spa_lecturer_optimal); }

bool offered_for(A id, ProblemClass cls)
{
    switch (cls) {
    case ProblemClass::HA:
    case ProblemClass::CHA:
        return house_allocation_alg(id);
    case ProblemClass::HR:
    case ProblemClass::SM:
        return two_sided_alg(id);
    case ProblemClass::SR:
        return roommates_alg(id);
    case ProblemClass::SPA:
        return in_range(id, A::spa_min_cost, A::spa_generous);
    case ProblemClass::SPAS:
        return spa_alg(id);
    }
    return false;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

const std::vector<AlgorithmInfo>& all_algorithms() { return kCatalog; }

const AlgorithmInfo& algorithm_info(AlgorithmId id)
{
    for (const auto& a : kCatalog)
        if (a.id == id)
            return a;
    throw DomainError("unknown algorithm");
}

std::vector<AlgorithmInfo> class_algorithms(ProblemClass cls)
{
    std::vector<AlgorithmInfo> out;
    for (const auto& a : kCatalog)
        if (offered_for(a.id, cls))
            out.push_back(a);
    return out;
}

std::optional<AlgorithmId> find_algorithm(std::string_view name, ProblemClass cls)
{
    const std::string key = lower(name);
    for (const auto& a : kCatalog)
        if (offered_for(a.id, cls) && lower(a.name) == key)
            return a.id;
    if (cls == ProblemClass::SR) {
        // Alternative spellings of the roommates algorithms.
        if (key == "no-ties stable")
            return A::irving;
        if (key == "minimum regret stable")
            return A::min_regret_sr;
        if (key == "egalitarian stable")
            return A::egalitarian_sr;
    }
    return std::nullopt;
}

bool is_applicable(AlgorithmId id, const InstanceProperties& p)
{
    const auto cls = p.problem_class;
    if (!offered_for(id, cls))
        return false;
    const bool tie_free = !p.ties_present;
    switch (id) {
    case A::naive:
    case A::minimum_cost:
    case A::rank_maximal:
    case A::greedy:
    case A::generous:
    case A::greedy_generous:
    case A::max_pareto:
    case A::popular:
        return true;
    case A::switching_graph:
        return tie_free;
    case A::rank_maximal_popular:
    case A::popular_uniform:
    case A::generous_max_popular:
    case A::min_cost_max_popular:
    case A::popular_pairs:
    case A::popular_count:
    case A::all_popular:
        return tie_free && p.unit_capacities;

    case A::no_ties_stable:
        return tie_free;
    case A::super_stable:
    case A::kiraly_two_sided:
        return true;
    case A::kiraly_one_sided:
        return !p.ties(Role::resident);
    case A::max_popular:
    case A::all_stable_sm:
        return p.sm_detected && tie_free;
    case A::strongly_stable:
        return p.sm_detected && !tie_free;
    case A::egalitarian_sm:
    case A::min_regret_sm:
    case A::min_regret_men:
    case A::min_regret_women:
    case A::stable_pairs_sm:
        return p.sm_detected && tie_free && p.complete(Role::resident) && p.complete(Role::hospital);

    case A::tan_hsueh:
        return true;
    case A::irving:
    case A::max_stable_sr:
    case A::min_regret_sr:
    case A::egalitarian_sr:
    case A::stable_pairs_sr:
    case A::all_stable_sr:
        return tie_free;

    case A::spa_min_cost:
    case A::spa_greedy:
    case A::spa_generous:
        return true;
    case A::spa_student_optimal:
    case A::spa_lecturer_optimal:
        return p.lecturer_lists_present && tie_free;
    }
    return false;
}

std::vector<AlgorithmInfo> applicable_algorithms(const InstanceProperties& props)
{
    std::vector<AlgorithmInfo> out;
    for (const auto& a : kCatalog)
        if (is_applicable(a.id, props))
            out.push_back(a);
    return out;
}

}  // namespace matchkit
