#include "matchkit/runner.hpp"

#include <string>

#include "matchkit/onesided.hpp"
#include "matchkit/roommates.hpp"
#include "matchkit/spa.hpp"
#include "matchkit/structures.hpp"
#include "matchkit/twosided.hpp"

namespace matchkit {

namespace {

using A = AlgorithmId;

std::string pair_list(const std::vector<std::pair<int, int>>& pairs)
{
    std::string out;
    for (auto [a, b] : pairs)
        out += "(" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ")\n";
    return out;
}

void one(RunOutput& out, std::optional<Matching> m, const char* none)
{
    if (m)
        out.matchings.push_back(std::move(*m));
    else
        out.note = none;
}

void add_graph(RunOutput& out, const Instance& inst, StructureKind kind)
{
    try {
        out.graphs.push_back(structural_graph(inst, kind));
    } catch (const InapplicableError&) {
    } catch (const BudgetError&) {
    }
}

const PopularStructure& popular_structure(std::optional<PopularStructure>& ps, const Instance& inst)
{
    ps = PopularStructure::build(inst);
    if (!ps)
        throw NoPopularMatchingError("no popular matching exists");
    return *ps;
}

std::string partition_text(const StablePartition& p)
{
    std::string out;
    for (const auto& cycle : p.cycles) {
        out += "(";
        for (std::size_t i = 0; i < cycle.size(); ++i)
            out += (i ? " " : "") + std::to_string(cycle[i] + 1);
        out += ")\n";
    }
    return out;
}

Matching partition_matching(const Instance& inst, const StablePartition& p)
{
    Matching m(inst);
    for (const auto& cycle : p.cycles)
        if (cycle.size() == 2)
            m.add(cycle[0], cycle[1]);
    return m;
}

}  // namespace

bool single_output(AlgorithmId id)
{
    switch (id) {
    case A::popular_pairs:
    case A::popular_count:
    case A::all_popular:
    case A::stable_pairs_sm:
    case A::all_stable_sm:
    case A::stable_pairs_sr:
    case A::all_stable_sr:
    case A::switching_graph:
        return false;
    default:
        return true;
    }
}

RunOutput run_algorithm(AlgorithmId id, const Instance& inst, const RunOptions& options)
{
    if (!is_applicable(id, classify(inst)))
        throw InapplicableError(algorithm_info(id).name + " does not apply to this instance");
    RunOutput out;
    std::optional<PopularStructure> ps;
    const auto cap = options.enumeration_cap;
    try {
        switch (id) {
        case A::naive: out.matchings.push_back(random_serial_dictatorship(inst, options.seed)); break;
        case A::minimum_cost: out.matchings.push_back(profile_optimal(inst, ProfileObjective::min_cost)); break;
        case A::rank_maximal: out.matchings.push_back(profile_optimal(inst, ProfileObjective::rank_maximal)); break;
        case A::greedy: out.matchings.push_back(profile_optimal(inst, ProfileObjective::greedy)); break;
        case A::generous: out.matchings.push_back(profile_optimal(inst, ProfileObjective::generous)); break;
        case A::greedy_generous:
            out.matchings.push_back(profile_optimal(inst, ProfileObjective::greedy_generous));
            break;
        case A::max_pareto: out.matchings.push_back(max_pareto_optimal(inst)); break;
        case A::popular: one(out, find_popular(inst), "No popular matching exists"); break;
        case A::switching_graph:
            out.graphs.push_back(popular_structure(ps, inst).switching_graph());
            out.matchings.push_back(ps->base());
            break;
        case A::rank_maximal_popular: out.matchings.push_back(popular_structure(ps, inst).rank_maximal()); break;
        case A::popular_uniform: out.matchings.push_back(popular_structure(ps, inst).uniform(options.seed)); break;
        case A::generous_max_popular:
            out.matchings.push_back(popular_structure(ps, inst).generous_max_cardinality());
            break;
        case A::min_cost_max_popular:
            out.matchings.push_back(popular_structure(ps, inst).min_cost_max_cardinality());
            break;
        case A::popular_pairs: out.text = pair_list(popular_structure(ps, inst).popular_pairs()); break;
        case A::popular_count: out.text = std::to_string(popular_structure(ps, inst).count()); break;
        case A::all_popular: out.matchings = popular_structure(ps, inst).enumerate(cap, &out.truncated); break;

        case A::no_ties_stable: out.matchings.push_back(gale_shapley(inst)); break;
        case A::super_stable: one(out, super_stable(inst), "No super-stable matching exists"); break;
        case A::kiraly_one_sided: out.matchings.push_back(kiraly_one_sided(inst)); break;
        case A::kiraly_two_sided: out.matchings.push_back(kiraly_two_sided(inst)); break;
        case A::max_popular: out.matchings.push_back(max_popular_sm(inst)); break;
        case A::strongly_stable: one(out, strongly_stable(inst), "No strongly stable matching exists"); break;
        case A::egalitarian_sm: out.matchings.push_back(optimal_stable_sm(inst, StableObjective::egalitarian)); break;
        case A::min_regret_sm: out.matchings.push_back(optimal_stable_sm(inst, StableObjective::min_regret)); break;
        case A::min_regret_men:
            out.matchings.push_back(optimal_stable_sm(inst, StableObjective::min_regret_men));
            break;
        case A::min_regret_women:
            out.matchings.push_back(optimal_stable_sm(inst, StableObjective::min_regret_women));
            break;
        case A::stable_pairs_sm: out.text = pair_list(all_stable_pairs_sm(inst)); break;
        case A::all_stable_sm:
            out.matchings = enumerate_stable_sm(inst, EnumerationMethod::rotation_elimination, cap, &out.truncated);
            add_graph(out, inst, StructureKind::sm_rotation_poset);
            add_graph(out, inst, StructureKind::sm_rotation_digraph);
            add_graph(out, inst, StructureKind::sm_hasse);
            break;

        case A::tan_hsueh: {
            const StablePartition p = tan_hsueh(inst);
            out.text = partition_text(p);
            out.matchings.push_back(partition_matching(inst, p));
            break;
        }
        case A::irving: one(out, irving_stable(inst), "No stable matching exists"); break;
        case A::max_stable_sr: out.matchings.push_back(max_stable_sr(inst)); break;
        case A::min_regret_sr:
            one(out, optimal_stable_sr(inst, SrObjective::min_regret), "No stable matching exists");
            break;
        case A::egalitarian_sr:
            one(out, optimal_stable_sr(inst, SrObjective::egalitarian), "No stable matching exists");
            break;
        case A::stable_pairs_sr: out.text = pair_list(all_stable_pairs_sr(inst)); break;
        case A::all_stable_sr:
            out.matchings = enumerate_stable_sr(inst, cap, &out.truncated);
            if (out.matchings.empty())
                out.note = "No stable matching exists";
            else
                add_graph(out, inst, StructureKind::sr_rotation_poset);
            break;

        case A::spa_min_cost: out.matchings.push_back(spa_profile_opt(inst, SpaObjective::min_cost)); break;
        case A::spa_greedy: out.matchings.push_back(spa_profile_opt(inst, SpaObjective::greedy)); break;
        case A::spa_generous: out.matchings.push_back(spa_profile_opt(inst, SpaObjective::generous)); break;
        case A::spa_student_optimal: out.matchings.push_back(spa_s_stable(inst, SpaOptimal::student)); break;
        case A::spa_lecturer_optimal: out.matchings.push_back(spa_s_stable(inst, SpaOptimal::lecturer)); break;
        }
    } catch (const NoPopularMatchingError&) {
        out.note = "No popular matching exists";
    }
    if (out.truncated)
        out.note = "Stopped after " + std::to_string(out.matchings.size()) + " matchings";
    return out;
}

}  // namespace matchkit
