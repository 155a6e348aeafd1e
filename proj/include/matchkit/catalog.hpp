#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matchkit/instance_io.hpp"

namespace matchkit {

enum class AlgorithmId {
    // house allocation
    naive,
    minimum_cost,
    rank_maximal,
    greedy,
    generous,
    greedy_generous,
    max_pareto,
    popular,
    switching_graph,
    rank_maximal_popular,
    popular_uniform,
    generous_max_popular,
    min_cost_max_popular,
    popular_pairs,
    popular_count,
    all_popular,
    // two-sided
    no_ties_stable,
    super_stable,
    kiraly_one_sided,
    kiraly_two_sided,
    max_popular,
    strongly_stable,
    egalitarian_sm,
    min_regret_sm,
    min_regret_men,
    min_regret_women,
    stable_pairs_sm,
    all_stable_sm,
    // roommates
    tan_hsueh,
    irving,
    max_stable_sr,
    min_regret_sr,
    egalitarian_sr,
    stable_pairs_sr,
    all_stable_sr,
    // student-project allocation
    spa_min_cost,
    spa_greedy,
    spa_generous,
    spa_student_optimal,
    spa_lecturer_optimal,
};

struct AlgorithmInfo {
    AlgorithmId id;
    std::string name;
    std::string description;
};

/// Every algorithm the library knows, in catalog order.
const std::vector<AlgorithmInfo>& all_algorithms();
const AlgorithmInfo& algorithm_info(AlgorithmId id);
/// Case-insensitive lookup by display name among the algorithms offered for
/// the class.
std::optional<AlgorithmId> find_algorithm(std::string_view name, ProblemClass cls);
/// Algorithms offered for the class before instance-specific filtering.
std::vector<AlgorithmInfo> class_algorithms(ProblemClass cls);

bool is_applicable(AlgorithmId id, const InstanceProperties& props);
std::vector<AlgorithmInfo> applicable_algorithms(const InstanceProperties& props);

}  // namespace matchkit
