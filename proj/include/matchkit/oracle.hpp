#pragma once

// Exhaustive reference implementations for small instances.

#include <functional>
#include <optional>
#include <vector>

#include "matchkit/model.hpp"

namespace matchkit {

struct OracleBudget {
    int max_agents = 10;
    long max_matchings = 1'000'000;
};

/// Visits every valid matching (including the empty one) exactly once.
void enumerate_matchings(const Instance& inst, const std::function<void(const Matching&)>& visit,
                         OracleBudget budget = {});
std::vector<Matching> all_matchings(const Instance& inst, OracleBudget budget = {});

std::vector<Matching> stable_matchings(const Instance& inst, Criterion c = Criterion::weak,
                                       OracleBudget budget = {});

enum class Vote { first, second, tie };

/// Majority vote between two matchings. Only unit-capacity agents with
/// preference lists vote; being matched beats being unmatched.
Vote more_popular(const Instance& inst, const Matching& m1, const Matching& m2);

/// Popular matchings by comparison against every matching.
std::vector<Matching> popular_matchings(const Instance& inst, OracleBudget budget = {});
bool is_popular(const Instance& inst, const Matching& m, OracleBudget budget = {});

/// No matching makes every first-group agent weakly better and one strictly.
bool is_pareto_optimal(const Instance& inst, const Matching& m, OracleBudget budget = {});

enum class Objective {
    max_size,
    min_cost_max,     // maximum size, then minimum first-group cost
    rank_maximal,     // lexicographically largest first-group profile
    greedy,           // maximum size, then rank-maximal
    generous,         // maximum size, then fewest worst-rank assignments
    greedy_generous,  // maximum size, most first choices, then generous
    egalitarian_stable,
    min_regret_stable,
    min_regret_first_stable,
    min_regret_second_stable,
    max_size_stable,
    max_size_popular,
    pareto_max_size,
};

struct OracleResult {
    bool feasible = false;
    /// Lexicographic key that the optimum maximises.
    std::vector<long> value;
    std::vector<Matching> optima;
};

OracleResult oracle_optimum(const Instance& inst, Objective objective, Criterion c = Criterion::weak,
                            OracleBudget budget = {});

/// Objective key of a single matching (for comparing solver output).
std::vector<long> objective_value(const Instance& inst, const Matching& m, Objective objective);

}  // namespace matchkit
