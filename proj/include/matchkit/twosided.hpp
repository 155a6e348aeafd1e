#pragma once

// Hospitals/Residents and Stable Marriage algorithms. Residents play the role
// of men and hospitals the role of women whenever an algorithm is stated for
// Stable Marriage; such algorithms also accept HR instances that are
// SM-shaped (equal sides, unit capacities).

#include <cstddef>
#include <optional>
#include <vector>

#include "matchkit/model.hpp"

namespace matchkit {

enum class Proposers { residents, hospitals };

/// Proposer-optimal stable matching. Requires strict lists.
Matching gale_shapley(const Instance& inst, Proposers proposers = Proposers::residents);

/// Resident-oriented super-stable matching for HR with ties, or nullopt.
std::optional<Matching> super_stable(const Instance& inst);

/// Strongly stable matching for SM with ties and incomplete lists, or nullopt.
std::optional<Matching> strongly_stable(const Instance& inst);

/// Weakly stable matchings within a factor 3/2 of the maximum. The one-sided
/// variant requires strict resident lists.
Matching kiraly_one_sided(const Instance& inst);
Matching kiraly_two_sided(const Instance& inst);

/// Maximum-cardinality popular matching for SM with incomplete, strict lists.
Matching max_popular_sm(const Instance& inst);

/// A rotation of an SM instance: before elimination men[i] holds women[i];
/// afterwards men[i] holds women[(i + 1) % size].
struct Rotation {
    std::vector<int> men;
    std::vector<int> women;
};

/// Rotations of a strict SM instance, in an order of elimination from the
/// man-optimal to the woman-optimal stable matching.
struct RotationStructure {
    Matching man_optimal;
    Matching woman_optimal;
    std::vector<Rotation> rotations;
    /// Sparse precedence digraph (arcs a -> b: a must be eliminated before b).
    std::vector<std::pair<int, int>> digraph;
    /// Cover relation of the precedence order.
    std::vector<std::pair<int, int>> poset;
    /// predecessors[b] = all rotations that must precede b (transitively).
    std::vector<std::vector<int>> predecessors;

    /// Man-optimal matching after eliminating a closed set of rotations.
    Matching apply(const Instance& inst, const std::vector<int>& closed_set) const;
};

RotationStructure sm_rotations(const Instance& inst);

enum class StableObjective { egalitarian, min_regret, min_regret_men, min_regret_women };

/// Optimal stable matching for strict SM with complete lists.
Matching optimal_stable_sm(const Instance& inst, StableObjective objective);

/// Pairs occurring in some stable matching (strict SM, complete lists).
std::vector<std::pair<int, int>> all_stable_pairs_sm(const Instance& inst);

enum class EnumerationMethod { break_marriage, rotation_elimination };

/// Every stable matching once, ordered by total men cost (man-optimal first,
/// woman-optimal last). Stops after `cap` matchings.
std::vector<Matching> enumerate_stable_sm(const Instance& inst, EnumerationMethod method, std::size_t cap,
                                          bool* truncated = nullptr);

/// True for SM instances and for HR instances with equal sides and unit capacities.
bool sm_shaped(const Instance& inst);

}  // namespace matchkit
