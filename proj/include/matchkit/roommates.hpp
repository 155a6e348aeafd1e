#pragma once

// Stable Roommates algorithms.

#include <cstddef>
#include <optional>
#include <vector>

#include "matchkit/model.hpp"
#include "matchkit/twosided.hpp"

namespace matchkit {

/// Permutation of the agents written as disjoint cycles; a singleton cycle
/// is an agent left alone. Each cycle starts at its lowest agent and cycles
/// are ordered by that agent.
struct StablePartition {
    std::vector<std::vector<int>> cycles;

    /// Odd cycles, singletons included.
    int odd_cycles() const;
    /// Odd cycles of length at least three.
    int odd_parties() const;
    /// No even cycle of length four or more.
    bool reduced() const;
    /// succ[a] is the agent following a in its cycle.
    std::vector<int> successors(int n) const;
};

/// Checks both stable-partition conditions against the instance.
bool is_stable_partition(const Instance& inst, const StablePartition& p);

/// Stable matching, or nullopt when none exists. Requires strict lists.
std::optional<Matching> irving_stable(const Instance& inst);

/// A reduced stable partition. Ties are broken towards the lower index.
StablePartition tan_hsueh(const Instance& inst);

/// Matching of maximum size whose matched agents induce a stable sub-instance.
Matching max_stable_sr(const Instance& inst);

enum class SrObjective { min_regret, egalitarian };

/// Optimal stable matching by enumeration, or nullopt when none exists.
/// Throws BudgetError when more than `cap` stable matchings exist.
std::optional<Matching> optimal_stable_sr(const Instance& inst, SrObjective objective, std::size_t cap = 100000);

/// Stable matchings sorted by their pair lists, at most `cap` of them.
std::vector<Matching> enumerate_stable_sr(const Instance& inst, std::size_t cap, bool* truncated = nullptr);

/// Pairs in some stable matching. Throws BudgetError beyond `cap` matchings.
std::vector<std::pair<int, int>> all_stable_pairs_sr(const Instance& inst, std::size_t cap = 100000);

/// Rotations of a solvable instance. A rotation (x_i, y_i) is exposed when
/// y_i heads x_i's list; eliminating it moves each x_i to the second entry
/// y_{i+1}. Stable matchings correspond to closed sets containing every
/// singular rotation and exactly one of each dual pair.
struct SrRotationPoset {
    std::vector<Rotation> rotations;
    /// Index of the dual rotation, or -1 for a singular one.
    std::vector<int> dual;
    std::vector<std::vector<int>> predecessors;
    /// Cover relation (a, b): a must be eliminated before b.
    std::vector<std::pair<int, int>> poset;
};

/// Throws DomainError when the instance has no stable matching and
/// BudgetError when more than `cap` tables would be explored.
SrRotationPoset sr_rotation_poset(const Instance& inst, std::size_t cap = 200000);

}  // namespace matchkit
